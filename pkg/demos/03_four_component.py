"""Both sides of the four-component formula, term by term."""

from milnorhomfly import build_V, parse_word, rhs_main, rhs_main2, verify_batch
from milnorhomfly.laurent import format_rational

for text in ["A13^2 A24^2", "A13^2 A24^3"]:
    w = parse_word(text, 4)
    r = rhs_main2(w)
    print(f"{text}:  mu = {r.mu}, Delta = {r.delta}")
    for J, sign, value in r.per_J:
        if value:
            print(f"  J = {str(J):5} sign {sign:+d}  P_0'''(1) = {value}")
    print(f"  sum term {format_rational(r.sum_term)}, correction {format_rational(r.correction)}, "
          f"rhs {format_rational(r.rhs)}, congruent {r.congruent}")
    g = rhs_main(w, "1234", 1)
    print(f"  general formula: correction {format_rational(g.correction)}, rhs {format_rational(g.rhs)}\n")

r = rhs_main2(build_V("1234"))
print(f"V_1234: mu = {r.mu}, Delta = {r.delta}, rhs = {format_rational(r.rhs)}\n")

s = verify_batch(100, 2024, 10)
print(f"random batch: {s.congruent}/{s.total} congruent, {s.skipped} skipped")
