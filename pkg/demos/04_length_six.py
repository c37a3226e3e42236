"""The general formula on six-strand links with vanishing invariants of length <= 2."""

from milnorhomfly import build_V, random_link, rhs_main

cases = {
    "V_123456": build_V("123456"),
    "V_135^2 V_246^2": build_V("135", 1, 6) ** 2 * build_V("246", 1, 6) ** 2,
    "random": random_link(6, 2, 12, 7),
}
for name, w in cases.items():
    r = rhs_main(w, "123456", 2)
    print(f"{name:18} bands {w.band_count():3}  mu {r.mu}  Delta {r.delta}  rhs {r.rhs}  congruent {r.congruent}")
