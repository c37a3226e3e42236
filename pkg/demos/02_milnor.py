"""Milnor invariants of band words, and the link-homotopy normal form."""

from milnorhomfly import build_V, milnor_result, mu, mu_table, parse_word, standard_form

borromean = build_V("123")
print("V_123 =", borromean)
for I in ["123", "231", "213"]:
    print(f"  mu({I}) = {mu(borromean, I)}")

w = parse_word("A13^2 A24^2", 4)
r = milnor_result(w, "1234")
print(f"\nA13^2 A24^2: mu(1234) = {r.mu}, Delta = {r.delta}, residue = {r.residue}")

V = build_V("1324")
print("\nV_1324 has", V.band_count(), "band letters; nonzero invariants up to length 4:")
for I, x in mu_table(V, 4).items():
    if x:
        print(f"  mu({I}) = {x}")

w = parse_word("A12^2 A23^-1", 3) * build_V("132", 1, 3)
print("\nnormal form of", w)
for M, x in standard_form(w, 2):
    if x:
        print(f"  V_{M}^{x}")
