"""HOMFLYPT polynomials from both engines, and one skein relation checked by hand."""

from milnorhomfly import SkeinMemo, braid_closure, homflypt, homflypt_braid, model_K_mn

examples = {
    "positive Hopf link": ([1, 1], 2),
    "right-handed trefoil": ([1, 1, 1], 2),
    "figure-eight knot": ([1, -2, 1, -2], 3),
    "Borromean rings": ([1, -2, 1, -2, 1, -2], 3),
}

for name, (gens, n) in examples.items():
    via_diagram = homflypt(braid_closure(gens, n))
    via_hecke = homflypt_braid(gens, n)
    print(f"{name:22} {via_diagram}")
    assert via_diagram == via_hecke

# t^-1 P(L+) - t P(L-) = z P(L0) at the first crossing of the figure-eight
D = braid_closure([1, -2, 1, -2], 3)
memo = SkeinMemo()
plus, minus, zero = (homflypt(E, memo=memo) for E in (D.with_sign(0, 1), D.with_sign(0, -1), D.smooth(0)))
print("\nskein at crossing 0 of the figure-eight:")
print("  P(L+) =", plus)
print("  P(L-) =", minus)
print("  P(L0) =", zero)
assert plus.shift(1, -1, 0) - minus.shift(1, 1, 0) == zero.shift(1, 0, 1)

print("\nP_0 of the double twist knots K(m, n):")
for m, n in [(1, 1), (1, -1), (2, 1), (2, -2)]:
    print(f"  K({m},{n}):", homflypt(model_K_mn(m, n)).z_coefficient(0))
