"""Truncated Witt vectors with laws generated from ghost components.

generate_laws lifts through the ghost map over Z, so the sum/product
polynomials are correct by construction; W_n(F_p) is then Z/p^n on the
nose, and Frobenius/Verschiebung obey F o V = p.
"""

from padiclab import gf, witt
from padiclab.rings import FFRing
from padiclab.witt import (WittVector, from_zmod, frobenius_w, generate_laws,
                           teichmuller, to_zmod, verschiebung)

table = generate_laws(3, 2)
print("sum law for p = 3, length 2 (note the integral carry polynomial):")
for k, poly in enumerate(table.sum_polys):
    print(f"  S{k}: {len(poly)} monomials")

R3 = FFRing(gf.field(3))
one = teichmuller(R3.one, 3, 2, R3)
print(f"\n(1,0) + (1,0) in W_2(F_3) = "
      f"{[R3.field.code(c) for c in (one + one).coords]}   (carry!)")

print("\nthe isomorphism W_2(F_3) = Z/9:")
for a in range(9):
    w = from_zmod(a, 3, 2, R3)
    print(f"  {a} <-> {[R3.field.code(c) for c in w.coords]}", end="")
print()

F9 = FFRing(gf.field(3, 2))
x = WittVector(3, F9, [F9.field.gen, F9.field.one])
print(f"\nF(V(x)) = p*x over W_3(F_9): "
      f"{frobenius_w(verschiebung(witt.WittVector(3, F9, list(x.coords) + [F9.zero]))) == witt.mul_by_p(witt.WittVector(3, F9, list(x.coords) + [F9.zero]))}")

a = F9.field.gen
print(f"Teichmuller is multiplicative: [a][a^7] = [a^8] = [1]: "
      f"{teichmuller(a, 3, 2, F9) * teichmuller(a ** 7, 3, 2, F9) == teichmuller(F9.field.one, 3, 2, F9)}")
