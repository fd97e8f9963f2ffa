"""The constructive mod-p dictionary: Frobenius matrices to Galois data.

Solutions of x^(p) = x G form an F_p-space of dimension d over a large
enough residue extension; the arithmetic Frobenius acting on that space
is the unramified representation.  Round trips preserve the
characteristic polynomial, and non-unit rank-1 matrices give the tame
character through a fractional exponent.
"""

from padiclab import galrep, gf
from padiclab.rings import FFRing
from padiclab.series import TruncSeries

F3 = gf.field(3)
R3 = FFRing(F3)

S = galrep.solve_unit_root([[TruncSeries(R3, {0: F3.el(2)}, 20)]])
print(f"G = (2): {S.cardinality} solutions over F_(3^{S.s})")
act = galrep.frobenius_action(S)
print(f"  arithmetic Frobenius acts by {act.matrix} (multiplication by 2)")

S2 = galrep.solve_unit_root([[TruncSeries(R3, {0: F3.one, 1: F3.one}, 16)]])
sol = S2.basis[0][0]
h = sol * sol.coeffs[0].inverse()
print(f"\nG = 1 + u: solutions are multiples of (1+u)^(1/2); "
      f"first coefficients {[F3.code(h.coeffs.get(k, F3.zero)) for k in range(6)]}")

C = [[0, 1], [1, 2]]
act2 = galrep.frobenius_action(galrep.solve_unit_root(
    galrep.unramified_to_phimod(C, 3)))
print(f"\ncompanion matrix round trip: char poly in = "
      f"{galrep.charpoly_mod_p(C, 3)}, out = {galrep.charpoly_mod_p(act2.matrix, 3)}")

Sr = galrep.solve_rank1(1, 1, F3)
xs = [x[0] for x in Sr.solutions() if not x[0].is_zero()]
print(f"\nrank-1 ramified case x^3 = u x: nonzero solutions have valuation "
      f"{xs[0].valuation()} (the tame exponent a/(p-1))")
