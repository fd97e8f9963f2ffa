"""q-analogues and the unit logarithm, exactly.

[a]_q = (q^a - 1)/(q - 1) deforms the integer a; the map a -> [a]_q is
a bijection of Z_p whose inverse is log(1 + (q-1)b)/log(q).  Everything
below is exact arithmetic mod p^N with tracked precision.
"""

from padiclab import padic
from padiclab.padic import PadicInt, exp_unit, log_unit, q_analogue, q_analogue_inverse

p, N = 3, 8
q = PadicInt(p, N, 4)

print(f"working in Z/{p}^{N}, q = {q.residue}")
a = PadicInt(p, N, 2)
qa = q_analogue(a, q)
print(f"[2]_4 = 1 + q = {qa.residue}  (precision O(3^{qa.prec}))")
print(f"inverse recovers a: {q_analogue_inverse(qa, q).residue}")

minus1 = q_analogue(PadicInt(p, N, -1), q)
print(f"[-1]_4 = (q^-1 - 1)/(q - 1) = {minus1.residue} + O(3^{minus1.prec})")
print("  note the precision drop: dividing by q - 1 costs v(q-1) = 1 digit")

x = PadicInt(p, N, 1 + 3 * 5)
print(f"\nlog/exp on the unit ball: x = {x.residue}")
lx = log_unit(x)
print(f"log x = {lx.residue}, exp(log x) = {exp_unit(lx).residue} = x")

print("\ncocycle identity [a+b]_q = [a]_q + q^a [b]_q on a few draws:")
import random

rng = random.Random(1)
for _ in range(3):
    a = PadicInt(p, N, rng.randrange(3 ** 8))
    b = PadicInt(p, N, rng.randrange(3 ** 8))
    lhs = q_analogue(a + b, q)
    rhs = q_analogue(a, q) + padic.pow_unit(q, a) * q_analogue(b, q)
    print(f"  a={a.residue:5d} b={b.residue:5d}: "
          f"{lhs.residue} == {rhs.residue}  ({lhs == rhs})")
