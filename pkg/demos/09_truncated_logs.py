"""Truncated operator logarithms and their congruences.

log_m(a) is the finite sum of (1-a)^i/i up to i = p^m - 1.  Under a
boundedness hypothesis it is additive on commuting products, continuous
in the argument, and compatible with (even p-adic) powers, all modulo
p^(m-1).  Divisions happen on exact integer lifts with a tracked budget,
so the congruences are checked honestly.
"""

from padiclab.logtrunc import (BoundedOp, congruent_mod, is_bounded, log_m, mmul,
                               mpow, rdc_valuation_check)

p, m, N = 3, 2, 8
mod = p ** N

A = BoundedOp.of(3, 3, [[4]])
L = log_m(A, 1)
print(f"log_1((4)) over Z/27 = (1-4) + (1-4)^2/2 = {L.value_mod(3)[0][0]}")

base = BoundedOp.of(p, N, [[1 + 3, 3], [9, 1]])
print(f"\nbase matrix bounded at order {m}: {is_bounded(base, m)}")
a = BoundedOp.of(p, N, mpow(base.mat, 2, mod))
b = BoundedOp.of(p, N, mpow(base.mat, 3, mod))
ab = BoundedOp.of(p, N, mmul(a.mat, b.mat, mod))
print(f"log_m(ab) = log_m(a) + log_m(b) mod p^{m - 1}: "
      f"{congruent_mod(log_m(ab, m), log_m(a, m).add(log_m(b, m)), m - 1)}")

n_exp = 1 + p ** 2  # a p-adic exponent, reduced through the order
an = BoundedOp.of(p, N, mpow(a.mat, n_exp, mod))
print(f"log_m(a^(1+p^2)) = (1+p^2) log_m(a) mod p^{m - 1}: "
      f"{congruent_mod(log_m(an, m), log_m(a, m).scale_int(n_exp), m - 1)}")

f = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
print("\nnilpotent-periodicity estimate v_p((id - f^(p^t))^i) >= p^t i/d - 1:")
for i in (1, 3, 6):
    print(f"  t=1, i={i}: {rdc_valuation_check(f, 3, 12, 1, i)}")
