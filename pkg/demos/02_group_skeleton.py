"""The (cocycle, character) model of the Galois quotient.

Elements are pairs (c, chi) with the semidirect law
(c1, chi1)(c2, chi2) = (c1 + chi1 c2, chi1 chi2); the c = 0 subgroup is
the stabilizer of the compatible root system, and every element factors
uniquely as tau^a * (c = 0 part).
"""

import random

from padiclab import gskel
from padiclab.padic import PadicInt

p, N = 3, 8
tau = gskel.elt(p, N, 1, 4)  # c(tau) = 1, chi(tau) = 4
rng = random.Random(2)

print("unique factorization g = tau^a g', c(g') = 0:")
for _ in range(3):
    g = gskel.mul(gskel.pow(tau, rng.randrange(3 ** 8)),
                  gskel.elt(p, N, 0, 1 + 3 * rng.randrange(3 ** 6)))
    a, gp = gskel.decompose(g, tau)
    print(f"  g = {g}  ->  a = {a.residue}, g' = {gp} (c = 0: {gp.in_Ginf()})")

print("\nconjugating back into the c = 0 subgroup:")
g = gskel.elt(p, N, 0, 7)
a = gskel.chi_tau(g, tau)
conj = gskel.conj_into_Ginf(g, tau)
print(f"  chi_tau(g) = {a.residue}; tau^-a g tau = {conj} (c = 0: {conj.in_Ginf()})")

print("\nthe extension relation g tau = tau^chi_tau(g) (tau^-chi_tau(g) g tau):")
lhs = gskel.mul(g, tau)
rhs = gskel.mul(gskel.pow(tau, a), conj)
print(f"  {lhs}  ==  {rhs}  ({lhs.c == rhs.c and lhs.chi == rhs.chi})")

print("\nsemidirect presentation (with chi(tau) = 1): "
      "(a,g)(b,h) = (a + b chi(g), psi^b(g) h)")
tau1 = gskel.elt(p, N, 1, 1)
x = gskel.mul(gskel.pow(tau1, 11), gskel.elt(p, N, 0, 5))
y = gskel.mul(gskel.pow(tau1, 7), gskel.elt(p, N, 0, 8))
ax, gx = gskel.decompose(x, tau1)
ay, gy = gskel.decompose(y, tau1)
a_new = ax + ay * gx.chi
psi = gskel.mul(gskel.mul(gskel.pow(tau1, -(ay * gx.chi)), gx), gskel.pow(tau1, ay))
combined = gskel.mul(gskel.pow(tau1, a_new), gskel.mul(psi, gy))
direct = gskel.mul(x, y)
print(f"  law: {combined}, direct product: {direct}, "
      f"equal: {combined.c == direct.c and combined.chi == direct.chi}")
