"""Exact Herbrand transforms and the explicit ramification bounds.

Piecewise-linear functions with rational vertices, symbolic
r0 + r1*log_p(x) bounds compared by integer power bracketing, and the
calculators for every explicit constant.
"""

from fractions import Fraction as F

from padiclab import ramif

print("Herbrand transform of the Kummer tower (p = 3, e = 1):")
f = ramif.phi_Kinf(1, 3, 4)
for (x, y) in f.vertices:
    print(f"  vertex ({x}, {y})")
print(f"  identity below the first vertex, then slopes {f.slopes()[:4]} ...")
print(f"  fixed point: lambda_1 = mu_1 = {f.vertices[1][0]}")

print("\na lower-numbering filtration and its inverse transform:")
hb = ramif.herbrand_phi([(1, 9), (F(3, 2), 3), (4, 3)])
ps = hb.inverse()
x = F(7, 3)
print(f"  phi({x}) = {hb(x)}, psi(phi({x})) = {ps(hb(x))}")

print("\nbound calculators:")
print(f"  trivial action threshold, restriction side (h=1, n=1, p=3): "
      f"{ramif.bound_Ginf(1, 1, 3)}")
b = ramif.bound_GK(1, 1, 1, 3, tame=True)
print(f"  full-group tame bound (h=e=n=1, p=3): {b}")
print(f"  refined constant when h >= e: {ramif.bound_GK(1, 1, 1, 3, refined=True)}")
b5 = ramif.bound_GK(5, 1, 1, 3, tame=True)
print(f"  h = 5 keeps the logarithm symbolic: {b5}; "
      f"exceeds 7/2: {b5.compare(F(7, 2)) > 0}")
thr, hb_ = ramif.bound_converse(1, 1, 3)
print(f"  converse direction: threshold {thr}, height bound {hb_}")
print(f"  semistable refinement (r=2, n=1, e=1, p=3): "
      f"{ramif.bound_semistable(2, 1, 1, 3)}")
print(f"  congruence depth s0 for h=10, c'=0, p=3: "
      f"{ramif.bound_tau_congruence(10, 0, 3)}  (3^2 < 10 <= 3^3)")
print(f"  character depth 1 + es - c0 at s=3, e=2: "
      f"{ramif.gamma_lower_bound(3, 2, 0)}")
