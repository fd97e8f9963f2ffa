import random
from fractions import Fraction as F

import pytest

from padiclab import gf, gskel, taumod
from padiclab.errors import PrecisionError
from padiclab.padic import PadicInt
from padiclab.taumod import (BivarSeries, binom_power, bivar_one, check_commutation,
                             check_phi_tau_commute, galois_act,
                             trivial_restriction_module)

F3 = gf.field(3)
W = 12


def rand_g(rng, p=3, N=8):
    return gskel.elt(p, N, 0, 1 + p * rng.randrange(p ** (N - 1)))


def sample_x(rng, d=3, w=W):
    return [BivarSeries(F3, {(rng.randrange(0, 6), 0): F3.random(rng)
                             for _ in range(3)}, w) for _ in range(d)]


def test_binom_power_examples():
    b = binom_power(3, F3, W)
    assert b.coeffs == {(0, 0): F3.one, (0, 3): F3.one}
    bm1 = binom_power(-1, F3, 8)
    for k in range(8):
        assert bm1.coeffs.get((0, k), F3.zero) == F3.el((-1) ** k)
    zh = binom_power(F(-1, 2), F3, 8)
    assert zh * zh == bm1
    # additivity of exponents
    assert binom_power(2, F3, 8) * binom_power(5, F3, 8) == binom_power(7, F3, 8)


def test_binom_power_precision_gate():
    z = PadicInt(3, 1, 1)
    with pytest.raises(PrecisionError):
        binom_power(z, F3, 12)


def test_galois_act_examples():
    p, N = 3, 8
    tau = gskel.elt(p, N, 1, 1)
    u = BivarSeries(F3, {(1, 0): F3.one}, W)
    eta = BivarSeries(F3, {(0, 1): F3.one}, W)
    assert galois_act(tau, u) == u * (bivar_one(F3, W) + eta)
    assert galois_act(tau, eta) == eta
    f = BivarSeries(F3, {(2, 1): F3.el(2), (-1, 0): F3.one}, W)
    assert galois_act(gskel.identity(p, N), f) == f
    # g in the c = 0 subgroup fixes u
    g = gskel.elt(p, N, 0, 4)
    assert galois_act(g, u) == u


def test_galois_act_is_ring_hom():
    rng = random.Random(32)
    for _ in range(150):
        g = gskel.elt(3, 8, rng.randrange(3 ** 8), 1 + 3 * rng.randrange(3 ** 7))
        f1 = BivarSeries(F3, {(rng.randrange(-2, 5), rng.randrange(4)): F3.random(rng)
                              for _ in range(4)}, 10)
        f2 = BivarSeries(F3, {(rng.randrange(-2, 5), rng.randrange(4)): F3.random(rng)
                              for _ in range(4)}, 10)
        assert galois_act(g, f1 * f2) == galois_act(g, f1) * galois_act(g, f2)
        assert galois_act(g, f1 + f2) == galois_act(g, f1) + galois_act(g, f2)


def test_action_respects_group_law():
    rng = random.Random(33)
    for _ in range(60):
        g1 = gskel.elt(3, 8, rng.randrange(3 ** 8), 1 + 3 * rng.randrange(3 ** 7))
        g2 = gskel.elt(3, 8, rng.randrange(3 ** 8), 1 + 3 * rng.randrange(3 ** 7))
        f = BivarSeries(F3, {(rng.randrange(-1, 4), rng.randrange(3)): F3.random(rng)
                             for _ in range(3)}, 9)
        assert galois_act(g1, galois_act(g2, f)) == galois_act(gskel.mul(g1, g2), f)


def test_monomial_independence():
    # the monomials u^i eta^j stay independent in the model
    f = BivarSeries(F3, {(i, j): F3.one for i in range(4) for j in range(4)
                         if i + j <= 6}, 8)
    assert len(f.coeffs) == sum(1 for i in range(4) for j in range(4) if i + j <= 6)


def test_trivial_restriction_module():
    tau = gskel.elt(3, 8, 1, 1)
    M = trivial_restriction_module([[1]], 0, F3, tau, W)
    assert M.d == 1
    perm = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    M3 = trivial_restriction_module(perm, 1, F3, tau, W)
    assert M3.tau_order_exponent() <= 3
    with pytest.raises(ValueError):
        trivial_restriction_module([[0, 1], [1, 0]], 1, F3, tau, W)  # order 2


def test_commutation_example1():
    rng = random.Random(34)
    tau = gskel.elt(3, 8, 1, 1)
    M = trivial_restriction_module([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 1, F3, tau, W)
    assert check_phi_tau_commute(M, sample_x(rng))
    for _ in range(25):
        assert check_commutation(M, rand_g(rng), sample_x(rng))
    # chi(g) = 1 + p explicitly
    assert check_commutation(M, gskel.elt(3, 8, 0, 4), sample_x(rng))


def test_commutation_general_tau():
    rng = random.Random(35)
    tau = gskel.elt(3, 8, 1, 4)  # chi(tau) = 4, not 1
    M = trivial_restriction_module([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 1, F3, tau, W)
    for _ in range(10):
        assert check_commutation(M, rand_g(rng), sample_x(rng))


def test_mutation_control():
    rng = random.Random(36)
    tau = gskel.elt(3, 8, 1, 1)
    M = trivial_restriction_module([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 1, F3, tau, W)
    Tbad = [row[:] for row in M.T]
    Tbad[0][1] = Tbad[0][1] + BivarSeries(F3, {(1, 0): F3.one}, W)
    Mbad = taumod.PhiTauModP(3, 3, M.G, Tbad, tau, 6)
    assert not check_commutation(Mbad, gskel.elt(3, 8, 0, 4), sample_x(rng))


def test_eta_weighting():
    # the eta-weight e*p/(p-1) is available as truncation weighting
    w_eta = F(3, 2)  # e = 1, p = 3
    f = BivarSeries(F3, {(0, 1): F3.one, (0, 8): F3.one}, 12, wu=1, weta=w_eta)
    assert (0, 1) in f.coeffs and (0, 8) not in f.coeffs  # weight 12 cut
