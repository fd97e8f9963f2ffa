import random
from fractions import Fraction

import pytest

from padiclab import gf, witt
from padiclab.errors import NotDivisible
from padiclab.rings import FFRing, IntRing
from padiclab.suites import incwitt_fixture
from padiclab.witt import (WittVector, from_zmod, frobenius_w, generate_laws,
                           ghost_components, mul_by_p, teichmuller, to_zmod,
                           verschiebung, witt_divide)

F3R = FFRing(gf.field(3))


def lift_ghost(poly, p, n, k):
    import padiclab.witt as W
    acc = {}
    for i in range(k + 1):
        acc = W._p_add(acc, W._p_scale(W._p_pow(W._var(i, 2 * n), p ** (k - i)), p ** i))
    return acc


def test_law_examples():
    T = generate_laws(3, 2)
    assert dict(T.sum_polys[0]) == {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1}
    assert dict(T.prod_polys[0]) == {(1, 0, 1, 0): 1}
    # S1 integral and ghost-correct: w1(S0, S1) = w1(x) + w1(y)
    import padiclab.witt as W
    S0, S1 = dict(T.sum_polys[0]), dict(T.sum_polys[1])
    lhs = W._p_add(W._p_pow(S0, 3), W._p_scale(S1, 3))
    rhs = W._p_add(W._ghost(3, 1, 0, 4), W._ghost(3, 1, 2, 4))
    assert lhs == rhs


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_ghost_identities_symbolic(p, n):
    import padiclab.witt as W
    T = generate_laws(p, n)
    for k in range(n):
        acc = {}
        for i in range(k + 1):
            acc = W._p_add(acc, W._p_scale(W._p_pow(dict(T.sum_polys[i]), p ** (k - i)),
                                           p ** i))
        want = W._p_add(W._ghost(p, k, 0, 2 * n), W._ghost(p, k, n, 2 * n))
        assert acc == want


def test_w2f3_addition_example():
    x = teichmuller(F3R.one, 3, 2, F3R)
    s = x + x
    assert [F3R.field.code(c) for c in s.coords] == [2, 1]
    zero = witt.zero(3, 2, F3R)
    assert x + zero == x


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2)])
def test_zmod_iso_exhaustive(p, n):
    ring = FFRing(gf.field(p))
    mod = p ** n
    for a in range(mod):
        wa = from_zmod(a, p, n, ring)
        assert to_zmod(wa) == a
    for a in range(0, mod, max(1, mod // 40)):
        for b in range(0, mod, max(1, mod // 40)):
            wa, wb = from_zmod(a, p, n, ring), from_zmod(b, p, n, ring)
            assert to_zmod(wa + wb) == (a + b) % mod
            assert to_zmod(wa * wb) == (a * b) % mod


def test_zmod_iso_values():
    assert to_zmod(teichmuller(F3R.one, 3, 2, F3R)) == 1
    assert to_zmod(WittVector(3, F3R, [F3R.zero, F3R.one])) == 3


def test_teichmuller_multiplicative():
    rng = random.Random(12)
    F9 = FFRing(gf.field(3, 2))
    for _ in range(100):
        a, b = F9.field.random(rng), F9.field.random(rng)
        assert teichmuller(a, 3, 2, F9) * teichmuller(b, 3, 2, F9) == \
            teichmuller(a * b, 3, 2, F9)
    # multiplicative group has order 8: [a^8] = [1], i.e. [a][a^7] = [1]
    a = F9.field.gen
    assert teichmuller(a ** 8, 3, 2, F9) == teichmuller(F9.field.one, 3, 2, F9)
    assert teichmuller(a, 3, 2, F9) * teichmuller(a ** 7, 3, 2, F9) == \
        teichmuller(F9.field.one, 3, 2, F9)


def test_verschiebung_frobenius():
    v = verschiebung(teichmuller(F3R.one, 3, 2, F3R))
    assert [F3R.field.code(c) for c in v.coords] == [0, 1]
    rng = random.Random(13)
    F9 = FFRing(gf.field(3, 2))
    for _ in range(200):
        x = WittVector(3, F9, [F9.field.random(rng) for _ in range(3)])
        assert frobenius_w(verschiebung(x)) == mul_by_p(x)


def test_ghost_functoriality():
    rng = random.Random(14)
    Z = IntRing()
    for _ in range(200):
        x = WittVector(3, Z, [rng.randrange(-50, 50) for _ in range(3)])
        y = WittVector(3, Z, [rng.randrange(-50, 50) for _ in range(3)])
        gx, gy = ghost_components(x), ghost_components(y)
        assert ghost_components(x + y) == tuple(a + b for a, b in zip(gx, gy))
        assert ghost_components(x * y) == tuple(a * b for a, b in zip(gx, gy))


def test_witt_divide_teichmuller():
    field, ring, Z = incwitt_fixture()
    u = witt.teichmuller(
        __import__("padiclab.perfseries", fromlist=["monomial"]).monomial(
            field, 2, ring.jmax, 1, field.one, ring.prec), 3, 2, ring)
    u2 = u * u
    assert witt_divide(u2, u) == u


def test_witt_divide_round_trip():
    from padiclab.perfseries import PerfSeries
    rng = random.Random(15)
    field, ring, Z = incwitt_fixture()
    for _ in range(25):
        coords = [PerfSeries(field, 2, ring.jmax,
                             {Fraction(rng.randrange(1, 40), 6): field.random(rng)
                              for _ in range(4)}, ring.prec) for _ in range(2)]
        y = WittVector(3, ring, coords)
        x = Z * y
        assert (Z * witt_divide(x, Z)) == x


def test_witt_divide_rejects_shallow():
    from padiclab.perfseries import PerfSeries
    field, ring, Z = incwitt_fixture()
    # coordinate valuations far below the ideal threshold
    bad = WittVector(3, ring, [
        PerfSeries(field, 2, ring.jmax, {Fraction(1, 2): field.one}, ring.prec),
        PerfSeries(field, 2, ring.jmax, {Fraction(1, 2): field.one}, ring.prec)])
    try:
        y = witt_divide(bad, Z)
        assert not witt.in_maximal_ideal(y)
    except NotDivisible:
        pass


def test_ghost_frobenius_shifts_components():
    # over a torsion-free ring, w_k(F(x)) = w_(k+1)(x)
    rng = random.Random(44)
    Z = IntRing()
    for _ in range(100):
        x = WittVector(3, Z, [rng.randrange(-30, 30) for _ in range(3)])
        assert ghost_components(frobenius_w(x)) == ghost_components(x)[1:]


@pytest.mark.parametrize("p,n,h", [(3, 1, 1), (5, 1, 2)])
def test_witt_ideal_inclusion_other_parameters(p, n, h):
    """Vectors with coordinate valuations above h p^n/(p-1) divide by
    UV; a shallow leading coordinate breaks divisibility."""
    from padiclab.perfseries import (PerfRing, PerfSeries, solve_frobenius_fixed,
                                     zmod_series_to_witt)
    from padiclab.rings import Zmod
    from padiclab.series import TruncSeries

    rng = random.Random(45 + p)
    field = gf.field(p)
    U = TruncSeries(Zmod(p, n), {h: 1, h + 1: 1}, 12)
    jm = 3
    V = solve_frobenius_fixed(U, field, n, jmax=jm, prec=Fraction(12))
    ring = PerfRing(field, p - 1, jm, Fraction(12))
    Z = zmod_series_to_witt(U, ring, n) * V
    m = Fraction(h * p ** n, p - 1)
    assert Z.coords[0].valuation() == Fraction(h, 1) + Fraction(h, p - 1)
    lat = (p - 1) * p ** jm
    for _ in range(25):
        coords = [PerfSeries(field, p - 1, jm,
                             {Fraction(rng.randrange(int(m * lat) + 1,
                                                     int((m + 4) * lat)), lat):
                              field.random(rng) for _ in range(5)},
                             Fraction(12)) for _ in range(n)]
        x = WittVector(p, ring, coords)
        y = witt_divide(x, Z)
        assert (Z * y) == x and witt.in_maximal_ideal(y)
    for _ in range(25):
        lo = rng.randrange(1, max(2, int((m - 1) * lat) - 1))
        coords = [PerfSeries(field, p - 1, jm, {Fraction(lo, lat):
                                                field.random_nonzero(rng)},
                             Fraction(12)) for _ in range(n)]
        x = WittVector(p, ring, coords)
        try:
            assert not witt.in_maximal_ideal(witt_divide(x, Z))
        except NotDivisible:
            pass


def test_witt_over_imperfect_series():
    """Witt vectors with truncated-series coordinates; the Frobenius is
    coefficientwise with u -> u^p (and keeps the working truncation)."""
    from padiclab.series import TruncSeries, TruncSeriesRing

    rng = random.Random(47)
    ring = TruncSeriesRing(F3R, 9)

    def rs():
        return TruncSeries(F3R, {e: F3R.field.random(rng) for e in range(5)}, 9)

    for _ in range(20):
        x = WittVector(3, ring, [rs(), rs()])
        y = WittVector(3, ring, [rs(), rs()])
        assert (x + y) - y == x
        assert x * witt.one(3, 2, ring) == x
    # Frobenius is a ring map on the coordinates
    x = WittVector(3, ring, [rs(), rs()])
    y = WittVector(3, ring, [rs(), rs()])
    assert frobenius_w(x * y) == frobenius_w(x) * frobenius_w(y)
    assert frobenius_w(x + y) == frobenius_w(x) + frobenius_w(y)
    # u itself maps to u^p
    u = TruncSeries.monomial(F3R, 1, F3R.one, 9)
    tu = teichmuller(u, 3, 2, ring)
    assert frobenius_w(tu).coords[0] == TruncSeries.monomial(F3R, 3, F3R.one, 9)
