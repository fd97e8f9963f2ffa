import random

import pytest

from padiclab.errors import PrecisionError
from padiclab.logtrunc import (BoundedOp, congruent_mod, exp_full, is_bounded,
                               log_full, log_m, madd, mident, mmul, mpow, mscale,
                               rdc_valuation_check)


def rand_unipotent(rng, p, N, d):
    return BoundedOp.of(p, N, [[(1 if i == j else 0) + p * rng.randrange(p ** (N - 1))
                                for j in range(d)] for i in range(d)])


def test_log_m_hand_value():
    # (1-4) + (1-4)^2/2 = -3 + 9/2 = 15 mod 27
    L = log_m(BoundedOp.of(3, 3, [[4]]), 1)
    assert L.value_mod(L.certified) == ((15,),)


def test_log_m_identity():
    L = log_m(BoundedOp.of(3, 4, [[1, 0], [0, 1]]), 2)
    assert L.is_zero_mod(L.certified)


def test_log_m_agrees_with_convergent_series():
    # A = 1 + pB: the order-m truncation matches the full sum of
    # (1-A)^i/i (computed here as an independent oracle); that sum is
    # the negative of the classical logarithm
    rng = random.Random(37)
    p, N = 3, 8
    mod = p ** (N + 6)
    for _ in range(20):
        A = rand_unipotent(rng, p, N, 2)
        one_minus = mident(2)
        one_minus = tuple(tuple((i == j) - A.mat[i][j] for j in range(2))
                          for i in range(2))
        acc = ((0, 0), (0, 0))
        power = mident(2)
        for i in range(1, 40):
            power = mmul(power, one_minus, mod)
            v = 0
            k = i
            while k % p == 0:
                k //= p
                v += 1
            term = tuple(tuple(a // p ** v * pow(k, -1, mod) % mod for a in row)
                         for row in power)
            acc = madd(acc, term, mod)
        Lm = log_m(A, 3)
        got = Lm.value_mod(4)
        want = tuple(tuple(a % p ** 4 for a in row) for row in acc)
        assert got == want
        # and it is minus the classical log
        assert congruent_mod(Lm, log_full(A).scale_int(-1), 4)


def test_is_bounded():
    assert is_bounded(rand_unipotent(random.Random(38), 3, 6, 2), 2, 0)
    assert not is_bounded(BoundedOp.of(5, 6, [[0]]), 1, 0)
    U = BoundedOp.of(3, 8, [[1, 1, 0], [0, 1, 2], [0, 0, 1]])
    assert is_bounded(U, 3, 0)
    # scale parameter c relaxes the requirement
    A = BoundedOp.of(3, 6, [[1 + 1 * 3 ** 0]])  # A = 2: (1-A) = -1, not small
    assert not is_bounded(A, 1, 0)
    assert is_bounded(A, 1, 1)


def test_log_exp_round_trip():
    A = BoundedOp.of(3, 5, [[1, 3], [0, 1]])
    lg = log_full(A)
    assert exp_full(BoundedOp.of(3, 5, lg.value_mod(5))).value_mod(5) == A.mat
    with pytest.raises(ValueError):
        log_full(BoundedOp.of(3, 4, [[2]]))
    with pytest.raises(ValueError):
        exp_full(BoundedOp.of(3, 4, [[1]]))


def test_log_of_powers():
    base = BoundedOp.of(3, 8, [[1 + 3, 3], [9, 1]])
    lb = log_full(base)
    for k in range(1, 11):
        Ak = BoundedOp.of(3, 8, mpow(base.mat, k, 3 ** 8))
        assert congruent_mod(log_full(Ak), lb.scale_int(k), 8)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2)])
def test_logm_multiplicative(p, m):
    rng = random.Random(39 + p + m)
    N = m + 6
    mod = p ** N
    for _ in range(40):
        d = rng.choice([1, 2, 3])
        base = rand_unipotent(rng, p, N, d)
        a = BoundedOp.of(p, N, mpow(base.mat, rng.randrange(1, 6), mod))
        b = BoundedOp.of(p, N, mpow(base.mat, rng.randrange(1, 6), mod))
        ab = BoundedOp.of(p, N, mmul(a.mat, b.mat, mod))
        assert is_bounded(a, m) and is_bounded(ab, m)
        assert congruent_mod(log_m(ab, m), log_m(a, m).add(log_m(b, m)), m - 1)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (3, 3)])
def test_logm_continuity(p, m):
    rng = random.Random(40 + p + m)
    N = m + 6
    mod = p ** N
    for _ in range(30):
        d = rng.choice([1, 2, 3])
        a = rand_unipotent(rng, p, N, d)
        pert = mscale(mpow(a.mat, rng.randrange(3), mod), p ** m * rng.randrange(p), mod)
        b = BoundedOp.of(p, N, madd(a.mat, pert, mod))
        assert congruent_mod(log_m(a, m), log_m(b, m), m - 1)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2)])
def test_logm_powers(p, m):
    rng = random.Random(41 + p + m)
    N = m + 7
    mod = p ** N
    a = rand_unipotent(rng, p, N, 2)
    la = log_m(a, m)
    for n in list(range(p ** m + 1)) + [1 + p ** 2]:
        an = BoundedOp.of(p, N, mpow(a.mat, n, mod))
        assert congruent_mod(log_m(an, m), la.scale_int(n), m - 1)


def test_rdc():
    f = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    for i in range(1, 7):
        assert rdc_valuation_check(f, 3, 8, 1, i)
    assert rdc_valuation_check(mident(3), 3, 8, 1, 4)
    with pytest.raises(ValueError):
        rdc_valuation_check([[1]], 3, 8, 1, 1)  # d < p^(t-1)(p-1)
    with pytest.raises(ValueError):
        rdc_valuation_check([[2, 0, 0], [0, 2, 0], [0, 0, 2]], 3, 8, 1, 1)
    with pytest.raises(PrecisionError):
        rdc_valuation_check(f, 3, 3, 1, 40)
