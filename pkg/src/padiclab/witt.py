"""Truncated p-typical Witt vectors with laws generated over Z.

The sum/product polynomials are produced once per (p, n) by lifting
through ghost components: S_k is the unique integer polynomial with
w_k(S_0..S_k) = w_k(x) + w_k(y), and similarly for products and the
Witt Frobenius.  Integrality of the division by p^k is a theorem; we
assert it rather than trust it.

Over a ring of characteristic p the Witt Frobenius coincides with the
coordinatewise p-th power, which is what the series rings use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotDivisible

# ---------------------------------------------------------------------------
# sparse integer polynomials: dict[exponent tuple -> int]


def _p_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        c2 = out.get(m, 0) + c
        if c2:
            out[m] = c2
        elif m in out:
            del out[m]
    return out


def _p_scale(a: dict, k: int) -> dict:
    if k == 0:
        return {}
    return {m: c * k for m, c in a.items()}


def _p_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


def _p_pow(a: dict, k: int) -> dict:
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else _p_mul(result, base)
        k >>= 1
        if k:
            base = _p_mul(base, base)
    return result if result is not None else {}


def _p_divexact(a: dict, k: int) -> dict:
    out = {}
    for m, c in a.items():
        q, r = divmod(c, k)
        if r:
            raise ArithmeticError("ghost lift produced a non-integral law")
        out[m] = q
    return out


def _var(idx: int, nvars: int) -> dict:
    m = [0] * nvars
    m[idx] = 1
    return {tuple(m): 1}


def _ghost(p: int, k: int, offset: int, nvars: int) -> dict:
    """w_k = sum p^i X_{offset+i}^(p^(k-i))."""
    acc: dict = {}
    for i in range(k + 1):
        acc = _p_add(acc, _p_scale(_p_pow(_var(offset + i, nvars), p ** (k - i)), p ** i))
    return acc


def _solve_laws(p: int, n: int, targets) -> list:
    """Find polynomials L_0..L_{n-1} with w_k(L) = targets[k] for all k."""
    laws: list = []
    for k in range(n):
        rhs = dict(targets[k])
        for i in range(k):
            rhs = _p_add(rhs, _p_scale(_p_pow(laws[i], p ** (k - i)), -(p ** i)))
        laws.append(_p_divexact(rhs, p ** k))
    return laws


@dataclass(frozen=True)
class WittLawTable:
    p: int
    n: int
    sum_polys: tuple
    prod_polys: tuple
    frob_polys: tuple  # length n-1: the ghost Frobenius W_n -> W_{n-1}


@lru_cache(maxsize=None)
def generate_laws(p: int, n: int) -> WittLawTable:
    if n > 6:
        raise ValueError("law generation is desk-scale: n <= 6")
    nv = 2 * n
    sum_targets = [_p_add(_ghost(p, k, 0, nv), _ghost(p, k, n, nv)) for k in range(n)]
    prod_targets = [_p_mul(_ghost(p, k, 0, nv), _ghost(p, k, n, nv)) for k in range(n)]
    sums = _solve_laws(p, n, sum_targets)
    prods = _solve_laws(p, n, prod_targets)
    frob_targets = [_ghost(p, k + 1, 0, nv) for k in range(max(n - 1, 0))]
    frobs = _solve_laws(p, n - 1, frob_targets) if n > 1 else []
    return WittLawTable(p, n, tuple(map(_freeze, sums)), tuple(map(_freeze, prods)),
                        tuple(map(_freeze, frobs)))


def _freeze(poly: dict):
    return tuple(sorted(poly.items()))


def eval_law(poly, values, ring):
    """Evaluate a frozen integer polynomial on ring elements."""
    caches = [{0: ring.one} for _ in values]
    acc = ring.zero
    for mono, coeff in poly:
        term = ring.of_int(coeff)
        for idx, e in enumerate(mono):
            if not e:
                continue
            cache = caches[idx]
            if e not in cache:
                v = values[idx]
                best = max(k for k in cache if k <= e)
                cur = cache[best]
                for _ in range(e - best):
                    cur = ring.mul(cur, v)
                cache[e] = cur
            term = ring.mul(term, cache[e])
        acc = ring.add(acc, term)
    return acc


def _ring_pow(ring, a, e: int):
    result = ring.one
    base = a
    while e:
        if e & 1:
            result = ring.mul(result, base)
        base = ring.mul(base, base)
        e >>= 1
    return result


def ghost_components(x: "WittVector"):
    """Ghost vector (w_0,..,w_{n-1}); meaningful over torsion-free rings."""
    ring, p = x.ring, x.p
    out = []
    for k in range(x.n):
        acc = ring.zero
        for i in range(k + 1):
            power = _ring_pow(ring, x.coords[i], p ** (k - i))
            acc = ring.add(acc, ring.mul(ring.of_int(p ** i), power))
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------


class WittVector:
    __slots__ = ("p", "n", "ring", "coords")

    def __init__(self, p: int, ring, coords):
        self.p = p
        self.ring = ring
        self.coords = tuple(coords)
        self.n = len(self.coords)

    def _check(self, other):
        if not isinstance(other, WittVector) or (other.p, other.n) != (self.p, self.n) \
                or other.ring != self.ring:
            raise ValueError("Witt vectors live in different rings")

    def __add__(self, other):
        self._check(other)
        table = generate_laws(self.p, self.n)
        vals = self.coords + other.coords
        return WittVector(self.p, self.ring,
                          [eval_law(s, vals, self.ring) for s in table.sum_polys])

    def __mul__(self, other):
        self._check(other)
        table = generate_laws(self.p, self.n)
        vals = self.coords + other.coords
        return WittVector(self.p, self.ring,
                          [eval_law(m, vals, self.ring) for m in table.prod_polys])

    def __neg__(self):
        # p odd: -(a_0, a_1, ...) = (-a_0, -a_1, ...)
        return WittVector(self.p, self.ring, [self.ring.neg(c) for c in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and all(
            self.ring.eq(a, b) for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash((self.p, self.n, self.coords))

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self.coords)

    def __repr__(self):
        return "W(" + ", ".join(repr(c) for c in self.coords) + ")"


def zero(p, n, ring) -> WittVector:
    return WittVector(p, ring, [ring.zero] * n)


def one(p, n, ring) -> WittVector:
    return teichmuller(ring.one, p, n, ring)


def from_int(k: int, p: int, n: int, ring) -> WittVector:
    """Image of the integer k under Z -> W_n(A)."""
    if ring.char_p:
        # go through W_n(F_p) = Z/p^n
        coords = _zmod_to_coords(k % p ** n, p, n)
        return WittVector(p, ring, [ring.of_int(c) for c in coords])
    neg = k < 0
    k = abs(k)
    acc = zero(p, n, ring)
    unit = one(p, n, ring)
    if k:
        for bit in bin(k)[2:]:
            acc = acc + acc
            if bit == "1":
                acc = acc + unit
    return -acc if neg else acc


def teichmuller(a, p: int, n: int, ring) -> WittVector:
    return WittVector(p, ring, [a] + [ring.zero] * (n - 1))


def verschiebung(x: WittVector) -> WittVector:
    return WittVector(x.p, x.ring, (x.ring.zero,) + x.coords[:-1])


def frobenius_w(x: WittVector) -> WittVector:
    """Witt Frobenius.

    In characteristic p this is the coordinatewise p-th power (same
    length n); over other rings it is the ghost Frobenius W_n -> W_{n-1}.
    """
    ring = x.ring
    if ring.char_p:
        coords = []
        for c in x.coords:
            acc = c
            for _ in range(x.p - 1):
                acc = ring.mul(acc, c)
            coords.append(acc)
        return WittVector(x.p, ring, coords)
    if x.n < 2:
        raise ValueError("ghost Frobenius needs n >= 2")
    table = generate_laws(x.p, x.n)
    vals = x.coords + tuple(ring.zero for _ in range(x.n))  # laws use 2n slots
    return WittVector(x.p, ring, [eval_law(f, vals, ring) for f in table.frob_polys])


def mul_by_p(x: WittVector) -> WittVector:
    return from_int(x.p, x.p, x.n, x.ring) * x


# --- W_n(F_p) <-> Z/p^n ---


def _coords_to_zmod(coords, p, n) -> int:
    mod = p ** n
    acc = 0
    for i, c in enumerate(coords):
        acc = (acc + p ** i * pow(int(c), p ** (n - 1 - i), mod)) % mod
    return acc


def _zmod_to_coords(c: int, p: int, n: int):
    coords = []
    for level in range(n, 0, -1):
        mod = p ** level
        c %= mod
        a = c % p
        coords.append(a)
        c = (c - pow(a, p ** (level - 1), mod)) // p
    return coords


def to_zmod(x: WittVector) -> int:
    """Ring isomorphism W_n(F_p) -> Z/p^n (as an int in [0, p^n))."""
    lifts = []
    for c in x.coords:
        lifts.append(_ff_lift(c, x.p))
    return _coords_to_zmod(lifts, x.p, x.n)


def from_zmod(c: int, p: int, n: int, ring) -> WittVector:
    coords = _zmod_to_coords(c % p ** n, p, n)
    return WittVector(p, ring, [ring.of_int(a) for a in coords])


def _ff_lift(c, p) -> int:
    if isinstance(c, int):
        if not 0 <= c < p:
            raise ValueError("coordinate outside F_p")
        return c
    fld = getattr(c, "field", None)
    if fld is None or fld.order != p:
        raise ValueError("to_zmod needs coordinates in F_p")
    return fld.code(c)


# --- constructive division (the engine behind the W_n ideal inclusion) ---


def witt_divide(x: WittVector, z: WittVector) -> WittVector:
    """y with z*y = x, solving coordinate by coordinate.

    Works over coefficient rings with division and a valuation
    (PerfSeries).  The k-th coordinate of z*y is z_0^(p^k) * y_k plus
    terms in y_{<k}, so each step is one exact division by z_0^(p^k).
    Raises NotDivisible if a quotient coordinate leaves the integral
    model (negative exponents).
    """
    x._check(z)
    ring, p, n = x.ring, x.p, x.n
    z0 = z.coords[0]
    if ring.is_zero(z0):
        raise NotDivisible("leading coordinate of divisor vanishes")
    ycoords = []
    for k in range(n):
        partial = WittVector(p, ring, list(ycoords) + [ring.zero] * (n - k))
        cur = (z * partial).coords[k]
        defect = ring.sub(x.coords[k], cur)
        denom = _ring_pow(ring, z0, p ** k)
        q = defect / denom
        v = q.valuation()
        if v is not None and v < 0:
            raise NotDivisible(f"coordinate {k} quotient has valuation {v} < 0")
        ycoords.append(q)
    return WittVector(p, ring, ycoords)


def in_maximal_ideal(x: WittVector) -> bool:
    """All coordinates of strictly positive valuation (W_n of the
    maximal ideal)."""
    for c in x.coords:
        v = c.valuation()
        if v is not None and v <= 0:
            return False
    return True
