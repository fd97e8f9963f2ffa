"""Truncated (Laurent) series over Z/p^n, F_q, or Q, and the calculus
on them: Frobenius, Newton polygons, Weierstrass preparation,
Eisenstein data, the infinite-product solution of (E/E(0)) phi(f) = f,
the derivation -u*lambda*d/du, and the membership test for the module
of series sum P_n(u)/p^(n+1) u^(e(p^n-1)/(p-1)).

Every series carries a precision: coefficients of u^k are tracked for
k < prec and unknown beyond.  Products and inverses propagate precision
honestly; equality means equality at the shared precision.
"""

from __future__ import annotations

from fractions import Fraction
from . import gf
from .errors import PrecisionError
from .rings import FFRing, QRing, Zmod


class TruncSeries:
    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs: dict, prec: int):
        self.ring = ring
        self.prec = prec
        self.coeffs = {e: c for e, c in coeffs.items()
                       if e < prec and not ring.is_zero(c)}

    # --- constructors ---

    @staticmethod
    def zero(ring, prec):
        return TruncSeries(ring, {}, prec)

    @staticmethod
    def one(ring, prec):
        return TruncSeries(ring, {0: ring.one}, prec)

    @staticmethod
    def monomial(ring, exp, coeff, prec):
        return TruncSeries(ring, {exp: coeff}, prec)

    @staticmethod
    def from_int_coeffs(ring, coeffs, prec):
        """Polynomial from integer coefficients, low degree first."""
        return TruncSeries(ring, {i: ring.of_int(c) for i, c in enumerate(coeffs)}, prec)

    # --- structure ---

    def valuation(self):
        """u-adic valuation; None when zero at this precision."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def _veff(self):
        v = self.valuation()
        return self.prec if v is None else v

    def leading(self):
        v = self.valuation()
        if v is None:
            raise ValueError("zero series has no leading coefficient")
        return v, self.coeffs[v]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e):
        if e >= self.prec:
            raise PrecisionError(f"coefficient u^{e} beyond precision {self.prec}")
        return self.coeffs.get(e, self.ring.zero)

    def support(self):
        return sorted(self.coeffs)

    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else None

    # --- arithmetic ---

    def _samering(self, other):
        if not isinstance(other, TruncSeries) or other.ring != self.ring:
            raise ValueError("series from different rings")

    def __add__(self, other):
        self._samering(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = self.ring.add(out.get(e, self.ring.zero), c)
        return TruncSeries(self.ring, out, prec)

    def __neg__(self):
        return TruncSeries(self.ring, {e: self.ring.neg(c) for e, c in self.coeffs.items()},
                           self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._samering(other)
        prec = min(self.prec + other._veff(), other.prec + self._veff())
        ring = self.ring
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= prec:
                    continue
                prev = out.get(e)
                t = ring.mul(c1, c2)
                out[e] = t if prev is None else ring.add(prev, t)
        return TruncSeries(ring, out, prec)

    def scale(self, c):
        """Multiply by a ring scalar (or int)."""
        if isinstance(c, int):
            c = self.ring.of_int(c)
        return TruncSeries(self.ring, {e: self.ring.mul(v, c) for e, v in self.coeffs.items()},
                           self.prec)

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by u^k."""
        return TruncSeries(self.ring, {e + k: c for e, c in self.coeffs.items()},
                           self.prec + k)

    def truncate(self, prec):
        return TruncSeries(self.ring, self.coeffs, min(prec, self.prec))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries) or other.ring != self.ring:
            return NotImplemented
        prec = min(self.prec, other.prec)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.ring.eq(self.coeffs.get(e, self.ring.zero),
                                other.coeffs.get(e, self.ring.zero))
                   for e in keys if e < prec)

    def __hash__(self):
        raise TypeError("TruncSeries equality is precision-relative; not hashable")

    def __repr__(self):
        terms = [f"{c!r}*u^{e}" for e, c in sorted(self.coeffs.items())[:6]]
        if len(self.coeffs) > 6:
            terms.append("...")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O(u^{self.prec}) over {self.ring!r}>"

    # --- calculus ---

    def derivative(self):
        ring = self.ring
        out = {}
        for e, c in self.coeffs.items():
            if e != 0:
                out[e - 1] = ring.mul(ring.of_int(e), c)
        return TruncSeries(ring, out, self.prec - 1)

    def frobenius(self, p: int | None = None):
        """u -> u^p with the coefficient Frobenius; exact, so the
        precision multiplies by p."""
        if p is None:
            p = getattr(self.ring, "p", None)
            if p is None:
                raise ValueError("specify p for this coefficient ring")
        return TruncSeries(self.ring, {p * e: self.ring.frob(c) for e, c in self.coeffs.items()},
                           p * self.prec)

    def inverse(self):
        """Inverse of a unit in the truncated Laurent ring.

        Over a field: geometric series.  Over Z/p^n: the mod-p
        reduction must be nonzero; Newton iteration then lifts the
        mod-p inverse.
        """
        ring = self.ring
        if isinstance(ring, (FFRing, QRing)):
            v, lead = self.leading()
            linv = ring.inv(lead)
            # f = lead u^v (1 + w); 1/f = lead^-1 u^-v sum (-w)^k
            w = (self.shift(-v).scale(linv) - TruncSeries.one(ring, self.prec - v))
            acc = TruncSeries.one(ring, self.prec - v)
            term = TruncSeries.one(ring, self.prec - v)
            wv = w._veff()
            if wv <= 0:
                raise ValueError("not normalized")
            k = 0
            while k * wv < self.prec - v:
                term = term * (-w)
                acc = acc + term
                k += 1
            return acc.scale(linv).shift(-v).truncate(self.prec - 2 * v)
        if isinstance(ring, Zmod):
            fbar = self.reduce_mod_p()
            if fbar.is_zero():
                raise ZeroDivisionError("not a unit: zero mod p")
            y = lift_mod_p(fbar.inverse(), ring)
            # Newton doubling in the p-adic direction
            steps = max(1, (ring.n - 1).bit_length())
            two = TruncSeries(ring, {0: ring.of_int(2)}, y.prec)
            for _ in range(steps):
                y = y * (two - self * y)
            return y
        raise ValueError(f"no inversion over {ring!r}")

    def reduce_mod_p(self) -> "TruncSeries":
        """Reduction to F_p (ring must be Zmod)."""
        if not isinstance(self.ring, Zmod):
            raise ValueError("reduce_mod_p needs a Zmod coefficient ring")
        target = FFRing(gf.prime_field(self.ring.p))
        return TruncSeries(target, {e: target.of_int(c) for e, c in self.coeffs.items()},
                           self.prec)


def lift_mod_p(f: TruncSeries, target: Zmod) -> TruncSeries:
    """Lift an F_p-coefficient series into Z/p^n by coefficient codes."""
    fld = f.ring.field
    return TruncSeries(target, {e: target.of_int(fld.code(c)) for e, c in f.coeffs.items()},
                       f.prec)


def map_to_field(f: TruncSeries, target_ring: FFRing) -> TruncSeries:
    """Coerce coefficients into a (larger) finite field."""
    return TruncSeries(target_ring,
                       {e: target_ring.field.coerce(c) for e, c in f.coeffs.items()},
                       f.prec)


# ---------------------------------------------------------------------------
# Newton polygons


def newton_polygon(points):
    """Slopes of the Newton polygon of a polynomial, given as pairs
    (index, valuation of coefficient), valuation None meaning +infinity.

    Returns [(root valuation, multiplicity)] with valuations
    nondecreasing; factors u^k (zero low coefficients) are stripped
    first, consistent with reading off valuations of roots.
    """
    pts = [(i, v) for i, v in points if v is not None]
    if not pts:
        raise ValueError("zero polynomial")
    pts.sort()
    deg = max(i for i, _ in pts)
    order = min(i for i, _ in pts)
    # lower convex hull (Andrew monotone chain, exact rationals)
    hull = []
    for pt in pts:
        x, y = Fraction(pt[0]), Fraction(pt[1])
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        out.append((-slope, int(x2 - x1)))
    out.reverse()  # root valuations in nondecreasing order
    assert sum(m for _, m in out) == deg - order
    return out


def newton_polygon_of_series_poly(coeffs, vp):
    """Convenience wrapper: coeffs[i] with a valuation function vp
    (None for zero)."""
    return newton_polygon([(i, vp(c)) for i, c in enumerate(coeffs)])


def merge_polygons(np1, np2):
    """Newton polygon of a product: concatenate and sort slopes."""
    slopes = []
    for s, m in np1 + np2:
        slopes.extend([s] * m)
    slopes.sort()
    out = []
    for s in slopes:
        if out and out[-1][0] == s:
            out[-1][1] += 1
        else:
            out.append([s, 1])
    return [(s, m) for s, m in out]


# ---------------------------------------------------------------------------
# Weierstrass preparation over Z/p^n [[u]]


def weierstrass(f: TruncSeries):
    """Write f = unit * (u^d + p*(lower degree)) over Z/p^n[[u]].

    d is the u-valuation of f mod p; fails if f = 0 mod p at this
    truncation.  The factorization is exact at the truncation.
    """
    ring = f.ring
    if not isinstance(ring, Zmod):
        raise ValueError("weierstrass preparation works over Z/p^n")
    if any(e < 0 for e in f.coeffs):
        raise ValueError("weierstrass preparation needs nonnegative exponents")
    fbar = f.reduce_mod_p()
    if fbar.is_zero():
        raise ValueError("f = 0 mod p: Weierstrass degree undefined at truncation")
    d = fbar.valuation()
    fp = gf.prime_field(ring.p)
    ubar_inv = fbar.shift(-d)
    unit = lift_mod_p(ubar_inv, ring)
    dist = TruncSeries.monomial(ring, d, ring.one, f.prec)
    ubar_inv_inv = ubar_inv.inverse()
    for k in range(1, ring.n):
        err = f - unit * dist
        eps = _divide_out_p(err, k)
        if eps.is_zero():
            continue
        q = eps * ubar_inv_inv
        dP = TruncSeries(q.ring, {e: c for e, c in q.coeffs.items() if e < d}, q.prec)
        dU = TruncSeries(q.ring, {e - d: c for e, c in q.coeffs.items() if e >= d},
                         q.prec - d) * ubar_inv
        pk = ring.of_int(ring.p ** k)
        dist = dist + lift_mod_p(dP, ring).scale(pk)
        unit = unit + lift_mod_p(dU, ring).scale(pk)
    return unit, dist


def _divide_out_p(f: TruncSeries, k: int) -> TruncSeries:
    """(f / p^k) mod p for a Zmod series with all coefficients in p^k Z."""
    ring: Zmod = f.ring
    q = ring.p ** k
    target = FFRing(gf.prime_field(ring.p))
    out = {}
    for e, c in f.coeffs.items():
        if c % q:
            raise ArithmeticError("series not divisible by p^k")
        out[e] = target.of_int(c // q)
    return TruncSeries(target, out, f.prec)


# ---------------------------------------------------------------------------
# Eisenstein data and the operators lambda, N_nabla


class EisensteinPoly:
    """E(u) = u^e + p(...) with constant term p*c, c a p-adic unit.

    Coefficients are exact integers (the W(F_p)-coefficient case, which
    is all the desk needs).
    """

    def __init__(self, p: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be >= 1")
        if coeffs[-1] != 1:
            raise ValueError("E must be monic")
        if any(c % p for c in coeffs[:-1]):
            raise ValueError("non-leading coefficients must be divisible by p")
        if (coeffs[0] // p) % p == 0:
            raise ValueError("E(0)/p must be a unit")
        self.p = p
        self.coeffs = coeffs
        self.e = len(coeffs) - 1

    @property
    def c_unit(self) -> int:
        return self.coeffs[0] // self.p

    def constant(self) -> int:
        return self.coeffs[0]

    def as_series(self, ring, prec) -> TruncSeries:
        return TruncSeries.from_int_coeffs(ring, self.coeffs, prec)

    def __repr__(self):
        return f"Eisenstein(p={self.p}, coeffs={self.coeffs})"


def lambda_factor_count(E: EisensteinPoly, M: int) -> int:
    """Smallest K such that the K-factor partial product is exact to
    O(u^M): factor k is 1 + O(u^(e p^k))."""
    K = 0
    while E.e * E.p ** K < M:
        K += 1
    return K


def kisin_lambda(E: EisensteinPoly, M: int) -> TruncSeries:
    """The truncated product over k of phi^k(E(u)/E(0)), the fixed
    point of f -> (E(u)/E(0)) phi(f) with constant term 1.

    Coefficients are exact rationals with p-power denominators.
    """
    ring = QRing(E.p)
    E0 = Fraction(E.constant())
    acc = TruncSeries.one(ring, M)
    for k in range(lambda_factor_count(E, M)):
        q = E.p ** k
        factor = TruncSeries(ring, {j * q: Fraction(cj) / E0
                                    for j, cj in enumerate(E.coeffs)}, M)
        acc = acc * factor
    return acc.truncate(M)


def lambda_residual(E: EisensteinPoly, lam: TruncSeries) -> TruncSeries:
    """(E/p) phi(lam) - c*lam; zero at truncation iff lam solves the
    defining equation (E/E(0)) phi(lam) = lam."""
    ring = lam.ring
    Eser = E.as_series(ring, lam.prec)
    lhs = Eser * lam.frobenius(E.p)
    lhs = TruncSeries(ring, {e: c / E.p for e, c in lhs.coeffs.items()}, lhs.prec)
    rhs = lam.scale(Fraction(E.c_unit))
    return (lhs - rhs).truncate(min(lam.prec, lhs.prec))


def n_nabla(f: TruncSeries, E: EisensteinPoly, lam: TruncSeries | None = None) -> TruncSeries:
    """The derivation -u * lambda * df/du.

    Satisfies the Leibniz rule, and intertwines with Frobenius as
    N(phi(f)) = p * (E/E(0)) * phi(N(f)) exactly at truncation.
    """
    if lam is None:
        lam = kisin_lambda(E, f.prec)
    df = f.derivative()
    return -(df.shift(1) * lam)


def n_nabla_commutation_defect(f: TruncSeries, E: EisensteinPoly,
                               lam: TruncSeries | None = None) -> TruncSeries:
    """N(phi(f)) - p (E/E(0)) phi(N(f)); identically zero at truncation."""
    ring = f.ring
    if lam is None:
        lam = kisin_lambda(E, max(f.prec * E.p, f.prec))
    lhs = n_nabla(f.frobenius(E.p), E, lam)
    nf = n_nabla(f, E, lam)
    Eser = E.as_series(ring, lhs.prec)
    rhs = Eser * nf.frobenius(E.p)
    rhs = TruncSeries(ring, {e: c / E.c_unit for e, c in rhs.coeffs.items()}, rhs.prec)
    return (lhs - rhs).truncate(min(lhs.prec, rhs.prec))


def s_nabla_member(f: TruncSeries, e: int) -> bool:
    """Membership in the module of series sum_n P_n(u)/p^(n+1) *
    u^(e(p^n-1)/(p-1)): at exponent k the allowed p-denominator is
    n(k) + 1 where n(k) = max { n >= 0 : e(p^n-1)/(p-1) <= k }."""
    ring = f.ring
    if not isinstance(ring, QRing):
        raise ValueError("membership test expects exact rational coefficients")
    p = ring.p
    for k, c in f.coeffs.items():
        v = ring.vp(c)
        if v is None or v >= 0:
            continue
        if k < 0:
            return False
        nk = 0
        while e * (p ** (nk + 1) - 1) // (p - 1) <= k:
            nk += 1
        if -v > nk + 1:
            return False
    return True


class TruncSeriesRing:
    """Coefficient-ring adapter: Witt vectors over F_q[[u]]-truncations.

    The Frobenius here is the imperfect one (coefficientwise p-th power
    with u -> u^p); it is a ring map but not surjective, so p-th roots
    of coordinates are generally unavailable, unlike the
    fractional-exponent model.
    """

    char_p = True

    def __init__(self, base: FFRing, prec: int):
        self.base = base
        self.p = base.p
        self.prec = prec
        self.zero = TruncSeries.zero(base, prec)
        self.one = TruncSeries.one(base, prec)

    def of_int(self, k):
        return TruncSeries(self.base, {0: self.base.of_int(k)}, self.prec)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def is_unit(self, a):
        return a.valuation() == 0

    def inv(self, a):
        return a.inverse()

    def frob(self, a):
        return a.frobenius(self.p).truncate(self.prec)

    def __eq__(self, other):
        return isinstance(other, TruncSeriesRing) and self.base == other.base \
            and self.prec == other.prec

    def __hash__(self):
        return hash(("TruncSeriesRing", self.base, self.prec))

    def __repr__(self):
        return f"W-coeff({self.base!r}[[u]]/u^{self.prec})"
