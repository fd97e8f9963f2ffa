"""The Galois action on truncated two-variable series k((u, eta)) and
mod-p modules carrying a semilinear tau on top of phi.

A group element g acts through the substitution

    u   ->  u (1 + eta)^c(g)
    eta ->  (1 + eta)^chi(g) - 1

with p-adic exponents expanded by integer-valued binomials mod p
(Lucas).  Monomials u^i eta^j are truncated by a configurable weight;
eta's natural weight e*p/(p-1) is available but the default treats both
variables as weight one.

The commutation law (g (x) id) o tau_M = tau_M^(chi_tau(g)) on module
elements is an executable check here; tau_M^a for p-adic a is defined
through a verified p-power order of tau_M at the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gskel
from .errors import Indeterminate, PrecisionError
from .gf import GF
from .gskel import GaloisElt
from .padic import PadicInt
from .rings import FFRing
from .series import TruncSeries


class BivarSeries:
    __slots__ = ("field", "wu", "weta", "coeffs", "prec")

    def __init__(self, field: GF, coeffs: dict, prec, wu=1, weta=1):
        self.field = field
        self.wu = Fraction(wu)
        self.weta = Fraction(weta)
        self.prec = Fraction(prec)
        clean = {}
        for (i, j), c in coeffs.items():
            if j < 0:
                raise ValueError("eta-exponents are nonnegative")
            if c and i * self.wu + j * self.weta < self.prec:
                key = (i, j)
                clean[key] = clean[key] + c if key in clean else c
        self.coeffs = {k: c for k, c in clean.items() if c}

    def _like(self, coeffs, prec):
        return BivarSeries(self.field, coeffs, prec, self.wu, self.weta)

    def weight(self, i, j):
        return i * self.wu + j * self.weta

    def min_weight(self):
        if not self.coeffs:
            return None
        return min(self.weight(i, j) for i, j in self.coeffs)

    def _veff(self):
        w = self.min_weight()
        return self.prec if w is None else w

    def is_zero(self):
        return not self.coeffs

    def _compat(self, other):
        if not isinstance(other, BivarSeries) or other.field is not self.field \
                or (other.wu, other.weta) != (self.wu, self.weta):
            raise ValueError("bivariate series from different models")

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, self.field.zero) + c
        return self._like(out, min(self.prec, other.prec))

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivarSeries):
            return self.scale(other)
        self._compat(other)
        prec = min(self.prec + other._veff(), other.prec + self._veff())
        out: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                if self.weight(*key) >= prec:
                    continue
                t = c1 * c2
                out[key] = out[key] + t if key in out else t
        return self._like(out, prec)

    def scale(self, c):
        if isinstance(c, int):
            c = self.field.el(c)
        return self._like({k: v * c for k, v in self.coeffs.items()}, self.prec)

    __rmul__ = __mul__

    def truncate(self, prec):
        return self._like(self.coeffs, min(Fraction(prec), self.prec))

    def frobenius(self):
        p = self.field.p
        return self._like({(p * i, p * j): c ** p for (i, j), c in self.coeffs.items()},
                          p * self.prec)

    def eta_free_part(self) -> TruncSeries | None:
        """The series as a one-variable object, or None if eta occurs."""
        if any(j for (_, j) in self.coeffs):
            return None
        ring = FFRing(self.field)
        # one-variable precision: exponents i with i*wu < prec are tracked
        prec_u = int(self.prec / self.wu) if self.wu else 10 ** 9
        return TruncSeries(ring, {i: c for (i, _), c in self.coeffs.items()}, prec_u)

    def __eq__(self, other):
        if not isinstance(other, BivarSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.field.zero
        return all(self.coeffs.get(k, z) == other.coeffs.get(k, z)
                   for k in keys if self.weight(*k) < prec)

    def __hash__(self):
        raise TypeError("precision-relative equality; not hashable")

    def __repr__(self):
        items = sorted(self.coeffs.items())[:6]
        body = " + ".join(f"{c!r}*u^{i}eta^{j}" for (i, j), c in items) or "0"
        if len(self.coeffs) > 6:
            body += " + ..."
        return f"<{body} + O(weight {self.prec})>"


def bivar_from_series(f: TruncSeries, prec, wu=1, weta=1) -> BivarSeries:
    fld = f.ring.field
    return BivarSeries(fld, {(e, 0): c for e, c in f.coeffs.items()},
                       min(Fraction(prec), Fraction(f.prec) * Fraction(wu)), wu, weta)


def bivar_one(field: GF, prec, wu=1, weta=1) -> BivarSeries:
    return BivarSeries(field, {(0, 0): field.one}, prec, wu, weta)


# ---------------------------------------------------------------------------


def _binom_lucas(z: int, k: int, p: int) -> int:
    """C(z, k) mod p by Lucas, z given as a (sufficiently long) lift."""
    out = 1
    while k:
        zd, kd = z % p, k % p
        z //= p
        k //= p
        if kd > zd:
            return 0
        num = den = 1
        for t in range(kd):
            num = num * (zd - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, -1, p) % p
    return out


def binom_power(z, field: GF, prec, wu=1, weta=1) -> BivarSeries:
    """(1 + eta)^z truncated by weight; z may be an int, Fraction in
    Z_(p), or PadicInt with enough tracked digits."""
    p = field.p
    weta = Fraction(weta)
    kmax = int(Fraction(prec) / weta) + 1
    if isinstance(z, PadicInt):
        digits_needed = 1
        k = kmax
        while k >= p:
            k //= p
            digits_needed += 1
        if z.prec < digits_needed:
            raise PrecisionError(
                f"exponent needs {digits_needed} base-{p} digits, has {z.prec}")
        zlift = z.residue
    elif isinstance(z, Fraction):
        if z.denominator % p == 0:
            raise ValueError("exponent not a p-adic integer")
        big = p ** (len(bin(kmax)) + 4)
        zlift = z.numerator * pow(z.denominator, -1, big) % big
    else:
        zlift = int(z) % p ** (kmax.bit_length() + 4)
    coeffs = {}
    for k in range(kmax + 1):
        c = _binom_lucas(zlift, k, p)
        if c:
            coeffs[(0, k)] = field.el(c)
    return BivarSeries(field, coeffs, prec, wu, weta)


def galois_act(g: GaloisElt, f: BivarSeries) -> BivarSeries:
    """Substitute u -> u(1+eta)^c(g), eta -> (1+eta)^chi(g) - 1.

    Ring endomorphism; composing actions matches the group law:
    act(g, act(h, x)) = act(mul(g, h), x).
    """
    fld = f.field
    one = bivar_one(fld, f.prec, f.wu, f.weta)
    P = binom_power(g.chi, fld, f.prec, f.wu, f.weta) - one  # image of eta
    ppow_cache = {0: one}
    bin_cache: dict = {}
    out = BivarSeries(fld, {}, f.prec, f.wu, f.weta)
    for (i, j), c in sorted(f.coeffs.items()):
        if j not in ppow_cache:
            jprev = max(k for k in ppow_cache if k <= j)
            cur = ppow_cache[jprev]
            for t in range(jprev, j):
                cur = cur * P
                ppow_cache[t + 1] = cur
        exponent = g.c * i
        key = exponent.residue % exponent.p ** exponent.prec
        if key not in bin_cache:
            bin_cache[key] = binom_power(exponent, fld, f.prec - 0, f.wu, f.weta)
        term = bin_cache[key] * ppow_cache[j]
        shifted = BivarSeries(fld, {(a + i, b): v for (a, b), v in term.coeffs.items()},
                              term.prec + i * f.wu, f.wu, f.weta)
        out = out + shifted.scale(c)
    return out.truncate(f.prec)


# ---------------------------------------------------------------------------


@dataclass
class PhiTauModP:
    """Mod-p module with a Frobenius matrix G (one-variable) and a
    tau-matrix T over the bivariate model."""

    p: int
    d: int
    G: list           # d x d TruncSeries over F_q
    T: list           # d x d BivarSeries
    tau: GaloisElt
    order_cap: int = 6

    def model(self) -> BivarSeries:
        return self.T[0][0]

    def phi_apply(self, x):
        """phi_M on a coordinate vector of BivarSeries."""
        Gb = [[bivar_from_series(a, self.model().prec, self.model().wu,
                                 self.model().weta) for a in row] for row in self.G]
        fx = [xi.frobenius().truncate(self.model().prec) for xi in x]
        return [_dot(Gb[i], fx) for i in range(self.d)]

    def tau_apply(self, x):
        tx = [galois_act(self.tau, xi) for xi in x]
        return [_dot(self.T[i], tx) for i in range(self.d)]

    def _compose(self, op1, op2):
        """(T1, g1) after (T2, g2): x -> T1 g1(T2 g2(x))."""
        T1, g1 = op1
        T2, g2 = op2
        T2g = [[galois_act(g1, a) for a in row] for row in T2]
        Tm = [[_sum([T1[i][k] * T2g[k][j] for k in range(self.d)])
               for j in range(self.d)] for i in range(self.d)]
        return (Tm, gskel.mul(g1, g2))

    def tau_operator_power(self, k: int):
        """tau_M^k as a (matrix, group element) pair, by binary
        composition."""
        base = (self.T, self.tau)
        result = None
        while k:
            if k & 1:
                result = base if result is None else self._compose(result, base)
            k >>= 1
            if k:
                base = self._compose(base, base)
        if result is None:
            one = bivar_one(self.model().field, self.model().prec,
                            self.model().wu, self.model().weta)
            zero = BivarSeries(self.model().field, {}, self.model().prec,
                               self.model().wu, self.model().weta)
            ident = [[one if i == j else zero for j in range(self.d)]
                     for i in range(self.d)]
            result = (ident, gskel.identity(self.p, self.tau.c.prec))
        return result

    def _is_identity_op(self, op) -> bool:
        T, g = op
        fld = self.model().field
        one = bivar_one(fld, self.model().prec, self.model().wu, self.model().weta)
        for i in range(self.d):
            for j in range(self.d):
                want = one if i == j else BivarSeries(fld, {}, self.model().prec,
                                                      self.model().wu, self.model().weta)
                if not (T[i][j] == want):
                    return False
        # the substitution must fix u and eta at truncation
        u = BivarSeries(fld, {(1, 0): fld.one}, self.model().prec,
                        self.model().wu, self.model().weta)
        eta = BivarSeries(fld, {(0, 1): fld.one}, self.model().prec,
                          self.model().wu, self.model().weta)
        return galois_act(g, u) == u and galois_act(g, eta) == eta

    def tau_order_exponent(self) -> int:
        """Smallest t with tau_M^(p^t) = id at this truncation."""
        for t in range(self.order_cap + 1):
            if self._is_identity_op(self.tau_operator_power(self.p ** t)):
                return t
        raise Indeterminate(f"tau_M^(p^t) not identity for t <= {self.order_cap}")

    def tau_power_apply(self, a, x):
        """tau_M^a for p-adic a, through the verified p-power order."""
        if isinstance(a, PadicInt):
            t = self.tau_order_exponent()
            if a.prec < t:
                raise Indeterminate("exponent precision below the order exponent")
            a = a.residue % self.p ** t
        T, g = self.tau_operator_power(a)
        gx = [galois_act(g, xi) for xi in x]
        return [_dot(T[i], gx) for i in range(self.d)]


def _dot(row, vec):
    acc = row[0] * vec[0]
    for a, b in zip(row[1:], vec[1:]):
        acc = acc + a * b
    return acc


def _sum(terms):
    acc = terms[0]
    for t in terms[1:]:
        acc = acc + t
    return acc


def trivial_restriction_module(tau_T, s: int, field: GF, tau: GaloisElt,
                               prec, wu=1, weta=1, order_cap: int = 6) -> PhiTauModP:
    """Module with trivial Frobenius part: G = id, tau-matrix the given
    constant matrix tensored with the coefficient action.

    tau_T must have exact p-power order <= p^s.
    """
    p = field.p
    d = len(tau_T)
    ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    acc = [row[:] for row in tau_T]
    order = None
    for k in range(1, p ** s + 1):
        if acc == ident:
            order = k
            break
        acc = [[sum(acc[i][t] * tau_T[t][j] for t in range(d)) % p
                for j in range(d)] for i in range(d)]
    if order is None:
        raise ValueError(f"tau_T has no order <= p^{s}")
    o = order
    while o % p == 0:
        o //= p
    if o != 1:
        raise ValueError(f"tau_T has order {order}, not a power of p")
    ring = FFRing(field)
    uprec = int(Fraction(prec) / Fraction(wu))
    G = [[TruncSeries.one(ring, uprec) if i == j else TruncSeries.zero(ring, uprec)
          for j in range(d)] for i in range(d)]
    T = [[BivarSeries(field, {(0, 0): field.el(tau_T[i][j])}, prec, wu, weta)
          for j in range(d)] for i in range(d)]
    return PhiTauModP(p, d, G, T, tau, order_cap)


def check_commutation(M: PhiTauModP, g: GaloisElt, x) -> bool:
    """(g (x) id) o tau_M (x) = tau_M^(chi_tau(g)) (x) for a module
    element x (coordinates free of eta)."""
    lhs = [galois_act(g, v) for v in M.tau_apply(x)]
    a = gskel.chi_tau(g, M.tau)
    rhs = M.tau_power_apply(a, x)
    return all(l == r for l, r in zip(lhs, rhs))


def check_phi_tau_commute(M: PhiTauModP, x) -> bool:
    lhs = M.tau_apply(M.phi_apply(x))
    rhs = M.phi_apply(M.tau_apply(x))
    return all(l == r for l, r in zip(lhs, rhs))
