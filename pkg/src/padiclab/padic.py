"""Exact arithmetic in Z/p^N with precision tracking.

The substrate for every p-adic scalar in the library: truncated p-adic
integers, the Iwasawa logarithm and exponential on the relevant unit
balls, q-analogues [a]_q = (q^a - 1)/(q - 1) and their inverse
bijection.  p = 2 is rejected everywhere; the convergence arguments
used here need p odd.

Precision model: every value carries its own precision N; binary
operations take the min; dividing by p^k costs k digits.  All
arithmetic is on exact integer residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from .errors import PrecisionError

INFINITY = inf


def _check_p(p: int):
    if p == 2:
        raise ValueError("p = 2 is not supported")
    if p < 3 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")


@dataclass(frozen=True)
class PadicInt:
    """Integer mod p^N, N = tracked precision."""

    p: int
    prec: int
    residue: int

    def __post_init__(self):
        _check_p(self.p)
        if self.prec < 1:
            raise PrecisionError("precision exhausted")
        object.__setattr__(self, "residue", self.residue % self.p ** self.prec)

    # -- ring structure (min-precision semantics) --

    def _join(self, other: "PadicInt") -> int:
        if not isinstance(other, PadicInt):
            raise TypeError(f"expected PadicInt, got {other!r}")
        if other.p != self.p:
            raise ValueError("prime mismatch")
        return min(self.prec, other.prec)

    def __add__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, self.prec, other)
        n = self._join(other)
        return PadicInt(self.p, n, self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.prec, -self.residue)

    def __sub__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, self.prec, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, self.prec, other)
        n = self._join(other)
        return PadicInt(self.p, n, self.residue * other.residue)

    __rmul__ = __mul__

    def unit_inverse(self) -> "PadicInt":
        if self.residue % self.p == 0:
            raise ZeroDivisionError(f"{self} is not a unit")
        return PadicInt(self.p, self.prec,
                        pow(self.residue, -1, self.p ** self.prec))

    def divide(self, other: "PadicInt") -> "PadicInt":
        """Exact division; costs v(other) digits of precision."""
        n = self._join(other)
        v = other.valuation()
        if v is INFINITY:
            raise ZeroDivisionError("division by zero-at-precision")
        if self.valuation() is not INFINITY and self.valuation() < v:
            raise ValueError("quotient not p-integral")
        if v >= n:
            raise PrecisionError("division eats all tracked digits")
        q = self.p ** v
        unit = pow(other.residue // q, -1, self.p ** (n - v))
        return PadicInt(self.p, n - v, (self.residue // q) * unit)

    def __eq__(self, other):
        """Equality of residues at the min tracked precision."""
        if isinstance(other, int):
            other = PadicInt(self.p, self.prec, other)
        if not isinstance(other, PadicInt) or other.p != self.p:
            return NotImplemented
        n = min(self.prec, other.prec)
        q = self.p ** n
        return self.residue % q == other.residue % q

    def __hash__(self):
        return hash((self.p, self.residue % self.p))

    def valuation(self):
        return valuation(self)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def lower_precision(self, n: int) -> "PadicInt":
        if n > self.prec:
            raise PrecisionError("cannot raise precision")
        return PadicInt(self.p, n, self.residue)

    def lift(self) -> int:
        return self.residue

    def __repr__(self):
        return f"{self.residue} + O({self.p}^{self.prec})"


class PadicUnit(PadicInt):
    """A PadicInt whose residue is coprime to p."""

    def __post_init__(self):
        super().__post_init__()
        if self.residue % self.p == 0:
            raise ValueError(f"{self.residue} is not a unit mod {self.p}")

    def __hash__(self):
        return super().__hash__()


def as_unit(x: PadicInt) -> PadicUnit:
    return PadicUnit(x.p, x.prec, x.residue)


def valuation(x: PadicInt):
    """Largest k <= N with p^k | x; INFINITY when x = 0 at precision."""
    if x.residue == 0:
        return INFINITY
    v = 0
    r = x.residue
    while r % x.p == 0:
        r //= x.p
        v += 1
    return v


def _series_cutoff_log(p: int, n: int) -> int:
    # smallest I with I - floor(log_p I) >= n; i - log_p(i) is increasing,
    # so all terms beyond I vanish mod p^n when v(t) >= 1
    i = n
    while True:
        logp = 0
        k = i
        while k >= p:
            k //= p
            logp += 1
        if i - logp >= n:
            return i
        i += 1


def log_unit(x: PadicInt) -> PadicInt:
    """log on 1 + pZ/p^N: sum (-1)^(i+1) (x-1)^i / i, exact mod p^N.

    The result has the same valuation as x - 1 (p odd).
    """
    p, n = x.p, x.prec
    t = (x - 1).residue
    if t == 0:
        return PadicInt(p, n, 0)
    if t % p != 0:
        raise ValueError("log_unit needs x = 1 mod p")
    cutoff = _series_cutoff_log(p, n)
    mod = p ** n
    acc = 0
    tpow = 1
    for i in range(1, cutoff + 1):
        tpow = tpow * t  # exact integer power of the lift
        vi, iu = 0, i
        while iu % p == 0:
            iu //= p
            vi += 1
        term = (tpow // p ** vi) * pow(iu, -1, mod)
        if i % 2 == 0:
            term = -term
        acc = (acc + term) % mod
    return PadicInt(p, n, acc)


def exp_unit(y: PadicInt) -> PadicInt:
    """exp on pZ/p^N (enough for p odd: 1 > 1/(p-1)); result is 1 mod p."""
    p, n = y.p, y.prec
    t = y.residue
    if t % p != 0:
        raise ValueError("exp_unit needs v(y) >= 1")
    mod = p ** n
    acc = 1
    term_num = 1  # t^i as exact integer
    fact_v = 0    # v_p(i!)
    fact_u = 1    # unit part of i! mod big modulus
    big = p ** (2 * n + 4)
    # v(t^i/i!) >= i(p-2)/(p-1) >= i/2 for p odd, so 2n+4 terms suffice
    for i in range(1, 2 * n + 5):
        term_num *= t
        iv, iu = 0, i
        while iu % p == 0:
            iu //= p
            iv += 1
        fact_v += iv
        fact_u = (fact_u * iu) % big
        term = (term_num // p ** fact_v) * pow(fact_u, -1, mod)
        acc = (acc + term) % mod
    return PadicInt(p, n, acc)


def pow_unit(q: PadicInt, a: PadicInt) -> PadicInt:
    """q^a = exp(a log q) for q = 1 mod p and a in Z_p."""
    if isinstance(a, int):
        a = PadicInt(q.p, q.prec, a)
    return exp_unit(a * log_unit(q))


def q_analogue(a: PadicInt, q: PadicInt) -> PadicInt:
    """[a]_q: a itself if q = 1, else (q^a - 1)/(q - 1).

    Carries precision N - v(q-1); satisfies [a]_q = a mod p and
    v(a - 1) = v([a]_q - 1).
    """
    if isinstance(a, int):
        a = PadicInt(q.p, q.prec, a)
    if (q - 1).residue == 0:
        return a
    if (q - 1).residue % q.p != 0:
        raise ValueError("q must be 1 mod p")
    qa = pow_unit(q, a)
    return (qa - 1).divide(q - 1)


def q_analogue_inverse(b: PadicInt, q: PadicInt) -> PadicInt:
    """The unique a with [a]_q = b: log(1 + (q-1)b) / log(q)."""
    if isinstance(b, int):
        b = PadicInt(q.p, q.prec, b)
    if (q - 1).residue == 0:
        return b
    if (q - 1).residue % q.p != 0:
        raise ValueError("q must be 1 mod p")
    num = log_unit((q - 1) * b + 1)
    den = log_unit(q)
    return num.divide(den)


def chi_tau(chi_g: PadicInt, chi_tau_base: PadicInt) -> PadicUnit:
    """The unique a with [a]_{chi(tau)} = chi(g); a is a unit since
    a = [a]_q mod p."""
    if not chi_g.is_unit():
        raise ValueError("chi(g) must be a unit")
    a = q_analogue_inverse(chi_g, chi_tau_base)
    return as_unit(a)
