"""Coefficient-ring adapters.

Witt vectors and truncated series are generic over a small ring
protocol: constants, arithmetic, equality, a coefficient Frobenius, and
unit handling.  Four concrete rings cover the desk:

  Zmod(p, n)   Z/p^n with plain int residues (this is W_n(F_p));
  IntRing()    exact integers, the p-torsion-free ghost oracle;
  QRing(p)     rationals with p-adic valuation bookkeeping;
  FFRing(F)    a finite field from padiclab.gf.
"""

from __future__ import annotations

from fractions import Fraction

from .gf import GF, FFElt


class Zmod:
    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.modulus = p ** n
        self.zero = 0
        self.one = 1 % self.modulus
        self.char_p = (n == 1)

    def of_int(self, k):
        return k % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_zero(self, a):
        return a % self.modulus == 0

    def eq(self, a, b):
        return (a - b) % self.modulus == 0

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def frob(self, a):
        # sigma on W(F_p) is the identity
        return a % self.modulus

    def reduce_ints(self, a):
        return a % self.modulus

    def __repr__(self):
        return f"Z/{self.p}^{self.n}"

    def __eq__(self, other):
        return isinstance(other, Zmod) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("Zmod", self.p, self.n))


class IntRing:
    """Exact integers; used as the torsion-free lift when checking Witt
    laws against ghost components."""

    zero = 0
    one = 1
    char_p = False

    def of_int(self, k):
        return k

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def frob(self, a):
        return a

    def __repr__(self):
        return "Z"


class QRing:
    """Rationals viewed inside Q_p: unit means p-adic valuation zero."""

    zero = Fraction(0)
    one = Fraction(1)
    char_p = False

    def __init__(self, p: int):
        self.p = p

    def of_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def vp(self, a: Fraction):
        if a == 0:
            return None
        v = 0
        num, den = a.numerator, a.denominator
        while num % self.p == 0:
            num //= self.p
            v += 1
        while den % self.p == 0:
            den //= self.p
            v -= 1
        return v

    def is_unit(self, a):
        return a != 0 and self.vp(a) == 0

    def inv(self, a):
        return 1 / a

    def frob(self, a):
        return a

    def __repr__(self):
        return f"Q(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, QRing) and self.p == other.p

    def __hash__(self):
        return hash(("QRing", self.p))


class FFRing:
    char_p = True

    def __init__(self, field: GF):
        self.field = field
        self.p = field.p
        self.zero = field.zero
        self.one = field.one

    def of_int(self, k):
        return self.field.el(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def is_unit(self, a):
        return bool(a)

    def inv(self, a):
        return a.inverse()

    def frob(self, a: FFElt):
        return self.field.frob_p(a)

    def __repr__(self):
        return f"FF({self.field.tag})"

    def __eq__(self, other):
        return isinstance(other, FFRing) and self.field is other.field

    def __hash__(self):
        return hash(("FFRing", id(self.field)))
