"""Exact scalar fields: the rationals and prime fields GF(p).

Elements are plain :class:`fractions.Fraction` in rational mode and
:class:`Residue` objects in GF(p) mode.  Both support the usual arithmetic
operators and compare equal to Python ints, so the rest of the package is
written against operators only.
"""

from __future__ import annotations

from fractions import Fraction


class Residue:
    """A residue class modulo a prime, canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError("mixing residues of different moduli")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Residue({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field Q with exact :class:`Fraction` elements."""

    name = "rational"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf:{p}"
        self.characteristic = p

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise ValueError("residue from another field")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Residue(int(x), self.p)

    @property
    def zero(self) -> Residue:
        return Residue(0, self.p)

    @property
    def one(self) -> Residue:
        return Residue(1, self.p)

    def format(self, x) -> str:
        return str(self(x).v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def parse_field(spec: str):
    """``"rational"`` or ``"gf:p"``."""
    spec = spec.strip().lower()
    if spec in ("rational", "q", "qq"):
        return QQ
    if spec.startswith("gf:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}")


def rational_reconstruct(a: int, p: int) -> Fraction | None:
    """Smallest-height fraction n/d with n = a*d mod p, or None.

    Standard half-extended Euclid with bound sqrt(p/2).
    """
    a %= p
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)
