"""The skew field of fractions F(D; sigma, delta) via standard fractions f * g^-1."""

from __future__ import annotations

from .euclid import gcld_ext, gcrd
from .ore import OrePoly
from .scalar import NEG_INF, RingSpec


class SkewFraction:
    """f * g^-1 with gcrd(f, g) = 1 and g monic; zero is 0 * 1^-1.

    Reduced standard fractions are unique up to a common right unit of F,
    which the monic denominator pins down, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: OrePoly, den: OrePoly | None = None):
        if den is None:
            den = OrePoly.one(num.ring)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in skew fraction")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: OrePoly, den: OrePoly) -> "SkewFraction":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_ore(cls, f: OrePoly) -> "SkewFraction":
        return cls._raw(f, OrePoly.one(f.ring))

    @classmethod
    def zero(cls, ring: RingSpec) -> "SkewFraction":
        return cls._raw(OrePoly.zero(ring), OrePoly.one(ring))

    @classmethod
    def one(cls, ring: RingSpec) -> "SkewFraction":
        return cls._raw(OrePoly.one(ring), OrePoly.one(ring))

    @property
    def ring(self) -> RingSpec:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def degree(self):
        if self.num.is_zero():
            return NEG_INF
        return self.num.degree - self.den.degree

    # arithmetic ----------------------------------------------------------

    def __add__(self, other: "SkewFraction") -> "SkewFraction":
        other = _coerce(other, self.ring)
        self.num._check(other.num)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den.is_one() and other.den.is_one():
            return SkewFraction._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return SkewFraction(self.num + other.num, self.den)
        # w = lcrm(g_x, g_y) = g_x * s = g_y * (-t)
        cert = gcld_ext(self.den, other.den)
        num = self.num * cert.s - other.num * cert.t
        return SkewFraction(num, cert.m)

    def __neg__(self) -> "SkewFraction":
        return SkewFraction._raw(-self.num, self.den)

    def __sub__(self, other: "SkewFraction") -> "SkewFraction":
        return self + (-_coerce(other, self.ring))

    def __mul__(self, other: "SkewFraction") -> "SkewFraction":
        other = _coerce(other, self.ring)
        self.num._check(other.num)
        if self.is_zero() or other.is_zero():
            return SkewFraction.zero(self.ring)
        f, g, u, v = self.num, self.den, other.num, other.den
        if g.is_one():
            if v.is_one():
                return SkewFraction._raw(f * u, v)
            return SkewFraction(f * u, v)
        # g^-1 u = s (-t)^-1 where g s = -u t = lcrm(g, u)
        cert = gcld_ext(g, u)
        return SkewFraction(f * cert.s, -(v * cert.t))

    def inv(self) -> "SkewFraction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero skew fraction")
        return SkewFraction(self.den, self.num)

    def __truediv__(self, other: "SkewFraction") -> "SkewFraction":
        return self * _coerce(other, self.ring).inv()

    def __eq__(self, other):
        if not isinstance(other, SkewFraction):
            if isinstance(other, OrePoly):
                other = SkewFraction.from_ore(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


def _coerce(x, ring) -> SkewFraction:
    if isinstance(x, SkewFraction):
        return x
    if isinstance(x, OrePoly):
        return SkewFraction.from_ore(x)
    return SkewFraction.from_ore(OrePoly.const(x, ring))


def _normalize(num: OrePoly, den: OrePoly):
    ring = num.ring
    if num.is_zero():
        return OrePoly.zero(ring), OrePoly.one(ring)
    if den.degree > 0:
        g = gcrd(num, den)
        if g.degree > 0:
            num, r1 = num.right_divmod(g)
            den, r2 = den.right_divmod(g)
            assert r1.is_zero() and r2.is_zero()
    if den.is_one():
        return num, den
    c = ring.sigma_pow(den.lc().inv(), -den.degree)
    if den.degree == 0:
        return num.scale_right(c), OrePoly.one(ring)
    return num.scale_right(c), den.scale_right(c)


def sf_add(x: SkewFraction, y: SkewFraction) -> SkewFraction:
    return x + y


def sf_mul(x: SkewFraction, y: SkewFraction) -> SkewFraction:
    return x * y


def sf_inv(x: SkewFraction) -> SkewFraction:
    return x.inv()


def sf_deg(x: SkewFraction):
    return x.degree()
