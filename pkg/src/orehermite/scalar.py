"""Exact arithmetic in Q and Q(z), and the ring data (sigma, delta) acting on Q(z).

Univariate polynomials over Q are python-flint ``fmpq_poly`` objects; a
:class:`RatFun` is a pair of them kept in canonical form (coprime, monic
denominator, zero stored as 0/1) so that equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from flint import fmpq, fmpq_poly

Rational = Fraction
UPoly = fmpq_poly

NEG_INF = float("-inf")

_ZERO_POLY = fmpq_poly([])
_ONE_POLY = fmpq_poly([1])
_Z_POLY = fmpq_poly([0, 1])


def to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return fmpq(c)
    raise TypeError(f"cannot convert {c!r} to a rational")


def to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def poly_deg(p: fmpq_poly):
    """Degree of ``p`` with the zero polynomial at -inf."""
    return NEG_INF if p.is_zero() else p.degree()


def rf_normalize(num: fmpq_poly, den: fmpq_poly) -> "RatFun":
    """Return the canonical representative of ``num/den``."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return RatFun._raw(_ZERO_POLY, _ONE_POLY)
    if den.degree() > 0:
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return RatFun._raw(num, den)


class RatFun:
    """An element of Q(z) in lowest terms with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        r = rf_normalize(_as_poly(num), _as_poly(den))
        self.num = r.num
        self.den = r.den
        self._hash = None

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> "RatFun":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def z(cls) -> "RatFun":
        return cls._raw(_Z_POLY, _ONE_POLY)

    @classmethod
    def from_coeffs(cls, num: Iterable, den: Iterable = (1,)) -> "RatFun":
        """Build from coefficient lists in ascending powers of z."""
        return cls(fmpq_poly([to_fmpq(c) for c in num]), fmpq_poly([to_fmpq(c) for c in den]))

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree() <= 0

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def deg_z(self):
        """max(deg num, deg den); -inf for zero."""
        if self.num.is_zero():
            return NEG_INF
        return max(self.num.degree(), self.den.degree())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return to_fraction(self.num[0])

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_one() and d2.is_one():
            return RatFun._raw(n1 + n2, _ONE_POLY)
        if d1 == d2:
            return rf_normalize(n1 + n2, d1)
        # Henrici: with g = gcd(d1, d2) only gcd(num, g) can be nontrivial
        g = d1.gcd(d2)
        if g.is_one():
            num = n1 * d2 + n2 * d1
            if num.is_zero():
                return ZERO
            return RatFun._raw(num, d1 * d2)
        d1g, d2g = d1 // g, d2 // g
        num = n1 * d2g + n2 * d1g
        if num.is_zero():
            return ZERO
        den = d1g * d2
        h = num.gcd(g)
        if not h.is_one():
            num, den = num // h, den // h
        return RatFun._raw(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFun._raw(_ZERO_POLY, _ONE_POLY)
        if self.den.is_one() and other.den.is_one():
            return RatFun._raw(self.num * other.num, _ONE_POLY)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = n1.gcd(d2)
        if not g1.is_one():
            n1, d2 = n1 // g1, d2 // g1
        g2 = n2.gcd(d1)
        if not g2.is_one():
            n2, d1 = n2 // g2, d1 // g2
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFun._raw(num, den)

    __rmul__ = __mul__

    def inv(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        lc = self.num.leading_coefficient()
        return RatFun._raw(self.den / lc, self.num / lc)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFun._raw(self.num ** k, self.den ** k)

    # comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def __str__(self):
        return format_ratfun(self)

    def __repr__(self):
        return f"RatFun({format_ratfun(self)})"


def _as_poly(x) -> fmpq_poly:
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, (int, Fraction, fmpq)):
        return fmpq_poly([to_fmpq(x)])
    if isinstance(x, (list, tuple)):
        return fmpq_poly([to_fmpq(c) for c in x])
    raise TypeError(f"cannot convert {x!r} to a polynomial")


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction, fmpq)):
        return RatFun._raw(fmpq_poly([to_fmpq(x)]), _ONE_POLY)
    if isinstance(x, fmpq_poly):
        return RatFun._raw(x, _ONE_POLY)
    return NotImplemented


def as_ratfun(x) -> RatFun:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to RatFun")
    return r


ZERO = RatFun._raw(_ZERO_POLY, _ONE_POLY)
ONE = RatFun._raw(_ONE_POLY, _ONE_POLY)


def rf_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_deg_z(a: RatFun):
    return a.deg_z()


# text form ----------------------------------------------------------------


def _format_rational(c: fmpq) -> str:
    if c.q == 1:
        return str(int(c.p))
    return f"{int(c.p)}/{int(c.q)}"


def format_poly(p: fmpq_poly) -> str:
    """Descending powers of z, e.g. ``2*z^2 - 1/2*z + 3``."""
    if p.is_zero():
        return "0"
    parts = []
    coeffs = p.coeffs()
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = _format_rational(a)
        else:
            mono = "z" if k == 1 else f"z^{k}"
            body = mono if a == 1 else f"{_format_rational(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def format_ratfun(a: RatFun) -> str:
    if a.den.is_one():
        return format_poly(a.num)
    return f"({format_poly(a.num)})/({format_poly(a.den)})"


# sigma / delta ------------------------------------------------------------


def _mobius_poly(p: fmpq_poly, a: fmpq, b: fmpq, c: fmpq, d: fmpq):
    """Substitute z -> (az+b)/(cz+d) in ``p``; returns (P, n) meaning P/(cz+d)^n."""
    if p.is_zero():
        return p, 0
    n = p.degree()
    if c == 0:
        return p(fmpq_poly([b / d, a / d])), 0
    lin_num = fmpq_poly([b, a])
    lin_den = fmpq_poly([d, c])
    coeffs = p.coeffs()
    total = _ZERO_POLY
    for i, ci in enumerate(coeffs):
        if ci != 0:
            total = total + ci * lin_num ** i * lin_den ** (n - i)
    return total, n


@dataclass(frozen=True)
class RingSpec:
    """sigma(z) = (a z + b)/(c z + d) and the value delta(z); delta vanishes on Q."""

    kind: str
    mobius: tuple
    delta_of_z: RatFun
    q: Fraction | None = None

    def __post_init__(self):
        a, b, c, d = (to_fmpq(x) for x in self.mobius)
        if a * d - b * c == 0:
            raise ValueError("sigma must be an invertible Moebius map (ad - bc != 0)")
        object.__setattr__(self, "_m", (a, b, c, d))
        object.__setattr__(self, "_minv", (d, -b, -c, a))
        object.__setattr__(self, "_sigma_id", a == d and b == 0 and c == 0)
        object.__setattr__(self, "_delta_zero", self.delta_of_z.is_zero())
        object.__setattr__(self, "_sigma_cache", {})

    # constructors --------------------------------------------------------

    @classmethod
    def differential(cls) -> "RingSpec":
        return cls("differential", (1, 0, 0, 1), ONE)

    @classmethod
    def shift(cls) -> "RingSpec":
        return cls("shift", (1, 1, 0, 1), ZERO)

    @classmethod
    def qshift(cls, q) -> "RingSpec":
        q = Fraction(q)
        if q == 0:
            raise ValueError("q must be nonzero")
        return cls("qshift", (q, 0, 0, 1), ZERO, q)

    @classmethod
    def custom(cls, sigma_of_z: RatFun, delta_of_z: RatFun) -> "RingSpec":
        num, den = sigma_of_z.num, sigma_of_z.den
        if num.degree() > 1 or den.degree() > 1:
            raise ValueError(f"sigma(z) = {sigma_of_z} is not a Moebius map")
        a, b = num[1], num[0]
        c, d = den[1], den[0]
        return cls("custom", tuple(to_fraction(x) for x in (a, b, c, d)), delta_of_z)

    # identity ------------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingSpec):
            return NotImplemented
        return self._m == other._m and self.delta_of_z == other.delta_of_z

    def __hash__(self):
        return hash((self._m, self.delta_of_z))

    @property
    def sigma_of_z(self) -> RatFun:
        a, b, c, d = self._m
        return RatFun(fmpq_poly([b, a]), fmpq_poly([d, c]))

    @property
    def is_commutative(self) -> bool:
        return self._sigma_id and self._delta_zero

    def header(self) -> str:
        """The ``ring ...`` header line used by the matrix file format."""
        if self.kind in ("differential", "shift"):
            return f"ring {self.kind}"
        if self.kind == "qshift":
            return f"ring qshift q={self.q}"
        return f"ring custom sigma={format_ratfun(self.sigma_of_z)} delta={format_ratfun(self.delta_of_z)}"

    # actions -------------------------------------------------------------

    def _apply_mobius(self, x: RatFun, m) -> RatFun:
        a, b, c, d = m
        if x.is_constant():
            return x
        P, np_ = _mobius_poly(x.num, a, b, c, d)
        Q, nq = _mobius_poly(x.den, a, b, c, d)
        if c != 0:
            lin = fmpq_poly([d, c])
            if nq > np_:
                P = P * lin ** (nq - np_)
            elif np_ > nq:
                Q = Q * lin ** (np_ - nq)
        return rf_normalize(P, Q)

    def sigma(self, x: RatFun) -> RatFun:
        if self._sigma_id or x.is_constant():
            return x
        cache = self._sigma_cache
        r = cache.get(x)
        if r is None:
            r = self._apply_mobius(x, self._m)
            if len(cache) > 50000:
                cache.clear()
            cache[x] = r
        return r

    def sigma_inv(self, x: RatFun) -> RatFun:
        if self._sigma_id or x.is_constant():
            return x
        return self._apply_mobius(x, self._minv)

    def sigma_pow(self, x: RatFun, k: int) -> RatFun:
        """sigma^k(x) for any integer k."""
        if k >= 0:
            for _ in range(k):
                x = self.sigma(x)
        else:
            for _ in range(-k):
                x = self.sigma_inv(x)
        return x

    def _delta_poly(self, p: fmpq_poly) -> RatFun:
        # delta(z^i) = sum_{k<i} sigma(z)^k delta(z) z^(i-1-k)
        sz = self.sigma_of_z
        dz = self.delta_of_z
        zf = RatFun.z()
        total = ZERO
        coeffs = p.coeffs()
        for i in range(1, len(coeffs)):
            if coeffs[i] == 0:
                continue
            term = ZERO
            for k in range(i):
                term = term + (sz ** k) * dz * (zf ** (i - 1 - k))
            total = total + term * RatFun._raw(fmpq_poly([coeffs[i]]), _ONE_POLY)
        return total

    def delta(self, x: RatFun) -> RatFun:
        if self._delta_zero or x.is_constant():
            return ZERO
        if self._sigma_id and self.delta_of_z.is_one():
            n, d = x.num, x.den
            if d.is_one():
                return RatFun._raw(n.derivative(), _ONE_POLY)
            return rf_normalize(n.derivative() * d - n * d.derivative(), d * d)
        # delta(p/q) = (delta(p) - sigma(p/q) delta(q)) / q
        dp = self._delta_poly(x.num)
        if x.den.is_one():
            return dp
        dq = self._delta_poly(x.den)
        return (dp - self.sigma(x) * dq) / RatFun._raw(x.den, _ONE_POLY)


def apply_sigma(a: RatFun, spec: RingSpec) -> RatFun:
    return spec.sigma(a)


def apply_delta(a: RatFun, spec: RingSpec) -> RatFun:
    return spec.delta(a)


Scalar = Union[int, Fraction, RatFun]
