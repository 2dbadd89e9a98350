"""Ore polynomials F[D; sigma, delta] over F = Q(z).

Multiplication follows the commutation rule ``D a = sigma(a) D + delta(a)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import NEG_INF, ONE, ZERO, RatFun, RingSpec, as_ratfun, format_ratfun


class RingMismatchError(ValueError):
    pass


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1].is_zero():
        n -= 1
    return tuple(coeffs[:n])


class OrePoly:
    """sum_k coeffs[k] * D^k, coefficients on the left."""

    __slots__ = ("coeffs", "ring", "_hash")

    def __init__(self, coeffs: Iterable, ring: RingSpec):
        self.coeffs = _trim([as_ratfun(c) for c in coeffs])
        self.ring = ring
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, ring: RingSpec) -> "OrePoly":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.ring = ring
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring: RingSpec) -> "OrePoly":
        return cls._raw((), ring)

    @classmethod
    def one(cls, ring: RingSpec) -> "OrePoly":
        return cls._raw((ONE,), ring)

    @classmethod
    def const(cls, c, ring: RingSpec) -> "OrePoly":
        c = as_ratfun(c)
        return cls._raw(() if c.is_zero() else (c,), ring)

    @classmethod
    def gen(cls, ring: RingSpec, k: int = 1) -> "OrePoly":
        """D^k."""
        return cls._raw((ZERO,) * k + (ONE,), ring)

    # basic queries -------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def lc(self) -> RatFun:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> RatFun:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def deg_z(self):
        return max((c.deg_z() for c in self.coeffs), default=NEG_INF)

    def _check(self, other: "OrePoly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("Ore polynomials over different rings")

    # additive structure --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, OrePoly):
            other = OrePoly.const(other, self.ring)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly._raw(_trim(out), self.ring)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly._raw(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other):
        if not isinstance(other, OrePoly):
            other = OrePoly.const(other, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale_left(self, c) -> "OrePoly":
        """c * self for c in F (coefficient-wise)."""
        c = as_ratfun(c)
        if c.is_zero():
            return OrePoly.zero(self.ring)
        if c.is_one():
            return self
        return OrePoly._raw(tuple(c * x for x in self.coeffs), self.ring)

    def scale_right(self, c) -> "OrePoly":
        """self * c for c in F."""
        return self * OrePoly.const(c, self.ring)

    # multiplication ------------------------------------------------------

    def d_times(self) -> "OrePoly":
        """D * self, one application of the commutation rule per coefficient."""
        ring = self.ring
        b = self.coeffs
        if not b:
            return self
        out = [ZERO] * (len(b) + 1)
        for j, bj in enumerate(b):
            out[j + 1] = out[j + 1] + ring.sigma(bj)
            dj = ring.delta(bj)
            if not dj.is_zero():
                out[j] = out[j] + dj
        return OrePoly._raw(_trim(out), ring)

    def d_powers(self, m: int) -> list:
        """[self, D*self, ..., D^m * self]."""
        rows = [self]
        for _ in range(m):
            rows.append(rows[-1].d_times())
        return rows

    def __mul__(self, other):
        if not isinstance(other, OrePoly):
            return self.scale_right(other) if isinstance(other, RatFun) else self.scale_right(as_ratfun(other))
        self._check(other)
        f, g = self.coeffs, other.coeffs
        if not f or not g:
            return OrePoly.zero(self.ring)
        if len(f) == 1:
            return other.scale_left(f[0])
        ring = self.ring
        if len(g) == 1 and g[0].is_constant():
            # sigma and delta fix Q, so rational constants commute with D
            return self.scale_left(g[0])
        out = [ZERO] * (len(f) + len(g) - 1)
        cur = other
        for i, fi in enumerate(f):
            if i:
                cur = cur.d_times()
            if fi.is_zero():
                continue
            for j, c in enumerate(cur.coeffs):
                if not c.is_zero():
                    out[j] = out[j] + fi * c
        return OrePoly._raw(_trim(out), ring)

    def __rmul__(self, other):
        return self.scale_left(other)

    def __pow__(self, k: int):
        out = OrePoly.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    # normalization -------------------------------------------------------

    def monic(self) -> "OrePoly":
        """Left-scale to leading coefficient 1."""
        if not self.coeffs:
            return self
        return self.scale_left(self.lc().inv())

    def monic_right(self) -> "OrePoly":
        """Right-scale by c in F so that self*c is monic."""
        if not self.coeffs:
            return self
        c = self.ring.sigma_pow(self.lc().inv(), -self.degree)
        return self.scale_right(c)

    # division ------------------------------------------------------------

    def right_divmod(self, g: "OrePoly"):
        """(q, r) with self = q*g + r and deg r < deg g."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero Ore polynomial")
        ring = self.ring
        n = g.degree
        lcg = g.lc()
        q = [ZERO] * max(len(self.coeffs) - n, 0)
        r = self
        # sigma^k(lc g) cached by k
        slc = {0: lcg}
        gpow = {0: g}
        while not r.is_zero() and r.degree >= n:
            k = r.degree - n
            if k not in slc:
                j = max(slc)
                s, gp = slc[j], gpow[j]
                while j < k:
                    s = ring.sigma(s)
                    gp = gp.d_times()
                    j += 1
                    slc[j], gpow[j] = s, gp
            c = r.lc() / slc[k]
            q[k] = q[k] + c
            r = r - gpow[k].scale_left(c)
        return OrePoly._raw(_trim(q), ring), r

    def left_divmod(self, g: "OrePoly"):
        """(q, r) with self = g*q + r and deg r < deg g."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero Ore polynomial")
        ring = self.ring
        n = g.degree
        lcg_inv = g.lc().inv()
        q = [ZERO] * max(len(self.coeffs) - n, 0)
        r = self
        while not r.is_zero() and r.degree >= n:
            k = r.degree - n
            # g * (c D^k) has leading coefficient lc(g) sigma^n(c)
            c = ring.sigma_pow(lcg_inv * r.lc(), -n)
            q[k] = q[k] + c
            term = g * OrePoly._raw((ZERO,) * k + (c,), ring)
            r = r - term
        return OrePoly._raw(_trim(q), ring), r

    # comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            try:
                other = OrePoly.const(other, self.ring)
            except TypeError:
                return False
        return self.coeffs == other.coeffs and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __str__(self):
        return format_orepoly(self)

    def __repr__(self):
        return f"OrePoly({format_orepoly(self)})"


def format_orepoly(f: OrePoly) -> str:
    """Canonical text: ascending powers of D, parenthesized coefficients."""
    if f.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        if k == 0:
            terms.append(f"({format_ratfun(c)})")
            continue
        mono = "D" if k == 1 else f"D^{k}"
        terms.append(mono if c.is_one() else f"({format_ratfun(c)})*{mono}")
    return " + ".join(terms)


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    return f * g


def ore_right_divmod(f: OrePoly, g: OrePoly):
    return f.right_divmod(g)


def ore_left_divmod(f: OrePoly, g: OrePoly):
    return f.left_divmod(g)


def polys(ring: RingSpec, rows: Sequence[Sequence]) -> list:
    """Convenience: nested lists of coefficient lists -> nested lists of OrePoly."""
    return [[OrePoly(c, ring) for c in row] for row in rows]
