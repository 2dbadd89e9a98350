"""One-sided Euclidean algorithms: GCRD/LCLM on the right, GCLD/LCRM on the left."""

from __future__ import annotations

from dataclasses import dataclass

from .ore import OrePoly


@dataclass(frozen=True)
class GcrdCertificate:
    """u*a + v*b = g (monic) and s*a = -t*b = lclm(a, b) (monic when a, b != 0)."""

    g: OrePoly
    u: OrePoly
    v: OrePoly
    s: OrePoly
    t: OrePoly

    def matrix(self):
        return [[self.u, self.v], [self.s, self.t]]


@dataclass(frozen=True)
class GcldCertificate:
    """a*u + b*v = g (monic) and a*s = -b*t = m = lcrm(a, b)."""

    g: OrePoly
    u: OrePoly
    v: OrePoly
    s: OrePoly
    t: OrePoly
    m: OrePoly


def gcrd_ext(a: OrePoly, b: OrePoly) -> GcrdCertificate:
    """Extended right Euclidean algorithm.

    Maintains ``r_i = u_i a + v_i b`` through the remainder sequence of right
    divisions; every remainder is rescaled monic (a unit row operation).
    The last nonzero remainder is the GCRD and the cofactors of the first
    zero remainder give the LCLM.
    """
    a._check(b)
    ring = a.ring
    if a.is_zero() and b.is_zero():
        raise ValueError("gcrd of two zero polynomials")
    zero, one = OrePoly.zero(ring), OrePoly.one(ring)
    r0, u0, v0 = a, one, zero
    r1, u1, v1 = b, zero, one
    if not r0.is_zero():
        c = r0.lc().inv()
        r0, u0, v0 = r0.scale_left(c), u0.scale_left(c), v0.scale_left(c)
    while not r1.is_zero():
        c = r1.lc().inv()
        r1, u1, v1 = r1.scale_left(c), u1.scale_left(c), v1.scale_left(c)
        q, r = r0.right_divmod(r1)
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r, u0 - q * u1, v0 - q * v1
    g, u, v, s, t = r0, u0, v0, u1, v1
    if not a.is_zero() and not b.is_zero():
        m = s * a
        c = m.lc().inv()
        s, t = s.scale_left(c), t.scale_left(c)
    return GcrdCertificate(g, u, v, s, t)


def gcrd(a: OrePoly, b: OrePoly) -> OrePoly:
    return gcrd_ext(a, b).g


def lclm(a: OrePoly, b: OrePoly) -> OrePoly:
    """Monic least common left multiple."""
    if a.is_zero() or b.is_zero():
        raise ValueError("lclm of a zero polynomial")
    cert = gcrd_ext(a, b)
    return cert.s * a


def _scale_right_all(c, *fs):
    return tuple(f.scale_right(c) for f in fs)


def gcld_ext(a: OrePoly, b: OrePoly) -> GcldCertificate:
    """Left-handed mirror of :func:`gcrd_ext` built on left division.

    ``m`` is zero when either input is zero.
    """
    a._check(b)
    ring = a.ring
    if a.is_zero() and b.is_zero():
        raise ValueError("gcld of two zero polynomials")
    zero, one = OrePoly.zero(ring), OrePoly.one(ring)
    r0, u0, v0 = a, one, zero
    r1, u1, v1 = b, zero, one

    def unit(r):
        return ring.sigma_pow(r.lc().inv(), -r.degree)

    if not r0.is_zero():
        r0, u0, v0 = _scale_right_all(unit(r0), r0, u0, v0)
    while not r1.is_zero():
        r1, u1, v1 = _scale_right_all(unit(r1), r1, u1, v1)
        q, r = r0.left_divmod(r1)
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r, u0 - u1 * q, v0 - v1 * q
    g, u, v, s, t = r0, u0, v0, u1, v1
    m = a * s
    if not m.is_zero():
        c = unit(m)
        s, t = s.scale_right(c), t.scale_right(c)
        m = m.scale_right(c)
    return GcldCertificate(g, u, v, s, t, m)


def gcld_lcrm(a: OrePoly, b: OrePoly):
    """(gcld, lcrm, certificate); both normalized monic by a right unit."""
    cert = gcld_ext(a, b)
    return cert.g, cert.m, cert


def lcrm(a: OrePoly, b: OrePoly) -> OrePoly:
    if a.is_zero() or b.is_zero():
        raise ValueError("lcrm of a zero polynomial")
    return gcld_ext(a, b).m
