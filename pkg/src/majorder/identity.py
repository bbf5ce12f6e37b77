"""Exact checks of two integral identities for the generating polynomial.

Both sides are built independently: the left side by expanding
prod_i (z_i + t x_i)^r into z-monomials with polynomial-in-t coefficients
and integrating each monomial in closed form, the right side from
:mod:`majorder.sympoly`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import DomainError, ResourceError, Verdict, as_point, to_fraction
from .poly import RationalPoly
from .sympoly import gen_poly

LEMMA8_LIMITS = (3, 3)
GEN2_LIMITS = (3, 4)

ZPoly = dict  # z-exponent tuple -> RationalPoly in t


def beta_integral(a: Sequence[int]) -> Fraction:
    """Integral of prod z_i^{a_i} over the simplex {z >= 0, sum z <= 1}."""
    a = [int(v) for v in a]
    if any(v < 0 for v in a):
        raise DomainError("exponents must be >= 0")
    num = math.prod(math.factorial(v) for v in a)
    return Fraction(num, math.factorial(len(a) + sum(a)))


def _linear_factor(i: int, n: int, xi: Fraction) -> ZPoly:
    """z_i + t x_i as a z-polynomial."""
    e = [0] * n
    e[i] = 1
    return {tuple(e): RationalPoly.const(1), (0,) * n: RationalPoly([0, xi])}


def _zmul(p: ZPoly, q: ZPoly) -> ZPoly:
    out: ZPoly = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(u + v for u, v in zip(ea, eb))
            c = ca * cb
            out[e] = out[e] + c if e in out else c
    return {e: c for e, c in out.items() if not c.is_zero()}


def _zpow(p: ZPoly, r: int, n: int) -> ZPoly:
    out: ZPoly = {(0,) * n: RationalPoly.const(1)}
    for _ in range(r):
        out = _zmul(out, p)
    return out


def expand_power(x: Sequence, r: int) -> ZPoly:
    """(prod_i (z_i + t x_i))^r expanded in z-monomials."""
    xs = [to_fraction(v) for v in as_point(x, allow_negative=True)]
    n = len(xs)
    base: ZPoly = {(0,) * n: RationalPoly.const(1)}
    for i, v in enumerate(xs):
        base = _zmul(base, _linear_factor(i, n, v))
    return _zpow(base, r, n)


def lemma8_constant(n: int, k: int, r: int) -> Fraction:
    """C_{n,k,r} = (r!)^n / (nr + n - k)!."""
    return Fraction(math.factorial(r) ** n, math.factorial(n * r + n - k))


def simplex_integral(x: Sequence, r: int) -> RationalPoly:
    """Integral over the simplex of (prod (z_i + t x_i))^r, as a polynomial in t."""
    out = RationalPoly()
    for e, c in expand_power(x, r).items():
        out = out + c * beta_integral(e)
    return out


def _check_limits(n, r, limits, rmin):
    nmax, rmax = limits
    if not 1 <= n <= nmax or not rmin <= r <= rmax:
        raise ResourceError(f"expansion limited to n <= {nmax}, {rmin} <= r <= {rmax}")


def _compare(lhs: RationalPoly, rhs: RationalPoly, **info) -> Verdict:
    top = max(lhs.degree, rhs.degree, 0)
    for k in range(top + 1):
        if lhs.coeff(k) != rhs.coeff(k):
            return Verdict.fails(k, -1.0, lhs=list(lhs.coeffs), rhs=list(rhs.coeffs), **info)
    return Verdict.holds_(0.0, exact=True, lhs=list(lhs.coeffs), rhs=list(rhs.coeffs), **info)


def lemma8_verify(n: int, r: int, x: Sequence) -> Verdict:
    """Simplex integral of (prod(z_i + t x_i))^r against sum_k C_{n,k,r} F_{k,r}(x) t^k.

    Exact coefficient comparison; the witness is the first differing power of t.
    """
    xs = tuple(to_fraction(v) for v in as_point(x, allow_negative=True))
    if len(xs) != n:
        raise DomainError(f"x has length {len(xs)}, expected {n}")
    _check_limits(n, r, LEMMA8_LIMITS, 1)
    lhs = simplex_integral(xs, r)
    g = _gen_signed(xs, r)
    rhs = RationalPoly(lemma8_constant(n, k, r) * g.coeff(k) for k in range(n * r + 1))
    return _compare(lhs, rhs, n=n, r=r)


def _gen_signed(xs, r):
    # gen_poly validates nonnegativity; the identity holds for any real x
    if all(v >= 0 for v in xs):
        return gen_poly(xs, r)
    out = RationalPoly.const(1)
    for v in xs:
        out = out * RationalPoly(v**m / math.factorial(m) for m in range(r + 1))
    return out


def lemma8_extract_F(n: int, r: int, x: Sequence) -> list[Fraction]:
    """F_{k,r}(x), k = 0..nr, read off the simplex integral."""
    _check_limits(n, r, LEMMA8_LIMITS, 1)
    lhs = simplex_integral(x, r)
    return [lhs.coeff(k) / lemma8_constant(n, k, r) for k in range(n * r + 1)]


def gen2_verify(n: int, r: int, x: Sequence) -> Verdict:
    """Integral over the orthant of prod((z_i + t x_i)^r / r!) e^{-sum z}
    against prod_i P_r(x_i t), using int u^j e^{-u} du = j! per factor."""
    xs = tuple(to_fraction(v) for v in as_point(x, allow_negative=True))
    if len(xs) != n:
        raise DomainError(f"x has length {len(xs)}, expected {n}")
    _check_limits(n, r, GEN2_LIMITS, 0)
    scale = Fraction(1, math.factorial(r) ** n)
    lhs = RationalPoly()
    for e, c in expand_power(xs, r).items():
        lhs = lhs + c * (scale * math.prod(math.factorial(v) for v in e))
    rhs = RationalPoly.const(1) if r == 0 else _gen_signed(xs, r)
    return _compare(lhs, rhs, n=n, r=r)
