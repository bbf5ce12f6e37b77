"""Univariate polynomials with exact rational coefficients, plus Sturm
sequences for deciding sign conditions on intervals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class RationalPoly:
    """Polynomial in t; ``coeffs[k]`` is the coefficient of t**k.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        other = _lift(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self.coeff(k) + other.coeff(k) for k in range(m))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out, base = RationalPoly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: "RationalPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 1)
        lc = other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            if c == 0:
                continue
            q[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return RationalPoly(q), RationalPoly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "RationalPoly":
        return self * (1 / self.lc) if self.coeffs else self

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _lift(v) -> RationalPoly:
    if isinstance(v, RationalPoly):
        return v
    return RationalPoly.const(v)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.degree <= 0:
        return p
    return p // poly_gcd(p, p.derivative())


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    """p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(values: Sequence) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at_inf(seq, positive=True):
    out = []
    for q in seq:
        lc = q.lc
        if not positive and q.degree % 2 == 1:
            lc = -lc
        out.append(lc)
    return out


def count_roots(p: RationalPoly, a=None, b=None) -> int:
    """Number of distinct real roots of p in (a, b]; None means -inf / +inf."""
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(squarefree_part(p))
    va = _sign_changes(_signs_at_inf(seq, False) if a is None else [q(a) for q in seq])
    vb = _sign_changes(_signs_at_inf(seq, True) if b is None else [q(b) for q in seq])
    return va - vb


def cauchy_bound(p: RationalPoly) -> Fraction:
    """All real roots lie in [-B, B]."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_roots(p: RationalPoly, a: Fraction, b: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi] inside (a, b], each holding exactly one
    distinct root of p, sorted increasingly."""
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)

    def v(t):
        return _sign_changes([s(t) for s in seq])

    out = []
    stack = [(Fraction(a), Fraction(b), v(a), v(b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = v(mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    return sorted(out)


def halfline_probes(p: RationalPoly) -> list[Fraction]:
    """One rational point inside every root-free gap of p on (0, inf).

    The sign of p on each gap equals its sign at the probe.
    """
    if p.is_zero():
        return []
    zero = Fraction(0)
    B = cauchy_bound(p)
    q = squarefree_part(p)
    probes = []
    left, left_exact = zero, True
    for lo, hi in isolate_roots(q, zero, B):
        exact = p(hi) == 0
        if not left_exact:
            probes.append(left)
        elif lo > left:
            probes.append((left + lo) / 2)
        else:
            # root sits in (left, hi]; bisect until a root-free point appears
            a, b = lo, hi
            while True:
                mid = (a + b) / 2
                if p(mid) == 0:
                    probes.append((left + mid) / 2)
                    break
                if count_roots(q, a, mid) == 1:
                    b = mid
                else:
                    probes.append(mid)
                    break
        # when not exact, hi lies strictly between this root and the next
        left, left_exact = hi, exact
    probes.append(B + 1)
    return probes


def nonneg_on_halfline(p: RationalPoly):
    """Decide p(t) >= 0 for all t >= 0 exactly.

    Returns ``(True, None)`` or ``(False, t)`` with a rational t >= 0 where
    p(t) < 0.
    """
    zero = Fraction(0)
    if p.is_zero():
        return True, None
    if p(zero) < 0:
        return False, zero
    for t in halfline_probes(p):
        if p(t) < 0:
            return False, t
    return True, None
