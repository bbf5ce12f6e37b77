"""Symmetric polynomial families built from truncated exponentials.

All evaluations are exact over :class:`fractions.Fraction`.  Floats are
converted through their exact binary value, so identities can be checked
with ``==`` rather than a tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import DomainError, ResourceError, Verdict, as_point, to_fraction
from .poly import RationalPoly

# enumeration bounds for the multi-index families
MAX_ENUM_N = 8
MAX_ENUM_K = 20


def exact_point(x: Sequence) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in as_point(x))


def multi_indices(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All p in Z_{>=0}^n with sum k (the set I_k), in lexicographic order."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in multi_indices(n - 1, k - first):
            yield (first,) + rest


def elem_sym(x: Sequence, k: int) -> Fraction:
    """Elementary symmetric polynomial E_k(x), with E_0 = 1."""
    xs = exact_point(x)
    n = len(xs)
    if not 0 <= k <= n:
        raise DomainError(f"k={k} outside 0..{n}")
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in xs:
        for j in range(k, 0, -1):
            e[j] += v * e[j - 1]
    return e[k]


def elem_sym_all(x: Sequence) -> list[Fraction]:
    xs = exact_point(x)
    e = [Fraction(1)] + [Fraction(0)] * len(xs)
    for v in xs:
        for j in range(len(xs), 0, -1):
            e[j] += v * e[j - 1]
    return e


def taylor_exp_poly(r: int) -> RationalPoly:
    """P_r(s) = sum_{m <= r} s^m / m!  (P_0 = 1)."""
    if r < 0:
        raise DomainError("r must be >= 0")
    return RationalPoly(Fraction(1, math.factorial(m)) for m in range(r + 1))


def _scaled_factor(v: Fraction, r: int) -> RationalPoly:
    return RationalPoly(v**m / math.factorial(m) for m in range(r + 1))


def gen_poly(x: Sequence, r: int) -> RationalPoly:
    """Generating polynomial prod_i P_r(x_i t); its t^k coefficient is F_{k,r}(x)."""
    if r < 1:
        raise DomainError("r must be >= 1")
    out = RationalPoly.const(1)
    for v in exact_point(x):
        out = out * _scaled_factor(v, r)
    return out


def F(k: int, r: int, x: Sequence) -> Fraction:
    """F_{k,r}(x): coefficient of t^k in prod_i P_r(x_i t)."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return gen_poly(x, r).coeff(k)


def _check_enum(n: int, k: int):
    if n > MAX_ENUM_N or k > MAX_ENUM_K:
        raise ResourceError(
            f"multi-index enumeration limited to n <= {MAX_ENUM_N}, k <= {MAX_ENUM_K}"
        )


def _monomial(xs, p) -> Fraction:
    out = Fraction(1)
    for v, e in zip(xs, p):
        if e:
            out *= v**e / math.factorial(e)
    return out


def G(k: int, r: int, x: Sequence) -> Fraction:
    """Sum of x^p / p! over p in I_k with at least r nonzero entries."""
    if k < 1 or r < 1:
        raise DomainError("k and r must be >= 1")
    xs = exact_point(x)
    _check_enum(len(xs), k)
    return sum(
        (_monomial(xs, p) for p in multi_indices(len(xs), k) if sum(1 for e in p if e) >= r),
        Fraction(0),
    )


def Gbar(k: int, r: int, x: Sequence) -> Fraction:
    """E_1^k / k! - G_{k,r}: the terms with fewer than r distinct factors."""
    xs = exact_point(x)
    return sum(xs, Fraction(0)) ** k / math.factorial(k) - G(k, r, xs)


def M(k: int, r: int, x: Sequence) -> Fraction:
    """Sum over r-subsets of the k-th power of the subset sum."""
    xs = exact_point(x)
    if not 1 <= r <= len(xs):
        raise DomainError(f"r={r} outside 1..{len(xs)}")
    if k < 1:
        raise DomainError("k must be >= 1")
    return sum((sum(c, Fraction(0)) ** k for c in itertools.combinations(xs, r)), Fraction(0))


def M_via_Gbar(k: int, r: int, x: Sequence) -> Fraction:
    """(1/k!) M_{k,r} rebuilt as a positive combination of the Gbar_{k,j}.

    Coefficients are C(n-r-1+j, j) on Gbar_{k,r+1-j}, j = 0..r-1.
    """
    xs = exact_point(x)
    n = len(xs)
    if not 1 <= r < n:
        raise DomainError("need 1 <= r < n")
    return sum(
        (math.comb(n - r - 1 + j, j) * Gbar(k, r + 1 - j, xs) for j in range(r)),
        Fraction(0),
    )


@dataclass(frozen=True)
class IndexSet:
    """A set S of multi-indices inside I_k for a fixed dimension."""

    k: int
    members: frozenset

    def __post_init__(self):
        mem = frozenset(tuple(int(e) for e in p) for p in self.members)
        object.__setattr__(self, "members", mem)
        if self.k < 1:
            raise DomainError("k must be >= 1")
        dims = {len(p) for p in mem}
        if len(dims) > 1:
            raise DomainError("members have different lengths")
        for p in mem:
            if min(p) < 0 or sum(p) != self.k:
                raise DomainError(f"member {p} is not in I_{self.k}")

    @property
    def n(self) -> int | None:
        return len(next(iter(self.members))) if self.members else None

    @classmethod
    def bounded(cls, n: int, k: int, r: int) -> "IndexSet":
        """S_{k,r}: all p in I_k with max p_i <= r (gives F_{k,r})."""
        _check_enum(n, k)
        return cls(k, frozenset(p for p in multi_indices(n, k) if max(p) <= r))

    @classmethod
    def support_at_least(cls, n: int, k: int, r: int) -> "IndexSet":
        """T_{k,r}: all p in I_k with at least r nonzero entries (gives G_{k,r})."""
        _check_enum(n, k)
        return cls(k, frozenset(p for p in multi_indices(n, k) if sum(1 for e in p if e) >= r))

    @classmethod
    def downward_closure(cls, generators: Sequence[Sequence[int]]) -> "IndexSet":
        """All q in I_k majorized by some generator; Schur-concave by construction."""
        gens = [tuple(int(e) for e in p) for p in generators]
        if not gens:
            raise DomainError("need at least one generator")
        n, k = len(gens[0]), sum(gens[0])
        _check_enum(n, k)
        tops = [_prefix_desc(p) for p in gens]
        mem = frozenset(q for q in multi_indices(n, k)
                        if any(all(a <= b for a, b in zip(_prefix_desc(q), t)) for t in tops))
        return cls(k, mem)

    @classmethod
    def full(cls, n: int, k: int) -> "IndexSet":
        _check_enum(n, k)
        return cls(k, frozenset(multi_indices(n, k)))


def _prefix_desc(p):
    out, acc = [], 0
    for v in sorted(p, reverse=True):
        acc += v
        out.append(acc)
    return out


def H_S(x: Sequence, S: IndexSet) -> Fraction:
    """H_S(x) = sum_{p in S} prod_i x_i^{p_i} / p_i!."""
    xs = exact_point(x)
    if S.n is not None and S.n != len(xs):
        raise DomainError(f"index set has dimension {S.n}, point has {len(xs)}")
    return sum((_monomial(xs, p) for p in sorted(S.members)), Fraction(0))


def _elementary_moves(p):
    """Integer vectors majorized by p that differ by one swap or one unit transfer."""
    n = len(p)
    for i in range(n):
        for j in range(n):
            if p[i] - p[j] >= 2:
                q = list(p)
                q[i] -= 1
                q[j] += 1
                yield tuple(q)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] != p[j]:
                q = list(p)
                q[i], q[j] = q[j], q[i]
                yield tuple(q)


def is_schur_concave_indexset(S: IndexSet) -> Verdict:
    """Check p in S, q in I_k, p majorizes q  =>  q in S.

    Integer majorization is generated by permutations and unit transfers
    from a larger to a smaller entry, so closure under those moves is
    equivalent.  The witness is a pair (p, q) with q missing from S.
    """
    for p in sorted(S.members, reverse=True):
        for q in _elementary_moves(p):
            if q not in S.members:
                return Verdict.fails((p, q), -1.0)
    return Verdict.holds_(0.0)


# ---------------------------------------------------------------------------
# Gradients
# ---------------------------------------------------------------------------


def grad_polys(x: Sequence, r: int) -> list[RationalPoly]:
    """For each i the polynomial t P_{r-1}(x_i t) prod_{j != i} P_r(x_j t).

    Its t^k coefficient is dF_{k,r}/dx_i, since d/ds P_r(s) = P_{r-1}(s).
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    xs = exact_point(x)
    n = len(xs)
    full = [_scaled_factor(v, r) for v in xs]
    # prefix/suffix products avoid n^2 multiplications
    pre = [RationalPoly.const(1)]
    for f in full:
        pre.append(pre[-1] * f)
    suf = [RationalPoly.const(1)]
    for f in reversed(full):
        suf.append(suf[-1] * f)
    suf.reverse()
    t = RationalPoly.monomial(1)
    return [t * _scaled_factor(xs[i], r - 1) * pre[i] * suf[i + 1] for i in range(n)]


def grad_F_exact(k: int, r: int, x: Sequence) -> tuple[Fraction, ...]:
    return tuple(p.coeff(k) for p in grad_polys(x, r))


def grad_F(k: int, r: int, x: Sequence) -> tuple[float, ...]:
    """Gradient of F_{k,r} at x (exact evaluation, returned as floats)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return tuple(float(v) for v in grad_F_exact(k, r, x))


def grad_H_S_exact(x: Sequence, S: IndexSet) -> tuple[Fraction, ...]:
    xs = exact_point(x)
    out = []
    for i in range(len(xs)):
        acc = Fraction(0)
        for p in S.members:
            if p[i] == 0:
                continue
            q = list(p)
            q[i] -= 1
            acc += _monomial(xs, q)
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Integer-scaled coefficients for bulk comparisons
# ---------------------------------------------------------------------------


def common_scale(*points: Sequence) -> tuple[int, list[list[int]]]:
    """Common denominator D and integer numerators with x_i = m_i / D."""
    fr = [exact_point(p) for p in points]
    D = 1
    for p in fr:
        for v in p:
            D = math.lcm(D, v.denominator)
    return D, [[int(v * D) for v in p] for p in fr]


def scaled_gen_coeffs(m: Sequence[int], r: int) -> list[int]:
    """Integer coefficients c_k with F_{k,r}(m / D) = c_k / (D^k (r!)^n).

    Each factor is sum_s (r!/s!) m_i^s t^s, so everything stays integral.
    """
    rf = math.factorial(r)
    w = [rf // math.factorial(s) for s in range(r + 1)]
    out = [1]
    for v in m:
        f = [w[s] * v**s for s in range(r + 1)]
        new = [0] * (len(out) + r)
        for a, ca in enumerate(out):
            if ca:
                for b, cb in enumerate(f):
                    new[a + b] += ca * cb
        out = new
    return out
