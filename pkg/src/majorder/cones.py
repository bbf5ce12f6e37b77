"""Total positivity, gradient cones and monotone paths.

The cone of a point x in D_n (entries nonincreasing) is generated by the
gradients of Psi_lambda, lambda > 0.  After scaling by 1/lambda these are
the vectors R_h whose entry g is 1/x_g for g <= h and 1/x_h afterwards,
plus R_inf = (0, .., 0, 1, .., 1) when x has trailing zeros.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    DomainError,
    ResourceError,
    Tolerance,
    Verdict,
    as_point,
    to_fraction,
)
from .functionals import Psi, grad_Psi
from .relations import prec_L
from .sympoly import F as F_value
from .sympoly import IndexSet, elem_sym, grad_F_exact, grad_H_S_exact

MAX_TP_DIM = 8


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def det_exact(M: Sequence[Sequence]) -> Fraction:
    """Determinant over the rationals by fraction-exact Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in M]
    n = len(a)
    sign = 1
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return sign * det


def _det(M, exact: bool):
    if exact:
        return det_exact(M)
    if len(M) == 1:
        return float(M[0][0])
    return float(np.linalg.det(np.asarray(M, dtype=float)))


@dataclass(frozen=True)
class TPReport:
    """Evaluated minors as (rows, cols, value), in order of increasing size."""

    minors: list
    first_violation: tuple | None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_violation is None

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "ok": self.ok,
            "evaluated": len(self.minors),
            "violations": [list(v) for v in self.violations],
            "first_violation": list(self.first_violation) if self.first_violation else None,
        }
        if full:
            out["minors"] = [list(m) for m in self.minors]
        return out


def minors_nonneg(M: Sequence[Sequence], max_order: int | None = None,
                  tol: float = 1e-10) -> TPReport:
    """Enumerate every minor up to ``max_order`` and flag negative ones.

    Exact entries are handled in rational arithmetic.  Float minors count as
    negative below -tol * s^order, where s is the largest entry magnitude.
    """
    rows = [list(r) for r in M]
    if not rows:
        raise DomainError("empty matrix")
    m, n = len(rows), len(rows[0])
    if any(len(r) != n for r in rows):
        raise DomainError("ragged matrix")
    if m > MAX_TP_DIM or n > MAX_TP_DIM:
        raise ResourceError(f"minor enumeration limited to {MAX_TP_DIM}x{MAX_TP_DIM}")
    exact = all(_is_exact(v) for r in rows for v in r)
    scale = max(abs(float(v)) for r in rows for v in r) or 1.0
    top = min(m, n) if max_order is None else min(max_order, m, n)
    minors, bad = [], []
    for size in range(1, top + 1):
        thresh = 0 if exact else tol * scale**size
        for rs in itertools.combinations(range(m), size):
            for cs in itertools.combinations(range(n), size):
                val = _det([[rows[i][j] for j in cs] for i in rs], exact)
                minors.append((rs, cs, val))
                if val < -thresh:
                    bad.append((rs, cs, val))
    return TPReport(minors, bad[0] if bad else None, bad)


# ---------------------------------------------------------------------------
# Cone membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeCertificate:
    """Coefficients over the generators; labels are group indices or "inf"."""

    coefficients: list
    generators: list
    residual: float

    def to_dict(self) -> dict:
        return {
            "coefficients": [[lab, c] for lab, c in self.coefficients],
            "residual": self.residual,
        }


def _check_sorted(x):
    if any(a < b for a, b in zip(x, x[1:])):
        raise DomainError("x must be sorted nonincreasing")


def _groups(x):
    """Index blocks of equal positive values, then the block of zeros."""
    pos, zeros = [], []
    for i, v in enumerate(x):
        if v == 0:
            zeros.append(i)
        elif pos and x[pos[-1][0]] == v:
            pos[-1].append(i)
        else:
            pos.append([i])
    return pos, zeros


def cone_generators(x: Sequence) -> list[tuple[str, tuple]]:
    """Generators R_h (one per distinct positive value) and R_inf."""
    x = as_point(x)
    _check_sorted(x)
    pos, zeros = _groups(x)
    exact = all(_is_exact(v) for v in x)
    inv = (lambda v: 1 / Fraction(v)) if exact else (lambda v: 1.0 / float(v))
    out = []
    for h, grp in enumerate(pos):
        cap = inv(x[grp[0]])
        vec = [cap] * len(x)
        for g in pos[:h]:
            for i in g:
                vec[i] = inv(x[i])
        out.append((str(h + 1), tuple(vec)))
    if zeros:
        vec = [0] * len(x)
        for i in zeros:
            vec[i] = 1
        out.append(("inf", tuple(vec)))
    return out


def cone_membership(x: Sequence, B: Sequence, tol: Tolerance = DEFAULT_TOL):
    """Is B in the closed cone spanned by the gradients of Psi_lambda at x?

    x must be sorted nonincreasing; B is indexed the same way, so members are
    nondecreasing along the index.  Coordinates with equal x must carry
    equal B.  Group slopes S_g = (B_g - B_{g-1}) / (1/x_g - 1/x_{g-1}) give
    the coefficients c_h = S_h - S_{h+1}, c_q = S_q and c_inf = B_zero - B_q.
    Returns ``(Verdict, ConeCertificate | None)``; witnesses name the failing
    coefficient or tie.
    """
    x = as_point(x)
    B = as_point(B, allow_negative=True)
    if len(x) != len(B):
        raise DomainError("dimension mismatch")
    _check_sorted(x)
    exact = all(_is_exact(v) for v in x) and all(_is_exact(v) for v in B)
    if exact:
        x = tuple(Fraction(v) for v in x)
        B = tuple(Fraction(v) for v in B)
    else:
        x = tuple(float(v) for v in x)
        B = tuple(float(v) for v in B)
    bscale = max(abs(v) for v in B) or 1.0

    def small(v, scale):
        return v >= 0 if exact else v >= -max(tol.abs, tol.rel * scale)

    pos, zeros = _groups(x)
    # ties must carry equal partials
    for grp in pos + ([zeros] if zeros else []):
        for i in grp[1:]:
            if not (B[i] == B[grp[0]] if exact else tol.eq(B[i], B[grp[0]])):
                return Verdict.fails(("tie", grp[0] + 1, i + 1), -abs(float(B[i] - B[grp[0]]))), None
    coeffs = []
    if pos:
        A = [1 / x[g[0]] for g in pos]
        Bg = [B[g[0]] for g in pos]
        S = []
        prevA, prevB = 0, 0
        for a, b in zip(A, Bg):
            S.append((b - prevB) / (a - prevA))
            prevA, prevB = a, b
        for h in range(len(pos)):
            c = S[h] - S[h + 1] if h + 1 < len(pos) else S[h]
            coeffs.append((str(h + 1), c))
    if zeros:
        c_inf = B[zeros[0]] - (B[pos[-1][0]] if pos else 0)
        coeffs.append(("inf", c_inf))
    cscale = bscale * (float(max(x)) if pos else 1.0)
    margin = min(float(c) for _, c in coeffs) / cscale if coeffs else 0.0
    for lab, c in coeffs:
        if not small(c, cscale):
            return Verdict.fails(("coefficient", lab), margin), None
    gens = dict(cone_generators(x))
    recon = [0] * len(x)
    for lab, c in coeffs:
        recon = [r + c * g for r, g in zip(recon, gens[lab])]
    residual = max(abs(float(r - b)) for r, b in zip(recon, B))
    cert = ConeCertificate(coeffs, [gens[lab] for lab, _ in coeffs], residual)
    return Verdict.holds_(margin), cert


def tp3a_matrix(x, B, i, j, k):
    return [[1, 1, 1], [B[i], B[j], B[k]], [1 / x[i], 1 / x[j], 1 / x[k]]]


def tp3a_check(x: Sequence, B: Sequence, tol: float = 1e-10) -> Verdict:
    """Same membership question, decided by total positivity of the 3x3
    matrices [1,1,1; B_i,B_j,B_k; 1/x_i,1/x_j,1/x_k] over i <= j <= k among
    positive coordinates, plus constancy of B over the zero block (which
    must start at or above the last positive B)."""
    x = as_point(x)
    B = as_point(B, allow_negative=True)
    if len(x) != len(B):
        raise DomainError("dimension mismatch")
    _check_sorted(x)
    exact = all(_is_exact(v) for v in x) and all(_is_exact(v) for v in B)
    if exact:
        x = tuple(Fraction(v) for v in x)
        B = tuple(Fraction(v) for v in B)
    else:
        x = tuple(float(v) for v in x)
        B = tuple(float(v) for v in B)
    m = sum(1 for v in x if v > 0)
    scale = max(abs(v) for v in B) or 1.0
    thresh = 0 if exact else tol * scale
    lo = B[m - 1] if m else 0
    for i in range(m, len(x)):
        if B[i] - lo < -thresh or abs(B[i] - B[m]) > thresh:
            return Verdict.fails(("zero block", i + 1), float(B[i] - lo))
    worst = math.inf
    for i, j, k in itertools.combinations_with_replacement(range(m), 3):
        mat = tp3a_matrix(x, B, i, j, k)
        if not exact:
            # row scaling keeps the float threshold meaningful
            mat[2] = [v * x[0] for v in mat[2]]
        rep = minors_nonneg(mat, tol=tol)
        vals = [float(v) for _, _, v in rep.minors]
        worst = min(worst, min(vals))
        if not rep.ok:
            return Verdict.fails((i + 1, j + 1, k + 1), float(rep.first_violation[2]))
    return Verdict.holds_(worst if worst != math.inf else 0.0)


def grad_in_cone(k: int, r: int, x: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Membership of grad F_{k,r}(x) in the cone at x, computed exactly."""
    xs = tuple(sorted((to_fraction(v) for v in as_point(x)), reverse=True))
    B = grad_F_exact(k, r, xs)
    verdict, _ = cone_membership(xs, B, tol)
    return verdict


# ---------------------------------------------------------------------------
# Three-point determinants
# ---------------------------------------------------------------------------


def _det2(a, b, c, d):
    return a * d - b * c


def lemma13_dets(x3: Sequence, k: int = 1, r: int = 1,
                 grad_supplier: Callable | None = None) -> tuple:
    """Determinants (tp2a, tp2b, tp3) for a point x1 >= x2 >= x3 > 0.

    tp2a is |1 1; G_i G_j| and tp2b is |G_i G_j; 1/x_i 1/x_j|, each reported
    as the minimum over the three pairs i < j; tp3 is the 3x3 determinant
    |1 1 1; G; 1/x|.  G is the gradient from ``grad_supplier`` (default:
    grad F_{k,r}, exact).
    """
    x = tuple(to_fraction(v) for v in as_point(x3))
    if len(x) != 3:
        raise DomainError("need exactly three coordinates")
    if any(v <= 0 for v in x):
        raise DomainError("coordinates must be > 0")
    _check_sorted(x)
    g = grad_supplier(x) if grad_supplier is not None else grad_F_exact(k, r, x)
    g = tuple(Fraction(v) if _is_exact(v) else v for v in g)
    inv = tuple(1 / v for v in x)
    pairs = [(0, 1), (0, 2), (1, 2)]
    tp2a = min(_det2(1, 1, g[i], g[j]) for i, j in pairs)
    tp2b = min(_det2(g[i], g[j], inv[i], inv[j]) for i, j in pairs)
    tp3 = det_exact([[1, 1, 1], list(g), list(inv)]) if all(_is_exact(v) for v in g) \
        else float(np.linalg.det(np.array([[1, 1, 1], g, inv], dtype=float)))
    return tp2a, tp2b, tp3


def gen_vandermonde_det(x: Sequence, exponents: Sequence[int]) -> Fraction:
    """det of rows (x_1^m/m!, ..., x_n^m/m!) for m in ``exponents``, exact."""
    xs = tuple(to_fraction(v) for v in as_point(x))
    ms = [int(m) for m in exponents]
    if len(ms) != len(xs):
        raise DomainError("need as many exponents as nodes")
    if len(set(ms)) != len(ms):
        raise DomainError("exponents must be distinct")
    if any(v <= 0 for v in xs):
        raise DomainError("nodes must be > 0")
    if any(m < 0 for m in ms):
        raise DomainError("exponents must be >= 0")
    rows = [[v**m / math.factorial(m) for v in xs] for m in ms]
    return det_exact(rows)


# ---------------------------------------------------------------------------
# Gradient families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """An ordered family of symmetric functions with gradients on D_n.

    ``funcs`` and ``grads`` are listed in the family's total order.
    """

    name: str
    labels: tuple
    funcs: tuple
    grads: tuple

    def values(self, x):
        return [f(x) for f in self.funcs]

    def matrix(self, x):
        return [list(g(x)) for g in self.grads]


def psi_family(lambdas: Sequence[float]) -> Family:
    """Psi_lambda ordered by decreasing lambda."""
    lams = sorted((float(v) for v in lambdas), reverse=True)
    return Family(
        "psi",
        tuple(lams),
        tuple((lambda x, l=l: Psi(x, l)) for l in lams),
        tuple((lambda x, l=l: grad_Psi(x, l)) for l in lams),
    )


def _tail(x, k):
    xs = sorted((float(v) for v in x), reverse=True)
    return math.fsum(xs[k - 1:])


def tail_family(n: int) -> Family:
    """Bottom-tail sums x_k* + ... + x_n*, k = 1..n."""

    def grad(k):
        return lambda x: tuple(1 if i >= k - 1 else 0 for i in range(len(x)))

    return Family(
        "tail",
        tuple(range(1, n + 1)),
        tuple((lambda x, k=k: _tail(x, k)) for k in range(1, n + 1)),
        tuple(grad(k) for k in range(1, n + 1)),
    )


def _grad_E(x, k):
    xs = tuple(to_fraction(v) for v in x)
    return tuple(elem_sym(xs[:i] + xs[i + 1:], k - 1) for i in range(len(xs)))


def elem_family(n: int) -> Family:
    """E_1, ..., E_n in increasing degree."""
    return Family(
        "E",
        tuple(range(1, n + 1)),
        tuple((lambda x, k=k: elem_sym(x, k)) for k in range(1, n + 1)),
        tuple((lambda x, k=k: _grad_E(x, k)) for k in range(1, n + 1)),
    )


def F_family(r: int, ks: Sequence[int]) -> Family:
    """F_{k,r} for the given k in increasing order."""
    ks = sorted(int(k) for k in ks)
    if any(k < 1 for k in ks):
        raise DomainError("k must be >= 1")
    return Family(
        "F",
        tuple(ks),
        tuple((lambda x, k=k: F_value(k, r, x)) for k in ks),
        tuple((lambda x, k=k: grad_F_exact(k, r, x)) for k in ks),
    )


def n3_family() -> Family:
    """Sum, minus the largest entry, and product: the equal-sum n = 3 criterion."""
    return Family(
        "n3",
        ("sum", "neg_max", "prod"),
        (lambda x: math.fsum(float(v) for v in x),
         lambda x: -max(float(v) for v in x),
         lambda x: math.prod(float(v) for v in x)),
        (),
    )


def jacobian_TP(x: Sequence, family: Family, tol: float = 1e-10) -> TPReport:
    """Minors of the gradient matrix (rows in family order) at sorted x."""
    x = as_point(x)
    _check_sorted(x)
    if len(x) > 6:
        raise ResourceError("jacobian_TP is limited to n <= 6")
    if not family.grads:
        raise DomainError(f"family {family.name} has no gradients")
    M = family.matrix(x)
    if len(M) > MAX_TP_DIM:
        raise ResourceError(f"at most {MAX_TP_DIM} gradient rows")
    return minors_nonneg(M, tol=tol)


# ---------------------------------------------------------------------------
# Monotone paths
# ---------------------------------------------------------------------------


def path_monotone_check(path: Sequence[Sequence], family: Family,
                        tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Every family member is nondecreasing along consecutive path points.

    For the Psi family the full relation is decided exactly between
    consecutive points rather than only on the stored lambda grid.
    Witness is (segment index, member label).
    """
    pts = [as_point(p) for p in path]
    if not pts:
        raise DomainError("empty path")
    margin = math.inf
    for s, (a, b) in enumerate(zip(pts, pts[1:])):
        if family.name == "psi":
            v = prec_L(a, b, tol)
            margin = min(margin, v.margin)
            if not v:
                return Verdict.fails((s, "lambda=%r" % v.witness), v.margin)
            continue
        for lab, f in zip(family.labels, family.funcs):
            fa, fb = f(a), f(b)
            margin = min(margin, float(fb - fa))
            if not tol.le(fa, fb):
                return Verdict.fails((s, lab), float(fb - fa))
    return Verdict.holds_(margin if margin != math.inf else 0.0)


def find_monotone_path(x: Sequence, y: Sequence, family: Family, grid: int = 200,
                       budget: int = 1_000_000, reach: int = 5,
                       tol: Tolerance = DEFAULT_TOL):
    """Best-first search for a monotone path from x to y inside D_3.

    Works for n = 3 with equal sums.  Nodes form the affine lattice
    x + i du + j dv with du, dv along (1, -1, 0) and (0, 1, -1), sized so
    that y is a node and about ``grid`` steps span the sum.  Edges join
    nodes at most ``reach`` steps apart in each direction and require every
    family member to be nondecreasing.  Short reaches get stuck where a
    member is flat to first order, so the default is generous.  Returns the path or None when the
    budget runs out; None says nothing about existence.
    """
    x = tuple(sorted((float(v) for v in as_point(x)), reverse=True))
    y = tuple(sorted((float(v) for v in as_point(y)), reverse=True))
    if len(x) != 3 or len(y) != 3:
        raise DomainError("path search is implemented for n = 3")
    if not tol.eq(sum(x), sum(y)):
        raise DomainError("path search needs equal sums")
    total = max(sum(x), 1e-300)
    h = total / grid
    a, b = y[0] - x[0], x[2] - y[2]
    na, nb = max(1, round(abs(a) / h)), max(1, round(abs(b) / h))
    du = a / na if a else h
    dv = b / nb if b else h
    goal = (na if a else 0, nb if b else 0)

    def point(i, j):
        return (x[0] + i * du, x[1] - i * du + j * dv, x[2] - j * dv)

    def inside(p):
        return p[2] >= -1e-12 * total and p[0] >= p[1] - 1e-12 * total and p[1] >= p[2] - 1e-12 * total

    moves = [(di, dj) for di in range(-reach, reach + 1) for dj in range(-reach, reach + 1)
             if (di, dj) != (0, 0)]
    vals0 = family.values(point(0, 0))
    start = (0, 0)
    seen = {start: None}
    cache = {start: vals0}
    heap = [(abs(goal[0]) + abs(goal[1]), start)]
    expanded = 0
    while heap and expanded < budget:
        _, node = heapq.heappop(heap)
        expanded += 1
        if node == goal:
            out = []
            while node is not None:
                out.append(point(*node))
                node = seen[node]
            out.reverse()
            out[-1] = y
            return out
        fv = cache[node]
        for di, dj in moves:
            nxt = (node[0] + di, node[1] + dj)
            if nxt in seen:
                continue
            p = y if nxt == goal else point(*nxt)
            if not inside(p):
                continue
            gv = family.values(p)
            if all(tol.le(a_, b_) for a_, b_ in zip(fv, gv)):
                seen[nxt] = node
                cache[nxt] = gv
                heapq.heappush(heap, (abs(goal[0] - nxt[0]) + abs(goal[1] - nxt[1]), nxt))
    return None


# ---------------------------------------------------------------------------
# Search for a Schur-concave H_S whose gradient breaks the 3x3 condition
# ---------------------------------------------------------------------------


def _random_sorted_point(rng: np.random.Generator, denom: int = 8) -> tuple:
    vals = sorted((Fraction(int(v), denom) for v in rng.integers(1, 8 * denom, size=3)),
                  reverse=True)
    return tuple(vals)


def exercise_tp3_scan(rng: np.random.Generator, k_range=(3, 8), sets: int = 200,
                      points: int = 20) -> dict | None:
    """Downward closures of one or two random generators in I_k (n = 3),
    each probed at random rational points x1 >= x2 >= x3 > 0.

    Returns the first (generators, x, tp3) with tp3 < 0, exactly, or None.
    """
    for _ in range(sets):
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        gens = []
        for _ in range(int(rng.integers(1, 3))):
            cuts = np.sort(rng.integers(0, k + 1, size=2))
            gens.append((int(cuts[0]), int(cuts[1] - cuts[0]), int(k - cuts[1])))
        S = IndexSet.downward_closure(gens)
        for _ in range(points):
            x = _random_sorted_point(rng)
            if len(set(x)) < 3:
                continue
            _, _, tp3 = lemma13_dets(x, grad_supplier=lambda p: grad_H_S_exact(p, S))
            if tp3 < 0:
                return {"generators": [list(g) for g in gens], "k": k,
                        "members": sorted(list(m) for m in S.members),
                        "x": list(x), "tp3": tp3}
    return None
