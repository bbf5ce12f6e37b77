"""Decision procedures for the majorization-type preorders.

Every decision returns a :class:`~majorder.core.Verdict`.  Exact relations
(``prec_E``, ``prec_F``, ``prec_1``) convert inputs to rationals and compare
without tolerance; ``prec_L`` works in floating point with a closed-form
analysis on each interval between breakpoints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import (
    DEFAULT_TOL,
    DomainError,
    Status,
    Tolerance,
    Verdict,
    as_pair,
    as_point,
    majorizes,
    tensor,
    to_fraction,
)
from .functionals import Psi, sup_prod
from .poly import RationalPoly, halfline_probes
from .sympoly import common_scale, elem_sym_all, scaled_gen_coeffs


def _rel_gap(a, b) -> float:
    """(b - a) relative to the larger magnitude; 0 when both vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return float(Fraction(b - a) / scale) if not isinstance(a, float) else (b - a) / scale


def prec_E(x: Sequence, y: Sequence) -> Verdict:
    """E_k(x) <= E_k(y) for k = 1..n, decided exactly; witness is the first failing k."""
    x, y = as_pair(x, y)
    ex, ey = elem_sym_all(x), elem_sym_all(y)
    margin = math.inf
    for k in range(1, len(x) + 1):
        gap = _rel_gap(ex[k], ey[k])
        margin = min(margin, gap)
        if ex[k] > ey[k]:
            return Verdict.fails(k, gap)
    return Verdict.holds_(margin)


def prec_F(x: Sequence, y: Sequence, Rmax: int = 6) -> Verdict:
    """F_{k,r}(x) <= F_{k,r}(y) for r <= Rmax and r <= k <= n r.

    Coefficients with k < r are powers of E_1 and are covered by the k = 1
    comparison, done once up front.  The family is infinite, so success is
    reported as ``HOLDS_UP_TO`` with bound Rmax.  Witness is (k, r).
    """
    if Rmax < 1:
        raise DomainError("Rmax must be >= 1")
    x, y = as_pair(x, y)
    n = len(x)
    D, (mx, my) = common_scale(x, y)
    margin = math.inf
    sx, sy = sum(mx), sum(my)
    gap = _rel_gap(sx, sy)
    margin = min(margin, gap)
    if sx > sy:
        return Verdict.fails((1, 1), gap)
    per_r = {}
    for r in range(1, Rmax + 1):
        cx, cy = scaled_gen_coeffs(mx, r), scaled_gen_coeffs(my, r)
        r_margin = math.inf
        for k in range(max(r, 2), n * r + 1):
            gap = _rel_gap(cx[k], cy[k])
            r_margin = min(r_margin, gap)
            if cx[k] > cy[k]:
                return Verdict.fails((k, r), gap)
        per_r[r] = r_margin
        margin = min(margin, r_margin)
    return Verdict(Status.HOLDS_UP_TO, None, float(margin), Rmax, {"margin_by_r": per_r})


def F_fixed_r(x: Sequence, y: Sequence, r: int) -> Verdict:
    """F_{k,r}(x) <= F_{k,r}(y) for one r and every r <= k <= n r.

    Smaller k follow, since F_{k,r} = E_1^k / k! there.  Witness is k.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    x, y = as_pair(x, y)
    n = len(x)
    _, (mx, my) = common_scale(x, y)
    cx, cy = scaled_gen_coeffs(mx, r), scaled_gen_coeffs(my, r)
    margin = math.inf
    for k in range(r, n * r + 1):
        gap = _rel_gap(cx[k], cy[k])
        margin = min(margin, gap)
        if cx[k] > cy[k]:
            return Verdict.fails(k, gap)
    return Verdict.holds_(margin)


# ---------------------------------------------------------------------------
# prec_L
# ---------------------------------------------------------------------------


def _interval_coeffs(x, y, lam):
    """Coefficients (A, B, C) with Psi_t(y) - Psi_t(x) = A + B t + C t log t
    on the open interval between breakpoints that contains ``lam``."""

    def parts(v):
        small = math.fsum(a for a in v if a <= lam)
        big = [a for a in v if a > lam]
        return small, len(big), math.fsum(math.log(a) for a in big)

    sx, mx, lx = parts(x)
    sy, my, ly = parts(y)
    return sy - sx, (my - mx) + (ly - lx), mx - my


def prec_L(x: Sequence, y: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Psi_lam(x) <= Psi_lam(y) for every lam > 0.

    Between consecutive breakpoints (the distinct positive entries of x and
    y) the difference is A + B lam + C lam log lam, convex when C > 0 with
    its minimum at exp(-1 - B / C).  Candidates are the breakpoints and those
    interior minima; the two ends are settled by limits.  Near 0 the sign is
    fixed by the count of positive entries, then by the sum of their logs.
    Near infinity it is the sum comparison.  Witness is a lam value.
    """
    x, y = as_pair(x, y)
    xf = [float(v) for v in x]
    yf = [float(v) for v in y]
    # lam -> infinity: Psi tends to the plain sum
    sx, sy = math.fsum(xf), math.fsum(yf)
    margin = _rel_gap(sx, sy)
    if not tol.le(sx, sy):
        lam = 2.0 * max(max(xf), max(yf), 1e-300)
        return Verdict.fails(lam, margin, reason="sum")
    pts = sorted({v for v in xf + yf if v > 0})
    if not pts:
        return Verdict.holds_(0.0)
    # lam -> 0+: Psi_lam(v) ~ lam * (m + sum log v - m log lam)
    px = [v for v in xf if v > 0]
    py = [v for v in yf if v > 0]
    if len(px) > len(py):
        A, B, C = _interval_coeffs(xf, yf, pts[0] / 2)
        lam = min(math.exp(-1.0 - B / C), pts[0] / 2)
        g = min(_rel_gap(Psi(xf, lam), Psi(yf, lam)), 0.0) if lam > 0 else 0.0
        return Verdict.fails(lam, g, reason="positive count", log_lambda=-1.0 - B / C)
    if len(px) == len(py):
        lx = math.fsum(math.log(v) for v in px)
        ly = math.fsum(math.log(v) for v in py)
        if ly - lx < -max(tol.abs, tol.rel * max(abs(lx), abs(ly), 1.0)):
            return Verdict.fails(pts[0], _rel_gap(lx, ly), reason="log sum")
    candidates = list(pts)
    edges = [0.0] + pts
    for lo, hi in zip(edges, edges[1:]):
        A, B, C = _interval_coeffs(xf, yf, (lo + hi) / 2 if lo > 0 else hi / 2)
        if C > 0:
            e = -1.0 - B / C
            if e < 709.0:
                star = math.exp(e)
                if lo < star < hi:
                    candidates.append(star)
    worst_lam, worst = None, math.inf
    for lam in candidates:
        a, b = Psi(xf, lam), Psi(yf, lam)
        g = _rel_gap(a, b)
        if g < worst:
            worst, worst_lam = g, lam
    margin = min(margin, worst)
    a, b = Psi(xf, worst_lam), Psi(yf, worst_lam)
    if not tol.le(a, b):
        return Verdict.fails(worst_lam, margin, reason="interior")
    return Verdict.holds_(margin)


# ---------------------------------------------------------------------------
# prec_1
# ---------------------------------------------------------------------------


def _shift_product(v) -> RationalPoly:
    out = RationalPoly.const(1)
    for a in v:
        out = out * RationalPoly([a, 1])
    return out


def prec_1(x: Sequence, y: Sequence, exact: bool = True, grid: int = 512,
           tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """prod(x_i + lam) <= prod(y_i + lam) for every lam >= 0.

    The exact mode decides nonnegativity of the difference polynomial with
    Sturm sequences; the float mode scans a log grid and refines the worst
    cell by golden section.  Witness is a lam value.
    """
    x, y = as_pair(x, y)
    if exact:
        xs = [to_fraction(v) for v in x]
        ys = [to_fraction(v) for v in y]
        py, px = _shift_product(ys), _shift_product(xs)
        diff = py - px
        probes = [Fraction(0)] + halfline_probes(diff)
        margin = math.inf
        for t in probes:
            g = _rel_gap(px(t), py(t))
            margin = min(margin, g)
            if diff(t) < 0:
                return Verdict.fails(t, g)
        return Verdict.holds_(max(margin, 0.0) if margin != math.inf else 0.0)
    return _prec_1_float(x, y, grid, tol)


def _prec_1_float(x, y, grid, tol):
    xf, yf = [float(v) for v in x], [float(v) for v in y]

    def logprod(v, lam):
        if any(a + lam == 0 for a in v):
            return -math.inf
        return math.fsum(math.log(a + lam) for a in v)

    def gap(lam):
        # log of prod(y + lam) / prod(x + lam)
        a, b = logprod(xf, lam), logprod(yf, lam)
        if a == b:
            return 0.0
        return b - a

    top = max(max(xf), max(yf), 1.0)
    lams = [0.0] + [top * 10.0 ** (-12 + 16 * i / grid) for i in range(grid + 1)]
    vals = [gap(t) for t in lams]
    i = min(range(len(vals)), key=vals.__getitem__)
    t_best, v_best = lams[i], vals[i]
    a, b = lams[max(i - 1, 0)], lams[min(i + 1, len(lams) - 1)]
    for _ in range(100):
        c, d = a + 0.382 * (b - a), a + 0.618 * (b - a)
        if gap(c) < gap(d):
            b = d
        else:
            a = c
    t_ref = (a + b) / 2
    if gap(t_ref) < v_best:
        t_best, v_best = t_ref, gap(t_ref)
    if v_best < -max(tol.rel, tol.abs):
        return Verdict.fails(t_best, v_best)
    return Verdict.holds_(v_best)


# ---------------------------------------------------------------------------
# Small-n shortcuts
# ---------------------------------------------------------------------------


def _prod(v):
    out = 1
    for a in v:
        out = out * a
    return out


def shortcut_n2(x: Sequence, y: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """For n = 2: x1 x2 <= y1 y2 and x1 + x2 <= y1 + y2."""
    x, y = as_pair(x, y)
    if len(x) != 2:
        raise DomainError("shortcut_n2 needs n = 2")
    g_prod = _rel_gap(_prod(x), _prod(y))
    g_sum = _rel_gap(sum(x), sum(y))
    if not tol.le(_prod(x), _prod(y)):
        return Verdict.fails("product", g_prod)
    if not tol.le(sum(x), sum(y)):
        return Verdict.fails("sum", g_sum)
    return Verdict.holds_(min(g_prod, g_sum))


def _equal_sum_triple(x, y, tol):
    x, y = as_pair(x, y)
    if len(x) != 3:
        raise DomainError("needs n = 3")
    if not tol.eq(sum(x), sum(y)):
        raise DomainError(f"sums differ: {sum(x)} vs {sum(y)}")
    return x, y


def shortcut_n3_equal_sum(x: Sequence, y: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """For n = 3 with equal sums: prod x <= prod y and max x >= max y."""
    x, y = _equal_sum_triple(x, y, tol)
    g_prod = _rel_gap(_prod(x), _prod(y))
    g_max = _rel_gap(max(y), max(x))
    if not tol.le(_prod(x), _prod(y)):
        return Verdict.fails("product", g_prod)
    if not tol.le(max(y), max(x)):
        return Verdict.fails("max", g_max)
    return Verdict.holds_(min(g_prod, g_max))


def prop19_check(x: Sequence, y: Sequence, r: int, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """For n = 3 with equal sums: prod x <= prod y and sum x^{r+1} >= sum y^{r+1}."""
    if r < 1:
        raise DomainError("r must be >= 1")
    x, y = _equal_sum_triple(x, y, tol)
    px, py = _prod(x), _prod(y)
    sx = sum(v ** (r + 1) for v in x)
    sy = sum(v ** (r + 1) for v in y)
    g_prod, g_pow = _rel_gap(px, py), _rel_gap(sy, sx)
    if not tol.le(px, py):
        return Verdict.fails("product", g_prod)
    if not tol.le(sy, sx):
        return Verdict.fails("power_sum", g_pow)
    return Verdict.holds_(min(g_prod, g_pow))


# ---------------------------------------------------------------------------
# Catalysis
# ---------------------------------------------------------------------------


def geometric_catalyst(alpha: float, d: int) -> tuple[float, ...]:
    """(1, alpha, ..., alpha^{d-1}) / (1 - alpha)."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    if d < 1:
        raise DomainError("d must be >= 1")
    return tuple(alpha**j / (1.0 - alpha) for j in range(d))


def trump_check(x: Sequence, y: Sequence, z: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """x (x) z majorizes y (x) z."""
    z = as_point(z)
    if all(v == 0 for v in z):
        raise DomainError("catalyst must be nonzero")
    x, y = as_pair(x, y)
    return majorizes(tensor(x, z), tensor(y, z), tol)


# ---------------------------------------------------------------------------
# Grid cross-check through the water-fill supremum
# ---------------------------------------------------------------------------


def prec_L_via_sup(x: Sequence, y: Sequence, t_grid: Sequence[float],
                   mode: str = "raw", tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Compare sup_z prod(z_i + t x_i) with the same for y at each grid t.

    The budget is one unit of z in the chosen mode.  Only the grid is
    examined, so a holding verdict is marked ``grid_limited``.
    """
    x, y = as_pair(x, y)
    ts = [float(t) for t in t_grid]
    if not ts:
        raise DomainError("empty grid")
    if any(t <= 0 for t in ts):
        raise DomainError("grid values must be > 0")
    xf, yf = [float(v) for v in x], [float(v) for v in y]
    margin = math.inf
    values = []
    for t in ts:
        a, b = float(sup_prod(xf, t, 1.0, mode)), float(sup_prod(yf, t, 1.0, mode))
        values.append((t, a, b))
        g = _rel_gap(a, b)
        margin = min(margin, g)
        if not tol.le(a, b):
            return Verdict.fails(t, g, values=values)
    return Verdict.holds_(margin, grid_limited=True, grid_size=len(ts))
