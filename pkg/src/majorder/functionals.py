"""Extremal functionals: the rising-water fill, its saddle point, the
functional Psi_lambda and the Legendre pairs (L, I).

Norms on h and z follow normalized counting measure unless a ``mode``
argument says otherwise: ``"raw"`` budgets are plain sums, ``"normalized"``
budgets are means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import DomainError, as_point

MODES = ("raw", "normalized")
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


@dataclass(frozen=True)
class WaterResult:
    """Waterline ``c``, fill depths ``ztilde`` and ``supval = prod(x + ztilde)``."""

    c: float
    ztilde: tuple
    supval: float
    gm: float

    def to_dict(self) -> dict:
        return {"c": self.c, "ztilde": list(self.ztilde), "sup": self.supval, "gm": self.gm}


@dataclass(frozen=True)
class SaddlePair:
    htilde: tuple
    ztilde: tuple
    value: float


def _budget(volume, n: int, mode: str):
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    if volume < 0:
        raise DomainError("volume must be >= 0")
    return volume if mode == "raw" else n * volume


def _geo_mean(w) -> float:
    if any(v == 0 for v in w):
        return 0.0
    return math.exp(math.fsum(math.log(v) for v in w) / len(w))


def water_fill(x: Sequence, volume, mode: str = "raw") -> WaterResult:
    """Fill the profile x with ``volume`` of water.

    The level c solves sum_i max(c, x_i) - x_i = V, where V is the volume
    itself (raw) or n * volume (normalized).  Exact inputs give exact output.
    """
    xs = as_point(x)
    n = len(xs)
    exact = all(_is_exact(v) for v in xs) and _is_exact(volume)
    if not exact:
        xs = tuple(float(v) for v in xs)
        volume = float(volume)
    V = _budget(volume, n, mode)
    s = sorted(xs)
    acc = 0
    c = None
    for j in range(1, n + 1):
        acc = acc + s[j - 1]
        level = (Fraction(V + acc) / j) if exact else (V + acc) / j
        if j == n or level <= s[j]:
            c = level
            break
    z = tuple(max(c, v) - v for v in xs)
    w = [v + dz for v, dz in zip(xs, z)]
    prod = 1
    for v in w:
        prod = prod * v
    gm = float(prod) ** (1.0 / n) if exact else _geo_mean(w)
    return WaterResult(c, z, prod, gm)


def sup_prod(x: Sequence, t, volume=1, mode: str = "normalized") -> float:
    """sup of prod(z_i + t x_i) over z >= 0 with the given budget."""
    if t < 0:
        raise DomainError("t must be >= 0")
    xs = as_point(x)
    return water_fill(tuple(t * v for v in xs), volume, mode).supval


def saddle_point(x: Sequence, lam) -> SaddlePair:
    """Saddle pair for T(h, z) = mean(h * (x + z)) with ||h||_0 = 1, mean(z) = lam."""
    if lam <= 0:
        raise DomainError("lambda must be > 0")
    xs = tuple(float(v) for v in as_point(x))
    wr = water_fill(xs, float(lam), "normalized")
    w = [v + dz for v, dz in zip(xs, wr.ztilde)]
    g = wr.gm
    h = tuple(g / v for v in w)
    return SaddlePair(h, wr.ztilde, g)


def T_value(x, h, z) -> float:
    return math.fsum(a * (b + c) for a, b, c in zip(h, x, z)) / len(x)


def check_saddle(x: Sequence, lam, pair: SaddlePair, samples: int = 200,
                 rng: np.random.Generator | None = None, tol: float = 1e-10) -> dict:
    """Sample feasible (h, z) and test T(ht, z) <= T(ht, zt) <= T(h, zt).

    Returns counts of violations for each side plus the worst slack seen.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    xs = np.asarray([float(v) for v in as_point(x)])
    n = len(xs)
    ht, zt = np.asarray(pair.htilde), np.asarray(pair.ztilde)
    center = T_value(xs, ht, zt)
    scale = max(1.0, abs(center))
    worst_left = worst_right = math.inf
    bad_left = bad_right = 0
    for _ in range(samples):
        z = rng.dirichlet(np.ones(n)) * n * float(lam)
        u = rng.normal(size=n) * rng.uniform(0.1, 3.0)
        h = np.exp(u - u.mean())
        left = center - T_value(xs, ht, z)
        right = T_value(xs, h, zt) - center
        worst_left, worst_right = min(worst_left, left), min(worst_right, right)
        bad_left += left < -tol * scale
        bad_right += right < -tol * scale
    return {
        "value": center,
        "left_violations": int(bad_left),
        "right_violations": int(bad_right),
        "left_slack": worst_left,
        "right_slack": worst_right,
    }


def Psi(x: Sequence, lam) -> float:
    """Psi_lambda(x) = sum_i min(x_i, lam) + lam * log_+(x_i / lam)."""
    if lam <= 0:
        raise DomainError("lambda must be > 0")
    lam = float(lam)
    terms = []
    for v in as_point(x):
        v = float(v)
        if v <= lam:
            terms.append(v)
        else:
            terms.append(lam + lam * math.log(v / lam))
    return math.fsum(terms)


def grad_Psi(x: Sequence, lam) -> tuple[float, ...]:
    """Gradient of Psi_lambda: 1 where x_i <= lam, lam / x_i above."""
    if lam <= 0:
        raise DomainError("lambda must be > 0")
    lam = float(lam)
    return tuple(1.0 if v <= lam else lam / float(v) for v in as_point(x))


def L1(x: Sequence, lam) -> float:
    """(prod(x_i + lam))^{1/n} - lam, written to avoid cancellation at large lam."""
    if lam < 0:
        raise DomainError("lambda must be >= 0")
    xs = [float(v) for v in as_point(x)]
    lam = float(lam)
    if lam == 0:
        return _geo_mean(xs)
    m = math.fsum(math.log1p(v / lam) for v in xs) / len(xs)
    return lam * math.expm1(m)


def Linf(x: Sequence, lam) -> float:
    """sup over mean(w) = lam of (prod(x_i + w_i))^{1/n}, minus lam."""
    if lam < 0:
        raise DomainError("lambda must be >= 0")
    xs = [float(v) for v in as_point(x)]
    lam = float(lam)
    if lam == 0:
        return _geo_mean(xs)
    c = water_fill(xs, lam, "normalized").c
    m = math.fsum(math.log(max(c, v) / c) for v in xs) / len(xs)
    return c * math.expm1(m) + (c - lam)


def maximize_concave(f: Callable[[float], float], lo: float = 0.0, hi: float = 1.0,
                     tol: float = 1e-12, max_expand: int = 200) -> tuple[float, float]:
    """Maximize a concave function on [lo, inf): bracket expansion, then golden section.

    Returns ``(argmax, max)``.  The right end doubles until f stops rising.
    """
    hi = max(hi, lo + 1e-12)
    f_hi = f(hi)
    for _ in range(max_expand):
        nxt = lo + 2.0 * (hi - lo)
        f_nxt = f(nxt)
        if f_nxt <= f_hi:
            hi = nxt
            break
        hi, f_hi = nxt, f_nxt
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    best = max((f(lo), lo), (fc, c), (fd, d), (f(hi), hi))
    return best[1], best[0]


def _legendre_sup(L: Callable[[float], float], x, t) -> float:
    if t < 0:
        raise DomainError("t must be >= 0")
    xs = [float(v) for v in as_point(x)]
    if t == 0:
        # L increases to the mean of x, attained only as lambda -> inf for L1
        return math.fsum(xs) / len(xs)
    scale = max(max(xs), 1e-300)
    _, val = maximize_concave(lambda lam: L(xs, lam) - lam * t, 0.0, scale)
    return val


def I1(x: Sequence, t) -> float:
    """sup over lam >= 0 of L1(x, lam) - lam t."""
    return _legendre_sup(L1, x, float(t))


def Iinf(x: Sequence, t) -> float:
    """sup over lam >= 0 of Linf(x, lam) - lam t."""
    return _legendre_sup(Linf, x, float(t))


def legendre_inverse(I: Callable[[float], float], lam: float, tol: float = 1e-12) -> float:
    """inf over t >= 0 of I(t) + lam t, for convex nonincreasing I."""
    t_star, val = maximize_concave(lambda t: -(I(t) + lam * t), 0.0, 1.0, tol=tol)
    return -val


def I_direct_mc(x: Sequence, t, kind: str = "inf", samples: int = 10_000,
                rng: np.random.Generator | None = None) -> float:
    """Monte-Carlo upper estimate of inf mean(h x) over feasible h.

    Feasible means h >= 0, ||h||_0 = 1 and either max h <= 1 + t
    (``kind="inf"``) or mean h <= 1 + t (``kind="1"``).  Samples are
    log-normal directions pulled toward h = 1 until they fit.
    """
    if kind not in ("inf", "1"):
        raise DomainError("kind must be 'inf' or '1'")
    rng = np.random.default_rng(0) if rng is None else rng
    xs = np.asarray([float(v) for v in as_point(x)])
    n = len(xs)
    cap = 1.0 + float(t)
    u = rng.normal(size=(samples, n)) * rng.uniform(0.05, 4.0, size=(samples, 1))
    u -= u.mean(axis=1, keepdims=True)
    if kind == "inf":
        top = u.max(axis=1)
        s = np.where(top > math.log(cap), math.log(cap) / np.maximum(top, 1e-300), 1.0)
        h = np.exp(u * s[:, None])
    else:
        h = np.exp(u)
        for _ in range(60):
            over = h.mean(axis=1) > cap
            if not over.any():
                break
            u[over] *= 0.8
            h[over] = np.exp(u[over])
        h = h[h.mean(axis=1) <= cap]
    vals = (h * xs).mean(axis=1)
    # h = 1 is always feasible
    return float(min(vals.min(initial=math.inf), xs.mean()))


def script_L(x: Sequence, t) -> float:
    """(t/n) sum_i [min(x_i, 1/t) + (1/t) log_+(t x_i)] - (1 + log t)."""
    if t <= 0:
        raise DomainError("t must be > 0")
    t = float(t)
    xs = [float(v) for v in as_point(x)]
    inv = 1.0 / t
    terms = []
    for v in xs:
        terms.append(min(v, inv) + (inv * math.log(t * v) if t * v > 1 else 0.0))
    return t * math.fsum(terms) / len(xs) - (1.0 + math.log(t))


def script_L_direct(x: Sequence, t) -> float:
    """The same value as the supremum of mean(log(x + z) - t z) over z >= 0."""
    if t <= 0:
        raise DomainError("t must be > 0")
    t = float(t)
    xs = [float(v) for v in as_point(x)]
    z = [max(1.0 / t - v, 0.0) for v in xs]
    return math.fsum(math.log(v + dz) - t * dz for v, dz in zip(xs, z)) / len(xs)


def supdet_check(eigs: Sequence, Z: np.ndarray, A: np.ndarray, t: float) -> tuple[float, float]:
    """Return (det(Z + tA), sup over raw sum(z) <= 1 of prod(z_i + t eig_i)).

    For PSD Z with trace at most one the first value never exceeds the second.
    """
    lhs = float(np.linalg.det(Z + t * A))
    rhs = float(sup_prod([max(float(e), 0.0) for e in eigs], t, 1.0, "raw"))
    return lhs, rhs
