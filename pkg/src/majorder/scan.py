"""Randomized searches for pairs that separate two preorders.

A target names an implication and asks for pairs where the first relation
holds and the second does not.  Work is split into a fixed number of shards,
each seeded from its own child of one ``SeedSequence``, so the findings do
not depend on how many worker processes run them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .core import DEFAULT_TOL, EXACT, DomainError, Status, Tolerance, majorizes, weak_prec
from .relations import prec_F, prec_L

# first relation holds, second fails; refutation targets contradict a claim
TARGETS = {
    "L_not_w": ("L", "w"),
    "F_not_maj": ("F", "maj"),
    "L_not_F": ("L", "F"),
    "F_not_L": ("F", "L"),
}
REFUTATION_TARGETS = frozenset({"L_not_F", "F_not_L"})
GENERATORS = ("int", "dec", "comp", "perturb", "robin")
EQUAL_SUM_GENERATORS = ("comp", "robin", "shift")
N_SHARDS = 64


@dataclass
class ScanConfig:
    target: str
    n: int = 3
    n_min: int | None = None
    samples: int = 10_000
    seed: int = 0
    rmax: int = 6
    tol_abs: float = 1e-12
    tol_rel: float = 1e-12
    workers: int = 1
    max_findings: int = 1000

    def __post_init__(self):
        if self.target not in TARGETS:
            raise DomainError(f"unknown target {self.target!r}; choose from {sorted(TARGETS)}")
        if self.n_min is None:
            self.n_min = self.n
        if not 1 <= self.n_min <= self.n:
            raise DomainError("need 1 <= n_min <= n")
        if self.samples < 0:
            raise DomainError("samples must be >= 0")

    @property
    def tol(self) -> Tolerance:
        return Tolerance(self.tol_abs, self.tol_rel)


# ---------------------------------------------------------------------------
# Pair generators (exact rationals)
# ---------------------------------------------------------------------------


def _ints(rng, n, hi=20):
    return [Fraction(int(v)) for v in rng.integers(0, hi + 1, size=n)]


def _decimals(rng, n):
    return [Fraction(int(v), 1000) for v in rng.integers(0, 20_001, size=n)]


def _composition(rng, n, total):
    cuts = np.sort(rng.integers(0, total + 1, size=n - 1))
    edges = np.concatenate(([0], cuts, [total]))
    return [Fraction(int(v)) for v in np.diff(edges)]


def _robin_hood(rng, x, moves):
    """Transfers from a richer to a poorer entry, never overshooting the midpoint."""
    y = list(x)
    n = len(y)
    for _ in range(moves):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False)) if n > 1 else (0, 0)
        if y[i] < y[j]:
            i, j = j, i
        gap = y[i] - y[j]
        if gap == 0:
            continue
        a = gap * Fraction(int(rng.integers(1, 51)), 100)
        y[i], y[j] = y[i] - a, y[j] + a
    return y


def _perturb(rng, x, scale=100):
    return [max(Fraction(0), v + Fraction(int(rng.integers(-50, 51)), scale)) for v in x]


def _shift(rng, x):
    """Move a random rational amount between two entries, keeping the sum."""
    y = list(x)
    if len(y) < 2:
        return y
    i, j = (int(v) for v in rng.choice(len(y), size=2, replace=False))
    a = min(y[i], Fraction(int(rng.integers(1, 2001)), 100))
    y[i], y[j] = y[i] - a, y[j] + a
    return y


def make_pair(rng: np.random.Generator, n: int, kind: str) -> tuple[tuple, tuple]:
    if kind == "int":
        x, y = _ints(rng, n), _ints(rng, n)
    elif kind == "dec":
        x, y = _decimals(rng, n), _decimals(rng, n)
    elif kind == "comp":
        total = int(rng.integers(n, 31))
        x, y = _composition(rng, n, total), _composition(rng, n, total)
    elif kind == "perturb":
        x = _ints(rng, n)
        y = _perturb(rng, x)
    elif kind == "robin":
        x = _ints(rng, n)
        y = _robin_hood(rng, x, int(rng.integers(1, 4)))
    elif kind == "shift":
        x = _ints(rng, n)
        y = _shift(rng, x)
    else:
        raise DomainError(f"unknown generator {kind!r}")
    return tuple(x), tuple(y)


def _draw(rng, cfg: ScanConfig):
    n = int(rng.integers(cfg.n_min, cfg.n + 1))
    kinds = EQUAL_SUM_GENERATORS if cfg.target == "F_not_maj" else GENERATORS
    kind = kinds[int(rng.integers(len(kinds)))]
    x, y = make_pair(rng, n, kind)
    if kind == "robin" and cfg.target != "F_not_maj" and rng.random() < 0.5:
        y = tuple(_perturb(rng, y, 1000))
    # half the draws reversed, so both directions of a generator are seen
    if rng.random() < 0.5:
        x, y = y, x
    return kind, x, y


# ---------------------------------------------------------------------------
# Psi-grid prefilter
# ---------------------------------------------------------------------------

_LOG_GRID = np.logspace(-3, 3, 25)


def psi_grid_gap(x, y) -> float:
    """max over a lambda grid of Psi(x) - Psi(y), relative to max(1, sum).

    The grid holds every entry of x and y plus a log-spaced sweep; a
    clearly positive value means x is not below y in the Psi order.
    """
    xa = np.asarray([float(v) for v in x])
    ya = np.asarray([float(v) for v in y])
    top = max(xa.max(initial=0.0), ya.max(initial=0.0), 1e-300)
    lam = np.concatenate((xa[xa > 0], ya[ya > 0], top * _LOG_GRID))

    def psi(v):
        vv = v[None, :]
        L = lam[:, None]
        with np.errstate(divide="ignore"):
            big = L * (1.0 + np.log(np.where(vv > 0, vv, 1.0) / L))
        return np.where(vv <= L, vv, big).sum(axis=1)

    return float((psi(xa) - psi(ya)).max() / max(1.0, ya.sum(), xa.sum()))


def _surely_not_L(x, y) -> bool:
    return psi_grid_gap(x, y) > 1e-9


# ---------------------------------------------------------------------------
# Target evaluation
# ---------------------------------------------------------------------------


def _holds(v) -> bool:
    return v.status in (Status.HOLDS, Status.HOLDS_UP_TO)


def evaluate(target: str, x, y, rmax: int, tol: Tolerance, screen: bool = True) -> dict | None:
    """Return a finding record when (x, y) separates the target's relations.

    ``None`` means not separating; a dict carries both verdicts and a
    ``marginal`` flag for findings that rest on the float tolerance.
    """
    first, second = TARGETS[target]
    if first == "L":
        if screen and _surely_not_L(x, y):
            return None
        if second == "w" and _holds(weak_prec(x, y)):
            return None
        v1 = prec_L(x, y, tol)
        if not _holds(v1):
            return None
        v2 = weak_prec(x, y) if second == "w" else prec_F(x, y, rmax)
        if _holds(v2):
            return None
        # the float decision of prec_L only cleared the bar within tolerance
        marginal = not _holds(prec_L(x, y, EXACT))
        return _record(x, y, v1, v2, marginal)
    # first relation is F
    if second == "maj":
        if sum(x) != sum(y):
            return None
        v2 = majorizes(x, y, EXACT)
        if _holds(v2):
            return None
        v1 = prec_F(x, y, rmax)
        return _record(x, y, v1, v2, False) if _holds(v1) else None
    # F_not_L: both cheap necessary conditions of F first
    if sum(x) > sum(y) or math.prod(x) > math.prod(y):
        return None
    v2 = prec_L(x, y, tol)
    if _holds(v2):
        return None
    v1 = prec_F(x, y, rmax)
    if not _holds(v1):
        return None
    loose = Tolerance(tol.abs * 1000, tol.rel * 1000)
    return _record(x, y, v1, v2, _holds(prec_L(x, y, loose)))


def _record(x, y, v1, v2, marginal):
    return {"x": list(x), "y": list(y), "first": v1.to_dict(), "second": v2.to_dict(),
            "marginal": bool(marginal)}


def _shard_sizes(samples: int, shards: int) -> list[int]:
    base, extra = divmod(samples, shards)
    return [base + (i < extra) for i in range(shards)]


def run_shard(args) -> dict:
    cfg_dict, index, count, seed_seq = args
    cfg = ScanConfig(**cfg_dict)
    rng = np.random.default_rng(seed_seq)
    tol = cfg.tol
    findings, screened, checked = [], 0, 0
    for _ in range(count):
        kind, x, y = _draw(rng, cfg)
        if TARGETS[cfg.target][0] == "L" and _surely_not_L(x, y):
            screened += 1
            continue
        checked += 1
        rec = evaluate(cfg.target, x, y, cfg.rmax, tol, screen=False)
        if rec is not None and len(findings) < cfg.max_findings:
            rec.update(shard=index, generator=kind)
            findings.append(rec)
    return {"shard": index, "samples": count, "screened": screened, "checked": checked,
            "findings": findings}


def scan(cfg: ScanConfig, shards: int = N_SHARDS) -> Iterator[dict]:
    """Yield finding records in shard order, then one summary record."""
    children = np.random.SeedSequence(cfg.seed).spawn(shards)
    sizes = _shard_sizes(cfg.samples, shards)
    jobs = [(asdict(cfg), i, sizes[i], children[i]) for i in range(shards)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_shard, jobs))
    else:
        results = [run_shard(j) for j in jobs]
    strict = marginal = 0
    total = 0
    for res in results:
        for rec in res["findings"]:
            if total >= cfg.max_findings:
                break
            total += 1
            if rec["marginal"]:
                marginal += 1
            else:
                strict += 1
            yield {"finding": rec}
    yield {"summary": {
        "target": cfg.target,
        "refutation": cfg.target in REFUTATION_TARGETS,
        "samples": cfg.samples,
        "screened": sum(r["screened"] for r in results),
        "checked": sum(r["checked"] for r in results),
        "findings": strict,
        "marginal_findings": marginal,
        "shards": shards,
    }}


def exit_code(cfg: ScanConfig, summary: dict) -> int:
    """1 when a strict finding refutes a claim, else 0."""
    return int(cfg.target in REFUTATION_TARGETS and summary["findings"] > 0)


def collect(cfg: ScanConfig, on_record: Callable[[dict], None] | None = None) -> tuple[list, dict]:
    findings, summary = [], None
    for rec in scan(cfg):
        if on_record is not None:
            on_record(rec)
        if "summary" in rec:
            summary = rec["summary"]
        else:
            findings.append(rec["finding"])
    return findings, summary
