"""Vector primitives: validation, rearrangement, p-norms, tensor products and
classical majorization checks.

Values flow through the package as plain tuples.  Entries may be ``int``,
``float`` or :class:`fractions.Fraction`; exact inputs stay exact wherever
the arithmetic allows it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """Requested computation exceeds a documented enumeration bound."""


# ---------------------------------------------------------------------------
# Tolerance and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative slack used by float comparisons.

    ``a <= b`` is accepted when ``a <= b + max(abs, rel * max(|a|, |b|))``.
    """

    abs: float = 1e-12
    rel: float = 1e-12

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0:
            raise DomainError("tolerances must be nonnegative")

    def slack(self, a, b) -> float:
        return max(self.abs, self.rel * max(abs(float(a)), abs(float(b))))

    def le(self, a, b) -> bool:
        if isinstance(a, Rational) and isinstance(b, Rational):
            if a <= b:
                return True
        return float(a) <= float(b) + self.slack(a, b)

    def eq(self, a, b) -> bool:
        return self.le(a, b) and self.le(b, a)


DEFAULT_TOL = Tolerance()
EXACT = Tolerance(0.0, 0.0)


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_UP_TO = "holds_up_to"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a relation decision.

    ``margin`` is the tightest slack found among the defining comparisons
    (negative when the relation fails).  ``bound`` is the truncation level
    for ``HOLDS_UP_TO`` verdicts.
    """

    status: Status
    witness: Any = None
    margin: float = math.inf
    bound: int | None = None
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if self.status is Status.HOLDS_UP_TO and self.bound is None:
            raise ValueError("a truncated verdict needs its bound")

    def __bool__(self) -> bool:
        return self.status is not Status.FAILS

    @property
    def holds(self) -> bool:
        return self.status is not Status.FAILS

    @classmethod
    def holds_(cls, margin=math.inf, **info) -> "Verdict":
        return cls(Status.HOLDS, None, float(margin), info=info)

    @classmethod
    def fails(cls, witness, margin, **info) -> "Verdict":
        return cls(Status.FAILS, witness, float(margin), info=info)

    def to_dict(self) -> dict:
        return {
            "verdict": self.status.value,
            "witness": jsonable(self.witness),
            "margin": jsonable(self.margin),
            "truncation": self.bound,
        }


def jsonable(obj):
    """Convert verdict payloads to JSON-friendly values; rationals become ``"p/q"``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return jsonable(obj.tolist())
    if hasattr(obj, "__float__"):
        return float(obj)
    return str(obj)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def _coerce(v):
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return v
    if isinstance(v, Rational):
        return Fraction(v)
    return float(v)


def as_point(x: Iterable, *, allow_negative: bool = False) -> tuple:
    """Validate a finite nonempty vector, nonnegative unless allowed otherwise."""
    pt = tuple(_coerce(v) for v in x)
    if not pt:
        raise DomainError("vector must have at least one entry")
    for v in pt:
        if isinstance(v, float) and not math.isfinite(v):
            raise DomainError(f"non-finite entry {v!r}")
        if not allow_negative and v < 0:
            raise DomainError(f"negative entry {v!r}")
    return pt


def as_pair(x, y) -> tuple[tuple, tuple]:
    x, y = as_point(x), as_point(y)
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    return x, y


def rearrange_desc(x: Sequence) -> tuple:
    """Decreasing rearrangement x*; stable for ties."""
    pt = as_point(x, allow_negative=True)
    return tuple(sorted(pt, key=lambda v: -v))


def pnorm(x: Sequence, p: float, *, normalized: bool) -> float:
    """l^p (quasi-)norm with the p = 0 (geometric mean) and p = inf endpoints.

    ``normalized`` selects normalized counting measure (the sum is divided
    by n before taking the 1/p power); it has no effect for p = 0 or inf.
    """
    pt = as_point(x)
    n = len(pt)
    if math.isinf(p):
        if p < 0:
            return float(min(pt))
        return float(max(pt))
    if p == 0:
        if any(v == 0 for v in pt):
            return 0.0
        return math.exp(math.fsum(math.log(v) for v in pt) / n)
    if p < 0 and any(v == 0 for v in pt):
        raise DomainError("p < 0 requires strictly positive entries")
    vals = [float(v) for v in pt]
    if p > 0:
        # scale by the max to keep large exponents in range
        m = max(vals)
        if m == 0:
            return 0.0
        s = math.fsum((v / m) ** p for v in vals)
        if normalized:
            s /= n
        return m * s ** (1.0 / p)
    m = min(vals)
    s = math.fsum((v / m) ** p for v in vals)
    if normalized:
        s /= n
    return m * s ** (1.0 / p)


def _partial_sums(v):
    out, acc = [], 0
    for a in v:
        acc = acc + a
        out.append(acc)
    return out


def majorizes(x: Sequence, y: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """x ≻ y: equal sums and top-k partial sums of x* dominate those of y*.

    Witness is the first failing k (1-based) or ``"sum mismatch"``.
    """
    x, y = as_pair(x, y)
    xs, ys = _partial_sums(rearrange_desc(x)), _partial_sums(rearrange_desc(y))
    margin = math.inf
    n = len(x)
    sum_gap = abs(float(xs[-1] - ys[-1]))
    if not tol.eq(xs[-1], ys[-1]):
        return Verdict.fails("sum mismatch", -sum_gap)
    margin = -sum_gap
    for k in range(n - 1):
        gap = float(xs[k] - ys[k])
        margin = min(margin, gap)
        if not tol.le(ys[k], xs[k]):
            return Verdict.fails(k + 1, gap)
    return Verdict.holds_(margin)


def weak_prec(x: Sequence, y: Sequence, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """x ≺^w y: every bottom tail sum of x* is at most the tail of y*."""
    x, y = as_pair(x, y)
    xd, yd = rearrange_desc(x), rearrange_desc(y)
    n = len(x)
    margin = math.inf
    tx = ty = 0
    tails = []
    for k in range(n - 1, -1, -1):
        tx, ty = tx + xd[k], ty + yd[k]
        tails.append((k + 1, tx, ty))
    for k, a, b in reversed(tails):
        gap = float(b - a)
        margin = min(margin, gap)
        if not tol.le(a, b):
            return Verdict.fails(k, gap)
    return Verdict.holds_(margin)


def tensor(x: Sequence, z: Sequence) -> tuple:
    """Kronecker product, row-major: entry (i, j) is x_i * z_j."""
    x, z = as_point(x), as_point(z)
    return tuple(a * b for a in x for b in z)


def to_fraction(v) -> Fraction:
    """Exact rational value of an int, Fraction or binary float."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float) and not math.isfinite(v):
        raise DomainError(f"non-finite entry {v!r}")
    return Fraction(v)
