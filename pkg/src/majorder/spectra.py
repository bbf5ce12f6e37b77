"""Toeplitz experiments for trigonometric polynomials with real coefficients.

A polynomial f(z) = sum_j c_j z^{n_j} gives the autocorrelation sequence
of |f|^2 on the circle; its n x n Toeplitz sections have eigenvalue
vectors that can be compared under the preorders of :mod:`relations`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import DEFAULT_TOL, DomainError, ResourceError, Status, Tolerance
from .relations import prec_E, prec_F, prec_L


@dataclass(frozen=True)
class TrigPoly:
    """sum_j coeffs[j] z^{exponents[j]}; exponents default to 0..N-1."""

    coeffs: tuple
    exponents: tuple = None
    conjecture_regime: bool = False

    def __post_init__(self):
        cs = tuple(float(c) for c in self.coeffs)
        if not cs:
            raise DomainError("need at least one coefficient")
        ex = tuple(range(len(cs))) if self.exponents is None else tuple(int(e) for e in self.exponents)
        if len(ex) != len(cs):
            raise DomainError("coefficients and exponents differ in length")
        if ex[0] != 0 or any(a >= b for a, b in zip(ex, ex[1:])):
            raise DomainError("exponents must start at 0 and increase strictly")
        if self.conjecture_regime and any(abs(c) < 1 for c in cs):
            raise DomainError("coefficients must satisfy |c| >= 1 in the conjecture regime")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "exponents", ex)

    @classmethod
    def dirichlet(cls, N: int) -> "TrigPoly":
        """D_N(z) = 1 + z + ... + z^{N-1}."""
        return cls((1.0,) * N)

    @classmethod
    def signed(cls, signs: str | Sequence) -> "TrigPoly":
        """+-1 coefficients from a string like '+--+' or a sequence of signs."""
        if isinstance(signs, str):
            if set(signs) - {"+", "-"}:
                raise DomainError(f"bad sign pattern {signs!r}")
            vals = [1.0 if s == "+" else -1.0 for s in signs]
        else:
            vals = [float(s) for s in signs]
        return cls(tuple(vals), conjecture_regime=True)

    @property
    def degree(self) -> int:
        return self.exponents[-1]

    def dense(self) -> np.ndarray:
        out = np.zeros(self.degree + 1)
        out[list(self.exponents)] = self.coeffs
        return out

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return sum(c * z**e for c, e in zip(self.coeffs, self.exponents))


def autocorr(f: TrigPoly) -> list[float]:
    """a_m = sum_j c_j c_{j+m} on the dense coefficient lattice, m = 0..deg."""
    c = f.dense()
    d = len(c)
    return [float(np.dot(c[: d - m], c[m:])) for m in range(d)]


def toeplitz(a: Sequence[float], n: int) -> np.ndarray:
    """Symmetric n x n Toeplitz matrix with A[j, k] = a_{|j-k|}; missing lags are 0."""
    if n < 1:
        raise DomainError("n must be >= 1")
    a = list(a) + [0.0] * max(0, n - len(a))
    return np.array([[float(a[abs(j - k)]) for k in range(n)] for j in range(n)])


def eigen_sym(M, tol: float = 1e-15, max_sweeps: int = 100) -> tuple[float, ...]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    n = A.shape[0]
    fro = np.linalg.norm(A)
    if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(fro, 1.0)):
        raise DomainError("matrix must be symmetric")
    A = (A + A.T) / 2
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(A**2) - np.sum(np.diag(A) ** 2)), 0.0))
        if off <= tol * max(fro, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * (abs(A[p, p]) + abs(A[q, q])) or abs(apq) < 1e-300:
                    # negligible against the diagonal; drop it
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * rp - s * rq, s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * cp - s * cq, s * cp + c * cq
    return tuple(sorted((float(v) for v in np.diag(A)), reverse=True))


def _grid(M: int) -> np.ndarray:
    # offset by half a cell so zeros of D_N at 2 pi k / N are never sampled
    return 2.0 * np.pi * (np.arange(M) + 0.5) / M


def _check_grid(grid: int):
    if grid < 256 or grid & (grid - 1):
        raise DomainError("grid must be a power of two >= 256")


def norm2p_trig(f: TrigPoly, p: float, grid: int = 512) -> float:
    """(mean over the circle of |f|^{2p})^{1/(2p)}: periodic trapezoid rule on
    ``grid`` and ``2 grid`` points combined by one Richardson step."""
    if p == 0:
        raise DomainError("p = 0 is the geometric mean; use norm0_trig")
    _check_grid(grid)

    def rule(M):
        return float(np.mean(np.abs(f(_grid(M))) ** (2 * p)))

    I = (4.0 * rule(2 * grid) - rule(grid)) / 3.0
    return I ** (1.0 / (2 * p))


def norm0_trig(f: TrigPoly) -> float:
    """exp(mean of log |f|) over the circle.

    Computed from the roots by Jensen's formula, |c_top| prod max(1, |root|);
    quadrature converges slowly when f vanishes on the circle.
    """
    c = f.dense()
    nz = np.nonzero(c)[0]
    c = c[: nz[-1] + 1]
    roots = np.roots(c[::-1]) if len(c) > 1 else np.array([])
    return float(abs(c[-1]) * np.prod(np.maximum(1.0, np.abs(roots))))


def random_psd(n: int, rng: np.random.Generator, trace: float | None = None) -> np.ndarray:
    """Random symmetric positive semidefinite matrix; trace drawn in (0, 1] unless given."""
    G = rng.normal(size=(n, rng.integers(1, n + 1)))
    Z = G @ G.T
    tr = float(rng.uniform(0.05, 1.0)) if trace is None else float(trace)
    return Z * (tr / np.trace(Z))


def _clip_eigs(eigs, scale):
    """Round tiny negative eigenvalues of a PSD matrix up to zero."""
    out = []
    for v in eigs:
        if v < -1e-8 * scale:
            raise DomainError(f"matrix is not PSD: eigenvalue {v}")
        out.append(max(v, 0.0))
    return tuple(out)


def _status(verdict, tol: Tolerance) -> str:
    # float eigenvalues make exact relations fail by rounding; flag those
    if verdict.status is Status.FAILS and verdict.margin >= -max(tol.rel, tol.abs):
        return "holds_within_tol"
    return verdict.status.value


@dataclass
class HLReport:
    N: int
    signs: str
    dim: int
    x: tuple
    y: tuple
    relations: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"N": self.N, "signs": self.signs, "dim": self.dim,
                "x": list(self.x), "y": list(self.y), "relations": self.relations}


def experiment_HL(N: int, signs: str, n: int, Rmax: int = 6, tol: Tolerance = DEFAULT_TOL,
                  t_grid: Sequence[float] | None = None) -> HLReport:
    """Eigenvalues x of the D_N section and y of the signed section, then
    every relation x ~ y.  Nothing here is asserted; it is a report."""
    if N > 16 or n > 12:
        raise ResourceError("desk scale only: N <= 16, n <= 12")
    if len(signs) != N:
        raise DomainError("sign pattern length must equal N")
    D, f = TrigPoly.dirichlet(N), TrigPoly.signed(signs)
    a, b = autocorr(D), autocorr(f)
    x = _clip_eigs(eigen_sym(toeplitz(a, n)), a[0])
    y = _clip_eigs(eigen_sym(toeplitz(b, n)), b[0])
    rep = HLReport(N, signs, n, x, y)
    for name, v in (("E", prec_E(x, y)), ("F", prec_F(x, y, Rmax)), ("L", prec_L(x, y, tol))):
        rep.relations[name] = {"verdict": _status(v, tol), "witness": v.witness, "margin": v.margin}
    ts = list(t_grid) if t_grid is not None else list(np.logspace(-4, 4, 81))
    worst, worst_t = math.inf, None
    for t in ts:
        lx = math.fsum(math.log1p(t * v) for v in x)
        ly = math.fsum(math.log1p(t * v) for v in y)
        g = ly - lx
        if g < worst:
            worst, worst_t = g, t
    ok = worst >= -max(tol.abs, tol.rel * max(1.0, abs(worst)))
    rep.relations["log_grid"] = {"verdict": "holds" if ok else "fails",
                                 "witness": None if ok else worst_t, "margin": worst}
    return rep


def sign_patterns(N: int):
    """All +-1 patterns of length N with a leading '+' (2^{N-1} of them)."""
    for tail in itertools.product("+-", repeat=N - 1):
        yield "+" + "".join(tail)


def sweep_rows(N: int, dims: Sequence[int], Rmax: int = 6, tol: Tolerance = DEFAULT_TOL):
    """CSV-ready rows (pattern, dim, relation, verdict, margin) over all patterns."""
    rows = []
    for pat in sign_patterns(N):
        for d in dims:
            rep = experiment_HL(N, pat, d, Rmax, tol)
            for rel, info in rep.relations.items():
                rows.append((pat, d, rel, info["verdict"], info["margin"]))
    return rows


def gabriel_check(N: int, ps: Sequence[float] = (1, 2, 3), grid: int = 512,
                  tol: float = 1e-8) -> list[dict]:
    """||D_N||_{2p} >= ||f||_{2p} for every sign pattern f of length N."""
    D = TrigPoly.dirichlet(N)
    out = []
    for pat in sign_patterns(N):
        f = TrigPoly.signed(pat)
        for p in ps:
            a, b = norm2p_trig(D, p, grid), norm2p_trig(f, p, grid)
            out.append({"pattern": pat, "p": p, "norm_D": a, "norm_f": b, "ok": a >= b - tol})
    return out
