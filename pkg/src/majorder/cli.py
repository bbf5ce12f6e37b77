"""Command-line front end.

Every subcommand prints JSON (or CSV for ``spectra --format csv``).
Exit status: 0 when the checked statement holds, 1 when it fails or a
refutation target turns up a witness, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import cones, functionals, identity, relations, scan, spectra
from .core import DomainError, ResourceError, Tolerance, jsonable, majorizes, weak_prec
from .sympoly import grad_F_exact

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    seed: int = 0
    rmax: int = 6
    tol_abs: float = 1e-12
    tol_rel: float = 1e-12
    grid: int = 512
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    output: str | None = None
    format: str = "json"

    @property
    def tol(self) -> Tolerance:
        return Tolerance(self.tol_abs, self.tol_rel)


def _default_seed() -> int:
    raw = os.environ.get("MAJORDER_SEED")
    return int(raw) if raw not in (None, "") else 0


class UsageError(Exception):
    pass


def parse_vector(text: str, allow_negative: bool = False) -> tuple[Fraction, ...]:
    """'15,2,2' or '1/3,0.25' -> exact rationals (decimals are read exactly)."""
    try:
        vals = tuple(Fraction(tok.strip()) for tok in text.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse vector {text!r}: {exc}") from None
    if not vals:
        raise UsageError("empty vector")
    if not allow_negative and any(v < 0 for v in vals):
        raise UsageError(f"negative entry in {text!r}")
    return vals


def parse_floats(text: str) -> list[float]:
    try:
        return [float(Fraction(tok.strip())) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse list {text!r}: {exc}") from None


def _exact_or_float(v: Fraction):
    return v.numerator if v.denominator == 1 else v


# ---------------------------------------------------------------------------
# Subcommands; each returns (exit code, record)
# ---------------------------------------------------------------------------


def cmd_rel(args, cfg: RunConfig):
    x, y = parse_vector(args.x), parse_vector(args.y)
    kind = args.kind
    if kind == "maj":
        v = majorizes(x, y, cfg.tol)
    elif kind == "w":
        v = weak_prec(x, y, cfg.tol)
    elif kind == "E":
        v = relations.prec_E(x, y)
    elif kind == "1":
        v = relations.prec_1(x, y, exact=not args.float, grid=cfg.grid, tol=cfg.tol)
    elif kind == "F":
        v = relations.prec_F(x, y, cfg.rmax)
    else:
        v = relations.prec_L(x, y, cfg.tol)
    rec = {"kind": kind, **v.to_dict()}
    return (EXIT_HOLDS if v else EXIT_FAILS), rec


def cmd_water(args, cfg: RunConfig):
    x = tuple(_exact_or_float(v) for v in parse_vector(args.x))
    vol = _exact_or_float(Fraction(args.volume))
    res = functionals.water_fill(x, vol, args.mode)
    return EXIT_HOLDS, {"data": {"mode": args.mode, "volume": vol, **res.to_dict()}}


def cmd_legendre(args, cfg: RunConfig):
    x = [float(v) for v in parse_vector(args.x)]
    lams = parse_floats(args.lam)
    ts = parse_floats(args.t)
    rows_l = []
    for lam in lams:
        l1 = functionals.L1(x, lam)
        row = {"lambda": lam, "L1": l1, "Linf": functionals.Linf(x, lam)}
        if lam > 0:
            row["L1_biconjugate"] = functionals.legendre_inverse(lambda t: functionals.I1(x, t), lam)
        rows_l.append(row)
    rows_t = []
    for t in ts:
        row = {"t": t, "I1": functionals.I1(x, t), "Iinf": functionals.Iinf(x, t)}
        if t > 0:
            row["script_L"] = functionals.script_L(x, t)
            row["script_L_direct"] = functionals.script_L_direct(x, t)
        rows_t.append(row)
    return EXIT_HOLDS, {"data": {"x": x, "lambda_values": rows_l, "t_values": rows_t}}


def _random_rationals(rng, n):
    return tuple(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(n))


def cmd_identity(args, cfg: RunConfig):
    rng = np.random.default_rng(cfg.seed)
    checks = []
    ok = True
    for _ in range(args.points):
        x = _random_rationals(rng, args.n)
        entry = {"x": list(x)}
        if args.r >= 1:
            v = identity.lemma8_verify(args.n, args.r, x)
            entry["simplex"] = {"exact": v.holds, **v.to_dict()}
            ok &= v.holds
        g = identity.gen2_verify(args.n, args.r, x)
        entry["orthant"] = {"exact": g.holds, **g.to_dict()}
        ok &= g.holds
        checks.append(entry)
    rec = {"verdict": "holds" if ok else "fails", "data": {"n": args.n, "r": args.r, "exact": ok,
                                                            "checks": checks}}
    return (EXIT_HOLDS if ok else EXIT_FAILS), rec


def cmd_cone(args, cfg: RunConfig):
    x = tuple(_exact_or_float(v) for v in parse_vector(args.x))
    if args.B is not None:
        B = tuple(_exact_or_float(v) for v in parse_vector(args.B, allow_negative=True))
        v, cert = cones.cone_membership(x, B, cfg.tol)
        data = {"x": list(x), "B": list(B), "certificate": cert.to_dict() if cert else None}
    else:
        if args.k is None:
            raise UsageError("cone needs --B or --k/--r")
        v = cones.grad_in_cone(args.k, args.r, x, cfg.tol)
        grad = grad_F_exact(args.k, args.r, sorted(x, reverse=True))
        data = {"x": list(x), "k": args.k, "r": args.r, "gradient": list(grad)}
    gens = cones.cone_generators(tuple(sorted(x, reverse=True)))
    data["generators"] = {lab: list(g) for lab, g in gens}
    return (EXIT_HOLDS if v else EXIT_FAILS), {**v.to_dict(), "data": data}


def cmd_spectra(args, cfg: RunConfig):
    dims = [int(d) for d in str(args.dim).split(",")]
    patterns = [args.signs] if args.signs else list(spectra.sign_patterns(args.N))
    reports = [spectra.experiment_HL(args.N, p, d, cfg.rmax, cfg.tol).to_dict()
               for p in patterns for d in dims]
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern", "dim", "relation", "verdict", "margin"])
        for rep in reports:
            for rel, info in rep["relations"].items():
                w.writerow([rep["signs"], rep["dim"], rel, info["verdict"], repr(info["margin"])])
        return EXIT_HOLDS, buf.getvalue()
    return EXIT_HOLDS, {"data": {"reports": reports}}


def cmd_scan(args, cfg: RunConfig, emit):
    scfg = scan.ScanConfig(target=args.target, n=args.n, n_min=args.n_min, samples=args.samples,
                           seed=cfg.seed, rmax=cfg.rmax, tol_abs=cfg.tol_abs,
                           tol_rel=cfg.tol_rel, workers=cfg.workers)
    summary = None
    for rec in scan.scan(scfg):
        if "summary" in rec:
            summary = rec["summary"]
            emit({"summary": summary})
        else:
            emit({"finding": rec["finding"]})
    return scan.exit_code(scfg, summary)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="default: $MAJORDER_SEED or 0")
    common.add_argument("--rmax", type=int, default=6)
    common.add_argument("--tol-abs", type=float, default=1e-12)
    common.add_argument("--tol-rel", type=float, default=1e-12)
    common.add_argument("--grid", type=int, default=512)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--output", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-timestamp", action="store_true")

    p = argparse.ArgumentParser(prog="majorder", description="Majorization-type preorders.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rel", parents=[common], help="decide one relation x ~ y")
    r.add_argument("kind", choices=("maj", "w", "E", "1", "F", "L"))
    r.add_argument("--x", required=True)
    r.add_argument("--y", required=True)
    r.add_argument("--float", action="store_true", help="grid search instead of Sturm for kind 1")

    s = sub.add_parser("scan", parents=[common], help="search for separating pairs")
    s.add_argument("target", choices=sorted(scan.TARGETS))
    s.add_argument("--n", type=int, default=3, help="largest dimension drawn")
    s.add_argument("--n-min", type=int, default=None, help="smallest dimension (default --n)")
    s.add_argument("--samples", type=int, default=10_000)

    w = sub.add_parser("water", parents=[common], help="rising-water fill")
    w.add_argument("--x", required=True)
    w.add_argument("--volume", required=True)
    w.add_argument("--mode", choices=functionals.MODES, default="raw")

    lg = sub.add_parser("legendre", parents=[common], help="L and I functionals")
    lg.add_argument("--x", required=True)
    lg.add_argument("--lam", default="0.5,1,2")
    lg.add_argument("--t", default="0,0.5,1")

    i = sub.add_parser("identity", parents=[common], help="exact integral identities")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--r", type=int, required=True)
    i.add_argument("--points", type=int, default=1)

    c = sub.add_parser("cone", parents=[common], help="positive-cone membership")
    c.add_argument("--x", required=True)
    c.add_argument("--B", default=None, help="vector to test; otherwise the F gradient")
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--r", type=int, default=1)

    sp = sub.add_parser("spectra", parents=[common], help="Toeplitz eigenvalue experiment")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--signs", default=None, help="e.g. +--+; all patterns if omitted")
    sp.add_argument("--dim", default="2", help="matrix size, or a comma list")
    return p


def _config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed if args.seed is not None else _default_seed(),
        rmax=args.rmax, tol_abs=args.tol_abs, tol_rel=args.tol_rel, grid=args.grid,
        workers=max(1, args.workers), output=args.output, format=args.format,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_HOLDS
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"majorder: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = open(cfg.output, "w") if cfg.output else sys.stdout
    header = {"command": args.command, "config": asdict(cfg)}
    if not args.no_timestamp:
        header["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")

    def emit(rec):
        out.write(json.dumps(jsonable({**header, **rec})) + "\n")
        out.flush()

    try:
        if args.command == "scan":
            return cmd_scan(args, cfg, emit)
        handler = {"rel": cmd_rel, "water": cmd_water, "legendre": cmd_legendre,
                   "identity": cmd_identity, "cone": cmd_cone, "spectra": cmd_spectra}[args.command]
        code, rec = handler(args, cfg)
        if isinstance(rec, str):
            out.write(rec)
        else:
            emit(rec)
        return code
    except (UsageError, DomainError, ResourceError, ValueError) as exc:
        print(f"majorder: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
