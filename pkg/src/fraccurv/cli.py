"""Command-line interface: verification suites, sweeps, and machine-readable
tables reproducing every headline constant.

Exit codes: 0 success, 1 configuration error, 2 solver failure; ``verify``
and ``report`` exit with the number of failed checks (capped at 125).
Progress goes to stderr, data to stdout or ``--output``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import checks, curvature, oracle
from .curvature import DEFAULT_SEED
from .eigensolve import ConvergenceFailure, DegeneratePencil, gen_eigen_spd
from .matrices import NotPositiveDefinite, fbm_matrix, hadamard_power
from .oracle import TrigPoly

_SOLVER_ERRORS = (NotPositiveDefinite, ConvergenceFailure, DegeneratePencil,
                  curvature.OptimizationStall, curvature.InsufficientData,
                  ArithmeticError)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the CLI contract reserves 2 for
    # solver failures and 1 for configuration errors.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    gamma: float | None = None
    gamma_grid: list[float] | None = None
    n: int | None = None
    omega_sq: float = 0.0
    h: float | None = None
    h_grid: list[float] | None = None
    x: float | None = None
    x_grid_size: int = 64
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = DEFAULT_SEED
    threads: int = 1
    only: str | None = None
    cases: int = 200
    all_n: bool = False
    poly: str | None = None
    pointfield: str = "gamma2"
    extra: dict = field(default_factory=dict)


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` inclusive of both endpoints within half a step;
    a bare number is a one-point grid."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:step', got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("grid step must be positive")
    out = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 0.5 * step:
            break
        out.append(round(v, 12))
        k += 1
    return out


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _write_table(cfg: RunConfig, header: list[str], rows: list[list]) -> None:
    if cfg.output_format == "csv":
        text = ",".join(header) + "\n"
        text += "".join(",".join(_fmt(v) for v in row) + "\n" for row in rows)
    else:
        objs = [
            {k: (bool(v) if isinstance(v, (bool, np.bool_)) else
                 int(v) if isinstance(v, (int, np.integer)) else
                 float(v) if isinstance(v, (float, np.floating)) else v)
             for k, v in zip(header, row)}
            for row in rows
        ]
        text = json.dumps(objs, indent=2) + "\n"
    _emit(cfg, text)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _pmap(fn, items, threads: int):
    """Map preserving input order; threaded when threads > 1 (the compiled
    kernels release the GIL)."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    gamma = cfg.gamma if cfg.gamma is not None else 1.0
    n = cfg.n if cfg.n is not None else 10
    r = fbm_matrix(gamma / 2.0, n)
    spec = gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=False)
    if gamma == 1.0:
        expected = 2.0 * np.arange(1, n + 1) - 1.0
        rows = [[k + 1, spec.values[k], expected[k],
                 abs(spec.values[k] - expected[k])] for k in range(n)]
        _write_table(cfg, ["k", "value", "expected", "abs_err"], rows)
        _progress(f"max deviation from the odd integers: "
                  f"{float(np.max(np.abs(spec.values - expected))):.3e}")
    else:
        rows = [[k + 1, spec.values[k]] for k in range(n)]
        _write_table(cfg, ["k", "value"], rows)
        _progress(f"min value: {spec.values[0]:.9f}")
    return 0


def cmd_landscape(cfg: RunConfig) -> int:
    grid = cfg.gamma_grid or parse_grid("0.1:1.9:0.1")
    n = cfg.n if cfg.n is not None else 200

    def one(g):
        row = curvature.landscape([g], n)[0]
        _progress(f"gamma={g:g} kappa={row.kappa:.6f}")
        return [row.gamma, row.n, row.kappa, row.kappa_single_mode]

    rows = _pmap(one, grid, cfg.threads)
    _write_table(cfg, ["gamma", "n", "kappa", "kappa_single_mode"], rows)
    return 0


def cmd_drift(cfg: RunConfig) -> int:
    n = cfg.n if cfg.n is not None else 20
    x = cfg.x if cfg.x is not None else math.pi
    rep = curvature.drift_spectrum(cfg.omega_sq, n, x)
    rows = [[rep.omega_sq, rep.n, rep.x, k + 1, rep.eigenvalues[k],
             rep.global_kappa] for k in range(n)]
    _write_table(cfg, ["omega_sq", "n", "x", "k", "eigenvalue", "global_kappa"],
                 rows)
    _progress(f"global_kappa = {rep.global_kappa:.9f}")
    return 0


def cmd_zmatrix(cfg: RunConfig) -> int:
    hs = cfg.h_grid or ([cfg.h] if cfg.h is not None else list(checks._H_GRID_LOW))
    n = cfg.n if cfg.n is not None else 60
    n_values = n if cfg.all_n else [n]
    per_h = _pmap(lambda h: curvature.zmatrix_scan([h], n_values), hs,
                  cfg.threads)
    rows = [r for chunk in per_h for r in chunk]
    _write_table(cfg, ["h", "n", "max_offdiag", "pass"],
                 [[r.h, r.n, r.max_offdiag, r.passed] for r in rows])
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    if cfg.poly:
        f = TrigPoly.from_triples(json.loads(cfg.poly))
        xs = 2.0 * np.pi * np.arange(cfg.x_grid_size) / cfg.x_grid_size
        gamma = cfg.gamma if cfg.gamma is not None else 1.0
        if cfg.pointfield == "gamma":
            poly = oracle.carre_du_champ(gamma, f, f)
        elif cfg.pointfield == "gamma2":
            poly = oracle.gamma2_drift(gamma, cfg.omega_sq, f)
        else:  # ratio
            num = oracle.gamma2_drift(gamma, cfg.omega_sq, f)
            den = oracle.carre_du_champ(gamma, f, f)
            vals = num.evaluate(xs) / den.evaluate(xs)
            rows = [[float(x), v.real, v.imag] for x, v in zip(xs, vals)]
            _write_table(cfg, ["x", "re", "im"], rows)
            return 0
        vals = poly.evaluate(xs)
        rows = [[float(x), v.real, v.imag] for x, v in zip(xs, vals)]
        _write_table(cfg, ["x", "re", "im"], rows)
        return 0
    rows = []
    worst = 0.0
    for i in range(cfg.cases):
        rng = checks.rng_for(cfg.seed, i)
        g = float(rng.uniform(0.05, 1.95))
        f = oracle.random_poly(rng, max_freq=8, max_terms=8)
        dev = oracle.coeff_distance(oracle.gamma2_direct(g, f),
                                    oracle.gamma2_hadamard(g, f))
        worst = max(worst, dev)
        rows.append([i, g, len(f), dev, dev <= 1e-10])
    _write_table(cfg, ["case", "gamma", "support", "max_dev", "pass"], rows)
    _progress(f"worst coefficient deviation: {worst:.3e}")
    return 0 if worst <= 1e-10 else 2


def cmd_verify(cfg: RunConfig) -> int:
    overrides = {"seed": cfg.seed}
    if cfg.gamma is not None:
        overrides["gamma"] = cfg.gamma
    if cfg.h is not None:
        overrides["h"] = cfg.h
    if cfg.n is not None:
        overrides["n"] = cfg.n
    try:
        results = checks.run_checks(only=cfg.only, overrides=overrides,
                                    progress=_progress)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 1
    lines = []
    failed = 0
    for r in results:
        # timing goes to stderr so the data stream stays byte-reproducible
        _progress(f"{r.name}: {r.seconds:.2f}s")
        lines.append(f"{r.status:6s} {r.name:24s} {r.detail}")
        if not r.ok:
            failed += 1
    lines.append(f"{len(results) - failed}/{len(results)} checks as expected")
    _emit(cfg, "\n".join(lines) + "\n")
    return min(failed, 125)


def cmd_report(cfg: RunConfig) -> int:
    n_max = cfg.n if cfg.n is not None else 300
    rows = checks.run_report(n_max=n_max, seed=cfg.seed, progress=_progress)
    _emit(cfg, json.dumps(rows, indent=2) + "\n")
    return min(sum(0 if r["pass"] else 1 for r in rows), 125)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        dest="output_format")
    common.add_argument("--output", dest="output_path", default=None)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=int,
                        default=int(os.environ.get("FRACCURV_THREADS", "1")))

    p = _Parser(prog="fraccurv",
                description="Curvature constants for fractional Laplacians "
                            "on the torus via fBM covariance matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add_parser("spectrum", help="pencil spectrum for (gamma, N)")
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add_parser("landscape", help="kappa over a gamma grid")
    sp.add_argument("--grid", type=str, default="0.1:1.9:0.1")
    sp.add_argument("--n", type=int, default=200)

    sp = add_parser("verify", help="run the invariant suite")
    sp.add_argument("--only", type=str, default=None)
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--n", type=int, default=None)

    sp = add_parser("drift", help="drifted curvature spectrum at gamma = 1")
    sp.add_argument("--omega-sq", type=float, required=True)
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--x", type=float, default=None)

    sp = add_parser("zmatrix", help="off-diagonal sign scan")
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--h-grid", type=str, default=None)
    sp.add_argument("--n", type=int, default=60)
    sp.add_argument("--all-n", action="store_true",
                    help="scan every degree 2..N instead of N alone")

    sp = add_parser("oracle", help="first-principles oracle suites")
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--omega-sq", type=float, default=0.0)
    sp.add_argument("--poly", type=str, default=None,
                    help='JSON triples [[freq, re, im], ...]')
    sp.add_argument("--field", choices=("gamma", "gamma2", "ratio"),
                    default="gamma2", dest="pointfield")
    sp.add_argument("--x-grid-size", type=int, default=64)

    sp = add_parser("report", help="recompute every reproduced constant")
    sp.add_argument("--n", type=int, default=300,
                    help="plateau degree (default 300)")
    return p


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command,
                    output_format=args.output_format,
                    output_path=args.output_path,
                    seed=args.seed,
                    threads=args.threads)
    for name in ("gamma", "n", "x", "only", "cases", "poly", "pointfield",
                 "x_grid_size", "h", "all_n"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "omega_sq", None) is not None:
        cfg.omega_sq = args.omega_sq
    if getattr(args, "grid", None):
        cfg.gamma_grid = parse_grid(args.grid)
    if getattr(args, "h_grid", None):
        cfg.h_grid = parse_grid(args.h_grid)
    return cfg


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "landscape": cmd_landscape,
    "verify": cmd_verify,
    "drift": cmd_drift,
    "zmatrix": cmd_zmatrix,
    "oracle": cmd_oracle,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"fraccurv: error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"fraccurv: error: {exc}", file=sys.stderr)
        return 1
    except _SOLVER_ERRORS as exc:
        print(f"fraccurv: solver failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
