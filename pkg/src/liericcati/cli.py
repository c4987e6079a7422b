"""Command-line entry point: ``liericcati {sweep,evolve,factor,verify}``.

Exit codes: 0 success, 1 tolerance violated, 2 configuration error,
3 numerical/solver error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys

import numpy as np

from . import config as cfgmod
from .algebra import AlgebraKind, CoefficientTriple
from .bloch import sweep
from .errors import LieRiccatiError
from .factorization import factor_antinormal, factor_normal
from .group import unitarity
from .propagator import SAMPLING_MODES, evolve
from .verification import run_suites

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3

SWEEP_COLUMNS = ["detuning", "numeric_mz", "analytic_mz", "abs_error", "max_unitarity_residual", "riccati_residual"]
EVOLVE_COLUMNS = [
    "t", "re_alpha", "im_alpha", "re_logbeta", "im_logbeta", "re_gamma", "im_gamma",
    "unitarity_modulus", "unitarity_center", "unitarity_phase",
]


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(path, header, rows):
    with _open_out(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def _summary_stream(out_path):
    # keep stdout clean when the CSV itself goes there
    return sys.stderr if out_path in (None, "-") else sys.stdout


def _require_config(args, command):
    path = getattr(args, "config", None)
    if path is None:
        raise cfgmod.ConfigError(f"{command} needs --config <path>")
    return cfgmod.load(path, command)


def cmd_sweep(args) -> int:
    run = _require_config(args, "sweep")
    out = getattr(args, "out", None) or run.output
    rows = sweep(run.build(getattr(args, "sampling", None)))
    failed = [r for r in rows if np.isnan(r.numeric_mz)]
    _write_csv(out, SWEEP_COLUMNS, [
        (r.detuning, r.numeric_mz, r.analytic_mz, r.abs_error, r.max_unitarity_residual, r.riccati_residual)
        for r in rows
    ])
    errors = [r.abs_error for r in rows if np.isfinite(r.abs_error)]
    max_err = max(errors) if errors else float("nan")
    max_unit = max((r.max_unitarity_residual for r in rows if np.isfinite(r.max_unitarity_residual)),
                   default=float("nan"))
    print(f"max_abs_error={fmt(max_err)} max_unitarity={fmt(max_unit)}", file=_summary_stream(out))
    if failed:
        for r in failed:
            print(f"solver error at detuning={fmt(r.detuning)}: {r.error}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK if max_err <= run.tolerance else EXIT_TOLERANCE


def cmd_evolve(args) -> int:
    run = _require_config(args, "evolve")
    out = getattr(args, "out", None) or run.output
    kind = AlgebraKind.parse(run.algebra)
    drive = run.drive.build(kind)
    traj = evolve(drive, run.t_final, run.n_steps, getattr(args, "sampling", None) or run.sampling)
    rep = unitarity(traj.cumulative)
    columns = [
        traj.times, traj.alpha.real, traj.alpha.imag, traj.log_beta.real, traj.log_beta.imag,
        traj.gamma.real, traj.gamma.imag, rep.r_modulus, rep.r_center, rep.r_phase,
    ]
    _write_csv(out, EVOLVE_COLUMNS, zip(*columns))
    worst = traj.max_unitarity_residual()
    print(f"max_unitarity={fmt(worst)}", file=_summary_stream(out))
    if run.unitarity_tolerance is not None and worst > run.unitarity_tolerance:
        return EXIT_TOLERANCE
    return EXIT_OK


def _complex_json(z):
    return [float(np.real(z)), float(np.imag(z))]


def cmd_factor(args) -> int:
    run = _require_config(args, "factor")
    kind = AlgebraKind.parse(run.algebra)
    lam = CoefficientTriple(run.lam_plus, run.lam_center, run.lam_minus)
    result = {"algebra": kind.value}
    for name, fn in (("normal", factor_normal), ("antinormal", factor_antinormal)):
        f = fn(lam, kind)
        result[name] = {
            "plus": _complex_json(f.plus),
            "log_center": _complex_json(f.log_center),
            "minus": _complex_json(f.minus),
            "nu": _complex_json(f.nu),
        }
    with _open_out(getattr(args, "out", None) or run.output) as fh:
        fh.write(json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    path = getattr(args, "config", None)
    run = cfgmod.load(path, "verify") if path else cfgmod.VerifyRunConfig()
    algebra = cfgmod._algebra(args.algebra) if args.algebra is not None else run.algebra
    n = args.n if args.n is not None else run.n_random
    if n < 1:
        raise cfgmod.ConfigError("--n must be positive")
    seed = getattr(args, "seed", None)
    seed = run.seed if seed is None else seed
    results = run_suites(algebra, n, seed, run.tolerances)
    with _open_out(getattr(args, "out", None)) as fh:
        for r in results:
            status = "ok" if r.passed else "FAIL"
            print(f"{r.name:32s} max_residual={r.max_residual:.3e} tol={r.tolerance:.1e} {status}", file=fh)
    bad = [r for r in results if not r.passed]
    for r in bad:
        print(f"violation: suite={r.name} algebra={algebra} seed={seed}", file=sys.stderr)
    return EXIT_TOLERANCE if bad else EXIT_OK


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON run configuration")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default: stdout)")
    common.add_argument("--sampling", choices=SAMPLING_MODES, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=_u64, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="liericcati", parents=[common], description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="spin-inversion sweep over detunings")
    sub.add_parser("evolve", parents=[common], help="dump a trajectory as CSV")
    sub.add_parser("factor", parents=[common], help="normal and anti-normal factorization of one exponent")
    verify = sub.add_parser("verify", parents=[common], help="randomized property suites")
    verify.add_argument("--algebra", choices=[k.value for k in AlgebraKind], default=None)
    verify.add_argument("--n", type=int, default=None, help="random samples per suite")
    return parser


COMMANDS = {"sweep": cmd_sweep, "evolve": cmd_evolve, "factor": cmd_factor, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except cfgmod.ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (LieRiccatiError, FloatingPointError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
