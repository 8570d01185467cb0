"""Command-line front end.

Subcommands: ``exponents`` (point values), ``curves`` (CSV/JSON sweeps of
the four exponent functions), ``hoeffding`` (trade-off rate over an
r-grid), ``finite-n`` (exact error/bound table), ``verify`` (invariant
suite, exit 1 on failure) and ``conjecture`` (plain-test probe, labeled
EXPERIMENTAL).  Exit codes: 0 success, 1 failed verification, 2 usage or
validation errors.  Identical invocations produce byte-identical files.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import serialization as ser
from .checks import run_all_checks
from .config import ToleranceConfig
from .errors import QhtError
from .exponents import (
    hoeffding_rate,
    psi_bar_values,
    psi_values,
    relative_entropy,
    solve_rate_parameter,
    sweep_curve,
)
from .finite_n import conjecture_probe, verify_bounds
from .pairs import PRESETS

_FMT = ser._fmt


def _parse_grid(spec: str) -> np.ndarray:
    """Parse 'lo:hi:step' into an inclusive grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {spec!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid entries must be numbers: {spec!r}")
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"need hi >= lo and step > 0: {spec!r}")
    count = int(round((hi - lo) / step))
    grid = lo + step * np.arange(count + 1)
    return grid[grid <= hi + 1e-12 * max(1.0, abs(hi))]


def _add_common(sub: argparse.ArgumentParser) -> None:
    src = sub.add_mutually_exclusive_group()
    src.add_argument("--input", help="JSON file with rho and sigma matrices")
    src.add_argument(
        "--preset",
        choices=sorted(PRESETS),
        help="named pair (default: qubit-generic)",
    )
    sub.add_argument("--out", help="output directory for CSV/JSON files")
    sub.add_argument("--tol-cluster", type=float, help="override cluster_rel_tol")
    sub.add_argument(
        "--smoothing-delta",
        type=float,
        default=None,
        help="mixing weight toward I/d used with --smooth (default 1e-6)",
    )
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument(
        "--strict",
        action="store_true",
        default=True,
        help="reject rank-deficient states (default)",
    )
    mode.add_argument(
        "--smooth",
        dest="strict",
        action="store_false",
        help="mix states with I/d instead of rejecting rank deficiency",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qht",
        description="Error exponents and finite-n bounds for quantum hypothesis testing",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("exponents", help="print exponent values at chosen s")
    _add_common(p)
    p.add_argument("--grid-s", type=_parse_grid, default="0:1:0.1")

    p = commands.add_parser("curves", help="sweep the four exponent functions")
    _add_common(p)
    p.add_argument("--grid-s", type=_parse_grid, default="0:1:0.01")
    p.add_argument("--grid-a", type=_parse_grid, default=None)

    p = commands.add_parser("hoeffding", help="trade-off rate over an r-grid")
    _add_common(p)
    p.add_argument("--grid-r", type=_parse_grid, default="0.01:0.5:0.01")

    p = commands.add_parser("finite-n", help="exact finite-n errors and envelopes")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--grid-a", type=_parse_grid, default=None)

    p = commands.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=10)
    p.add_argument("--n-max", type=int, default=4)

    p = commands.add_parser("conjecture", help="plain-test probe (EXPERIMENTAL)")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--grid-a", type=_parse_grid, default=None)

    return parser


def _tolerance(args) -> ToleranceConfig:
    kwargs = {}
    if getattr(args, "tol_cluster", None) is not None:
        kwargs["cluster_rel_tol"] = args.tol_cluster
    kwargs["strict"] = args.strict
    return ToleranceConfig(**kwargs)


def _load(args):
    tol = _tolerance(args)
    delta = None
    if not args.strict:
        delta = args.smoothing_delta if args.smoothing_delta is not None else 1e-6
    source = args.input or args.preset or "qubit-generic"
    return ser.load_pair(source, tol, smoothing_delta=delta)


def _write(out_dir: str | None, name: str, text: str) -> None:
    if out_dir is None:
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text, encoding="utf-8", newline="\n")


def _cmd_exponents(args) -> int:
    pair = _load(args)
    grid = args.grid_s if not isinstance(args.grid_s, str) else _parse_grid(args.grid_s)
    print(f"dim = {pair.dim}")
    print(f"relative_entropy = {_FMT(relative_entropy(pair))}")
    pb = psi_bar_values(pair, grid)
    pp = psi_values(pair, grid)
    print("s,psi_bar,psi")
    for s, x, y in zip(grid, pb, pp):
        print(f"{_FMT(s)},{_FMT(x)},{_FMT(y)}")
    return 0


def _cmd_curves(args) -> int:
    pair = _load(args)
    s_grid = args.grid_s if not isinstance(args.grid_s, str) else _parse_grid(args.grid_s)
    div = relative_entropy(pair)
    a_grid = args.grid_a if args.grid_a is not None else np.linspace(-0.5, div + 0.5, 101)
    for name, grid in (
        ("psi_bar", s_grid),
        ("psi", s_grid),
        ("phi_bar", a_grid),
        ("phi", a_grid),
    ):
        curve = sweep_curve(pair, name, grid)
        _write(args.out, f"{name}.csv", ser.curve_to_csv(curve))
        _write(args.out, f"{name}.json", ser.curve_to_json(curve))
        if args.out is None:
            sys.stdout.write(f"# {name}\n" + ser.curve_to_csv(curve))
    if args.out is not None:
        print(f"wrote psi_bar/psi/phi_bar/phi curves to {args.out}")
    return 0


def _cmd_hoeffding(args) -> int:
    pair = _load(args)
    grid = args.grid_r if not isinstance(args.grid_r, str) else _parse_grid(args.grid_r)
    rows = []
    for r in grid:
        a_r = solve_rate_parameter(pair, float(r))
        rows.append((float(r), hoeffding_rate(pair, float(r)), a_r))
    csv_text = ser.hoeffding_table_to_csv(rows)
    _write(args.out, "hoeffding.csv", csv_text)
    _write(args.out, "hoeffding.json", ser.hoeffding_table_to_json(rows))
    sys.stdout.write(csv_text)
    return 0


def _cmd_finite_n(args) -> int:
    pair = _load(args)
    div = relative_entropy(pair)
    a_grid = (
        args.grid_a
        if args.grid_a is not None
        else np.array([0.25, 0.5, 0.75, 0.9]) * div
    )
    reports = verify_bounds(pair, range(1, args.n_max + 1), a_grid, tol=_tolerance(args))
    csv_text = ser.bound_reports_to_csv(reports)
    _write(args.out, "bound_report.csv", csv_text)
    _write(args.out, "bound_report.json", ser.bound_reports_to_json(reports))
    sys.stdout.write(csv_text)
    return 0


def _cmd_verify(args) -> int:
    results = run_all_checks(seed=args.seed, pairs=args.pairs, n_max=args.n_max)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _cmd_conjecture(args) -> int:
    pair = _load(args)
    div = relative_entropy(pair)
    a_grid = args.grid_a if args.grid_a is not None else np.array([0.5 * div])
    print("# EXPERIMENTAL: the plain-test rate targets below are unproven;")
    print("# this table reports data and asserts nothing.")
    for a in a_grid:
        report = conjecture_probe(pair, range(1, args.n_max + 1), float(a))
        csv_text = ser.conjecture_report_to_csv(report)
        sys.stdout.write(csv_text)
        _write(args.out, f"conjecture_a_{_FMT(float(a))}.csv", csv_text)
        _write(
            args.out,
            f"conjecture_a_{_FMT(float(a))}.json",
            ser.conjecture_report_to_json(report),
        )
    return 0


_DISPATCH = {
    "exponents": _cmd_exponents,
    "curves": _cmd_curves,
    "hoeffding": _cmd_hoeffding,
    "finite-n": _cmd_finite_n,
    "verify": _cmd_verify,
    "conjecture": _cmd_conjecture,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except QhtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
