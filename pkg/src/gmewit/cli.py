"""Command-line interface.

Exit status: 0 on success, 1 on usage or input-format errors, 2 when a
numerical validation fails (invalid state, non-positive map, nothing to
detect).
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import analysis, io
from .hermitian import HermiticityError, InvalidStateError, min_eigenvalue
from .maps import MapSpec, positivity_probe
from .states import ghz
from .witness import DETECTION_TOL, build_witness, evaluate, single_party_seeds

EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class UsageError(Exception):
    pass


class NumericalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _load_state(args):
    if (args.state is None) == (args.state_file is None):
        raise UsageError("give exactly one of --state or --state-file")
    if args.state is not None:
        return io.parse_state(args.state)
    return io.read_matrix(args.state_file, hermitian=True)


def _map(text):
    try:
        return MapSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _number(text):
    try:
        return io.parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_witness_build(args):
    spec = args.map
    d = spec.dim if spec.dim is not None else args.d
    S = spec.build(d)
    probe = positivity_probe(S, args.probe_samples, args.seed)
    if probe < -args.tol:
        raise NumericalError(f"map {S.name} is not positive: probe found eigenvalue {probe:.3e}")
    shape = (d,) * args.n
    if args.seeds == "ghz":
        g = ghz(args.n, d)
        seeds = single_party_seeds(shape, lambda k: g, lambda k: S)
    else:
        if args.n != 3:
            raise UsageError("example1 seeds are defined for three parties")
        seeds = single_party_seeds(shape, lambda k: analysis.example1_seed(k, 3, d), lambda k: S)
    wc = build_witness(seeds, shape)
    io.write_matrix(args.out, wc.W, shape)
    print(f"map={S.name} seeds={args.seeds} shape={shape} partitions={len(seeds)}")
    print(f"positivity probe min eigenvalue: {probe:.3e}")
    print(f"trace W = {np.trace(wc.W).real:.12g}, min eigenvalue W = {min_eigenvalue(wc.W):.12g}")
    print(f"wrote {args.out}")


def cmd_evaluate(args):
    W, wshape = io.read_matrix(args.witness, hermitian=True)
    rho, shape = _load_state(args)
    if W.shape != rho.shape:
        raise UsageError(f"witness dims {wshape.dims} do not match state dims {shape.dims}")
    value, verdict = evaluate(W, rho, args.tol)
    print(f"{value:.12g} {verdict}")


def cmd_ppt_check(args):
    rho, shape = _load_state(args)
    for cut, lo in analysis.ppt_check(rho, shape):
        print(f"{cut} {lo:.12g} {'NPT' if lo < -args.tol else 'PPT'}")


def cmd_map_check(args):
    rho, shape = _load_state(args)
    for cut, lo in analysis.map_check(rho, shape, args.map):
        print(f"{cut} {lo:.12g} {'NEGATIVE' if lo < -args.tol else 'NONNEGATIVE'}")


def cmd_lambda_scan(args):
    if args.lambdas:
        grid = [io.parse_number(t) for t in args.lambdas.split(",")]
    else:
        grid = np.linspace(args.start, args.stop, args.steps)
    rows = analysis.lambda_scan(grid, args.map, args.tol)
    with _out(args.out) as f:
        io.write_lambda_csv(f, rows)
    if args.find_threshold:
        lam = analysis.lambda_threshold(analysis.witness_for_map(args.map))
        print(f"sign change at lambda = {lam:.12g}", file=sys.stderr)


def cmd_noise_robustness(args):
    if args.witness:
        W, _ = io.read_matrix(args.witness, hermitian=True)
    else:
        W = analysis.witness_for_map(args.map)
    r = analysis.noise_robustness(args.lam, W, args.tol)
    print(f"lambda = {args.lam:.12g}")
    print(f"witness value at p=0: {r.witness_value_at_zero:.12g}")
    print(f"witness trace: {r.witness_trace:.12g}")
    print(f"p_crit = {r.p_crit:.12g}")
    print(f"p_crit (bisection) = {r.p_crit_bisection:.12g}")


def cmd_region_scan(args):
    grid = analysis.scan_grid(args.steps)
    rows = analysis.region_scan(grid, grid, tol=args.tol, include_skipped=args.include_skipped)
    with _out(args.out) as f:
        io.write_region_csv(f, rows)
    if args.out not in (None, "-"):
        counts = {}
        for r in rows:
            counts[str(r.verdict)] = counts.get(str(r.verdict), 0) + 1
        print(f"wrote {len(rows)} rows to {args.out}: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DETECTION_TOL, help="detection threshold (default 1e-10)")

    state = argparse.ArgumentParser(add_help=False)
    state.add_argument("--state", help="ghz:n,d | rho-lambda:l | noise:p,l | two-param:p,q")
    state.add_argument("--state-file", help="state in the JSON matrix format")

    parser = _Parser(prog="gmewit", description="Genuine multipartite entanglement witnesses from positive maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("witness-build", parents=[common], help="construct a witness and write it as JSON")
    p.add_argument("--map", type=_map, default=MapSpec.parse("choi3"))
    p.add_argument("--seeds", choices=["ghz", "example1"], default="ghz")
    p.add_argument("--n", type=int, default=3, help="number of parties")
    p.add_argument("--d", type=int, default=3, help="local dimension when the map does not fix it")
    p.add_argument("--probe-samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0, help="RNG seed for the positivity probe")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_witness_build)

    p = sub.add_parser("evaluate", parents=[common, state], help="evaluate a witness on a state")
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ppt-check", parents=[common, state], help="partial-transpose spectrum on every cut")
    p.set_defaults(func=cmd_ppt_check)

    p = sub.add_parser("map-check", parents=[common, state], help="positive-map test on every cut")
    p.add_argument("--map", type=_map, required=True)
    p.set_defaults(func=cmd_map_check)

    p = sub.add_parser("lambda-scan", parents=[common], help="witness value on rho(lambda) over a grid")
    p.add_argument("--map", type=_map, default=MapSpec.parse("choi3"))
    p.add_argument("--lambdas", help="comma-separated values (rationals allowed)")
    p.add_argument("--start", type=_number, default=0.05)
    p.add_argument("--stop", type=_number, default=0.95)
    p.add_argument("--steps", type=int, default=19)
    p.add_argument("--find-threshold", action="store_true", help="bisect for the sign change")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lambda_scan)

    p = sub.add_parser("noise-robustness", parents=[common], help="critical white-noise weight for rho(lambda)")
    p.add_argument("--lambda", dest="lam", type=_number, default=1.0 / 9.0)
    p.add_argument("--map", type=_map, default=MapSpec.parse("choi3"))
    p.add_argument("--witness", help="use a witness from a JSON file instead of building one")
    p.set_defaults(func=cmd_noise_robustness)

    p = sub.add_parser("region-scan", parents=[common], help="PPT vs Choi detection over the (p, q) family")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--include-skipped", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_region_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InvalidStateError, HermiticityError, NumericalError, analysis.NotDetectedError) as exc:
        print(f"gmewit {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ValueError, OSError) as exc:
        print(f"gmewit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
