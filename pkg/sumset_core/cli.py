# -*- coding: utf-8 -*-
"""*Command line front end.*

```
sumset threshold --c 1 --d 1
sumset thickness --set cantor.json --depth 8 --target 0.15 --ratio 0.9 --floor 0.00137
sumset certify --sets interval.json --set-depth 9 --copies 21 --alpha 0.49 --depth 1
sumset oracle sum-distance --clouds bits.json --copies 3 --point 1.5
sumset selftest
```

Every run prints one report as canonical JSON (or aligned text with `--text`). The run
configuration, including the seed, is echoed in the report.

| Exit | Meaning                                          |
|----- |--------------------------------------------------|
| 0    | success                                          |
| 2    | a certificate premise failed at a tree vertex    |
| 3    | inputs or parameters violate a hypothesis        |
| 64   | malformed command line                           |
| 65   | missing or malformed input file                  |
"""
import argparse
import sys
import time
from typing import List, Optional, Sequence
from loguru import logger as log
from more_itertools import repeat_each
import sumset_core as sc


__all__ = [
    "Report",
    "UsageError",
    "build_parser",
    "oracle",
    "parse_and_dispatch",
    "main",
]


class UsageError(Exception):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    """Outcome of one command with its configuration echo."""

    def __init__(
        self, command, config, results, status, wall_time=0.0, exit_code=0, fmt="json", out=None
    ):
        # type: (str, dict, dict, str, float, int, str, Optional[str]) -> None
        self.command = command
        self.config = config
        self.results = results
        self.status = status
        self.wall_time = wall_time
        self.exit_code = exit_code
        self.fmt = fmt
        self.out = out

    def dict(self):
        # type: () -> dict
        return dict(
            command=self.command,
            config=self.config,
            results=self.results,
            status=self.status,
            wall_time=self.wall_time,
        )

    def text(self):
        # type: () -> str
        rows = [("command", self.command), ("status", self.status)]
        rows += _flatten("config", sc.to_jsonable(self.config))
        rows += _flatten("results", sc.to_jsonable(self.results))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _flatten(prefix, value):
    if isinstance(value, dict):
        rows = []
        for k, v in value.items():
            rows += _flatten(f"{prefix}.{k}", v)
        return rows
    return [(prefix, value)]


def _common(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument("--seed", type=int, default=None, help="seed for sampling oracles")
    parser.add_argument("--tol", type=float, default=None, help="numerical tolerance")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="text output")
    parser.set_defaults(fmt="json")
    parser.add_argument("--out", default=None, help="write the report to this file")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")


def build_parser():
    # type: () -> argparse.ArgumentParser
    parser = _Parser(prog="sumset", description="Certificates for sums of thick compact sets.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name in ("sf-decompose", "round"):
        p = sub.add_parser(name, help="Shapley-Folkman decomposition and rounding")
        p.add_argument("--clouds", nargs="+", required=True, help="point cloud documents")
        p.add_argument("--coeffs", required=True, help="combinations document")
        _common(p)

    p = sub.add_parser("thickness", help="certify a thickness lower bound")
    p.add_argument("--set", required=True, dest="set_path", help="IFS or point cloud document")
    p.add_argument("--depth", type=int, default=None, help="IFS discretization depth")
    p.add_argument("--target", type=float, required=True, help="target thickness")
    p.add_argument("--ratio", type=float, default=0.9, help="scale ratio")
    p.add_argument("--floor", type=float, default=None, help="finest scale")
    p.add_argument("--stride", type=int, default=None, help="use every k-th cloud point as center")
    _common(p)

    p = sub.add_parser("certify", help="interior certificate for a sum of thick sets")
    p.add_argument("--sets", nargs="+", required=True, help="IFS or point cloud documents")
    p.add_argument("--copies", type=int, default=1, help="repeat every set this many times")
    p.add_argument("--set-depth", type=int, default=None, help="IFS discretization depth")
    p.add_argument("--alpha", type=float, default=None, help="thickness parameter")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="scale ratio")
    p.add_argument("--c", type=float, default=None, help="thickness for parameter suggestion")
    p.add_argument("--depth", type=int, default=None, help="tree depth")
    p.add_argument("--gap", type=float, default=None, help="requested residual gap")
    _common(p)

    p = sub.add_parser("threshold", help="closed-form thresholds")
    p.add_argument("--c", type=float, required=True, help="thickness in (0, 1]")
    p.add_argument("--d", type=int, default=1, help="dimension")
    _common(p)

    p = sub.add_parser("oracle", help="brute-force oracles next to their bounds")
    p.add_argument("kind", choices=["sum-distance", "residual", "absorption"])
    p.add_argument("--clouds", nargs="+", required=True, help="point cloud documents")
    p.add_argument("--copies", type=int, default=1, help="repeat every cloud this many times")
    p.add_argument("--point", type=float, nargs="+", default=None, help="query point")
    p.add_argument("--samples", type=int, default=None, help="number of samples")
    p.add_argument("--interval", type=float, nargs=2, default=None, help="interval to absorb")
    p.add_argument("--radius", type=float, default=None, help="fattening radius of cloud points")
    _common(p)

    p = sub.add_parser("selftest", help="run the conformance vectors")
    _common(p)
    return parser


def _repeat(items, copies):
    if copies < 1:
        raise UsageError(f"--copies must be positive: {copies}")
    return list(repeat_each(items, copies))


def _run_sf(args):
    clouds = [sc.load_cloud(p) for p in args.clouds]
    coeffs = sc.load_combinations(args.coeffs)
    if args.command == "sf-decompose":
        dec = sc.sf_decompose(clouds, coeffs)
        results = dec.dict()
        results["residual"] = dec.residual
        return results, "pass"
    return sc.sf_round_radius(clouds, coeffs).dict(), "pass"


def _run_thickness(args):
    dset = sc.load_set(args.set_path, args.depth)
    cert = sc.certify_thickness(
        dset, args.target, args.ratio, centers=args.stride, floor=args.floor, keep_witnesses=False
    )
    results = cert.dict()
    results["set"] = dset.dict()
    return results, "pass" if cert.passed else "fail"


def _run_certify(args):
    sets = _repeat([sc.load_set(p, args.set_depth) for p in args.sets], args.copies)
    n, d = len(sets), sets[0].dim
    alpha, lam = args.alpha, args.lam
    if alpha is None:
        if args.c is None:
            raise UsageError("certify needs --alpha or --c")
        alpha, suggested = sc.suggest_params(args.c, d, n)
        lam = suggested if lam is None else lam
    elif lam is None:
        lam = sc.lambda_star(alpha)
    depth = args.depth
    results = {}
    if args.gap is not None:
        r0 = min(s.diam for s in sets)
        base = sc.CertifierParams(alpha, lam, 0, n, d)
        results["depth_for_gap"] = sc.depth_for_gap(base, r0, args.gap)
        depth = results["depth_for_gap"] if depth is None else depth
    if depth is None:
        raise UsageError("certify needs --depth or --gap")
    params = sc.CertifierParams(alpha, lam, depth, n, d)
    cert = sc.certify_interior(sets, params, seed=sc.core_opts.seed)
    results.update(cert.dict())
    results["digest"] = sc.certificate_digest(cert)
    return results, "pass"


def _run_threshold(args):
    report = sc.threshold_report(args.c, args.d)
    return report.dict(), "pass"


def oracle(kind, clouds, point=None, samples=None, interval=None, radius=None, seed=None):
    # type: (str, Sequence[sc.CloudLike], Optional[Sequence[float]], Optional[int], Optional[Sequence[float]], Optional[float], Optional[int]) -> Report
    """
    Run a brute-force oracle and report its measurement next to the matching bound.

    - `sum-distance` exact distance from `point` to the sum vs. `R √min(n, d)`
    - `residual` sampled almost-convexity residual vs. `R √min(n, d)`
    - `absorption` covering of `interval` by the sum of `radius`-fattened 1-d clouds, with the
      fattening and spread premises

    :param str kind: Oracle name
    :param Sequence[CloudLike] clouds: Summand clouds
    :param point: Query point for `sum-distance`
    :param int samples: Number of samples for `residual` and `absorption`
    :param interval: Interval `(lo, hi)` for `absorption`
    :param float radius: Fattening radius for `absorption`
    :param int seed: Random seed (default `core_opts.seed`)
    :return: Report with status `pass` if the measurement respects its bound
    :rtype: Report
    :raises CapExceededError: If the instance exceeds the enumeration caps
    """
    start = time.perf_counter()
    seed = sc.core_opts.seed if seed is None else seed
    clouds = [sc.as_cloud(c) for c in clouds]
    if kind in ("sum-distance", "residual"):
        if kind == "sum-distance":
            if point is None:
                raise ValueError("sum-distance needs a query point")
            results = dict(measured=sc.sum_distance(clouds, point))
        else:
            results = sc.residual_report(clouds, samples=samples, seed=seed).dict()
        results["bound"] = sc.radius_bound(clouds)
        passed = results["measured"] <= results["bound"] + sc.core_opts.tolerance
    elif kind == "absorption":
        if interval is None or radius is None:
            raise ValueError("absorption needs an interval and a radius")
        if clouds[0].dim != 1:
            raise sc.DimensionError("The absorption oracle works on the real line")
        unions = [[(p - radius, p + radius) for p in c.points[:, 0]] for c in clouds]
        report = sc.absorption_oracle_1d(interval, unions, samples, seed)
        spread = max(float(sc.diameter(c)) for c in clouds)
        results = dict(report, premise=dict(fattening=len(clouds) * radius, spread=spread / 2))
        passed = report["covered"] and report["misses"] == 0
    else:
        raise ValueError(f"Unknown oracle {kind!r}")
    config = dict(kind=kind, summands=len(clouds), seed=seed)
    status = "pass" if passed else "fail"
    return Report("oracle", config, results, status, time.perf_counter() - start)


def _run_oracle(args):
    clouds = _repeat([sc.load_cloud(p) for p in args.clouds], args.copies)
    if args.kind == "sum-distance" and args.point is None:
        raise UsageError("sum-distance needs --point")
    if args.kind == "absorption" and (args.interval is None or args.radius is None):
        raise UsageError("absorption needs --interval and --radius")
    report = oracle(args.kind, clouds, args.point, args.samples, args.interval, args.radius)
    return report.results, report.status


def _run_selftest(args):
    outcomes = sc.conformance_report()
    failed = {k: v for k, v in outcomes.items() if v is not None}
    results = dict(passed=not failed, vectors=len(outcomes), failed=failed)
    return results, "fail" if failed else "pass"


COMMANDS = {
    "sf-decompose": _run_sf,
    "round": _run_sf,
    "thickness": _run_thickness,
    "certify": _run_certify,
    "threshold": _run_threshold,
    "oracle": _run_oracle,
    "selftest": _run_selftest,
}


def _config(args):
    # type: (argparse.Namespace) -> dict
    skip = {"command", "fmt", "out", "verbose", "seed", "tol"}
    config = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    config.update(seed=sc.core_opts.seed, tol=sc.core_opts.tolerance)
    return config


def parse_and_dispatch(argv=None):
    # type: (Optional[List[str]]) -> Report
    """
    Parse the command line, run the command and collect its report.

    `--tol` and `--seed` override the options for the duration of the run only. Data, premise
    and validation errors end up in the report with the matching exit code.

    :param argv: Arguments without the program name (default `sys.argv[1:]`)
    :return: Report of the run
    :rtype: Report
    :raises UsageError: If the command line is malformed
    """
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise UsageError("a command is required")

    log.remove()
    log.add(sys.stderr, level="DEBUG" if args.verbose else "WARNING")
    saved = sc.core_opts.tolerance, sc.core_opts.seed
    if args.tol is not None:
        sc.core_opts.tolerance = args.tol
    if args.seed is not None:
        sc.core_opts.seed = args.seed

    start = time.perf_counter()
    code = sc.EXIT.OK
    try:
        config = _config(args)
        log.info(f"Running {args.command} with {config}")
        try:
            results, status = COMMANDS[args.command](args)
            if status == "fail":
                code = sc.EXIT.VALIDATION
        except sc.DataError as e:
            results, status, code = dict(error=str(e), path=e.path), "data_error", sc.EXIT.DATA
        except sc.PremiseError as e:
            results = dict(error=str(e), step=e.step, path=list(e.path))
            status, code = "premise_failed", sc.EXIT.PREMISE
        except ValueError as e:
            results, status, code = dict(error=str(e)), "invalid", sc.EXIT.VALIDATION
        if code != sc.EXIT.OK:
            log.error(results.get("error", f"{args.command} failed"))
        elapsed = time.perf_counter() - start
        return Report(
            args.command, config, results, status, elapsed, int(code), args.fmt, args.out
        )
    finally:
        sc.core_opts.tolerance, sc.core_opts.seed = saved


def _emit(report):
    # type: (Report) -> None
    if report.fmt == "text":
        data = (report.text() + "\n").encode("utf-8")
    else:
        data = sc.json_canonical(report) + b"\n"
    if report.out:
        with open(report.out, "wb") as outf:
            outf.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv=None):
    # type: (Optional[List[str]]) -> int
    """
    Console entry point: run `parse_and_dispatch`, print the report and return the exit code.

    :param argv: Arguments without the program name (default `sys.argv[1:]`)
    :return: Process exit code
    :rtype: int
    """
    try:
        report = parse_and_dispatch(argv)
    except UsageError as e:
        sys.stderr.write(f"sumset: error: {e}\n")
        return int(sc.EXIT.USAGE)
    _emit(report)
    return report.exit_code
