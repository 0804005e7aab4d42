"""Command-line batch harness.

Subcommands:
  verify  run registered identity suites with seeded sampling, emit a JSON
          report; exit 0 when every check passes, 1 on any failure, 2 on
          invalid configuration.
  scalar  evaluate one scalar product by a chosen closed formula and by the
          brute-force chain oracle, print both and the verdict.
  bench   time the twisted scalar-product partition sum over a size range and
          a worker-count sweep.

`verify` also accepts a JSON config file mirroring the run-configuration
fields; explicit command-line flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import bench_sizes, jobs_sweep, run_bench
from .chain import ChainSpec, direct_scalar, twist_pair
from .actions import WeightOracle, eval_scalar
from .errors import CardinalityError, ConfigError, DomainError, MbetheError
from .report import build_report, write_report
from .scalars import ModelParams, rat, rat_str, sample_generic, with_shifts
from .suites import SUITES, RunConfig, run_suites

SCALAR_FORMS = ("SCe", "SCbe", "SPfin", "SPfinIK")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbethe",
        description="exact verification of twisted-chain Bethe-vector identities")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run identity suites")
    ver.add_argument("--suite", action="append", dest="suites",
                     metavar="NAME", help="suite to run (repeatable); "
                     f"default: all of {', '.join(SUITES)}")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--c", default=None, metavar="P/Q",
                     help="kernel constant (default 1)")
    ver.add_argument("--bound", type=int, default=None,
                     help="numerator/denominator bound for sampled rationals")
    ver.add_argument("--jobs", type=int, default=None)
    ver.add_argument("--report", default=None, metavar="PATH",
                     help="write the JSON report here")
    ver.add_argument("--config", default=None, metavar="PATH",
                     help="JSON config file; flags override its values")

    sca = sub.add_parser("scalar", help="one scalar product, formula vs oracle")
    sca.add_argument("--n", type=int, required=True)
    sca.add_argument("--m", type=int, required=True)
    sca.add_argument("--sites", type=int, required=True)
    sca.add_argument("--form", choices=SCALAR_FORMS, default="SPfin")
    sca.add_argument("--rho1", default="1/2")
    sca.add_argument("--rho2", default="2/3")
    sca.add_argument("--kp", default="3")
    sca.add_argument("--km", default="5/2")
    sca.add_argument("--seed", type=int, default=0)
    sca.add_argument("--c", default="1")
    sca.add_argument("--bound", type=int, default=30)
    sca.add_argument("--report", default=None, metavar="PATH")

    ben = sub.add_parser("bench", help="time the twisted scalar-product sum")
    ben.add_argument("--max-size", type=int, default=16,
                     help="largest n+m (sizes run from 10 up)")
    ben.add_argument("--size", type=int, action="append", dest="exact_sizes",
                     help="exact size to run (repeatable; overrides --max-size)")
    ben.add_argument("--jobs", type=int, default=8,
                     help="largest worker count in the sweep")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--report", default=None, metavar="PATH")
    return parser


def cmd_verify(args) -> int:
    file_values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold one JSON object")
        unknown = set(file_values) - {"suites", "seed", "c", "bound", "sizes",
                                      "parallelism", "report_path"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    def pick(flag_value, file_key, default):
        if flag_value is not None:
            return flag_value
        return file_values.get(file_key, default)

    cfg = RunConfig(
        suites=tuple(pick(args.suites, "suites", tuple(SUITES))),
        seed=int(pick(args.seed, "seed", 0)),
        c=rat(pick(args.c, "c", 1)),
        bound=int(pick(args.bound, "bound", 30)),
        sizes=file_values.get("sizes", {}),
        jobs=int(pick(args.jobs, "parallelism", 1)),
        report_path=pick(args.report, "report_path", None),
    )
    records = run_suites(cfg)
    report = build_report(cfg.to_json(), records)
    if cfg.report_path:
        write_report(report, cfg.report_path)
    failures = [r for r in records if r.status == "fail"]
    by_suite = report["summary"]["suites"]
    for suite in cfg.suites:
        stats = by_suite.get(suite, {"passed": 0, "failed": 0})
        print(f"{suite}: {stats['passed']} passed, {stats['failed']} failed")
    for rec in failures:
        print(f"FAIL {rec.suite}/{rec.identity} trial={rec.trial} "
              f"seed={rec.seed}", file=sys.stderr)
    total = report["summary"]
    print(f"total: {total['passed']}/{total['total']} passed")
    return 0 if not failures else 1


def cmd_scalar(args) -> int:
    if args.n < 0 or args.m < 0:
        raise ConfigError("--n and --m must be nonnegative")
    c = rat(args.c)
    theta = sample_generic(args.sites, seed=args.seed ^ 0x7E7A, bound=args.bound,
                           c=c, label="theta")
    spec = ChainSpec(args.sites, theta, c)
    params = ModelParams(c, rat(args.rho1), rat(args.rho2),
                         rat(args.kp), rat(args.km))
    oracle = WeightOracle.fundamental(spec)
    us = sample_generic(args.n, context=with_shifts(c, theta),
                        seed=args.seed + 1, bound=args.bound, c=c, label="u")
    vs = sample_generic(args.m, context=with_shifts(c, theta, us),
                        seed=args.seed + 2, bound=args.bound, c=c, label="v")
    try:
        if args.form in ("SCe", "SCbe"):
            formula = eval_scalar(args.form, us, vs, oracle, None, c)
            oracle_value = direct_scalar(spec, None, "t21", us, "t12", vs)
        else:
            formula = eval_scalar(args.form, us, vs, oracle, params, c)
            oracle_value = direct_scalar(spec, params, "nu21", us, "nu12", vs)
    except CardinalityError as exc:
        raise ConfigError(str(exc))
    verdict = "PASS" if formula == oracle_value else "FAIL"
    print(f"form     : {args.form}  (n={args.n}, m={args.m}, sites={args.sites})")
    print(f"twist    : mu={rat_str(params.mu)} beta1={rat_str(params.beta1)} "
          f"beta2={rat_str(params.beta2)}")
    print(f"formula  : {rat_str(formula)}")
    print(f"oracle   : {rat_str(oracle_value)}")
    print(f"verdict  : {rat_str(formula)} = {rat_str(oracle_value)}, {verdict}"
          if verdict == "PASS" else f"verdict  : mismatch, {verdict}")
    if args.report:
        record = {
            "command": "scalar",
            "form": args.form,
            "sizes": {"n": args.n, "m": args.m, "sites": args.sites},
            "seed": args.seed,
            "c": rat_str(c),
            "twist": {"rho1": rat_str(params.rho1), "rho2": rat_str(params.rho2),
                      "kappa_plus": rat_str(params.kappa_plus),
                      "kappa_minus": rat_str(params.kappa_minus),
                      "mu": rat_str(params.mu),
                      "det_a0": rat_str(twist_pair(params).det_a0),
                      "det_b0": rat_str(twist_pair(params).det_b0)},
            "formula": rat_str(formula),
            "oracle": rat_str(oracle_value),
            "status": "pass" if verdict == "PASS" else "fail",
        }
        write_report(record, args.report)
    return 0 if verdict == "PASS" else 1


def cmd_bench(args) -> int:
    sizes = args.exact_sizes if args.exact_sizes else bench_sizes(args.max_size)
    sweep = jobs_sweep(args.jobs)
    result = run_bench(sizes, sweep, seed=args.seed)
    print(f"{'size':>4} {'splits':>7} {'jobs':>4} {'seconds':>9} "
          f"{'splits/s':>10} {'speedup':>8}  identical")
    for row in result["rows"]:
        print(f"{row['size']:>4} {row['splits']:>7} {row['jobs']:>4} "
              f"{row['seconds']:>9.3f} {row['splits_per_sec']:>10.1f} "
              f"{row['speedup']:>8.3f}  {row['identical_to_serial']}")
    print(f"consistent across worker counts: {result['consistent']}")
    if args.report:
        write_report({"command": "bench", "jobs_sweep": sweep,
                      "sizes": list(sizes), **result}, args.report)
    return 0 if result["consistent"] else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "scalar":
            return cmd_scalar(args)
        return cmd_bench(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MbetheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
