"""``qslmq`` command line: trace, sweep, critical, verify."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import KEYS, load_config, params_from
from .errors import QslmqError
from .kernel import Kernel, KernelKind
from .oracle import VolterraConfig, solve_volterra
from .sweep import (
    DEFAULT_BETAS,
    DEFAULT_LAMBDAS,
    SweepSpec,
    find_critical_omega,
    run_sweep,
    run_trace,
    trace_filename,
    write_rows,
    write_sweep,
    write_trace,
)
from .verify import format_report, run_verify


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value configuration file")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    for key in KEYS:
        common.add_argument(f"--{key}", dest=key, default=None, metavar="VALUE")

    parser = argparse.ArgumentParser(prog="qslmq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="C1(t), Gamma(t), S(t) on a time grid")
    p.add_argument("--oracle", action="store_true", help="also write the Volterra reference trace")

    p = sub.add_parser("sweep", parents=[common], help="tau_qsl/tau and N versus Omega")
    p.add_argument("--lambdas", type=_floats, default=DEFAULT_LAMBDAS)
    p.add_argument("--betas", type=_floats, default=DEFAULT_BETAS)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("critical", parents=[common], help="critical driving strength per (lambda, beta)")
    p.add_argument("--lambdas", type=_floats, default=None)
    p.add_argument("--betas", type=_floats, default=None)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    return parser


def _trace(args, cfg):
    params = params_from(cfg)
    ts = run_trace(params, cfg["trace_horizon"], cfg["trace_count"])
    path = write_trace(ts, args.out / trace_filename(params))
    print(f"wrote {path}")
    if ts.meta["rate_failures"]:
        print(f"warning: {ts.meta['rate_failures']} samples at amplitude zeros (rates left as nan)", file=sys.stderr)
    if args.oracle:
        kind = KernelKind.CONTINUUM if params.tau0 == float("inf") else KernelKind.FINITE_CAVITY
        ref = solve_volterra(Kernel(params, kind), VolterraConfig(cfg["trace_horizon"], cfg["oracle_step"]))
        path = write_trace(ref, args.out / trace_filename(params, prefix="trace_oracle"))
        print(f"wrote {path}")
    return 0


def _sweep(args, cfg):
    spec = SweepSpec(
        base=params_from(cfg),
        omega_start=cfg["omega_start"],
        omega_stop=cfg["omega_stop"],
        omega_count=cfg["omega_count"],
        beta_list=args.betas,
        lambda_list=args.lambdas,
    )
    results = run_sweep(spec, workers=args.workers)
    for path in write_sweep(results, args.out):
        print(f"wrote {path}")
    skipped = sum(not r.ok for rows in results.values() for r in rows)
    if skipped:
        print(f"warning: {skipped} rows skipped", file=sys.stderr)
    return 0


def _critical(args, cfg):
    base = params_from(cfg)
    lams = args.lambdas or (base.lam,)
    betas = args.betas or (base.beta,)
    rows = []
    for lam in lams:
        for beta in betas:
            p = base.replace(lam=lam, beta=beta)
            try:
                oc = find_critical_omega(p, (cfg["omega_start"], cfg["omega_stop"]))
                rows.append((lam, beta, oc, "ok"))
            except QslmqError as exc:
                rows.append((lam, beta, float("nan"), f"skipped: {type(exc).__name__}"))
            print(f"lambda={lam:g} beta={beta:g} omega_c={rows[-1][2]:.6g} {rows[-1][3]}")
    args.out.mkdir(parents=True, exist_ok=True)
    write_rows(args.out / "critical.csv", ("lambda", "beta", "omega_c", "status"), rows)
    return 0


def _verify(args, cfg):
    checks = run_verify(args.level)
    report = format_report(checks)
    print(report)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / f"verify_{args.level}.txt").write_text(report + "\n")
    return 0 if all(c.passed for c in checks) else 2


COMMANDS = {"trace": _trace, "sweep": _sweep, "critical": _critical, "verify": _verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, {k: getattr(args, k) for k in KEYS})
        return COMMANDS[args.command](args, cfg)
    except QslmqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
