"""Driving-strength sweeps, time traces and critical-drive search, with CSV output."""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .amplitude import c1_at, c1_dot_at, solve
from .errors import BracketInvalid, QslmqError, ValidationError
from .measures import metrics, qsl_ratio
from .model import ModelParams
from .oracle import TimeSeries

DEFAULT_BETAS = (0.0, 5e-10, 1e-9, 1.5e-9)
WEAK_LAMBDAS = (3.0, 5.0, 10.0)
STRONG_LAMBDAS = (0.01, 0.05, 0.1)
DEFAULT_LAMBDAS = WEAK_LAMBDAS + STRONG_LAMBDAS
SPEEDUP_THRESHOLD = 1e-6

SWEEP_COLUMNS = ("omega_over_gamma", "qsl_ratio", "nm", "p_tau", "identity_residual", "status")
TRACE_COLUMNS = ("t", "re_c1", "im_c1", "abs_c1_sq", "gamma_t", "s_t")


@dataclass(frozen=True)
class SweepSpec:
    base: ModelParams = field(default_factory=ModelParams)
    omega_start: float = 0.0
    omega_stop: float = 30.0
    omega_count: int = 601
    beta_list: tuple = DEFAULT_BETAS
    lambda_list: tuple = DEFAULT_LAMBDAS

    def __post_init__(self):
        if self.omega_count < 2:
            raise ValidationError("omega_count", "need at least 2 grid points")
        if self.omega_start < 0:
            raise ValidationError("omega_start", "must be >= 0")
        if self.omega_stop < self.omega_start:
            raise ValidationError("omega_stop", "must be >= omega_start")
        if any(not lam > 0 for lam in self.lambda_list):
            raise ValidationError("lambda", "all spectral widths must be > 0")
        for b in self.beta_list:
            self.base.replace(beta=b)  # validates

    def omegas(self):
        return np.linspace(self.omega_start, self.omega_stop, self.omega_count) * self.base.gamma

    def curves(self):
        return [(lam, beta) for lam in self.lambda_list for beta in self.beta_list]


@dataclass(frozen=True)
class SweepRow:
    omega_over_gamma: float
    qsl_ratio: float
    nm: float
    p_tau: float
    identity_residual: float
    status: str = "ok"

    @property
    def ok(self):
        return self.status == "ok"


def sweep_point(params: ModelParams) -> SweepRow:
    x = params.omega_drive / params.gamma if params.gamma else params.omega_drive
    try:
        m = metrics(solve(params), params.tau)
    except QslmqError as exc:
        nan = math.nan
        return SweepRow(x, nan, nan, nan, nan, f"skipped: {type(exc).__name__}")
    return SweepRow(x, m.qsl_ratio, m.nm, m.p_tau, m.identity_residual)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> dict:
    """Rows for every (lambda, beta) curve, keyed and ordered by (lambda, beta).

    ``workers=1`` runs serially; otherwise rows go to a process pool.
    """
    points = [
        spec.base.replace(lam=lam, beta=beta, omega_drive=float(om))
        for lam, beta in spec.curves()
        for om in spec.omegas()
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1:
        rows = [sweep_point(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(sweep_point, points, chunksize=max(1, len(points) // (8 * workers))))
    n = spec.omega_count
    return {key: rows[i * n:(i + 1) * n] for i, key in enumerate(spec.curves())}


def speedup(params: ModelParams) -> bool:
    return qsl_ratio(solve(params), params.tau) < 1 - SPEEDUP_THRESHOLD


def find_critical_omega(params: ModelParams, omega_bracket=(0.0, 30.0), resolution: float = 1e-4) -> float:
    """Smallest driving strength at which tau_qsl/tau leaves 1, by bisection."""
    lo, hi = (float(x) for x in omega_bracket)
    if not 0 <= lo < hi:
        raise BracketInvalid(f"bad bracket {omega_bracket}")
    if speedup(params.replace(omega_drive=lo)):
        raise BracketInvalid(f"already speeding up at Omega={lo}")
    if not speedup(params.replace(omega_drive=hi)):
        raise BracketInvalid(f"no speedup at Omega={hi}; no transition inside the bracket")
    res = resolution * params.gamma
    while hi - lo > res:
        mid = 0.5 * (lo + hi)
        if speedup(params.replace(omega_drive=mid)):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def run_trace(params: ModelParams, horizon: float, count: int) -> TimeSeries:
    """Closed-form C1 and rates on ``count`` uniform samples of ``[0, horizon]``."""
    if count < 2 or not horizon > 0:
        raise ValidationError("trace_count", "need horizon > 0 and at least 2 samples")
    sol = solve(params)
    t = np.linspace(0.0, horizon, count)
    ts = TimeSeries(t, c1_at(sol, t), c1_dot_at(sol, t), {"params": params})
    ts.meta["rate_failures"] = int(np.count_nonzero(~ts.rate_ok))
    return ts


def _fmt(x):
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _tag(value):
    return format(float(value), "g")


def sweep_filename(lam, beta):
    return f"sweep_lambda{_tag(lam)}_beta{_tag(beta)}.csv"


def trace_filename(params: ModelParams, prefix="trace"):
    return f"{prefix}_lambda{_tag(params.lam)}_beta{_tag(params.beta)}_omega{_tag(params.omega_drive)}.csv"


def write_rows(path, header, rows):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    return path


def write_sweep(results: dict, out_dir) -> list:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for (lam, beta), rows in results.items():
        body = [[getattr(r, c) for c in SWEEP_COLUMNS] for r in rows]
        paths.append(write_rows(out_dir / sweep_filename(lam, beta), SWEEP_COLUMNS, body))
    return paths


def trace_table(ts: TimeSeries):
    cols = (ts.t, ts.c1.real, ts.c1.imag, ts.population, ts.gamma_rate, ts.lamb_shift)
    return list(zip(*cols))


def write_trace(ts: TimeSeries, path):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return write_rows(path, TRACE_COLUMNS, trace_table(ts))


def read_sweep(path) -> list:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            SweepRow(*(float(r[c]) for c in SWEEP_COLUMNS[:-1]), status=r["status"])
            for r in reader
        ]
