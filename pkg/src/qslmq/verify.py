"""Cross-checks between the closed form, the Volterra reference and the measures."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .amplitude import c1_at, c1_dot_at, rates_at, solve
from .errors import NoEvolution
from .kernel import Kernel, KernelKind, eval_continuum, eval_finite_cavity
from .measures import metrics, path_integral, qsl_ratio
from .model import ModelParams, derive
from .oracle import VolterraConfig, convergence_order, solve_volterra
from .sweep import SweepSpec, run_sweep

ORACLE_SETS = [
    (lam, om, beta)
    for lam in (3.0, 0.01)
    for om, beta in ((0.0, 0.0), (5.0, 0.0), (5.0, 1e-9))
]


@dataclass
class Check:
    name: str
    passed: bool
    measured: float
    tolerance: float
    seconds: float = 0.0

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<44s} measured={self.measured:.3e}  tol={self.tolerance:.1e}  ({self.seconds:.2f}s)"


def undriven_amplitude(lam, gamma, t):
    """C1(t) at zero drive, detuning and velocity (single damped mode)."""
    d = np.sqrt(complex(lam * lam - gamma * lam))
    t = np.asarray(t, dtype=float)
    return np.exp(-lam * t / 2) * (np.cosh(d * t / 2) + lam / d * np.sinh(d * t / 2))


def random_params(rng, n, omega0=1.53e9):
    for _ in range(n):
        yield ModelParams(
            omega0=omega0,
            lam=float(np.exp(rng.uniform(np.log(0.005), np.log(10.0)))),
            omega_drive=float(rng.uniform(0, 30)),
            beta=float(rng.uniform(0, 2e-9)),
            delta=float(rng.uniform(-5, 5)),
        )


def sum_rule_residuals(params_iter):
    """Worst normalised residual of the three moment identities of the residues."""
    worst = np.zeros(3)
    for p in params_iter:
        sol = solve(p)
        s, a = sol.roots, sol.residues
        smax = float(np.max(np.abs(s)))
        w = p.gamma * p.lam / 4
        worst = np.maximum(worst, [
            abs(a.sum() - 1),
            abs((a * s).sum()) / smax,
            abs((a * s * s).sum() + w) / abs(w + smax**2),
        ])
    return worst


def oracle_error(params, step, horizon=1.0):
    ts = solve_volterra(Kernel(params), VolterraConfig(horizon, step))
    return float(np.max(np.abs(ts.c1 - c1_at(solve(params), ts.t))))


def _timed(name, tol, fn, cmp=lambda m, tol: m <= tol):
    start = time.perf_counter()
    measured = float(fn())
    return Check(name, bool(cmp(measured, tol)), measured, tol, time.perf_counter() - start)


def _expected_no_evolution():
    try:
        qsl_ratio(solve(ModelParams(gamma=0.0, lam=3.0, omega_drive=5.0)), 1.0)
    except NoEvolution:
        return 0.0
    return 1.0


def _identity_worst(lams, betas, count):
    spec = SweepSpec(omega_count=count, lambda_list=lams, beta_list=betas)
    rows = [r for curve in run_sweep(spec, workers=1).values() for r in curve]
    good = [r.identity_residual for r in rows if r.ok and 1 - r.p_tau > 1e-9]
    return max(good) if good else math.nan


def _finite_cavity_gap():
    worst = 0.0
    tt = np.linspace(0, 10, 41)
    tg, t1g = np.meshgrid(tt, tt)
    mask = t1g <= tg
    for lam in (3.0, 0.01):
        p = ModelParams(lam=lam, omega_drive=5.0, tau0=50 / lam)
        d = derive(p)
        diff = eval_finite_cavity(d, p, tg[mask], t1g[mask]) - eval_continuum(d, tg[mask] - t1g[mask])
        worst = max(worst, float(np.max(np.abs(diff))))
        cfg = VolterraConfig(1.0, 1e-3)
        a = solve_volterra(Kernel(p, KernelKind.FINITE_CAVITY), cfg).c1
        b = solve_volterra(Kernel(p), cfg).c1
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


def _quad_vs_exact():
    worst = 0.0
    for lam, om in ((3.0, 20.0), (0.01, 10.0), (0.01, 25.0)):
        sol = solve(ModelParams(lam=lam, omega_drive=om))
        a = path_integral(sol, 1.0)
        b = path_integral(sol, 1.0, method="quad")
        worst = max(worst, abs(a - b) / a)
    return worst


def run_verify(level: str = "fast", seed: int = 20240501) -> list:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    rng = np.random.default_rng(seed)
    n_random = 50 if level == "fast" else 200
    cache = {}

    def sums():
        if "sums" not in cache:
            cache["sums"] = sum_rule_residuals(random_params(rng, n_random))
        return cache["sums"]

    checks = [
        _timed(f"sum rule: sum A_k = 1 ({n_random} sets)", 1e-10, lambda: sums()[0]),
        _timed("sum rule: sum A_k s_k = 0", 1e-8, lambda: sums()[1]),
        _timed("sum rule: sum A_k s_k^2 = -gamma*lambda/4", 1e-8, lambda: sums()[2]),
        _timed("closed-form undriven limit, t in [0, 10]", 1e-10, lambda: max(
            np.max(np.abs(c1_at(solve(ModelParams(lam=lam)), t) - undriven_amplitude(lam, 1.0, t)))
            for lam in (3.0, 0.01) for t in [np.linspace(0, 10, 2001)]
        )),
        _timed("oracle vs closed form, h=1e-3", 1e-6, lambda: max(
            oracle_error(ModelParams(lam=lam, omega_drive=om, beta=b), 1e-3) for lam, om, b in ORACLE_SETS
        )),
        _timed("oracle convergence order (lambda=3, Omega=5)", 1.8, lambda: convergence_order(
            Kernel(ModelParams(lam=3.0, omega_drive=5.0)), VolterraConfig(1.0, 1e-3)
        ), cmp=lambda m, tol: m >= tol),
        _timed("rate slope Gamma(t)/t -> gamma*lambda/2", 1e-2, lambda: max(
            abs(rates_at(solve(ModelParams(lam=lam)), 1e-4)[0] / 1e-4 / (lam / 2) - 1) for lam in (3.0, 0.01)
        )),
        _timed("tau_qsl/tau vs N identity over sweep", 1e-9, lambda: _identity_worst(
            (3.0, 0.01), (0.0, 1e-9), 61 if level == "fast" else 601
        )),
        _timed("gamma = 0 reports NoEvolution", 0.0, _expected_no_evolution),
    ]
    if level == "full":
        checks += [
            _timed("oracle vs closed form, h=5e-4", 2.5e-7, lambda: max(
                oracle_error(ModelParams(lam=lam, omega_drive=om, beta=b), 5e-4) for lam, om, b in ORACLE_SETS
            )),
            _timed("oracle convergence order, all sets", 1.8, lambda: min(
                convergence_order(Kernel(ModelParams(lam=lam, omega_drive=om, beta=b)), VolterraConfig(1.0, 1e-3))
                for lam, om, b in ORACLE_SETS
            ), cmp=lambda m, tol: m >= tol),
            _timed("finite cavity (lambda*tau0=50) vs continuum", 1e-10, _finite_cavity_gap),
            _timed("path integral: quadrature vs exact increments", 1e-8, _quad_vs_exact),
            _timed("derivative vs central difference", 1e-6, lambda: abs(
                (lambda s: (c1_at(s, 0.5 + 1e-5) - c1_at(s, 0.5 - 1e-5)) / 2e-5 - c1_dot_at(s, 0.5))(
                    solve(ModelParams(lam=0.01, omega_drive=5.0, beta=1e-9)))
            )),
            _timed("metrics at strong coupling, Omega=10", 1e-9, lambda: metrics(
                solve(ModelParams(lam=0.01, omega_drive=10.0)), 1.0).identity_residual),
        ]
    return checks


def format_report(checks) -> str:
    lines = [c.line() for c in checks]
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines)
