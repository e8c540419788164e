"""Direct time stepping of the memory equation dC1/dt = -int_0^t F(t, s) C1(s) ds.

This is the reference the closed form is checked against.  The memory
integral uses the trapezoid rule over the whole history and the local step
is a trapezoidal predictor-corrector, so the scheme is second order for any
smooth kernel, convolution or not.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .amplitude import AMPLITUDE_ZERO_TOL
from .errors import StepTooLarge, ValidationError
from .kernel import Kernel


@dataclass(frozen=True)
class VolterraConfig:
    horizon: float
    step: float = 1e-3
    scheme: str = "trapezoidal-pc"
    corrector_tol: float = 1e-15
    max_corrector_iter: int = 50

    def __post_init__(self):
        if not self.step > 0:
            raise ValidationError("step", f"must be > 0, got {self.step}")
        if not self.horizon > 0:
            raise ValidationError("horizon", f"must be > 0, got {self.horizon}")
        if self.step > self.horizon:
            raise ValidationError("step", "must not exceed the horizon")
        if self.scheme != "trapezoidal-pc":
            raise ValidationError("scheme", f"unsupported scheme {self.scheme!r}")

    @property
    def n_steps(self):
        return int(round(self.horizon / self.step))


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Samples of C1 and dC1/dt on a uniform grid, with derived columns."""

    t: np.ndarray
    c1: np.ndarray
    c1_dot: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def population(self):
        return np.abs(self.c1) ** 2

    # the trace distance of the optimal pair equals the population
    trace_distance = population

    @property
    def rate_ok(self):
        return np.abs(self.c1) >= AMPLITUDE_ZERO_TOL

    def _ratio(self):
        ok = self.rate_ok
        out = np.full(self.c1.shape, np.nan + 0j)
        out[ok] = self.c1_dot[ok] / self.c1[ok]
        return out

    @property
    def gamma_rate(self):
        return -2 * self._ratio().real

    @property
    def lamb_shift(self):
        return -2 * self._ratio().imag


def solve_volterra(kernel: Kernel, cfg: VolterraConfig, use_lag_table: bool = True) -> TimeSeries:
    """Integrate the amplitude equation on ``[0, cfg.horizon]``.

    With ``use_lag_table`` and a convolution kernel the lags ``F(k h)`` are
    tabulated once; otherwise each row ``F(t_n, t_0..t_n)`` is evaluated on
    the fly.  Only one kernel row is held at a time.
    """
    n = cfg.n_steps
    h = cfg.horizon / n
    if abs(h - cfg.step) > 1e-9 * cfg.step:
        warnings.warn(f"step adjusted from {cfg.step} to {h} to land on the horizon", stacklevel=2)
    t = h * np.arange(n + 1)
    c = np.zeros(n + 1, dtype=complex)
    f = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    if kernel.is_zero:
        c[:] = 1.0
        return TimeSeries(t, c, f, {"step": h})

    lags = kernel.lag(t) if (use_lag_table and kernel.is_convolution) else None

    for m in range(1, n + 1):
        # row m of the kernel, lags t_m - t_j for j = 0..m
        row = lags[m::-1] if lags is not None else kernel(t[m], t[: m + 1])
        w = row[: m] * c[: m]
        known = h * (w.sum() - 0.5 * w[0])  # trapezoid without the unknown endpoint
        diag = 0.5 * h * row[m]
        prev = c[m - 1] + h * f[m - 1]  # explicit predictor
        last = math.inf
        growth = 0
        for _ in range(cfg.max_corrector_iter):
            new = c[m - 1] + 0.5 * h * (f[m - 1] - known - diag * prev)
            upd = abs(new - prev)
            prev = new
            if upd <= cfg.corrector_tol * max(1.0, abs(new)):
                break
            growth = growth + 1 if upd > last else 0
            if growth >= 5:
                raise StepTooLarge(f"corrector diverging at t={t[m]:.6g} with step {h}")
            last = upd
        c[m] = prev
        f[m] = -(known + diag * prev)
    return TimeSeries(t, c, f, {"step": h})


def convergence_order(kernel: Kernel, cfg: VolterraConfig) -> float:
    """Observed order from runs at h, h/2, h/4 on the coarse grid.

    Uses successive differences ``|C_h - C_{h/2}| / |C_{h/2} - C_{h/4}|``.
    Returns ``math.inf`` when the solutions agree exactly (zero kernel).
    """
    runs = [
        solve_volterra(kernel, VolterraConfig(cfg.horizon, cfg.step / 2**k, cfg.scheme)).c1[:: 2**k]
        for k in range(3)
    ]
    e1 = np.max(np.abs(runs[0] - runs[1]))
    e2 = np.max(np.abs(runs[1] - runs[2]))
    if e1 == 0 and e2 == 0:
        return math.inf
    return float(np.log2(e1 / e2))
