"""Reservoir correlation function F(t, t1) for the Lorentzian cavity.

Two evaluators are provided.  The continuum form (infinite cavity) depends on
``t - t1`` only and is a sum of two exponentials; the finite-cavity form keeps
the two boundary-echo terms and depends on ``t + t1`` as well.  Both accept
numpy arrays and broadcast.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import ValidationError
from .model import DerivedQuantities, ModelParams, derive


class KernelKind(enum.Enum):
    CONTINUUM = "continuum"
    FINITE_CAVITY = "finite_cavity"


def eval_continuum(d: DerivedQuantities, dt):
    dt = np.asarray(dt, dtype=float)
    out = (d.gamma * d.lam / 8) * (np.exp(d.eps0 * dt) + np.exp(d.eps1 * dt))
    return out[()] if out.ndim == 0 else out


def _damped_phase(amplitude, damping, phase):
    # exp(-damping + i*phase) with the modulus and the phase kept apart
    return amplitude * np.exp(-damping) * (np.cos(phase) + 1j * np.sin(phase))


def eval_finite_cavity(d: DerivedQuantities, params: ModelParams, t, t1):
    """Four-term kernel of a cavity of transit time ``params.tau0``."""
    if not math.isfinite(params.tau0):
        raise ValidationError("tau0", "finite-cavity kernel needs a finite tau0; use eval_continuum")
    t = np.asarray(t, dtype=float)
    t1 = np.asarray(t1, dtype=float)
    lam, beta, w0, tau0 = params.lam, params.beta, params.omega0, params.tau0
    a = d.gamma * lam / 8
    u = t - t1
    v = t + t1
    # omega_D - omega0 + omega_f, written without the large omega0 terms
    shift = d.omega_D - params.delta
    echo_phase = w0 * beta * v - 2 * w0 * tau0
    f1 = _damped_phase(-a, lam * np.abs(-beta * v + 2 * tau0 + u), echo_phase + shift * u)
    f2 = _damped_phase(a, lam * np.abs((1 - beta) * u), (shift + w0 * beta) * u)
    f3 = _damped_phase(a, lam * np.abs((1 + beta) * u), (shift - w0 * beta) * u)
    f4 = _damped_phase(-a, lam * np.abs(beta * v - 2 * tau0 + u), -echo_phase + shift * u)
    out = f1 + f2 + f3 + f4
    return out[()] if out.ndim == 0 else out


class Kernel:
    """Callable ``F(t, t1)`` bound to one parameter set.

    ``is_convolution`` tells the Volterra solver that ``F`` depends on
    ``t - t1`` alone, so one table of lags can be reused for every row.
    """

    def __init__(self, params: ModelParams, kind: KernelKind = KernelKind.CONTINUUM):
        self.params = params
        self.kind = KernelKind(kind)
        self.derived = derive(params)
        if self.kind is KernelKind.FINITE_CAVITY and not math.isfinite(params.tau0):
            raise ValidationError("tau0", "finite-cavity kernel needs a finite tau0")

    @property
    def is_convolution(self):
        return self.kind is KernelKind.CONTINUUM

    @property
    def is_zero(self):
        return self.derived.gamma == 0

    def lag(self, dt):
        if not self.is_convolution:
            raise TypeError("finite-cavity kernel is not a function of t - t1 alone")
        return eval_continuum(self.derived, dt)

    def __call__(self, t, t1):
        if self.is_convolution:
            return eval_continuum(self.derived, np.asarray(t, dtype=float) - t1)
        return eval_finite_cavity(self.derived, self.params, t, t1)

    def __repr__(self):
        return f"Kernel({self.params!r}, kind={self.kind.value})"
