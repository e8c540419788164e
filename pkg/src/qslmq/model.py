"""Physical parameters of the driven moving qubit and the symbols derived from them.

Frequencies are in units of the decay rate ``gamma`` and times in units of
``1/gamma``.  The drive frequency is never an input: it is ``omega0 - delta``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import ValidationError

#: Qubit transition frequency used throughout the figure reproductions.
OMEGA0_DEFAULT = 1.53e9


class Regime(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ModelParams:
    """Inputs of the model.

    ``lam`` is the Lorentzian width (``lambda`` is a keyword), ``omega_drive``
    the classical driving strength, ``tau0`` the cavity transit time
    (``math.inf`` selects the continuum limit) and ``tau`` the evolution time
    at which the speed-limit and non-Markovianity figures are evaluated.
    """

    omega0: float = OMEGA0_DEFAULT
    gamma: float = 1.0
    lam: float = 3.0
    omega_drive: float = 0.0
    delta: float = 0.0
    beta: float = 0.0
    tau0: float = math.inf
    tau: float = 1.0

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in ("omega0", "gamma", "lam", "omega_drive", "delta", "beta", "tau"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(name, "must be finite")
        # gamma == 0 is admitted as the decoupled limit (no reservoir coupling)
        if self.gamma < 0:
            raise ValidationError("gamma", f"must be >= 0, got {self.gamma}")
        if self.lam <= 0:
            raise ValidationError("lambda", f"must be > 0, got {self.lam}")
        if self.omega0 <= 0:
            raise ValidationError("omega0", f"must be > 0, got {self.omega0}")
        if self.omega_drive < 0:
            raise ValidationError("omega_drive", f"must be >= 0, got {self.omega_drive}")
        if not 0 <= self.beta < 1:
            raise ValidationError("beta", f"must satisfy 0 <= beta < 1, got {self.beta}")
        if math.isnan(self.tau0) or self.tau0 <= 0:
            raise ValidationError("tau0", f"must be > 0 or inf, got {self.tau0}")
        if self.tau <= 0:
            raise ValidationError("tau", f"must be > 0, got {self.tau}")

    @property
    def omega_f(self):
        return self.omega0 - self.delta

    def replace(self, **changes) -> ModelParams:
        return replace(self, **changes)

    def scaled(self, k: float) -> ModelParams:
        """Same physics in a unit system where every rate is ``k`` times larger."""
        return replace(
            self,
            omega0=self.omega0 * k,
            gamma=self.gamma * k,
            lam=self.lam * k,
            omega_drive=self.omega_drive * k,
            delta=self.delta * k,
            tau0=self.tau0 / k,
            tau=self.tau / k,
        )


@dataclass(frozen=True)
class DerivedQuantities:
    gamma: float
    lam: float
    omega_f: float
    omega_D: float
    mu: complex
    eta: complex
    eps0: complex
    eps1: complex
    cubic_c2: complex
    cubic_c1: complex
    cubic_c0: complex

    @property
    def kernel_weight(self):
        """F(t, t) of the continuum kernel, gamma*lambda/4."""
        return self.gamma * self.lam / 4

    @property
    def cubic(self):
        return (1.0, self.cubic_c2, self.cubic_c1, self.cubic_c0)


def derive(params: ModelParams) -> DerivedQuantities:
    params.validate()
    gamma, lam, beta = params.gamma, params.lam, params.beta
    omega_D = math.hypot(params.delta, 2 * params.omega_drive)
    mu = complex(lam, params.omega0)
    # omega0 - omega_D - omega_f == delta - omega_D; avoids cancelling ~1e9 terms
    eta = complex(lam, params.delta - omega_D)
    mu_beta = complex(lam * beta, params.omega0 * beta)
    eps0 = mu_beta - eta
    eps1 = -eta - mu_beta
    eps_sum = -2 * eta
    return DerivedQuantities(
        gamma=gamma,
        lam=lam,
        omega_f=params.omega_f,
        omega_D=omega_D,
        mu=mu,
        eta=eta,
        eps0=eps0,
        eps1=eps1,
        cubic_c2=-eps_sum,
        cubic_c1=eps0 * eps1 + gamma * lam / 4,
        cubic_c0=-gamma * lam * eps_sum / 8,
    )


def classify_regime(params: ModelParams) -> Regime:
    if params.lam > 2 * params.gamma:
        return Regime.WEAK
    if params.lam < 2 * params.gamma:
        return Regime.STRONG
    return Regime.BOUNDARY
