"""Exact dynamics, speed-limit ratio and non-Markovianity of a driven moving qubit
in a leaky Lorentzian cavity."""
from .amplitude import (
    AmplitudeSolution,
    QubitState,
    c1_at,
    c1_dot_at,
    density_matrix_at,
    population_at,
    population_rate_at,
    rates_at,
    solve,
    solve_cubic,
)
from .errors import (
    AmplitudeZero,
    BracketInvalid,
    NearDegenerateRoots,
    NoEvolution,
    QslmqError,
    QuadratureFailure,
    StepTooLarge,
    ValidationError,
)
from .kernel import Kernel, KernelKind, eval_continuum, eval_finite_cavity
from .measures import EvolutionMetrics, metrics, non_markovianity, path_integral, qsl_ratio
from .model import DerivedQuantities, ModelParams, Regime, classify_regime, derive
from .oracle import TimeSeries, VolterraConfig, convergence_order, solve_volterra
from .sweep import SweepRow, SweepSpec, find_critical_omega, run_sweep, run_trace

__version__ = "0.1.0"
