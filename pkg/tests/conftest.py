import cmath
import math

import numpy as np
import pytest

from qslmq import ModelParams

ACCEPTANCE_LINES = []


def undriven_c1(lam, gamma, t):
    """Two-root closed form at zero drive, detuning and velocity."""
    d = cmath.sqrt(lam * lam - gamma * lam)
    return cmath.exp(-lam * t / 2) * (cmath.cosh(d * t / 2) + lam / d * cmath.sinh(d * t / 2))


def trapezoid_abs_rate(sol, tau, n=1_000_001):
    from qslmq.amplitude import population_rate_at

    t = np.linspace(0, tau, n)
    return float(np.trapezoid(np.abs(population_rate_at(sol, t)), t))


@pytest.fixture
def fig3b():
    """Strong-coupling, driven, moving qubit (lambda=0.01, Omega=5, beta=1e-9)."""
    return ModelParams(lam=0.01, omega_drive=5.0, beta=1e-9)


@pytest.fixture
def record_acceptance():
    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
