import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qslmq import ModelParams, Regime, ValidationError, classify_regime, derive


def test_derive_zero_drive_zero_velocity():
    d = derive(ModelParams(lam=3.0, omega_drive=0.0, beta=0.0))
    assert d.omega_D == 0
    assert d.omega_f == 1.53e9
    assert d.eta == 3 + 0j
    assert d.eps0 == d.eps1 == -3 + 0j


def test_derive_driven_strong_coupling():
    d = derive(ModelParams(lam=0.01, omega_drive=1.0))
    assert d.omega_D == 2.0
    assert d.eta == pytest.approx(0.01 - 2j, abs=1e-15)
    assert d.eps0 == pytest.approx(-0.01 + 2j, abs=1e-15)
    assert d.eps1 == pytest.approx(-0.01 + 2j, abs=1e-15)


def test_derive_moving_qubit():
    d = derive(ModelParams(lam=3.0, beta=1e-9))
    assert d.mu * 1e-9 == pytest.approx(3e-9 + 1.53j, rel=1e-12)
    assert d.eps0 == pytest.approx(-3 + 1.53j, abs=1e-8)
    assert d.eps1 == pytest.approx(-3 - 1.53j, abs=1e-8)


def test_cubic_coefficients():
    d = derive(ModelParams(lam=0.7, omega_drive=2.0, beta=1e-9, delta=1.5))
    s = d.eps0 + d.eps1
    assert d.cubic_c2 == pytest.approx(-s)
    assert d.cubic_c1 == pytest.approx(d.eps0 * d.eps1 + 0.7 / 4)
    assert d.cubic_c0 == pytest.approx(-0.7 * s / 8)


@pytest.mark.parametrize(
    "field, value",
    [("beta", 1.0), ("beta", 1.5), ("beta", -0.1), ("lam", 0.0), ("lam", -1.0), ("gamma", -1.0), ("tau", 0.0), ("tau0", 0.0)],
)
def test_invalid_params_name_the_field(field, value):
    with pytest.raises(ValidationError) as err:
        ModelParams(**{field: value})
    assert err.value.field == ("lambda" if field == "lam" else field)


def test_infinite_tau0_is_continuum():
    assert ModelParams(tau0=math.inf).tau0 == math.inf


@pytest.mark.parametrize("lam, regime", [(3.0, Regime.WEAK), (0.01, Regime.STRONG), (2.0, Regime.BOUNDARY)])
def test_classify_regime(lam, regime):
    assert classify_regime(ModelParams(lam=lam)) is regime


params = st.builds(
    ModelParams,
    lam=st.floats(0.005, 10),
    omega_drive=st.floats(0, 30),
    beta=st.floats(0, 2e-9),
    delta=st.floats(-5, 5),
)


@given(params)
def test_eps_sum_is_minus_two_eta(p):
    d = derive(p)
    # identity up to the rounding of the two subtractions
    ulp = np.finfo(float).eps * (abs(d.eta) + abs(d.mu * p.beta))
    assert abs(d.eps0 + d.eps1 + 2 * d.eta) <= 4 * ulp


@given(params)
def test_real_part_of_eta_is_lambda(p):
    assert derive(p).eta.real == p.lam


@settings(max_examples=30)
@given(params, st.floats(0.1, 10))
def test_derived_frequencies_scale(p, k):
    a, b = derive(p), derive(p.scaled(k))
    for name in ("mu", "eta", "eps0", "eps1"):
        assert getattr(b, name) == pytest.approx(k * getattr(a, name), rel=1e-12)
