import math

import numpy as np
import pytest

from qslmq import BracketInvalid, ModelParams, SweepSpec, ValidationError, find_critical_omega, run_sweep, run_trace
from qslmq.sweep import (
    SWEEP_COLUMNS,
    TRACE_COLUMNS,
    read_sweep,
    sweep_filename,
    sweep_point,
    trace_filename,
    write_sweep,
    write_trace,
)

BETAS = (0.0, 5e-10, 1e-9, 1.5e-9)


def small_spec(**kw):
    kw.setdefault("omega_count", 31)
    kw.setdefault("lambda_list", (3.0, 0.01))
    kw.setdefault("beta_list", (0.0, 1e-9))
    return SweepSpec(**kw)


def test_trace_columns_and_weak_positivity():
    ts = run_trace(ModelParams(lam=3.0), 10.0, 1001)
    assert ts.t[0] == 0 and ts.t[-1] == 10
    assert np.all(ts.gamma_rate[1:] > 0)
    assert ts.meta["rate_failures"] == 0


def test_trace_strong_negative_rate():
    ts = run_trace(ModelParams(lam=0.01), 200.0, 20001)
    assert np.nanmin(ts.gamma_rate[1:]) < 0


def _first_lobe_peak(ts):
    g = ts.gamma_rate
    neg = np.nonzero(g[1:] < 0)[0]
    end = neg[0] + 1 if len(neg) else len(g)
    return np.nanmax(np.abs(g[:end]))


def test_faster_qubit_smaller_rate():
    peaks = [_first_lobe_peak(run_trace(ModelParams(lam=0.01, beta=b), 200.0, 20001)) for b in BETAS]
    assert all(a > b for a, b in zip(peaks, peaks[1:]))


def test_trace_marks_amplitude_zeros():
    # sample exactly at a zero of the real undriven amplitude
    from scipy.optimize import brentq

    from qslmq import c1_at, solve

    sol = solve(ModelParams(lam=0.01))
    t0 = brentq(lambda t: c1_at(sol, t).real, 20, 40, xtol=1e-15)
    ts = run_trace(ModelParams(lam=0.01), t0, 3)
    assert ts.meta["rate_failures"] == 1
    assert math.isnan(ts.gamma_rate[-1])


def test_sweep_shapes_and_order():
    spec = small_spec()
    res = run_sweep(spec, workers=1)
    assert list(res) == [(3.0, 0.0), (3.0, 1e-9), (0.01, 0.0), (0.01, 1e-9)]
    for rows in res.values():
        assert [r.omega_over_gamma for r in rows] == pytest.approx(list(np.linspace(0, 30, 31)))
        assert all(r.ok for r in rows)


def test_parallel_equals_serial():
    spec = small_spec(omega_count=17)
    assert run_sweep(spec, workers=2) == run_sweep(spec, workers=1)


def test_sweep_records_failures_instead_of_raising():
    row = sweep_point(ModelParams(gamma=0.0, omega_drive=2.0))
    assert row.status == "skipped: NoEvolution"
    assert math.isnan(row.qsl_ratio)
    row = sweep_point(ModelParams(lam=1.0))
    assert row.status == "skipped: NearDegenerateRoots"


def test_weak_curves_flat_then_falling():
    res = run_sweep(small_spec(omega_count=121, lambda_list=(3.0, 5.0, 10.0), beta_list=(0.0,)), workers=1)
    for (lam, _), rows in res.items():
        oc = find_critical_omega(ModelParams(lam=lam))
        below = [r for r in rows if r.omega_over_gamma < oc]
        above = [r for r in rows if r.omega_over_gamma > oc + 0.5]
        assert below and above
        assert all(abs(r.qsl_ratio - 1) <= 1e-6 for r in below)
        assert all(r.qsl_ratio < 1 for r in above)


def test_strong_curve_drops_then_oscillates():
    rows = run_sweep(small_spec(omega_count=301, lambda_list=(0.01,), beta_list=(0.0,)), workers=1)[(0.01, 0.0)]
    q = np.array([r.qsl_ratio for r in rows])
    assert q[0] == pytest.approx(1.0, abs=1e-9)
    assert q.min() < 0.2
    dq = np.diff(q[q < 0.99])
    turns = np.count_nonzero(np.sign(dq[1:]) != np.sign(dq[:-1]))
    assert turns >= 4


def test_critical_omega_ordering_with_width():
    a = find_critical_omega(ModelParams(lam=3.0))
    b = find_critical_omega(ModelParams(lam=10.0))
    assert a < b


def test_critical_omega_resolution():
    p = ModelParams(lam=3.0)
    oc = find_critical_omega(p)
    assert find_critical_omega(p, (oc - 0.01, oc + 0.01), resolution=1e-6) == pytest.approx(oc, abs=1e-4)


@pytest.mark.parametrize("bracket", [(0.0, 2.0), (10.0, 30.0), (5.0, 1.0), (-1.0, 3.0)])
def test_critical_bracket_invalid(bracket):
    with pytest.raises(BracketInvalid):
        find_critical_omega(ModelParams(lam=3.0), bracket)


def test_spec_validation():
    with pytest.raises(ValidationError):
        SweepSpec(omega_count=1)
    with pytest.raises(ValidationError):
        SweepSpec(omega_start=-1.0)
    with pytest.raises(ValidationError):
        SweepSpec(lambda_list=(3.0, 0.0))
    with pytest.raises(ValidationError):
        SweepSpec(beta_list=(0.0, 1.0))


def test_default_spec():
    spec = SweepSpec()
    assert spec.omega_count == 601 and spec.omega_stop == 30
    assert spec.beta_list == BETAS
    assert spec.lambda_list == (3.0, 5.0, 10.0, 0.01, 0.05, 0.1)


def test_csv_roundtrip_and_format(tmp_path):
    res = run_sweep(small_spec(), workers=1)
    paths = write_sweep(res, tmp_path)
    assert [p.name for p in paths] == [sweep_filename(l, b) for l, b in res]
    assert paths[1].name == "sweep_lambda3_beta1e-09.csv"
    text = paths[0].read_text().splitlines()
    assert text[0] == ",".join(SWEEP_COLUMNS)
    back = read_sweep(paths[2])
    assert back == res[(0.01, 0.0)]


def test_csv_deterministic(tmp_path):
    spec = small_spec(omega_count=11)
    a = [p.read_bytes() for p in write_sweep(run_sweep(spec, workers=1), tmp_path / "a")]
    b = [p.read_bytes() for p in write_sweep(run_sweep(spec, workers=2), tmp_path / "b")]
    assert a == b


def test_trace_csv(tmp_path):
    p = ModelParams(lam=0.01, omega_drive=5.0, beta=1e-9)
    path = write_trace(run_trace(p, 1.0, 11), tmp_path / trace_filename(p))
    lines = path.read_text().splitlines()
    assert path.name == "trace_lambda0.01_beta1e-09_omega5.csv"
    assert lines[0] == ",".join(TRACE_COLUMNS)
    assert len(lines) == 12
    assert lines[1].startswith("0,1,")
