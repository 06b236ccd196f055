import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from cocyclelab.corpus import binomial_surrogate
from cocyclelab.errors import DegenerateVariance, DomainError
from cocyclelab.limitlaws import (clt_experiment, ldt_experiment, truncate_observable,
                                  variance_empirical, variance_gl, variance_sensitivity,
                                  wilson)
from cocyclelab.lyapunov import reference_l1
from cocyclelab.stationary import Observable, step_observable

LOG2 = math.log(2.0)


def test_conformal_gl_exact(conformal_spec):
    # increments are i.i.d. 0 or log 2 with probability 1/2 each
    oracle = 0.5 * 0.5 * LOG2 ** 2
    res = variance_gl(conformal_spec)
    assert abs(res.sigma2 - oracle) <= 1e-9
    assert res.residual <= 1e-12
    assert not res.clamped


def test_gl_insensitive_to_truncation(rot_spec):
    vals = variance_sensitivity(rot_spec, Ns=(20, 40))
    assert vals[20.0] == pytest.approx(vals[40.0], rel=1e-6)
    assert vals[40.0] > 0


def test_binomial_surrogate_small_positive():
    res = variance_gl(binomial_surrogate())
    assert 0 < res.sigma2 < 0.01
    assert res.sigma2 == pytest.approx(0.01 * 0.99 * LOG2 ** 2, rel=0.05)


def test_gl_rejects_markov(markov_spec):
    with pytest.raises(DomainError):
        variance_gl(markov_spec)


@seed(61)
@given(st.floats(0.5, 50.0), st.floats(-100.0, 100.0, allow_nan=False))
def test_truncation_is_max(N, v):
    phi = Observable(lambda s, t: np.full(np.shape(t), v), sup=abs(v))
    tr = truncate_observable(phi, N)
    out = tr(np.array([1]), np.array([0.3]))[0]
    assert out == max(v, -N)
    assert out >= -N


def test_truncation_of_step_observable(conformal_spec):
    tr = truncate_observable(step_observable(conformal_spec), 5.0)
    # letter 1 kills e2, so log |A1 e2| is -inf before truncation
    assert tr(np.array([1]), np.array([math.pi / 2]))[0] == -5.0
    with pytest.raises(ValueError):
        truncate_observable(step_observable(conformal_spec), 0.0)


def test_wilson_contains_estimate():
    lo, hi = wilson(30, 400)
    assert lo < 30 / 400 < hi
    assert wilson(0, 100)[0] == 0.0
    assert wilson(0, 0) == (0.0, 1.0)


def test_ldt_huge_epsilon_is_vacuous(rot_spec):
    rep = ldt_experiment(rot_spec, 0.3, 100.0, [10, 20], 64, seed=1)
    assert rep.frequencies == [0.0, 0.0]
    assert rep.vacuous and rep.passed


def test_ldt_schedule_and_reference(rot_spec):
    with pytest.raises(ValueError):
        ldt_experiment(rot_spec, 0.3, 0.05, [20, 10], 64, seed=1)
    with pytest.raises(DomainError):
        ldt_experiment(rot_spec, -math.inf, 0.05, [10, 20], 64, seed=1)


def test_ldt_frequencies_in_unit_interval(conformal_spec):
    rep = ldt_experiment(conformal_spec, 0.5 * LOG2, 0.05, [50, 100, 200], 512, seed=2)
    assert all(0.0 <= f <= 1.0 for f in rep.frequencies)
    assert rep.frequencies[-1] < rep.frequencies[0]


def test_clt_conformal_and_negative_control(conformal_spec):
    rep = clt_experiment(conformal_spec, 500, 1000, seed=3)
    assert 0.0 <= rep.ks <= 1.0
    assert rep.sigma_used == pytest.approx(0.5 * LOG2, rel=1e-9)
    bad = clt_experiment(conformal_spec, 500, 1000, seed=3, sigma_scale=0.5)
    assert bad.ks > 0.1 and not bad.passed


def test_clt_degenerate_sigma(rot_spec):
    with pytest.raises(DegenerateVariance):
        clt_experiment(rot_spec, 10, 16, sigma_source=1e-9, L1_ref=0.2)


def test_clt_null_word_rejected(null_spec):
    with pytest.raises(DomainError):
        clt_experiment(null_spec, 10, 16, sigma_source=1.0)


def test_empirical_variance(rot_spec, conformal_spec):
    est = variance_empirical(conformal_spec, 400, 800, 0.5 * LOG2, seed=4)
    assert est.sigma2 >= 0
    assert abs(est.sigma2 - 0.25 * LOG2 ** 2) <= 4 * est.std_error
    gl = variance_gl(rot_spec).sigma2
    emp = variance_empirical(rot_spec, 1000, 1000, reference_l1(rot_spec).value, seed=5)
    assert abs(emp.sigma2 - gl) / gl <= 0.15


def test_matrix_mode_runs(rot_spec):
    rep = clt_experiment(rot_spec, 200, 256, seed=6, mode="matrix")
    assert np.isfinite(rep.values).all()
    with pytest.raises(ValueError):
        clt_experiment(rot_spec, 200, 256, seed=6, mode="other")
