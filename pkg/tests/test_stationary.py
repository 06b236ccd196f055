import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from cocyclelab.corpus import random_bernoulli
from cocyclelab.linalg2 import PI, diag, rot
from cocyclelab.model import CocycleSpec
from cocyclelab.stationary import (Observable, apply_Q, apply_Qn, check_diagram,
                                   check_stationarity, ergodicity_decay, grid, markov_tail,
                                   merge_atoms, perturb_largest, stationary_measure,
                                   verify_witnesses)

ONE = Observable.constant(1.0)
COS2 = Observable.of_angle(lambda t: np.cos(2 * t), 1.0, "cos2")


def lipschitz(rs):
    a, b, c = rs.normal(size=3)
    return Observable.of_angle(lambda t: a * np.cos(2 * t) + b * np.sin(2 * t) + c * np.cos(4 * t),
                               abs(a) + abs(b) + abs(c), "trig")


def test_rot_measure_atoms(rot_spec):
    m = stationary_measure(rot_spec, 4)
    order = np.argsort(m.weight)[::-1]
    n = np.arange(5)
    assert np.allclose(m.theta[order], np.mod(0.7 * n, PI), atol=1e-14)
    assert np.allclose(m.weight[order], 0.3 * 0.7 ** n, rtol=1e-14)
    assert m.covered_mass == pytest.approx(1 - 0.7 ** 5, abs=1e-15)
    assert m.tail_mass == pytest.approx(0.7 ** 5, abs=1e-15)
    assert verify_witnesses(m) < 1e-12


def test_conformal_measure_collapses(conformal_spec):
    m = stationary_measure(conformal_spec, 10)
    assert np.all(m.theta == 0.0)
    merged = merge_atoms(m)
    assert len(merged) == 1
    assert merged.weight[0] == pytest.approx(1 - m.tail_mass, abs=1e-15)


def test_merge_atoms_example(rot_spec):
    m = stationary_measure(rot_spec, 1)
    m = dataclasses.replace(m, theta=np.array([0.1, 0.1 + 1e-13]), weight=np.array([0.2, 0.3]))
    merged = merge_atoms(m, 1e-12)
    assert len(merged) == 1 and merged.weight[0] == pytest.approx(0.5)
    assert len(merge_atoms(stationary_measure(rot_spec, 6), 0.0)) == 7


def test_markov_masses_converge():
    spec = CocycleSpec.markov([diag(1.0, 0.0), rot(0.7)], [[0.5, 0.5], [0.5, 0.5]], [1])
    prev = np.zeros(2)
    for d in (2, 5, 10, 20, 40):
        m = stationary_measure(spec, d)
        mass = m.symbol_masses()
        assert np.all(mass >= prev - 1e-15)
        assert np.allclose(mass + markov_tail(spec, d), spec.stat, atol=1e-12)
        prev = mass
    assert np.allclose(prev, [0.5, 0.5], atol=1e-10)


def test_apply_Q_constants(rot_spec):
    th = grid(16)
    assert np.allclose(apply_Q(rot_spec, ONE, th), 1.0, atol=0)
    assert np.allclose(apply_Q(rot_spec, ONE, th, part="inv"), 0.7, atol=1e-15)
    assert np.allclose(apply_Qn(rot_spec, ONE, 3, th, method="brute"), 1.0)
    assert apply_Qn(rot_spec, COS2, 0, 0.3) == pytest.approx(math.cos(0.6))


def test_conformal_angle_observable(conformal_spec):
    theta = Observable.of_angle(lambda t: t, PI, "theta")
    assert apply_Q(conformal_spec, theta, 0.0) == pytest.approx(0.0)


def test_stationarity_and_negative_control(rot_spec):
    m = stationary_measure(rot_spec, 20)
    rep = check_stationarity(rot_spec, m, [ONE, COS2])
    assert rep.passed
    assert rep.rows[1].discrepancy <= 2 * 0.7 ** 21 + 1e-10
    assert not check_stationarity(rot_spec, perturb_largest(m), [ONE, COS2]).passed


def test_markov_stationarity(markov_spec):
    m = stationary_measure(markov_spec, 120)
    assert check_stationarity(markov_spec, m, [ONE, COS2]).passed


def test_decay_rate(rot_spec):
    phi = lipschitz(np.random.default_rng(1))
    fit = ergodicity_decay(rot_spec, phi, 0.2, 1.9, n_max=10)
    assert np.all(fit.gap <= 2 * phi.sup * 0.7 ** fit.n + 1e-12)
    assert fit.a > 0


@seed(41)
@given(st.integers(0, 10_000))
def test_decomposition_matches_brute(s):
    rs = np.random.default_rng(s)
    spec = random_bernoulli(rs, k=3, n_sing=1)
    phi = lipschitz(rs)
    th = grid(8)
    for n in (1, 2, 4):
        a = apply_Qn(spec, phi, n, th, method="brute")
        b = apply_Qn(spec, phi, n, th, method="decomposition")
        assert np.allclose(a, b, atol=1e-12)


@seed(42)
@given(st.integers(0, 10_000))
def test_diagram_commutes(s):
    rs = np.random.default_rng(s)
    spec = random_bernoulli(rs, k=3, n_sing=int(rs.integers(1, 3)))
    a, b = rs.normal(size=2)
    phi = Observable(lambda sym, t: a * sym * np.cos(2 * t) + b * np.sin(2 * t))
    assert check_diagram(spec, phi, grid(64)) <= 1e-12
