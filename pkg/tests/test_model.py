import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from cocyclelab.corpus import random_bernoulli
from cocyclelab.errors import DomainError, PrimitivityError, SpecError
from cocyclelab.linalg2 import PI, Mat2, diag, rot
from cocyclelab.model import (CocycleSpec, Word, certify_null_free, fiber_product,
                              find_null_words, near_kernel_arcs, require_valid,
                              stationary_vector, validate, word_prob, words)

P1 = diag(1.0, 0.0)


def test_validate_reference_spec(rot_spec):
    rep = validate(rot_spec)
    assert rep.ok
    assert rep.advisories["in_M_star"]


def test_validate_negative_determinant_names_letter():
    spec = CocycleSpec.bernoulli([P1, diag(1.0, -1.0)], [0.3, 0.7], [1])
    rep = validate(spec)
    assert not rep.ok
    (bad,) = rep.failures
    assert bad.name == "rank[2]" and "letter 2" in bad.detail
    with pytest.raises(SpecError):
        require_valid(spec)


def test_validate_non_primitive():
    spec = CocycleSpec.markov([P1, rot(0.7)], [[1, 0], [0, 1]], [1])
    rep = validate(spec)
    assert not rep.ok
    assert "PrimitivityError" in rep.get("primitivity").detail


def test_validate_block_length_guard():
    spec = CocycleSpec.bernoulli([diag(2.0, 1.0), P1], [1 - 1e-9, 1e-9], [2])
    assert not validate(spec).get("block_length").passed


@pytest.mark.parametrize("P, q", [
    ([[0.5, 0.5], [0.5, 0.5]], (0.5, 0.5)),
    ([[0.9, 0.2], [0.1, 0.8]], (2 / 3, 1 / 3)),
])
def test_stationary_vector(P, q):
    assert np.allclose(stationary_vector(np.array(P)), q, atol=1e-14)


def test_stationary_vector_identity_fails():
    with pytest.raises(PrimitivityError):
        stationary_vector(np.eye(2))


def test_renewal_words():
    spec = CocycleSpec.markov([P1, rot(0.4)], [[0.5, 0.5], [0.5, 0.5]], [1])
    assert list(words(spec, 1, 1, 1)) == [(Word((1, 1)), 0.5)]
    (w, pr), = words(spec, 1, 1, 3)
    assert w == Word((1, 2, 2, 1)) and pr == pytest.approx(0.125)
    bern = CocycleSpec.bernoulli([P1, rot(0.4)], [0.3, 0.7], [1])
    (w, pr), = words(bern, 1, None, 2)
    assert w == Word((1, 2, 2)) and pr == pytest.approx(0.49)
    with pytest.raises(DomainError):
        list(words(bern, 2, None, 1))


def test_word_parse_and_str():
    w = Word.parse("(1,2,2,1)")
    assert str(w) == "(1,2,2,1)"
    assert w.n == 3 and w.interior == (2, 2)


def test_fiber_product(null_spec):
    assert fiber_product(null_spec, Word((1,))).entries == (1.0, 0.0, 0.0, 1.0)
    assert np.allclose(fiber_product(null_spec, Word((1, 2))).array, [[0, -1], [1, 0]])
    # A1 A2 with A1 = diag(1,0), A2 = rot(pi/2): independent oracle
    oracle = np.diag([1.0, 0.0]) @ np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(fiber_product(null_spec, Word((1, 2, 1))).array, oracle)
    # the null word kills the range e1 of the first letter
    assert np.allclose(fiber_product(null_spec, Word((1, 2, 1))).array @ [1.0, 0.0], 0.0)


def test_find_null_words():
    spec = CocycleSpec.bernoulli([P1, rot(PI / 2)], [0.5, 0.5], [1])
    assert find_null_words(spec, 3) == [Word((1, 2, 1))]
    spec = CocycleSpec.bernoulli([P1, rot(0.3)], [0.5, 0.5], [1])
    assert find_null_words(spec, 6) == []


def test_certify_null_free():
    spec = CocycleSpec.bernoulli([P1, rot(0.3)], [0.5, 0.5], [1])
    assert certify_null_free(spec, 6).certified
    spec = CocycleSpec.bernoulli([P1, rot(PI / 2)], [0.5, 0.5], [1])
    assert not certify_null_free(spec, 6).certified


def test_near_kernel_arcs():
    spec = CocycleSpec.bernoulli([P1, rot(0.3)], [0.5, 0.5], [1])
    arcs = near_kernel_arcs(spec, 0.1)
    assert len(arcs.arcs) == 1
    lo, hi = arcs.arcs[0]
    assert (lo + hi) / 2 == pytest.approx(PI / 2)
    assert arcs.total_length == pytest.approx(2 * math.asin(0.1))
    widths = [near_kernel_arcs(spec, e).total_length for e in (0.1, 0.01, 0.001)]
    assert widths[0] > widths[1] > widths[2] > 0
    assert arcs.total_length <= arcs.C * 0.1


def test_two_kernel_arcs_merge():
    spec = CocycleSpec.bernoulli([P1, Mat2(1.0, 0.01, 0.0, 0.0), rot(0.3)], [0.3, 0.3, 0.4], [1, 2])
    assert len(near_kernel_arcs(spec, 0.1).arcs) == 1
    spec = CocycleSpec.bernoulli([P1, diag(0.0, 1.0), rot(0.3)], [0.3, 0.3, 0.4], [1, 2])
    assert len(near_kernel_arcs(spec, 0.1).arcs) == 2


@seed(21)
@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 5))
def test_word_probabilities_sum_to_block_mass(s, n_sing, n):
    spec = random_bernoulli(np.random.default_rng(s), k=4, n_sing=n_sing)
    q = spec.q0
    for start in spec.sing:
        tot = sum(pr for _, pr in words(spec, start, None, n))
        assert tot == pytest.approx((1 - q) ** n, rel=1e-12)


@seed(22)
@given(st.integers(0, 10_000))
def test_word_prob_is_product(s):
    spec = random_bernoulli(np.random.default_rng(s), k=3, n_sing=1)
    w = Word((1, 2, 3, 3, 1))
    p = spec.p
    assert word_prob(spec, w) == pytest.approx(p[1] * p[2] * p[2] * p[0], rel=1e-14)
