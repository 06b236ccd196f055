import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cocyclelab.errors import RankError, ZeroMatrixError
from cocyclelab.linalg2 import (PI, Mat2, MatrixClass, ProjPoint, act, apply_normalized,
                                canonical_angle, classify, diag, gain, opnorm,
                                projective_action, range_kernel, rot, svd2, wedge)

entries = arrays(np.float64, (2, 2), elements=st.floats(-10, 10, allow_nan=False))
angles = st.floats(-20.0, 20.0, allow_nan=False)


@pytest.mark.parametrize("m, cls", [
    ([[1, 0], [0, 0]], MatrixClass.RANK1),
    ([[0, -1], [1, 0]], MatrixClass.INV_POS),
    ([[2, 0], [0, -1]], MatrixClass.INV_NEG),
    ([[0, 0], [0, 0]], MatrixClass.RANK0),
])
def test_classify(m, cls):
    assert classify(Mat2.from_array(m)) is cls


@pytest.mark.parametrize("m, r, k", [
    ([[1, 0], [0, 0]], 0.0, PI / 2),
    ([[1, 1], [1, 1]], PI / 4, 3 * PI / 4),
    ([[0, 0], [1, 0]], PI / 2, PI / 2),
])
def test_range_kernel(m, r, k):
    rng_, ker = range_kernel(Mat2.from_array(m))
    assert rng_.theta == pytest.approx(r, abs=1e-15)
    assert ker.theta == pytest.approx(k, abs=1e-15)


def test_range_kernel_rejects_invertible():
    with pytest.raises(RankError):
        range_kernel(rot(0.3))


def test_projective_action_examples():
    assert projective_action(rot(PI / 2), ProjPoint(0.0)).theta == pytest.approx(PI / 2)
    P = diag(1.0, 0.0)
    assert projective_action(P, ProjPoint(PI / 4)).theta == 0.0
    # the kernel is sent to the range too
    assert projective_action(P, ProjPoint(PI / 2)).theta == 0.0
    with pytest.raises(ZeroMatrixError):
        projective_action(Mat2(0, 0, 0, 0), ProjPoint(0.0))


def test_apply_normalized():
    x, g = apply_normalized(diag(2.0, 2.0), ProjPoint(1.1))
    assert x.theta == pytest.approx(1.1) and g == pytest.approx(math.log(2))
    x, g = apply_normalized(diag(1.0, 0.0), ProjPoint(0.0))
    assert (x.theta, g) == (0.0, 0.0)
    x, g = apply_normalized(diag(1.0, 0.0), ProjPoint(PI / 2))
    assert x.theta == 0.0 and g == -math.inf


def test_wedge():
    assert wedge((1, 0), (0, 1)) == 1
    assert wedge((1, 0), (1, 0)) == 0
    assert wedge((2, 1), (1, 3)) == 5


@seed(11)
@given(entries)
def test_svd2_matches_numpy(m):
    A = Mat2.from_array(m)
    s = svd2(A)
    ref = np.linalg.svd(m, compute_uv=False)
    scale = max(1.0, ref[0])
    assert s.sigma1 == pytest.approx(ref[0], abs=1e-12 * scale)
    assert s.sigma2 == pytest.approx(ref[1], abs=1e-12 * scale)
    assert A.norm == pytest.approx(opnorm(m), abs=1e-12 * scale)


@seed(12)
@given(angles)
def test_canonical_angle_range(t):
    c = canonical_angle(t)
    assert 0.0 <= c < PI
    assert math.sin(c - t) == pytest.approx(0.0, abs=1e-9)


@seed(13)
@given(entries, angles)
def test_vectorized_action_agrees_with_scalar(m, t):
    A = Mat2.from_array(m)
    cls = classify(A)
    if cls is not MatrixClass.INV_POS and cls is not MatrixClass.INV_NEG:
        return
    x = projective_action(A, ProjPoint(canonical_angle(t)))
    y = act(A.array, np.array([t]))[0]
    assert ProjPoint(canonical_angle(y)).dist(x) < 1e-9
    v = np.array([math.cos(t), math.sin(t)])
    assert gain(A.array, np.array([t]))[0] == pytest.approx(np.linalg.norm(m @ v), rel=1e-12)


@seed(14)
@given(entries, entries)
def test_matmul_and_det(a, b):
    A, B = Mat2.from_array(a), Mat2.from_array(b)
    assert np.allclose((A @ B).array, a @ b, atol=1e-12)
    assert (A @ B).det == pytest.approx(A.det * B.det, abs=1e-9 * (1 + abs(A.det * B.det)))


def test_rotation_is_orthogonal():
    R = rot(0.37)
    assert np.allclose(R.array @ R.array.T, np.eye(2))
    assert R.det == pytest.approx(1.0)
