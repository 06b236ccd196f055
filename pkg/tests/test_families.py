import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from cocyclelab.errors import DomainError
from cocyclelab.families import (SCAN_COLUMNS, FamilySpec, craig_simon, iterated_winding,
                                 rotation_family, scan, verify_winding, winding_speed,
                                 winding_speed_fd)
from cocyclelab.linalg2 import PI, ProjPoint, diag, rot
from cocyclelab.model import CocycleSpec, Word

LOG2 = math.log(2.0)


def conformal_rotation_l1(t, terms=200):
    """L1 of the conformal spec with its invertible letter rotated by ``t``.

    Each renewal block starts on e1 and the rank-one letter reads off the
    first coordinate of ``2^m R_{mt} e1``, i.e. ``2^m cos(m t)``.
    """
    m = np.arange(1, terms + 1)
    return 0.5 * LOG2 + 0.25 * float(np.sum(0.5 ** m * np.log(np.abs(np.cos(m * t)))))


def rotation_over(mat):
    base = CocycleSpec.bernoulli([diag(1.0, 0.0), mat], [0.5, 0.5], [1])
    return FamilySpec(base, "rotation")


def test_winding_examples():
    x = np.linspace(0, PI, 33, endpoint=False)
    assert np.allclose(winding_speed(rotation_over(diag(1.0, 1.0)), 0.4, 2, x), 1.0)
    rep = verify_winding(rotation_over(diag(2.0, 1.0)), np.linspace(-1, 1, 9), x)
    assert rep.c0_hat == pytest.approx(0.5)
    assert rep.passed


def test_craig_simon_fails_at_e2():
    fam = FamilySpec(kind="craig_simon", a=0.0)
    assert winding_speed(fam, 0.3, 2, ProjPoint(PI / 2)) == 0.0
    rep = verify_winding(fam, np.linspace(-2, 2, 17), PI * np.arange(64) / 64)
    assert not rep.passed
    assert rep.c0_hat == 0.0
    assert rep.witness_point.theta == pytest.approx(PI / 2)
    assert rep.witness_letter == 2


def test_constant_custom_family_fails(rot_spec):
    fam = FamilySpec(rot_spec, "custom", matrix_fn=lambda t: [m.array for m in rot_spec.matrices])
    c0, ok = verify_winding(fam, np.linspace(-1, 1, 5), PI * np.arange(16) / 16)
    assert c0 == pytest.approx(0.0, abs=1e-9) and not ok


def test_singular_letter_rejected(rot_spec):
    with pytest.raises(DomainError):
        winding_speed(FamilySpec(rot_spec), 0.0, 1, 0.3)


@seed(71)
@given(st.floats(-PI, PI), st.floats(0.0, PI))
def test_analytic_speed_matches_fd(t, theta):
    fam = rotation_over(np.array([[1.3, 0.4], [-0.2, 0.9]]))
    fd = winding_speed_fd(fam, t, 2, theta)
    assert winding_speed(fam, t, 2, theta) == pytest.approx(fd, abs=1e-6)


@seed(72)
@given(st.floats(-PI, PI))
def test_rotation_keeps_det_and_singular_letters(t):
    base = CocycleSpec.bernoulli([diag(1.0, 0.0), np.array([[1.3, 0.4], [-0.2, 0.9]])],
                                 [0.4, 0.6], [1])
    spec = rotation_family(base, t)
    assert spec.matrices[0] is base.matrices[0]
    assert spec.matrices[1].det == pytest.approx(base.matrices[1].det, rel=1e-12)


def test_rotation_domain(rot_spec):
    with pytest.raises(DomainError):
        rotation_family(rot_spec, 4.0)
    fam = FamilySpec(rot_spec)
    assert fam.singular_constant(np.linspace(-PI, PI, 11))


def test_craig_simon_matrices():
    spec = craig_simon(0.5, 0.2)
    assert spec.matrices[1].entries == pytest.approx((0.3, -1.0, 1.0, 0.0))
    with pytest.raises(DomainError):
        craig_simon(0.0, 0.0, p=1.5)


def test_scan_matches_conformal_oracle(conformal_spec):
    fam = FamilySpec(conformal_spec)
    ts = [-0.9, 0.3, 1.0, 2.2]
    rows = scan(fam, ts, null_len=3)
    for row in rows:
        assert row.error is None
        assert abs(row.estimate.value - conformal_rotation_l1(row.t)) <= 1e-9
    assert rows[1].estimate.value == pytest.approx(0.269926, abs=1e-6)


def test_scan_flags_craig_null_words():
    fam = FamilySpec(kind="craig_simon", a=0.0)
    rows = scan(fam, [1.0, -1.0, 0.5, 0.0], null_len=4)
    assert [r.t for r in rows] == [-1.0, 0.0, 0.5, 1.0]
    flagged = {r.t: r.witness for r in rows if r.structural}
    assert flagged == {-1.0: Word((1, 2, 2, 1)), 0.0: Word((1, 2, 1)), 1.0: Word((1, 2, 2, 1))}
    for r in rows:
        assert r.estimate.is_neg_inf == r.structural
    assert set(rows[0].record()) == set(SCAN_COLUMNS)


def test_scan_single_point_and_errors(rot_spec):
    rows = scan(FamilySpec(rot_spec), [0.0])
    assert len(rows) == 1 and math.isfinite(rows[0].estimate.value)
    with pytest.raises(ValueError):
        scan(FamilySpec(rot_spec), [])
    with pytest.raises(ValueError):
        scan(FamilySpec(rot_spec), [0.0], method="other")
    bad = scan(FamilySpec(rot_spec, t_lo=-10, t_hi=10), [5.0])
    assert bad[0].estimate is None and "DomainError" in bad[0].error


def test_scan_deterministic_across_threads(rot_spec):
    fam = FamilySpec(rot_spec)
    ts = np.linspace(-1, 1, 9)
    kw = {"method": "mc_direct", "method_params": {"n": 200, "samples": 64}, "seed": 3}
    a = [r.record() for r in scan(fam, ts, threads=1, **kw)]
    b = [r.record() for r in scan(fam, ts, threads=4, **kw)]
    assert a == b


def test_iterated_winding_positive():
    fam = rotation_over(rot(0.3))
    c1 = iterated_winding(fam, np.linspace(-1, 1, 5), PI * np.arange(16) / 16, max_len=2)
    assert c1 == pytest.approx(1.0, abs=1e-6)
