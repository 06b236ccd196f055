import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from cocyclelab._kernels import backend_name, get_kernels
from cocyclelab.corpus import markov2, nullword, rot07
from cocyclelab.limitlaws import matrix_log_norms
from cocyclelab.lyapunov import l1_induced, l1_monte_carlo, path_sums
from cocyclelab.sampling import cumulative_tables

NP = get_kernels("numpy")
NB = get_kernels("numba")


def test_backend_env(monkeypatch):
    monkeypatch.setenv("COCYCLELAB_BACKEND", "numpy")
    assert backend_name() == "numpy" and get_kernels() is NP
    monkeypatch.setenv("COCYCLELAB_BACKEND", "fortran")
    with pytest.raises(ValueError):
        backend_name()


@seed(91)
@given(st.integers(0, 10_000))
def test_markov_symbols_parity(s):
    spec = markov2()
    cum_init, cumT = cumulative_tables(spec)
    u = np.random.default_rng(s).random((17, 40))
    a = np.empty(u.shape, dtype=np.int64)
    b = np.empty(u.shape, dtype=np.int64)
    NP.markov_symbols(cum_init, cumT, u, a)
    NB.markov_symbols(cum_init, cumT, u, b)
    assert np.array_equal(a, b)


@seed(92)
@given(st.integers(0, 10_000))
def test_matrix_walk_parity(s):
    rs = np.random.default_rng(s)
    mats = rs.normal(size=(3, 2, 2))
    mats[0] = np.outer(rs.normal(size=2), rs.normal(size=2))
    fn = np.sqrt(np.einsum("kij,kij->k", mats, mats))
    sy = rs.integers(0, 3, size=(9, 30))
    a, b = np.empty(9), np.empty(9)
    NP.matrix_walk(mats, fn, sy, 1e-12, a)
    NB.matrix_walk(mats, fn, sy, 1e-12, b)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("spec", [rot07(), markov2(), nullword()], ids=lambda s: s.name)
def test_estimators_agree_across_backends(monkeypatch, spec):
    out = {}
    for name in ("numpy", "numba"):
        monkeypatch.setenv("COCYCLELAB_BACKEND", name)
        sums, _ = path_sums(spec, 300, 300, 5, "parity")
        out[name] = (sums, l1_monte_carlo(spec, 300, 300, seed=5), l1_induced(spec, 500, seed=5),
                     matrix_log_norms(spec, 100, 64, 5, "parity"))
    (s1, m1, i1, n1), (s2, m2, i2, n2) = out["numpy"], out["numba"]
    assert np.allclose(s1, s2, rtol=1e-10, atol=1e-10)
    assert m1.value == pytest.approx(m2.value, rel=1e-10, abs=1e-12)
    assert i1.value == pytest.approx(i2.value, rel=1e-10, abs=1e-12)
    assert m1.neg_inf_witness == m2.neg_inf_witness
    assert np.allclose(n1, n2, rtol=1e-10)
