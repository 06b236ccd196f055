"""Time the numba kernels against the numpy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--lanes 2048] [--steps 2000] [--repeat 3]

The first numba call includes JIT compilation and is reported separately.
Both backends are fed identical inputs and their outputs are compared.
"""

import argparse
import time

import numpy as np

from cocyclelab._kernels import get_kernels
from cocyclelab.corpus import markov2, rot07
from cocyclelab.sampling import cumulative_tables


def _vector_args(spec, lanes, steps, rng):
    mats = np.ascontiguousarray(spec.mats)
    sing = np.ascontiguousarray(spec.sing_mask)
    rvec = np.stack([np.array([np.cos(t), np.sin(t)]) for t in spec.range_theta])
    norms = np.sqrt(np.einsum("kij,kij->k", mats, mats))
    u = rng.random((lanes, steps))
    sy = (u[:, :, None] >= np.cumsum(spec.stat)[None, None, :]).sum(axis=2)
    sy = np.minimum(sy, spec.k - 1).astype(np.int64)
    return mats, sing, rvec, norms, sy


def bench_vector_walk(kern, args, burn=50):
    mats, sing, rvec, norms, sy = args
    m = sy.shape[0]
    sums, hit, ls = np.empty(m), np.empty(m, dtype=np.int64), np.empty(m, dtype=np.int64)
    # lanes with no singular letter in the burn-in start from the first range
    fallback = int(np.flatnonzero(sing)[0])
    kern.vector_walk(mats, sing, rvec, norms, sy, burn, fallback, 1e-12, sums, hit, ls)
    return sums


def bench_matrix_walk(kern, args):
    mats, _, _, norms, sy = args
    out = np.empty(sy.shape[0])
    kern.matrix_walk(mats, norms, sy, 1e-12, out)
    return out


def bench_markov_symbols(kern, tables, u):
    out = np.empty(u.shape, dtype=np.int64)
    kern.markov_symbols(tables[0], tables[1], u, out)
    return out


def timed(fn, repeat):
    best, res = np.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        best = min(best, time.perf_counter() - t0)
    return best, res


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lanes", type=int, default=2048)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    vargs = _vector_args(rot07(), args.lanes, args.steps, rng)
    mk = markov2()
    tables = cumulative_tables(mk)
    u = rng.random((args.lanes, args.steps))
    cases = {
        "vector_walk": lambda k: bench_vector_walk(k, vargs),
        "matrix_walk": lambda k: bench_matrix_walk(k, vargs),
        "markov_symbols": lambda k: bench_markov_symbols(k, tables, u),
    }
    npk, nbk = get_kernels("numpy"), get_kernels("numba")
    print(f"lanes={args.lanes} steps={args.steps} repeat={args.repeat}")
    print(f"{'kernel':<16}{'numpy s':>10}{'numba jit s':>13}{'numba s':>10}{'speedup':>9}  match")
    for name, case in cases.items():
        t_np, r_np = timed(lambda: case(npk), args.repeat)
        t0 = time.perf_counter()
        case(nbk)  # compile
        t_jit = time.perf_counter() - t0
        t_nb, r_nb = timed(lambda: case(nbk), args.repeat)
        same = np.allclose(r_np, r_nb, rtol=1e-10, atol=1e-12)
        print(f"{name:<16}{t_np:>10.4f}{t_jit:>13.4f}{t_nb:>10.4f}{t_np / t_nb:>9.1f}  {same}")


if __name__ == "__main__":
    main()
