"""Pure-numpy path kernels, vectorized across lanes and looping over time.

Each function fills its output arrays in place, exactly like the compiled
versions in ``_numba``.
"""

import numpy as np


def _draw(cum_rows, u):
    # index of the first cumulative entry exceeding u, capped at k - 1
    k = cum_rows.shape[-1]
    idx = (u[:, None] >= cum_rows).sum(axis=1)
    return np.minimum(idx, k - 1)


def markov_symbols(cum_init, cumT, u, out):
    m, L = u.shape
    s = _draw(np.broadcast_to(cum_init, (m, cum_init.shape[0])), u[:, 0])
    out[:, 0] = s
    for t in range(1, L):
        s = _draw(cumT[s], u[:, t])
        out[:, t] = s


def vector_walk(mats, sing, rvec, norms, symbols, burn, fallback, null_tol,
                sums, hit, last_sing):
    m, L = symbols.shape
    lanes = np.arange(m)
    is_s = sing[symbols[:, :burn]]
    has = is_s.any(axis=1)
    f = np.where(has, is_s.argmax(axis=1), -1)
    start_sym = np.where(has, symbols[lanes, np.maximum(f, 0)], fallback)
    v = rvec[start_sym].copy()
    ls = f.copy()
    acc = np.zeros(m)
    h = np.full(m, -1, dtype=np.int64)
    alive = np.ones(m, dtype=bool)
    for t in range(int(f.min()) + 1, L):
        act = alive & (t > f)
        if not act.any():
            continue
        i = symbols[:, t]
        A = mats[i]
        w = np.einsum("rij,rj->ri", A, v)
        nr = np.hypot(w[:, 0], w[:, 1])
        if t >= burn:
            dead = act & (nr <= null_tol * norms[i])
            if dead.any():
                h[dead] = t
                acc[dead] = -np.inf
                alive &= ~dead
                act &= ~dead
            acc[act] += np.log(nr[act])
        si = act & sing[i]
        ii = act & ~sing[i]
        v[si] = rvec[i[si]]
        v[ii] = w[ii] / nr[ii, None]
        ls[si] = t
    sums[:] = acc
    hit[:] = h
    last_sing[:] = ls


def block_walk(mats, sing, rvec, norms, cumT, null_tol, u, cur, vx, vy, acc,
               length, done, hit, drawn):
    m, W = u.shape
    for c in range(W):
        act = ~done
        if not act.any():
            break
        rows = np.flatnonzero(act)
        i = _draw(cumT[cur[rows]], u[rows, c])
        drawn[rows, c] = i
        length[rows] += 1
        A = mats[i]
        x, y = vx[rows], vy[rows]
        wx = A[:, 0, 0] * x + A[:, 0, 1] * y
        wy = A[:, 1, 0] * x + A[:, 1, 1] * y
        nr = np.sqrt(wx * wx + wy * wy)
        cur[rows] = i
        dead = nr <= null_tol * norms[i]
        with np.errstate(divide="ignore"):
            acc[rows] = np.where(dead, -np.inf, acc[rows] + np.log(np.where(dead, 1.0, nr)))
        hit[rows[dead]] = True
        fin = dead | sing[i]
        done[rows[fin]] = True
        cont = ~fin
        vx[rows[cont]] = wx[cont] / nr[cont]
        vy[rows[cont]] = wy[cont] / nr[cont]


def matrix_walk(mats, fnorms, symbols, null_tol, out):
    m, L = symbols.shape
    M = np.zeros((m, 2, 2))
    M[:, 0, 0] = M[:, 1, 1] = 1.0 / np.sqrt(2.0)
    scale = np.full(m, np.log(np.sqrt(2.0)))
    alive = np.ones(m, dtype=bool)
    for t in range(L):
        i = symbols[:, t]
        N = np.matmul(mats[i], M)
        f = np.sqrt(np.einsum("rij,rij->r", N, N))
        dead = alive & (f <= null_tol * fnorms[i])
        alive &= ~dead
        f = np.where(alive, f, 1.0)
        M = np.where(alive[:, None, None], N / f[:, None, None], M)
        scale = np.where(alive, scale + np.log(f), scale)
    s2 = np.einsum("rij,rij->r", M, M)
    det = M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    disc = np.sqrt(np.maximum(s2 * s2 - 4.0 * det * det, 0.0))
    val = 0.5 * np.log(0.5 * (s2 + disc)) + scale
    out[:] = np.where(alive, val, -np.inf)
