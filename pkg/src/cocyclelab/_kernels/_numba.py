"""Numba-compiled path kernels.  Signatures mirror ``_numpy``."""

import math

import numpy as np
from numba import njit

_NEG_INF = -np.inf


@njit(cache=True, nogil=True)
def _draw(cum, u):
    i = 0
    n = cum.shape[0]
    while i < n - 1 and u >= cum[i]:
        i += 1
    return i


@njit(cache=True, nogil=True)
def markov_symbols(cum_init, cumT, u, out):
    m, L = u.shape
    for r in range(m):
        s = _draw(cum_init, u[r, 0])
        out[r, 0] = s
        for t in range(1, L):
            s = _draw(cumT[s], u[r, t])
            out[r, t] = s


@njit(cache=True, nogil=True)
def vector_walk(mats, sing, rvec, norms, symbols, burn, fallback, null_tol,
                sums, hit, last_sing):
    m, L = symbols.shape
    for r in range(m):
        f = -1
        for t in range(burn):
            if sing[symbols[r, t]]:
                f = t
                break
        if f < 0:
            x = rvec[fallback, 0]
            y = rvec[fallback, 1]
        else:
            s0 = symbols[r, f]
            x = rvec[s0, 0]
            y = rvec[s0, 1]
        ls = f
        acc = 0.0
        h = -1
        for t in range(f + 1, L):
            i = symbols[r, t]
            wx = mats[i, 0, 0] * x + mats[i, 0, 1] * y
            wy = mats[i, 1, 0] * x + mats[i, 1, 1] * y
            nr = math.sqrt(wx * wx + wy * wy)
            if t >= burn:
                if nr <= null_tol * norms[i]:
                    h = t
                    acc = _NEG_INF
                    break
                acc += math.log(nr)
            if sing[i]:
                x = rvec[i, 0]
                y = rvec[i, 1]
                ls = t
            else:
                x = wx / nr
                y = wy / nr
        sums[r] = acc
        hit[r] = h
        last_sing[r] = ls


@njit(cache=True, nogil=True)
def block_walk(mats, sing, rvec, norms, cumT, null_tol, u, cur, vx, vy, acc,
               length, done, hit, drawn):
    m, W = u.shape
    for r in range(m):
        if done[r]:
            continue
        s = cur[r]
        x = vx[r]
        y = vy[r]
        a = acc[r]
        n = length[r]
        for c in range(W):
            i = _draw(cumT[s], u[r, c])
            drawn[r, c] = i
            n += 1
            wx = mats[i, 0, 0] * x + mats[i, 0, 1] * y
            wy = mats[i, 1, 0] * x + mats[i, 1, 1] * y
            nr = math.sqrt(wx * wx + wy * wy)
            s = i
            if nr <= null_tol * norms[i]:
                a = _NEG_INF
                hit[r] = True
                done[r] = True
                break
            a += math.log(nr)
            if sing[i]:
                done[r] = True
                break
            x = wx / nr
            y = wy / nr
        cur[r] = s
        vx[r] = x
        vy[r] = y
        acc[r] = a
        length[r] = n


@njit(cache=True, nogil=True)
def matrix_walk(mats, fnorms, symbols, null_tol, out):
    m, L = symbols.shape
    for r in range(m):
        a = 1.0 / math.sqrt(2.0)
        b = 0.0
        c = 0.0
        d = a
        scale = math.log(math.sqrt(2.0))
        dead = False
        for t in range(L):
            i = symbols[r, t]
            na = mats[i, 0, 0] * a + mats[i, 0, 1] * c
            nb = mats[i, 0, 0] * b + mats[i, 0, 1] * d
            nc = mats[i, 1, 0] * a + mats[i, 1, 1] * c
            nd = mats[i, 1, 0] * b + mats[i, 1, 1] * d
            f = math.sqrt(na * na + nb * nb + nc * nc + nd * nd)
            if f <= null_tol * fnorms[i]:
                dead = True
                break
            a = na / f
            b = nb / f
            c = nc / f
            d = nd / f
            scale += math.log(f)
        if dead:
            out[r] = _NEG_INF
        else:
            s2 = a * a + b * b + c * c + d * d
            det = a * d - b * c
            disc = math.sqrt(max(s2 * s2 - 4.0 * det * det, 0.0))
            out[r] = 0.5 * math.log(0.5 * (s2 + disc)) + scale
