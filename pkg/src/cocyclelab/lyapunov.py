"""The top Lyapunov exponent by four estimators.

* ``l1_series``: renewal-word sum, enumerated breadth-first with raw
  (lazily rescaled) vector products.
* ``l1_furstenberg``: integral of the one-step observable against the
  atomic stationary measure.
* ``l1_monte_carlo``: sampled paths with per-step renormalization.
* ``l1_induced``: sampled renewal blocks of the first-return cocycle.

The first two are deterministic with explicit tail bounds.  The other two
report standard errors.  The three code paths share no summation kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import get_kernels
from .errors import BlockCapExceeded, BudgetExceeded, DomainError
from .linalg2 import Mat2
from .model import (DEFAULT_NULL_TOL, CocycleSpec, Word, cocycle_constant,
                    fiber_product, require_valid)
from .sampling import (CHUNK, chunk_sizes, cumulative_tables, make_rng,
                       run_chunks, symbols_from_uniforms)
from .stationary import AtomicMeasure, psi_observable

NEG_INF = -math.inf


@dataclass
class L1Estimate:
    """Lyapunov exponent estimate with its error accounting.

    ``upper_tail_bound``/``lower_tail_bound`` bracket ``L1 - value`` for the
    deterministic methods; the lower one is heuristic (``lower_heuristic``).
    ``status`` is ``finite``, ``neg_inf`` (verified null word) or
    ``suspected_neg_inf`` (numerical hit without a verified witness).
    """

    value: float
    method: str
    depth: int | None = None
    n: int | None = None
    samples: int | None = None
    upper_tail_bound: float = 0.0
    lower_tail_bound: float = 0.0
    lower_heuristic: bool = True
    std_error: float = 0.0
    neg_inf_witness: Word | None = None
    status: str = "finite"
    c: float | None = None
    profile: list = field(default_factory=list)

    @property
    def is_neg_inf(self) -> bool:
        return self.value == NEG_INF

    @property
    def tail_slack(self) -> float:
        return max(abs(self.upper_tail_bound), abs(self.lower_tail_bound))

    @property
    def error(self) -> float:
        """Tail slack for deterministic methods, standard error otherwise."""
        return self.std_error if self.method.startswith("mc") else self.tail_slack

    def to_dict(self) -> dict:
        return {
            "value": self.value, "method": self.method, "depth": self.depth, "n": self.n,
            "samples": self.samples, "upper_tail_bound": self.upper_tail_bound,
            "lower_tail_bound": self.lower_tail_bound,
            "lower_bound_kind": "heuristic" if self.lower_heuristic else "rigorous",
            "std_error": self.std_error,
            "neg_inf_witness": None if self.neg_inf_witness is None else str(self.neg_inf_witness),
            "status": self.status, "c": self.c,
        }


def verify_null_word(spec: CocycleSpec, w: Word, null_tol: float = DEFAULT_NULL_TOL) -> bool:
    """Whether ``w`` (singular first and last letters) kills ``r_{w0}``.

    Uses exact-size ``Mat2`` products, independent of the array code paths.
    """
    if len(w) < 2 or w.first not in spec.sing or w.last not in spec.sing:
        return False
    v = spec.range_point(w.first).vector
    for s in w.symbols[1:-1]:
        v = spec.matrices[s - 1] @ v
        v = v / math.hypot(v[0], v[1])
    A = spec.matrices[w.last - 1]
    g = A @ v
    return math.hypot(g[0], g[1]) <= null_tol * A.norm


# -- series ---------------------------------------------------------------------

def _tail_moments(spec: CocycleSpec, depth: int):
    """Mass and first moment (in interior length) of singular-ending renewal
    words with interior longer than ``depth``."""
    T = spec.trans
    S, I = spec.sing_idx, spec.inv_idx
    if len(I) == 0:
        return 0.0, 0.0
    X = T[np.ix_(I, I)]
    b = T[np.ix_(I, S)] @ spec.stat[S]
    c = T[np.ix_(S, I)].sum(axis=0)
    E = np.eye(len(I))
    R1 = np.linalg.inv(E - X)
    R2 = R1 @ R1
    Xd = np.linalg.matrix_power(X, depth)
    # sum_{m > d} c X^(m-1) b and sum_{m > d} m c X^(m-1) b
    mass = float(c @ Xd @ R1 @ b)
    moment = float(c @ (Xd @ (depth * R1 + X @ R2) + Xd @ R1) @ b)
    return mass, moment


def l1_series(spec: CocycleSpec, depth: int, null_tol: float = DEFAULT_NULL_TOL,
              max_words: int = 20_000_000) -> L1Estimate:
    """Renewal sum ``sum q_s p(w) log ||A^n(w) r_s||`` over words
    ``(s, w1..wm, l)`` with singular ``s, l`` and ``m <= depth``.

    Terms are summed by increasing interior length; ``profile`` records the
    per-length partial contribution, absolute mass and probability mass.
    """
    require_valid(spec)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    T, mats = spec.trans, spec.mats
    S, I = spec.sing_idx, spec.inv_idx
    norms = spec.letter_norms
    total = 0.0
    worst = math.inf
    profile = []
    witness = None
    count = 0
    # per level: raw vectors V (rows), log scale, weight, last letter, tree node
    V = spec.range_vec[S].copy()
    scale = np.zeros(len(S))
    w = spec.stat[S].copy()
    last = S.copy()
    parent = [np.full(len(S), -1)]
    letter = [S.copy()]
    node = np.arange(len(S))
    n_nodes = len(S)
    for m in range(depth + 1):
        lvl_sum, lvl_abs, lvl_mass = 0.0, 0.0, 0.0
        vn = np.hypot(V[:, 0], V[:, 1])
        for l in S:
            pl = T[l, last]
            keep = pl > 0
            if not keep.any():
                continue
            g = V[keep] @ mats[l].T
            gn = np.hypot(g[:, 0], g[:, 1])
            dead = gn <= null_tol * norms[l] * vn[keep]
            if dead.any() and witness is None:
                a = int(np.flatnonzero(keep)[np.argmax(dead)])
                witness = _decode(parent, letter, int(node[a])) + (int(l) + 1,)
            with np.errstate(divide="ignore"):
                terms = np.log(gn) + scale[keep]
            wt = w[keep] * pl[keep]
            terms = np.where(dead, 0.0, terms)
            if terms.size:
                worst = min(worst, float(terms.min()))
            lvl_sum += float(np.sum(wt * terms))
            lvl_abs += float(np.sum(wt * np.abs(terms)))
            lvl_mass += float(np.sum(wt))
        total += lvl_sum
        profile.append({"m": m, "sum": lvl_sum, "abs": lvl_abs, "mass": lvl_mass})
        if m == depth or len(I) == 0:
            break
        nv, ns, nw, nl, npar = [], [], [], [], []
        for i in I:
            pi = T[i, last]
            keep = pi > 0
            if not keep.any():
                continue
            nv.append(V[keep] @ mats[i].T)
            ns.append(scale[keep])
            nw.append(w[keep] * pi[keep])
            nl.append(np.full(keep.sum(), i))
            npar.append(node[keep])
        if not nv:
            break
        V = np.concatenate(nv)
        scale = np.concatenate(ns)
        w = np.concatenate(nw)
        last = np.concatenate(nl)
        par = np.concatenate(npar)
        count += len(V)
        if count > max_words:
            raise BudgetExceeded(f"series enumeration exceeds {max_words} words")
        node = np.arange(n_nodes, n_nodes + len(V))
        n_nodes += len(V)
        parent.append(par)
        letter.append(last.copy())
        # lazy rescale keeps raw products in floating range
        big = np.hypot(V[:, 0], V[:, 1])
        out = (big > 1e100) | (big < 1e-100)
        if out.any():
            scale[out] += np.log(big[out])
            V[out] /= big[out, None]

    c = cocycle_constant(spec)
    mass, moment = _tail_moments(spec, depth)
    log_sing = np.log(norms[S])
    c_up = float(np.max(np.log(norms[I]))) if len(I) else 0.0
    upper = mass * float(log_sing.max()) + moment * c_up
    with np.errstate(divide="ignore"):
        g_min = min(float(np.linalg.norm(mats[l] @ spec.range_vec[s])) for l in S for s in S)
    l_lo = math.log(g_min) if g_min > 0 else NEG_INF
    c_lo = float(np.min(np.log(spec.min_singular[I]))) if len(I) else 0.0
    # heuristic: deeper terms no lower than the worst observed term, drifting
    # by at most c_lo per extra letter
    base = min(l_lo, worst) if math.isfinite(worst) else l_lo
    lower = (mass * base + (moment - depth * mass) * min(c_lo, 0.0)) if mass > 0 else 0.0
    est = L1Estimate(total, "series", depth=depth, upper_tail_bound=upper,
                     lower_tail_bound=lower, c=c, profile=profile)
    if witness is not None:
        wd = Word(witness)
        est.value = NEG_INF
        est.neg_inf_witness = wd
        est.status = "neg_inf" if verify_null_word(spec, wd, null_tol) else "suspected_neg_inf"
    return est


def series_depth(spec: CocycleSpec, tail_tol: float = 1e-12, max_words: int = 2_000_000,
                 cap: int = 20_000) -> int:
    """Smallest depth whose series tail mass is below ``tail_tol``, limited so
    the enumeration stays under ``max_words`` words."""
    S, I = spec.sing_idx, spec.inv_idx
    if len(I) == 0:
        return 0
    adj = (spec.trans[np.ix_(I, I)] > 0).astype(float)
    cnt = (spec.trans[np.ix_(I, S)] > 0).astype(float).sum(axis=1)
    total = 0.0
    for d in range(cap + 1):
        if _tail_moments(spec, d)[0] <= tail_tol:
            return d
        total += cnt.sum()
        if total > max_words:
            return d
        cnt = adj @ cnt
        # the per-level count only grows; cap it to avoid overflow
        cnt = np.minimum(cnt, 1e300)
    return cap


def reference_l1(spec: CocycleSpec, tail_tol: float = 1e-12, max_words: int = 2_000_000) -> L1Estimate:
    """Series estimate at the depth chosen by :func:`series_depth`."""
    return l1_series(spec, series_depth(spec, tail_tol, max_words), max_words=4 * max_words)


def _decode(parent, letter, node):
    par = np.concatenate(parent)
    let = np.concatenate(letter)
    out = []
    while node >= 0:
        out.append(int(let[node]) + 1)
        node = int(par[node])
    return tuple(reversed(out))


# -- Furstenberg integral ---------------------------------------------------------

def l1_furstenberg(spec: CocycleSpec, measure: AtomicMeasure,
                   null_tol: float = DEFAULT_NULL_TOL) -> L1Estimate:
    """``int Psi d eta`` over the atoms of a truncated stationary measure.

    The missing mass ``tail`` contributes between ``tail * min Psi`` and
    ``tail * max Psi``; the maximum is ``max log ||A_i||`` and the minimum is
    a heuristic (observed minimum over atoms and structural constants).
    """
    require_valid(spec)
    if measure.spec != spec:
        raise DomainError("measure was built for a different spec")
    if measure.kind not in ("bernoulli", "markov"):
        raise DomainError(f"cannot integrate against a {measure.kind} measure")
    T = spec.trans
    psi = psi_observable(spec)
    # kernel hits: an atom at the kernel of a singular letter reachable from it
    witness = None
    j = np.maximum(measure.symbol - 1, 0)
    for i in spec.sing_idx:
        reach = (T[i, j] > 0) & (measure.weight > 0)
        d = np.abs(np.sin(measure.theta - spec.kernel_theta[i]))
        hit = reach & (d <= null_tol)
        if hit.any():
            a = int(np.flatnonzero(hit)[0])
            cand = Word(measure.witness(a).symbols + (int(i) + 1,))
            if witness is None or cand.symbols < witness.symbols:
                witness = cand
    vals = psi(measure.symbol, measure.theta)
    finite = np.isfinite(vals)
    value = float(np.sum(measure.weight[finite] * vals[finite]))
    hi = float(np.max(np.log(spec.letter_norms)))
    lo_obs = float(vals[finite].min()) if finite.any() else hi
    I = spec.inv_idx
    c_lo = float(np.min(np.log(spec.min_singular[I]))) if len(I) else 0.0
    lo = min(lo_obs, c_lo)
    tail = measure.tail_mass
    est = L1Estimate(value, "furstenberg", depth=measure.depth,
                     upper_tail_bound=tail * hi, lower_tail_bound=tail * lo,
                     c=cocycle_constant(spec))
    if witness is not None or not finite.all():
        est.value = NEG_INF
        if witness is None:
            a = int(np.flatnonzero(~finite)[0])
            est.status = "suspected_neg_inf"
            est.neg_inf_witness = measure.witness(a)
        else:
            est.neg_inf_witness = witness
            est.status = "neg_inf" if verify_null_word(spec, witness, null_tol) else "suspected_neg_inf"
    return est


# -- Monte Carlo --------------------------------------------------------------------

def burn_in(spec: CocycleSpec, tol: float = 1e-12) -> int:
    """Steps after which a path has left its start with probability ``1 - tol``."""
    I = spec.inv_idx
    if len(I) == 0:
        return 10
    X = spec.trans[np.ix_(I, I)]
    rho = float(np.max(np.abs(np.linalg.eigvals(X))))
    if rho <= 0:
        return 10
    b = math.ceil(math.log(tol) / math.log(rho)) if rho < 1 else 10_000
    return int(min(max(b, 10), 10_000))


def _mc_status(spec, est, witness, null_tol):
    est.value = NEG_INF
    est.neg_inf_witness = witness
    est.status = "neg_inf" if verify_null_word(spec, witness, null_tol) else "suspected_neg_inf"


def path_sums(spec: CocycleSpec, n: int, samples: int, seed: int, purpose: str,
              threads: int | None = None, burn: int | None = None,
              null_tol: float = DEFAULT_NULL_TOL):
    """Per-path sums of ``n`` step log-norms from a start on the support of
    the stationary measure.

    Each lane starts at the range of its first singular symbol, runs
    ``burn`` steps unrecorded, then accumulates ``n`` steps.  Returns
    ``(sums, witness)`` where ``witness`` is the first realized null block.
    """
    require_valid(spec)
    kern = get_kernels()
    B = burn_in(spec) if burn is None else int(burn)
    mats = np.ascontiguousarray(spec.mats)
    sing = spec.sing_mask
    rvec = spec.range_vec
    norms = spec.letter_norms
    fallback = int(spec.sing_idx[0])
    sizes = chunk_sizes(samples)

    def work(c):
        rng = make_rng(seed, purpose, c)
        u = rng.random((sizes[c], B + n))
        sy = symbols_from_uniforms(spec, u)
        m = sizes[c]
        sums = np.empty(m)
        hit = np.empty(m, dtype=np.int64)
        ls = np.empty(m, dtype=np.int64)
        kern.vector_walk(mats, sing, rvec, norms, sy, B, fallback, null_tol, sums, hit, ls)
        wit = None
        if (hit >= 0).any():
            r = int(np.flatnonzero(hit >= 0)[0])
            start = int(ls[r])
            body = sy[r, start:hit[r] + 1] if start >= 0 else np.concatenate([[fallback], sy[r, :hit[r] + 1]])
            wit = Word(tuple(int(x) + 1 for x in body))
        return sums, wit

    res = run_chunks(work, len(sizes), threads)
    sums = np.concatenate([r[0] for r in res])
    wits = [r[1] for r in res if r[1] is not None]
    return sums, (wits[0] if wits else None)


def l1_monte_carlo(spec: CocycleSpec, n: int, samples: int, seed: int,
                   threads: int | None = None, burn: int | None = None,
                   null_tol: float = DEFAULT_NULL_TOL, purpose: str = "mc_direct") -> L1Estimate:
    """Mean of ``(1/n) log ||A^n v||`` over sampled paths started on supp eta."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    sums, wit = path_sums(spec, n, samples, seed, purpose, threads, burn, null_tol)
    x = sums / n
    est = L1Estimate(float(np.mean(x)), "mc_direct", n=n, samples=samples,
                     upper_tail_bound=0.0, lower_tail_bound=0.0,
                     std_error=(float(np.std(x, ddof=1) / math.sqrt(samples))
                                if samples > 1 and wit is None else math.inf))
    if wit is not None:
        _mc_status(spec, est, wit, null_tol)
    return est


def block_values(spec: CocycleSpec, blocks: int, seed: int, purpose: str = "mc_induced",
                 threads: int | None = None, null_tol: float = DEFAULT_NULL_TOL,
                 width: int = 64):
    """``log ||A^tau(block) r_s||`` for independent renewal blocks.

    Starts are drawn from ``q_S / q0``; each block runs until the next
    singular symbol.  Returns ``(values, lengths, witness)``.
    """
    require_valid(spec)
    kern = get_kernels()
    mats = np.ascontiguousarray(spec.mats)
    sing = spec.sing_mask
    rvec = spec.range_vec
    norms = spec.letter_norms
    _, cumT = cumulative_tables(spec)
    S = spec.sing_idx
    start_law = spec.stat[S] / spec.stat[S].sum()
    cum_start = np.cumsum(start_law)
    cum_start[-1] = 1.0
    cap = spec.block_cap
    sizes = chunk_sizes(blocks)

    def work(c):
        m = sizes[c]
        rng = make_rng(seed, purpose, c)
        u0 = rng.random(m)
        cur = S[np.minimum(np.searchsorted(cum_start, u0, side="right"), len(S) - 1)]
        start = cur.copy()
        vx = rvec[cur, 0].copy()
        vy = rvec[cur, 1].copy()
        acc = np.zeros(m)
        length = np.zeros(m, dtype=np.int64)
        done = np.zeros(m, dtype=bool)
        hit = np.zeros(m, dtype=bool)
        log = []
        while not done.all():
            if length.max() >= cap:
                raise BlockCapExceeded(f"renewal block longer than {cap} draws")
            u = rng.random((m, width))
            drawn = np.full((m, width), -1, dtype=np.int64)
            kern.block_walk(mats, sing, rvec, norms, cumT, null_tol, u, cur, vx, vy, acc,
                            length, done, hit, drawn)
            if hit.any():
                log.append(drawn)
        wit = None
        if hit.any():
            r = int(np.flatnonzero(hit)[0])
            body = [int(start[r])] + [int(x) for d in log for x in d[r] if x >= 0]
            wit = Word(tuple(x + 1 for x in body))
        return acc, length, wit

    res = run_chunks(work, len(sizes), threads)
    vals = np.concatenate([r[0] for r in res])
    lens = np.concatenate([r[1] for r in res])
    wits = [r[2] for r in res if r[2] is not None]
    return vals, lens, (wits[0] if wits else None)


def l1_induced(spec: CocycleSpec, blocks: int, seed: int, threads: int | None = None,
               null_tol: float = DEFAULT_NULL_TOL) -> L1Estimate:
    """``q0 * E[phi]`` with ``phi`` the log-growth of ``r_s`` over a renewal
    block (first-return cocycle); ``E[tau] = 1/q0`` makes this a per-step rate."""
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    vals, lens, wit = block_values(spec, blocks, seed, threads=threads, null_tol=null_tol)
    q0 = spec.q0
    finite = np.isfinite(vals)
    x = vals[finite]
    est = L1Estimate(q0 * float(np.mean(x)) if x.size else NEG_INF, "mc_induced",
                     samples=blocks,
                     std_error=(q0 * float(np.std(x, ddof=1)) / math.sqrt(x.size)
                                if x.size > 1 else math.inf))
    est.profile = [{"mean_block_length": float(np.mean(lens)), "expected": 1.0 / q0}]
    if wit is not None:
        _mc_status(spec, est, wit, null_tol)
    return est


# -- product-norm identity -------------------------------------------------------------

def direct_rank_one_norm(mats, r0) -> float:
    """``||B_n ... B_1 r0||`` by multiplying the matrices first."""
    M = Mat2.identity()
    for B in mats:
        M = Mat2.from_array(B) @ M
    v = M @ np.asarray(r0, dtype=float)
    return math.hypot(v[0], v[1])


def telescoped_rank_one_norm(mats, r0, ranges) -> float:
    """``prod ||B_l r_{l-1}||`` with ``r_l`` the unit range of ``B_l``."""
    out = 1.0
    prev = np.asarray(r0, dtype=float)
    for B, r in zip(mats, ranges):
        v = Mat2.from_array(B) @ prev
        out *= math.hypot(v[0], v[1])
        prev = np.asarray(r, dtype=float)
    return out
