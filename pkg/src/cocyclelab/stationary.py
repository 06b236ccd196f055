"""Explicit atomic stationary measures and the Markov operators acting on them.

The Markov chain lives on pairs ``(symbol, direction)``: from ``(j, v)`` it
moves to ``(i, A_i v)`` with probability ``P[i, j]``.  Its stationary measure
is a countable sum of atoms sitting at images of singular ranges under
invertible renewal words, which we enumerate breadth-first up to a depth and
complement by an exactly computed tail mass.

For Bernoulli specs the same construction is carried out on the projective
line alone (``kind="bernoulli"``) and ``product_measure`` builds ``p x eta``
for the lifted operator ``Qbar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BudgetExceeded, DomainError
from .linalg2 import PI, act, canonical_angle, proj_dist
from .model import CocycleSpec, Word, inv_block, require_valid
from .sampling import make_rng

DEFAULT_MAX_ATOMS = 5_000_000


# -- observables ---------------------------------------------------------------

@dataclass(frozen=True)
class Observable:
    """Extended-real function of ``(symbol, theta)``.

    ``fn`` is vectorized: it receives an int array of 1-based symbols (0 when
    absent) and an array of angles.  ``sup`` is a known bound on ``|phi|``
    when finite; ``marginal`` marks symbol-independent observables.
    """

    fn: Callable
    sup: float | None = None
    marginal: bool = False
    name: str = ""

    def __call__(self, sym, theta):
        theta = np.asarray(theta, dtype=float)
        sym = np.broadcast_to(np.asarray(sym, dtype=np.int64), theta.shape)
        with np.errstate(divide="ignore"):
            out = np.asarray(self.fn(sym, theta), dtype=float)
        out = np.broadcast_to(out, theta.shape)
        if np.any(out == np.inf):
            raise ValueError(f"observable {self.name!r} returned +inf")
        return out

    @classmethod
    def of_angle(cls, f, sup=None, name="") -> "Observable":
        return cls(lambda s, t: f(t), sup=sup, marginal=True, name=name)

    @classmethod
    def constant(cls, c: float) -> "Observable":
        return cls(lambda s, t: np.full(np.shape(t), float(c)), sup=abs(c), marginal=True,
                   name=f"const({c})")

    def sup_norm(self, spec: CocycleSpec | None = None, n_grid: int = 4096) -> float:
        """Known bound, else the maximum of ``|phi|`` on a fine grid."""
        if self.sup is not None:
            return float(self.sup)
        t = np.arange(n_grid) * (PI / n_grid)
        syms = [0] if (self.marginal or spec is None) else range(1, spec.k + 1)
        return float(max(np.max(np.abs(self(s, t))) for s in syms))


def step_observable(spec: CocycleSpec) -> Observable:
    """``phi(i, v) = log ||A_i v||``, the step log-norm."""
    mats = spec.mats

    def f(sym, theta):
        i = sym - 1
        c, s = np.cos(theta), np.sin(theta)
        x = mats[i, 0, 0] * c + mats[i, 0, 1] * s
        y = mats[i, 1, 0] * c + mats[i, 1, 1] * s
        return np.log(np.hypot(x, y))

    return Observable(f, sup=None, marginal=False, name="log_step")


def psi_observable(spec: CocycleSpec) -> Observable:
    """``Psi(j, v) = sum_i P[i, j] log ||A_i v||`` (the Furstenberg integrand).

    For Bernoulli specs this does not depend on ``j`` and equals ``psi(v)``.
    """
    T = spec.trans
    mats = spec.mats

    def f(sym, theta):
        c, s = np.cos(theta), np.sin(theta)
        out = np.zeros(np.shape(theta))
        j = np.maximum(sym - 1, 0)
        for i in range(spec.k):
            x = mats[i, 0, 0] * c + mats[i, 0, 1] * s
            y = mats[i, 1, 0] * c + mats[i, 1, 1] * s
            w = T[i, j]
            with np.errstate(divide="ignore", invalid="ignore"):
                term = np.where(w > 0, w * np.log(np.hypot(x, y)), 0.0)
            out = out + term
        return out

    return Observable(f, marginal=not spec.is_markov, name="Psi")


# -- atomic measures ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WordTree:
    """Prefix tree of renewal words; node ``n`` is ``parent[n] + letter[n]``."""

    parent: np.ndarray
    letter: np.ndarray   # 0-based

    def decode(self, node: int) -> tuple:
        out = []
        while node >= 0:
            out.append(int(self.letter[node]) + 1)
            node = int(self.parent[node])
        return tuple(reversed(out))


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finite atomic measure on ``A x P1`` (or on ``P1``) with exact tail.

    ``symbol`` holds 1-based symbols, 0 for measures on the projective line.
    Each atom's witness word is ``tree.decode(node) + (tail_letter,)`` (the
    tail letter is omitted when 0).
    """

    spec: CocycleSpec
    kind: str
    symbol: np.ndarray
    theta: np.ndarray
    weight: np.ndarray
    covered_mass: float
    tail_mass: float
    depth: int
    tree: WordTree
    node: np.ndarray
    tail_letter: np.ndarray
    symbol_tail: np.ndarray | None = None   # per-symbol exact deficits

    def __len__(self):
        return len(self.weight)

    def witness(self, a: int) -> Word:
        syms = self.tree.decode(int(self.node[a]))
        t = int(self.tail_letter[a])
        return Word(syms + ((t,) if t else ()))

    @property
    def atoms(self):
        """Iterate ``(symbol or None, theta, weight, witness)``."""
        for a in range(len(self)):
            s = int(self.symbol[a])
            yield (s or None, float(self.theta[a]), float(self.weight[a]), self.witness(a))

    def integrate(self, phi: Observable) -> float:
        """``sum w * phi``; ``-inf`` iff a weighted atom evaluates to ``-inf``."""
        vals = phi(self.symbol, self.theta)
        if np.any(np.isneginf(vals) & (self.weight > 0)):
            return -math.inf
        return float(np.sum(self.weight * vals))

    def symbol_masses(self) -> np.ndarray:
        """Per-symbol covered weight (index 0 is symbol 1)."""
        out = np.zeros(self.spec.k)
        np.add.at(out, self.symbol[self.symbol > 0] - 1, self.weight[self.symbol > 0])
        return out

    def with_weights(self, weight) -> "AtomicMeasure":
        w = np.asarray(weight, dtype=float)
        return AtomicMeasure(self.spec, self.kind, self.symbol, self.theta, w,
                             float(w.sum()), self.tail_mass, self.depth, self.tree,
                             self.node, self.tail_letter, self.symbol_tail)

    def rows(self):
        """CSV rows ``(symbol, theta, weight, witness)``."""
        for s, t, w, wit in self.atoms:
            yield (s if s else "", t, w, str(wit))


def markov_tail(spec: CocycleSpec, depth: int) -> np.ndarray:
    """Exact per-symbol mass of renewal words with interior longer than ``depth``.

    With ``X`` the invertible block and ``b = P_IS q_S``: invertible ``j``
    miss ``e_j X^(d+1) (I-X)^-1 b`` and singular ``j`` miss
    ``P_SI X^d (I-X)^-1 b``.
    """
    T = spec.trans
    S, I = spec.sing_idx, spec.inv_idx
    out = np.zeros(spec.k)
    if len(I) == 0:
        return out
    X = T[np.ix_(I, I)]
    b = T[np.ix_(I, S)] @ spec.stat[S]
    R = np.linalg.solve(np.eye(len(I)) - X, b)
    Xd = np.linalg.matrix_power(X, depth)
    out[I] = X @ (Xd @ R)
    out[S] = T[np.ix_(S, I)] @ (Xd @ R)
    return np.clip(out, 0.0, None)


def stationary_measure(spec: CocycleSpec, depth: int,
                       max_atoms: int = DEFAULT_MAX_ATOMS) -> AtomicMeasure:
    """Atoms of the stationary measure for renewal words of interior length
    at most ``depth``.

    Bernoulli: atoms ``(s, w1..wn)``, ``n <= depth``, weight ``p_s p(w)`` at
    ``A^n r_s``; tail mass ``(1-q)^(depth+1)``.  Markov: atoms
    ``(j, A_j A^m r_s)`` for words ``(s, w1..wm, j)``, ``m <= depth``, weight
    ``q_s p(w)``; singular ``j`` sit at ``r_j``.
    """
    require_valid(spec)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    T, mats = spec.trans, spec.mats
    stat = spec.stat
    S, I = spec.sing_idx, spec.inv_idx
    rng_t = spec.range_theta

    parents, letters = [], []
    level_nodes = np.arange(len(S))
    parents.append(np.full(len(S), -1))
    letters.append(S.copy())
    theta = rng_t[S].copy()
    weight = stat[S].copy()
    last = S.copy()
    n_nodes = len(S)

    a_sym, a_theta, a_w, a_node, a_tail = [], [], [], [], []
    markov = spec.is_markov
    total = 0
    for level in range(depth + 1):
        if not markov:
            a_sym.append(np.zeros(len(theta), dtype=np.int64))
            a_theta.append(theta)
            a_w.append(weight)
            a_node.append(level_nodes)
            a_tail.append(np.zeros(len(theta), dtype=np.int64))
        else:
            for j in range(spec.k):
                pj = T[j, last]
                keep = pj > 0
                if not keep.any():
                    continue
                if spec.sing_mask[j]:
                    th = np.full(keep.sum(), rng_t[j])
                else:
                    th = act(mats[j], theta[keep])
                a_sym.append(np.full(keep.sum(), j + 1, dtype=np.int64))
                a_theta.append(th)
                a_w.append(weight[keep] * pj[keep])
                a_node.append(level_nodes[keep])
                a_tail.append(np.full(keep.sum(), j + 1, dtype=np.int64))
        total = sum(len(x) for x in a_w)
        if total > max_atoms:
            raise BudgetExceeded(f"stationary measure exceeds {max_atoms} atoms")
        if level == depth:
            break
        nt, nw, nl, np_, nn = [], [], [], [], []
        for i in I:
            pi = T[i, last]
            keep = pi > 0
            if not keep.any():
                continue
            nt.append(act(mats[i], theta[keep]))
            nw.append(weight[keep] * pi[keep])
            nl.append(np.full(keep.sum(), i))
            np_.append(level_nodes[keep])
        if not nt:
            break
        theta = np.concatenate(nt)
        weight = np.concatenate(nw)
        last = np.concatenate(nl)
        par = np.concatenate(np_)
        level_nodes = np.arange(n_nodes, n_nodes + len(theta))
        n_nodes += len(theta)
        parents.append(par)
        letters.append(last.copy())

    tree = WordTree(np.concatenate(parents), np.concatenate(letters))
    w = np.concatenate(a_w)
    if markov:
        sym_tail = markov_tail(spec, depth)
        tail = float(sym_tail.sum())
        kind = "markov"
    else:
        sym_tail = None
        tail = (1.0 - spec.q0) ** (depth + 1)
        kind = "bernoulli"
    return AtomicMeasure(spec, kind, np.concatenate(a_sym), np.concatenate(a_theta), w,
                         float(w.sum()), tail, depth, tree, np.concatenate(a_node),
                         np.concatenate(a_tail), sym_tail)


def product_measure(eta: AtomicMeasure) -> AtomicMeasure:
    """``p x eta`` on ``A x P1`` for a Bernoulli measure ``eta``."""
    if eta.kind != "bernoulli":
        raise DomainError("product measure needs a Bernoulli stationary measure")
    p = eta.spec.stat
    k = eta.spec.k
    n = len(eta)
    sym = np.repeat(np.arange(1, k + 1), n)
    w = np.concatenate([p[i] * eta.weight for i in range(k)])
    return AtomicMeasure(eta.spec, "product", sym, np.tile(eta.theta, k), w,
                         float(w.sum()), eta.tail_mass, eta.depth, eta.tree,
                         np.tile(eta.node, k), np.zeros(k * n, dtype=np.int64), None)


def merge_atoms(m: AtomicMeasure, merge_tol: float = 0.0) -> AtomicMeasure:
    """Coalesce same-symbol atoms within ``proj_dist <= merge_tol``.

    Weights are summed; the merged atom keeps the point and witness of its
    lexicographically smallest witness word.
    """
    if merge_tol < 0:
        raise ValueError("merge_tol must be >= 0")
    if len(m) == 0:
        return m
    order = np.lexsort((m.theta, m.symbol))
    sym, th = m.symbol[order], m.theta[order]
    new_group = np.ones(len(order), dtype=bool)
    new_group[1:] = (sym[1:] != sym[:-1]) | (np.diff(th) > merge_tol)
    gid = np.cumsum(new_group) - 1
    # wrap-around: the last group of a symbol may touch its first group
    for s in np.unique(sym):
        idx = np.flatnonzero(sym == s)
        g_first, g_last = gid[idx[0]], gid[idx[-1]]
        if g_first != g_last and th[idx[0]] + PI - th[idx[-1]] <= merge_tol:
            gid[gid == g_last] = g_first
    uniq, inv = np.unique(gid, return_inverse=True)
    weights = np.zeros(len(uniq))
    np.add.at(weights, inv, m.weight[order])
    keep = np.empty(len(uniq), dtype=np.int64)
    for g in range(len(uniq)):
        members = order[inv == g]
        if len(members) == 1:
            keep[g] = members[0]
        else:
            keep[g] = min(members, key=lambda a: m.witness(int(a)).symbols)
    return AtomicMeasure(m.spec, m.kind, m.symbol[keep], m.theta[keep], weights,
                         float(weights.sum()), m.tail_mass, m.depth, m.tree, m.node[keep],
                         m.tail_letter[keep], m.symbol_tail)


def verify_witnesses(m: AtomicMeasure, tol: float = 1e-10) -> float:
    """Largest ``proj_dist`` between an atom and the point its witness regenerates."""
    spec = m.spec
    worst = 0.0
    cache = {}
    for a in range(len(m)):
        w = m.witness(a).symbols
        if w not in cache:
            t = spec.range_theta[w[0] - 1]
            for s in w[1:]:
                if spec.sing_mask[s - 1]:
                    t = spec.range_theta[s - 1]
                else:
                    t = float(act(spec.mats[s - 1], np.array([t]))[0])
            cache[w] = t
        worst = max(worst, proj_dist(cache[w], m.theta[a]))
    return worst


# -- Markov operators -----------------------------------------------------------

def _letters(spec, part):
    if part == "full":
        return range(spec.k)
    if part == "inv":
        return spec.inv_idx
    if part == "sing":
        return spec.sing_idx
    raise ValueError(f"unknown part {part!r}")


def _image(spec, i, theta):
    if spec.sing_mask[i]:
        return np.full(np.shape(theta), spec.range_theta[i])
    return act(spec.mats[i], theta)


def apply_Q(spec: CocycleSpec, phi: Observable, x, symbol=None, part: str = "full"):
    """``(Q phi)(j, x) = sum_i phi(i, A_i x) P[i, j]`` over the chosen letters.

    ``symbol`` (1-based ``j``) is needed for Markov specs only; Bernoulli
    transitions do not depend on it.
    """
    theta = np.asarray(getattr(x, "theta", x), dtype=float)
    if spec.is_markov:
        if symbol is None:
            raise DomainError("Markov operator needs the current symbol")
        j = np.broadcast_to(np.asarray(symbol) - 1, theta.shape)
    else:
        j = np.zeros(theta.shape, dtype=np.int64)
    T = spec.trans
    out = np.zeros(theta.shape)
    for i in _letters(spec, part):
        w = T[i, j]
        vals = phi(np.full(theta.shape, i + 1), _image(spec, i, theta))
        with np.errstate(invalid="ignore"):
            out = out + np.where(w > 0, w * vals, 0.0)
    return float(out) if out.ndim == 0 else out


def apply_Qbar(spec: CocycleSpec, phi: Observable, symbol, x):
    """Lifted Bernoulli operator ``(Qbar phi)(j, x) = sum_i phi(i, A_j x) p_i``."""
    if spec.is_markov:
        raise DomainError("Qbar is defined for Bernoulli specs")
    theta = np.asarray(getattr(x, "theta", x), dtype=float)
    j = np.broadcast_to(np.asarray(symbol) - 1, theta.shape)
    img = np.empty(theta.shape)
    for jj in np.unique(j):
        sel = j == jj
        img[sel] = _image(spec, int(jj), theta[sel])
    out = np.zeros(theta.shape)
    for i in range(spec.k):
        out = out + spec.stat[i] * phi(np.full(theta.shape, i + 1), img)
    return float(out) if out.ndim == 0 else out


def project(spec: CocycleSpec, phi: Observable) -> Observable:
    """``pi phi(v) = sum_i p_i phi(i, v)``."""
    p = spec.stat

    def f(sym, theta):
        return sum(p[i] * phi(np.full(np.shape(theta), i + 1), theta) for i in range(spec.k))

    return Observable(f, sup=phi.sup, marginal=True, name=f"pi({phi.name})")


def _qinv_power(spec, phi, n, theta, j, budget):
    """Exact ``Q_inv^n phi`` at angles ``theta`` from symbols ``j`` (0-based)."""
    T = spec.trans
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    j = np.broadcast_to(np.atleast_1d(j), theta.shape)
    if n == 0:
        return phi(j + 1, theta)
    n_inv = len(spec.inv_idx)
    if theta.size * n_inv ** n > budget:
        raise BudgetExceeded(f"Q_inv^{n} needs {theta.size * n_inv ** n} terms")
    lane = np.arange(theta.size)
    th, w, last = theta.copy(), np.ones(theta.size), np.array(j, dtype=np.int64)
    for _ in range(n):
        parts = [(act(spec.mats[i], th), w * T[i, last], np.full(len(th), i), lane)
                 for i in spec.inv_idx]
        th = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
        last = np.concatenate([p[2] for p in parts])
        lane = np.concatenate([p[3] for p in parts])
    vals = phi(last + 1, th)
    with np.errstate(invalid="ignore"):
        contrib = np.where(w > 0, w * vals, 0.0)
    out = np.zeros(theta.size)
    np.add.at(out, lane, contrib)
    return out


def _qn_brute(spec, phi, n, theta, j, budget):
    """``Q^n phi`` by summing over every symbol sequence (test oracle)."""
    T = spec.trans
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    j = np.broadcast_to(np.atleast_1d(j), theta.shape)
    if n == 0:
        return phi(j + 1, theta)
    if theta.size * spec.k ** n > budget:
        raise BudgetExceeded(f"brute Q^{n} needs {theta.size * spec.k ** n} terms")
    lane = np.arange(theta.size)
    th, w, last = theta.copy(), np.ones(theta.size), np.array(j, dtype=np.int64)
    for _ in range(n):
        parts = [(_image(spec, i, th), w * T[i, last], np.full(len(th), i), lane)
                 for i in range(spec.k)]
        th = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
        last = np.concatenate([p[2] for p in parts])
        lane = np.concatenate([p[3] for p in parts])
    vals = phi(last + 1, th)
    with np.errstate(invalid="ignore"):
        contrib = np.where(w > 0, w * vals, 0.0)
    out = np.zeros(theta.size)
    np.add.at(out, lane, contrib)
    return out


def _qn_decomposition(spec, phi, n, theta, j, budget):
    """``Q^n = Q_inv^n + T_n`` where ``T_n`` depends on the symbol only.

    ``T_1 phi(j) = sum_{i sing} P[i,j] phi(i, r_i)`` and
    ``T_{m+1} = Q_sing Q_inv^m + T_m P``.
    """
    T = spec.trans
    S = spec.sing_idx
    Tn = np.zeros(spec.k)
    r = spec.range_theta
    for m in range(n):
        # (Q_sing Q_inv^m phi)(j) = sum_{i sing} P[i, j] (Q_inv^m phi)(i, r_i)
        vals = _qinv_power(spec, phi, m, r[S], S, budget) if len(S) else np.zeros(0)
        qs = T[S, :].T @ vals if len(S) else np.zeros(spec.k)
        Tn = qs + Tn @ T
    return _qinv_power(spec, phi, n, theta, j, budget) + Tn[np.broadcast_to(j, np.shape(theta))]


def _qn_mc(spec, phi, n, theta, j, samples, seed):
    """Seeded Monte Carlo estimate of ``Q^n phi`` with standard errors."""
    from .sampling import symbols_from_uniforms
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    j = np.broadcast_to(np.atleast_1d(j), theta.shape)
    vals = np.empty(theta.size)
    errs = np.empty(theta.size)
    for a in range(theta.size):
        rng = make_rng(seed, "apply_Qn", a)
        u = rng.random((samples, n + 1))
        init = np.zeros(spec.k)
        init[j[a]] = 1.0
        sy = symbols_from_uniforms(spec, u, init=init)
        th = np.full(samples, theta[a])
        for t in range(1, n + 1):
            nxt = np.empty(samples)
            for i in range(spec.k):
                sel = sy[:, t] == i
                nxt[sel] = _image(spec, i, th[sel])
            th = nxt
        f = phi(sy[:, n] + 1, th)
        vals[a] = f.mean()
        errs[a] = f.std(ddof=1) / math.sqrt(samples) if samples > 1 else math.inf
    return vals, errs


def apply_Qn(spec: CocycleSpec, phi: Observable, n: int, x, symbol=None,
             method: str = "decomposition", budget: int = 2_000_000,
             mc_samples: int | None = 20_000, seed: int = 0, return_error: bool = False):
    """``Q^n phi`` at ``x``.

    ``method="decomposition"`` sums ``|inv|^n`` words from ``x`` plus a
    symbol-only constant built from the singular ranges; ``"brute"`` sums all
    ``k^n`` words.  When the word count exceeds ``budget`` a seeded Monte
    Carlo estimate is returned instead (``mc_samples=None`` disables it and
    raises ``BudgetExceeded``).  With ``return_error`` the standard error
    (0 for exact sums) is returned as well.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    theta = np.asarray(getattr(x, "theta", x), dtype=float)
    scalar = theta.ndim == 0
    if spec.is_markov:
        if symbol is None:
            raise DomainError("Markov operator needs the current symbol")
        j = np.asarray(symbol) - 1
    else:
        j = np.zeros((), dtype=np.int64) if symbol is None else np.asarray(symbol) - 1
    j = np.broadcast_to(j, theta.shape)
    err = np.zeros(np.atleast_1d(theta).shape)
    try:
        if method == "decomposition":
            out = _qn_decomposition(spec, phi, n, np.atleast_1d(theta), np.atleast_1d(j), budget)
        elif method == "brute":
            out = _qn_brute(spec, phi, n, np.atleast_1d(theta), np.atleast_1d(j), budget)
        else:
            raise ValueError(f"unknown method {method!r}")
    except BudgetExceeded:
        if not mc_samples:
            raise
        out, err = _qn_mc(spec, phi, n, np.atleast_1d(theta), np.atleast_1d(j), mc_samples, seed)
    if scalar:
        out, err = float(out[0]), float(err[0])
    return (out, err) if return_error else out


# -- checks ---------------------------------------------------------------------

@dataclass(frozen=True)
class StationarityRow:
    name: str
    lhs: float
    rhs: float
    discrepancy: float
    slack: float
    passed: bool


@dataclass(frozen=True)
class StationarityReport:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _apply_for_measure(m: AtomicMeasure, phi: Observable):
    spec = m.spec
    if m.kind == "markov":
        return apply_Q(spec, phi, m.theta, symbol=m.symbol)
    if m.kind == "bernoulli":
        return apply_Q(spec, phi, m.theta)
    return apply_Qbar(spec, phi, m.symbol, m.theta)


def check_stationarity(spec: CocycleSpec, m: AtomicMeasure, test_set) -> StationarityReport:
    """Compare ``int Q phi dm`` with ``int phi dm``; the truncated measure
    misses at most ``tail_mass``, hence the slack ``2 ||phi|| tail``."""
    if m.spec is not spec and m.spec != spec:
        raise DomainError("measure was built for a different spec")
    rows = []
    for phi in test_set:
        qv = _apply_for_measure(m, phi)
        lhs = float(np.sum(m.weight * qv))
        rhs = m.integrate(phi)
        disc = abs(lhs - rhs)
        slack = 2.0 * phi.sup_norm(spec) * m.tail_mass
        rows.append(StationarityRow(phi.name, lhs, rhs, disc, slack, disc <= slack + 1e-10))
    return StationarityReport(tuple(rows))


def perturb_largest(m: AtomicMeasure, factor: float = 1.1) -> AtomicMeasure:
    """Negative control: scale the heaviest atom's weight."""
    w = m.weight.copy()
    w[int(np.argmax(w))] *= factor
    return m.with_weights(w)


def check_diagram(spec: CocycleSpec, phi: Observable, sample_points) -> float:
    """``max |(pi o Qbar) phi - (Q o pi) phi|`` over the sample angles.

    The two sides are summed in opposite orders so the check is not a
    tautology of the code.
    """
    theta = np.asarray(sample_points, dtype=float)
    p = spec.stat
    left = np.zeros(theta.shape)
    for j in range(spec.k):
        left = left + p[j] * apply_Qbar(spec, phi, j + 1, theta)
    right = apply_Q(spec, project(spec, phi), theta)
    return float(np.max(np.abs(left - right)))


@dataclass(frozen=True)
class DecayFit:
    n: np.ndarray
    gap: np.ndarray
    C: float
    a: float


def ergodicity_decay(spec: CocycleSpec, phi: Observable, x, y, n_max: int = 20,
                     symbol=None, budget: int = 2_000_000) -> DecayFit:
    """``|Q^n phi(x) - Q^n phi(y)|`` for ``n <= n_max`` and a fit ``C e^(-a n)``."""
    ns = np.arange(n_max + 1)
    gaps = np.array([abs(apply_Qn(spec, phi, int(n), x, symbol, budget=budget, mc_samples=None)
                         - apply_Qn(spec, phi, int(n), y, symbol, budget=budget, mc_samples=None))
                     for n in ns])
    ok = gaps > 1e-300
    if ok.sum() >= 2:
        slope, icpt = np.polyfit(ns[ok], np.log(gaps[ok]), 1)
        C, a = float(np.exp(icpt)), float(-slope)
    else:
        C, a = 0.0, math.inf
    return DecayFit(ns, gaps, C, a)


def grid(n: int) -> np.ndarray:
    """``n`` equally spaced angles in ``[0, pi)``."""
    return np.arange(n) * (PI / n)
