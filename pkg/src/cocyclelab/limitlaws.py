"""Large-deviation and central-limit experiments and the Gordin-Livsic variance."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ._kernels import get_kernels
from .errors import BudgetExceeded, DegenerateVariance, DomainError
from .linalg2 import act
from .lyapunov import path_sums, reference_l1
from .model import CocycleSpec, require_valid
from .sampling import chunk_sizes, make_rng, run_chunks, symbols_from_uniforms
from .stationary import (AtomicMeasure, Observable, product_measure,
                         stationary_measure, step_observable)

SIGMA_MIN = 1e-8


def truncate_observable(phi: Observable, N: float) -> Observable:
    """``max(phi, -N)``."""
    if N <= 0:
        raise ValueError("N must be positive")
    sup = None if phi.sup is None else max(float(N), phi.sup)
    return Observable(lambda s, t: np.maximum(phi.fn(s, t), -N), sup=sup,
                      marginal=phi.marginal, name=f"{phi.name}_N{N:g}")


# -- LDT ----------------------------------------------------------------------

def wilson(k: int, n: int, level: float = 0.95):
    """Wilson score interval for ``k`` successes in ``n`` trials."""
    z = stats.norm.ppf(0.5 + level / 2)
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    den = 1 + z * z / n
    centre = (ph + z * z / (2 * n)) / den
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    # the endpoints are exact at k = 0 and k = n; rounding would leave ~1e-18
    lo = 0.0 if k == 0 else max(0.0, centre - half)
    hi = 1.0 if k == n else min(1.0, centre + half)
    return lo, hi


@dataclass
class LDTReport:
    epsilon: float
    schedule: list
    samples: int
    seed: int
    L1_ref: float
    counts: list
    frequencies: list
    intervals: list
    C: float
    c0: float
    monotone: bool
    inversions: list
    decayed: bool

    @property
    def vacuous(self) -> bool:
        """No deviation observed at any ``n``; the bound holds trivially."""
        return not any(self.counts)

    @property
    def passed(self) -> bool:
        return self.vacuous or (self.monotone and self.decayed and self.c0 > 0)

    def rows(self):
        for n, f, (lo, hi), cnt in zip(self.schedule, self.frequencies, self.intervals, self.counts):
            yield (n, n ** (1 / 3), f, lo, hi, math.log(f) if f > 0 else "", cnt, self.samples)

    def to_dict(self):
        return {"epsilon": self.epsilon, "schedule": self.schedule, "samples": self.samples,
                "seed": self.seed, "L1_ref": self.L1_ref, "counts": self.counts,
                "frequencies": self.frequencies, "wilson95": self.intervals,
                "fit": {"C": self.C, "c0": self.c0}, "monotone": self.monotone,
                "inversions": self.inversions, "decayed": self.decayed, "vacuous": self.vacuous,
                "passed": self.passed}


def matrix_log_norms(spec: CocycleSpec, n: int, samples: int, seed: int, purpose: str,
                     threads: int | None = None, null_tol: float = 1e-12) -> np.ndarray:
    """``log ||A^n||`` (operator norm) for sampled stationary paths."""
    require_valid(spec)
    kern = get_kernels()
    mats = np.ascontiguousarray(spec.mats)
    fn = np.sqrt(np.einsum("kij,kij->k", mats, mats))
    sizes = chunk_sizes(samples)

    def work(c):
        rng = make_rng(seed, purpose, c)
        sy = symbols_from_uniforms(spec, rng.random((sizes[c], n)))
        out = np.empty(sizes[c])
        kern.matrix_walk(mats, fn, sy, null_tol, out)
        return out

    return np.concatenate(run_chunks(work, len(sizes), threads))


def ldt_experiment(spec: CocycleSpec, L1_ref: float, epsilon: float, schedule, samples: int,
                   seed: int, threads: int | None = None) -> LDTReport:
    """Deviation frequencies of ``(1/n) log ||A^n||`` from ``L1_ref``.

    Each ``n`` uses its own stream.  The fit is least squares of
    ``log f`` on ``n^(1/3)`` over nonzero frequencies.  Frequencies must be
    non-increasing except for at most one rise no larger than a Wilson
    half-width, the last must be below the first, and the fitted ``c0``
    positive.
    """
    if not math.isfinite(L1_ref):
        raise DomainError("L1_ref must be finite")
    schedule = [int(n) for n in schedule]
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    counts, freqs, ints = [], [], []
    for n in schedule:
        x = matrix_log_norms(spec, n, samples, seed, f"ldt{n}", threads) / n
        with np.errstate(invalid="ignore"):
            dev = ~(np.abs(x - L1_ref) <= epsilon)
        k = int(dev.sum())
        counts.append(k)
        freqs.append(k / samples)
        ints.append(wilson(k, samples))
    ns = np.array(schedule, dtype=float)
    f = np.array(freqs)
    nz = f > 0
    if nz.sum() >= 2:
        slope, icpt = np.polyfit(ns[nz] ** (1 / 3), np.log(f[nz]), 1)
        C, c0 = float(math.exp(icpt)), float(-slope)
    elif nz.sum() == 1 and not nz[-1]:
        # a single nonzero frequency followed by zeros: decay, rate unresolved
        C, c0 = float(f[nz][0]), math.inf
    else:
        C, c0 = (0.0, math.inf) if not nz.any() else (float(f[-1]), 0.0)
    inversions = []
    for a in range(len(f) - 1):
        if f[a + 1] > f[a]:
            half = max((ints[a][1] - ints[a][0]) / 2, (ints[a + 1][1] - ints[a + 1][0]) / 2)
            inversions.append({"index": a + 1, "rise": float(f[a + 1] - f[a]), "half_width": half})
    monotone = len(inversions) == 0 or (len(inversions) == 1 and
                                        inversions[0]["rise"] <= inversions[0]["half_width"])
    decayed = bool(f[-1] < f[0]) if len(f) > 1 else False
    return LDTReport(epsilon, schedule, samples, seed, L1_ref, counts, freqs,
                     [list(i) for i in ints], C, c0, monotone, inversions, decayed)


# -- variance -----------------------------------------------------------------

@dataclass
class GLResult:
    sigma2: float
    residual: float
    M: int
    N_trunc: float
    mean: float
    clamped: bool = False
    warnings: list = field(default_factory=list)

    def __float__(self):
        return float(self.sigma2)

    def to_dict(self):
        return {"sigma2": self.sigma2, "coboundary_residual": self.residual, "M": self.M,
                "N_trunc": self.N_trunc, "mean": self.mean, "clamped": self.clamped,
                "warnings": list(self.warnings)}


def _qinv_series(spec, f, points, M, budget, seed):
    """``U(y) = sum_{n<=M} Q_inv^n f(y)`` and the list of per-``n`` values.

    Exact enumeration while it fits in ``budget``; beyond that each
    ``Q_inv^n f`` is estimated by seeded sampling of invertible letters.
    """
    p = spec.stat
    I = spec.inv_idx
    y = np.asarray(points, dtype=float)
    terms = np.zeros((M + 1, y.size))
    # exact breadth-first sweep over invertible words
    th = y.copy()
    w = np.ones(y.size)
    lane = np.arange(y.size)
    n = 0
    while n <= M:
        vals = f(th)
        np.add.at(terms[n], lane, w * vals)
        if n == M:
            break
        if th.size * len(I) > budget:
            break
        th = np.concatenate([act(spec.mats[i], th) for i in I])
        w = np.concatenate([w * p[i] for i in I])
        lane = np.tile(lane, len(I))
        n += 1
    if n < M:
        warnings.warn("Gordin-Livsic sum switched to Monte Carlo beyond word budget")
        rng = make_rng(seed, "gl_mc", 0)
        law = p[I] / p[I].sum()
        S = 4096
        letters = rng.choice(I, size=(S, M), p=law)
        for a, y0 in enumerate(y):
            t = np.full(S, y0)
            for m in range(1, M + 1):
                nxt = np.empty(S)
                for i in I:
                    sel = letters[:, m - 1] == i
                    nxt[sel] = act(spec.mats[i], t[sel])
                t = nxt
                if m > n:
                    terms[m, a] = (1 - spec.q0) ** m * float(np.mean(f(t)))
    return terms.sum(axis=0), terms


def variance_gl(spec: CocycleSpec, measure: AtomicMeasure | None = None, series_depth: int = 40,
                N_trunc: float = 40.0, budget: int = 5_000_000, gl_tol: float = 1e-12,
                seed: int = 0) -> GLResult:
    """Gordin-Livsic variance ``||g||^2 - ||Qbar g||^2`` of the truncated step
    observable on ``p x eta`` (Bernoulli specs).

    With ``h = pi phi_bar`` the series ``G = sum_n Q^n h`` splits, via
    ``Q^n = Q_inv^n + Q_sing sum_{i<n} Q_inv^i``, into an invertible-word sum
    and a constant; ``g(i, v) = phi_bar(i, v) + G(A_i v)``.  The sum is
    truncated at ``M`` terms with ``(1-q)^M ||h|| <= gl_tol``.  Atom weights
    are normalized by the covered mass.
    """
    require_valid(spec)
    if spec.is_markov:
        raise DomainError("variance_gl is implemented for Bernoulli specs")
    if measure is None:
        measure = stationary_measure(spec, series_depth)
    if measure.kind == "bernoulli":
        pm = product_measure(measure)
    elif measure.kind == "product":
        pm = measure
    else:
        raise DomainError("need a Bernoulli or product measure")
    p = spec.stat
    q = spec.q0
    k = spec.k
    phiN = truncate_observable(step_observable(spec), N_trunc)

    def psiN(theta):
        return sum(p[i] * phiN(np.full(np.shape(theta), i + 1), theta) for i in range(k))

    wts = pm.weight / pm.weight.sum()
    if q >= 1:
        M = 1
    else:
        # sup of psi_N - (its mean) is at most twice the sup of psi_N
        grid_ = np.arange(4096) * (math.pi / 4096)
        hsup = max(2.0 * float(np.max(np.abs(psiN(grid_)))), 1e-300)
        M = max(1, math.ceil(math.log(gl_tol / hsup) / math.log(1 - q))) if hsup > gl_tol else 1
    S = spec.sing_idx
    r = spec.range_theta
    # Y_i = sum_s p_s Q_inv^i psi_N(r_s); their sum is the eta-mean of psi_N,
    # computed to the same depth M as every other word sum
    _, Yterms = _qinv_series(spec, psiN, r[S], M, budget, seed)
    Y = Yterms @ p[S]
    mean = float(np.sum(Y))
    idx = np.arange(M + 1)
    X = Y - mean * q * (1 - q) ** idx
    shift = float(np.sum(idx * X))

    def G(points):
        U, _ = _qinv_series(spec, psiN, points, M, budget, seed)
        U = U - mean * np.sum((1 - q) ** idx)
        return U - shift

    def image(sym, theta):
        out = np.empty(theta.shape)
        for i in range(k):
            sel = sym == i + 1
            out[sel] = (np.full(sel.sum(), r[i]) if spec.sing_mask[i]
                        else act(spec.mats[i], theta[sel]))
        return out

    # distinct evaluation points keep the word sums small
    y1 = image(pm.symbol, pm.theta)
    pts, inv1 = np.unique(y1, return_inverse=True)
    Gy1 = G(pts)[inv1]
    phibar = phiN(pm.symbol, pm.theta) - mean
    g = phibar + Gy1
    # Qbar g (i, v) = sum_l p_l [phi_bar(l, A_i v) + G(A_l A_i v)]
    Qg = np.zeros_like(g)
    for l in range(k):
        sym_l = np.full(y1.shape, l + 1)
        y2 = image(sym_l, y1)
        pts2, inv2 = np.unique(y2, return_inverse=True)
        Qg += p[l] * (phiN(sym_l, y1) - mean + G(pts2)[inv2])
    sigma2 = float(np.sum(wts * g * g) - np.sum(wts * Qg * Qg))
    residual = float(np.max(np.abs(phibar - (g - Qg))))
    res = GLResult(sigma2, residual, M, N_trunc, mean)
    tol = gl_tol * (1 + float(np.max(np.abs(g)))) * 10
    if sigma2 < 0:
        res.clamped = True
        res.warnings.append(f"sigma2={sigma2:.3g} clamped to 0")
        res.sigma2 = 0.0
    elif sigma2 <= tol:
        res.warnings.append(f"sigma2={sigma2:.3g} is within tolerance of 0")
    if residual > gl_tol * (1 + float(np.max(np.abs(g)))):
        res.warnings.append(f"coboundary residual {residual:.3g} above tolerance")
    return res


def variance_sensitivity(spec: CocycleSpec, Ns=(20, 40, 80), **kw) -> dict:
    return {float(N): variance_gl(spec, N_trunc=N, **kw).sigma2 for N in Ns}


@dataclass
class VarianceEstimate:
    sigma2: float
    std_error: float
    n: int
    samples: int

    def __float__(self):
        return float(self.sigma2)


def variance_empirical(spec: CocycleSpec, n: int, samples: int, L1_ref: float, seed: int,
                       threads: int | None = None) -> VarianceEstimate:
    """Sample variance of ``(S_n - n L1) / sqrt(n)`` over seeded paths."""
    if not math.isfinite(L1_ref):
        raise DomainError("L1_ref must be finite")
    sums, _ = path_sums(spec, n, samples, seed, "variance", threads)
    z = (sums - n * L1_ref) / math.sqrt(n)
    if not np.all(np.isfinite(z)):
        raise DomainError("a sampled path hit a kernel; the variance is undefined")
    v = float(np.var(z, ddof=1)) if samples > 1 else 0.0
    se = v * math.sqrt(2.0 / (samples - 1)) if samples > 1 else math.inf
    return VarianceEstimate(max(v, 0.0), se, n, samples)


# -- CLT ------------------------------------------------------------------------

@dataclass
class CLTReport:
    n: int
    samples: int
    seed: int
    sigma_used: float
    sigma_source: str
    L1_ref: float
    ks: float
    ks_pvalue: float
    ks_threshold: float
    summary: dict
    values: np.ndarray = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return self.ks <= self.ks_threshold

    def to_dict(self):
        return {"n": self.n, "samples": self.samples, "seed": self.seed,
                "sigma_used": self.sigma_used, "sigma_source": self.sigma_source,
                "L1_ref": self.L1_ref, "ks": self.ks, "ks_pvalue": self.ks_pvalue,
                "ks_threshold": self.ks_threshold, "passed": self.passed,
                "summary": self.summary}


def clt_experiment(spec: CocycleSpec, n: int, samples: int, sigma_source="gordin_livsic",
                   seed: int = 0, L1_ref: float | None = None, mode: str = "vector",
                   ks_threshold: float = 0.05, sigma_scale: float = 1.0,
                   threads: int | None = None, N_trunc: float = 40.0) -> CLTReport:
    """KS distance between ``(log ||A^n|| - n L1)/(sigma sqrt n)`` and N(0,1).

    ``sigma_source`` is ``gordin_livsic``, ``empirical`` (an independent
    batch on its own stream) or a positive number.  ``mode`` selects vector
    sums from a stationary start or operator norms of the product.
    ``sigma_scale`` rescales sigma (negative controls).
    """
    require_valid(spec)
    if L1_ref is None:
        L1_ref = reference_l1(spec).value
    if not math.isfinite(L1_ref):
        raise DomainError("L1 is -inf; no CLT")
    if isinstance(sigma_source, (int, float)):
        sigma, source = float(sigma_source), "given"
    elif sigma_source == "gordin_livsic":
        sigma, source = math.sqrt(max(variance_gl(spec, N_trunc=N_trunc).sigma2, 0.0)), sigma_source
    elif sigma_source == "empirical":
        est = variance_empirical(spec, n, samples, L1_ref, seed + 1, threads)
        sigma, source = math.sqrt(est.sigma2), sigma_source
    else:
        raise ValueError(f"unknown sigma_source {sigma_source!r}")
    sigma *= sigma_scale
    if sigma <= SIGMA_MIN:
        raise DegenerateVariance(f"sigma={sigma:.3g} is below {SIGMA_MIN}")
    if mode == "vector":
        sums, _ = path_sums(spec, n, samples, seed, "clt", threads)
    elif mode == "matrix":
        sums = matrix_log_norms(spec, n, samples, seed, "clt_matrix", threads)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    z = (sums - n * L1_ref) / (sigma * math.sqrt(n))
    if not np.all(np.isfinite(z)):
        raise DomainError("a sampled path hit a kernel")
    ks = stats.kstest(z, "norm")
    summary = {"mean": float(np.mean(z)), "std": float(np.std(z, ddof=1)),
               "q05": float(np.quantile(z, 0.05)), "q50": float(np.median(z)),
               "q95": float(np.quantile(z, 0.95))}
    return CLTReport(n, samples, seed, sigma, source, float(L1_ref), float(ks.statistic),
                     float(ks.pvalue), ks_threshold, summary, z)
