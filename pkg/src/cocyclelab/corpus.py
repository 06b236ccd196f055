"""Named specs and the seeded random corpus used by the cross-checks."""

from __future__ import annotations

import math

import numpy as np

from .linalg2 import Mat2, diag, rot
from .model import CocycleSpec, certify_null_free, find_null_words

E1_PROJ = diag(1.0, 0.0)


def conformal() -> CocycleSpec:
    """``A1 = diag(1,0)``, ``A2 = 2 Id``, ``p = (1/2, 1/2)``; L1 = log(2)/2."""
    return CocycleSpec.bernoulli([E1_PROJ, diag(2.0, 2.0)], [0.5, 0.5], [1], name="conformal")


def rot07() -> CocycleSpec:
    return CocycleSpec.bernoulli([E1_PROJ, rot(0.7)], [0.3, 0.7], [1], name="rot07")


def nullword() -> CocycleSpec:
    """``A2 = rot(pi/2)`` sends ``e1`` to the kernel of ``A1``."""
    return CocycleSpec.bernoulli([E1_PROJ, rot(math.pi / 2)], [0.5, 0.5], [1], name="nullword")


def markov2() -> CocycleSpec:
    return CocycleSpec.markov([E1_PROJ, rot(0.7)], [[0.9, 0.2], [0.1, 0.8]], [1], name="markov2")


def binomial_surrogate() -> CocycleSpec:
    """Near-deterministic growth: ``p = (0.01, 0.99)``, ``A2 = 2 Id``."""
    return CocycleSpec.bernoulli([E1_PROJ, diag(2.0, 2.0)], [0.01, 0.99], [1], name="binomial")


PRESETS = {
    "conformal": conformal,
    "rot07": rot07,
    "nullword": nullword,
    "markov2": markov2,
    "binomial": binomial_surrogate,
}


def preset(name: str) -> CocycleSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def _rank_one(rng, positive: bool) -> Mat2:
    if positive:
        a, b = rng.uniform(0.15, 1.4, size=2)
    else:
        a, b = rng.uniform(0.0, math.pi, size=2)
    u = np.array([math.cos(a), math.sin(a)])
    v = np.array([math.cos(b), math.sin(b)])
    return Mat2.from_array(rng.uniform(0.6, 1.6) * np.outer(u, v))


def _invertible(rng) -> Mat2:
    s1, s2 = rng.uniform(1.0, 1.8), rng.uniform(0.5, 1.0)
    a, b = rng.uniform(-math.pi, math.pi, size=2)
    return rot(a) @ diag(s1, s2) @ rot(b)


def _positive(rng) -> Mat2:
    while True:
        m = Mat2.from_array(rng.uniform(0.2, 1.5, size=(2, 2)))
        if m.det > 0.1:
            return m


def _margin(spec: CocycleSpec, length: int) -> float:
    """Smallest relative norm ``||A_l V|| / (||A_l|| ||V||)`` over renewal
    blocks with at most ``length`` letters (enumerated)."""
    from .model import _renewal_frontier
    T = spec.trans
    worst = 1.0
    for _, _, W, V in _renewal_frontier(spec, length - 1, 10**7):
        last = W[:, -1]
        for l in spec.sing_idx:
            ok = T[l, last] > 0
            if ok.any():
                g = np.linalg.norm(V[ok] @ spec.mats[l].T, axis=1) / spec.letter_norms[l]
                worst = min(worst, float(g.min()))
    return worst


def random_spec(index: int, seed: int = 2024) -> CocycleSpec:
    """One corpus member; even indices are Bernoulli, odd indices Markov.

    Bernoulli members: ``k=3``, ``sing={1,2}`` and one invertible letter.
    Markov members: ``k=3``, ``sing={1}``, positive invertible letters, the
    transition ``3 -> 3`` forbidden and positive rank-one letter so the
    positive quadrant certifies absence of null words at every length.
    Candidates are redrawn until they validate, lie in the star set, are
    null-free up to 50 letters and keep renewal terms away from kernels.
    """
    rng = np.random.default_rng([seed, index])
    while True:
        if index % 2 == 0:
            mats = [_rank_one(rng, False), _rank_one(rng, False), _invertible(rng)]
            p3 = rng.uniform(0.35, 0.55)
            a = rng.uniform(0.3, 0.7)
            spec = CocycleSpec.bernoulli(mats, [a * (1 - p3), (1 - a) * (1 - p3), p3], [1, 2],
                                         name=f"corpus{index}")
        else:
            mats = [_rank_one(rng, True), _positive(rng), _positive(rng)]
            P = np.zeros((3, 3))
            P[0, :] = rng.uniform(0.4, 0.65, size=3)
            for j in (0, 1):
                x = rng.uniform(0.25, 0.75)
                P[1, j] = x * (1 - P[0, j])
                P[2, j] = (1 - x) * (1 - P[0, j])
            P[1, 2] = 1 - P[0, 2]
            spec = CocycleSpec.markov(mats, P, [1], name=f"corpus{index}")
        rep = spec.report
        if not rep.ok or not rep.advisories.get("in_M_star", False):
            continue
        if not certify_null_free(spec, 50).certified:
            continue
        if _margin(spec, 12) < 0.05:
            continue
        return spec


def random_corpus(size: int = 10, seed: int = 2024) -> list:
    return [random_spec(i, seed) for i in range(size)]


def random_bernoulli(rng, k: int = 3, n_sing: int = 1) -> CocycleSpec:
    """Unconstrained random Bernoulli spec for property tests."""
    mats = [_rank_one(rng, False) for _ in range(n_sing)]
    mats += [_invertible(rng) for _ in range(k - n_sing)]
    p = rng.dirichlet(np.ones(k)) * 0.9 + 0.1 / k
    return CocycleSpec.bernoulli(mats, p / p.sum(), list(range(1, n_sing + 1)))
