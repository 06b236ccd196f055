"""Cocycle specifications, validation, renewal words and null-word search.

Symbols are 1-based in every public interface (``Word``, ``sing``, CLI);
arrays indexed by symbol are 0-based internally.

Conventions
-----------
``P[i, j]`` is the probability of moving from ``j`` to ``i`` (columns sum to
one) and the stationary vector satisfies ``q = P q``.  A Bernoulli spec is the
Markov spec with ``P[i, j] = p[i]``.  A word ``(w0, w1, ..., wn)`` has fiber
product ``A[wn] ... A[w1]``; the first letter is an anchor and is never
multiplied.  ``p(w)`` omits the initial weight of ``w0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (BudgetExceeded, DomainError, InvalidMatrix,
                     PrimitivityError, SpecError)
from .linalg2 import (DEFAULT_RANK_TOL, PI, Mat2, MatrixClass, ProjPoint,
                      canonical_angle, classify, proj_dist, svd2)

DEFAULT_NULL_TOL = 1e-12
DEFAULT_BLOCK_CAP = 10**6
STOCH_TOL = 1e-12


# -- words -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Word:
    """Finite word over ``{1..k}``; the first letter is never multiplied."""

    symbols: tuple

    def __post_init__(self):
        syms = tuple(int(s) for s in self.symbols)
        if not syms:
            raise ValueError("a word needs at least one symbol")
        if min(syms) < 1:
            raise ValueError("symbols are 1-based")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def parse(cls, text: str) -> "Word":
        body = text.strip().strip("()")
        return cls(tuple(int(t) for t in body.replace("-", ",").split(",") if t.strip()))

    @property
    def n(self) -> int:
        """Number of multiplied letters."""
        return len(self.symbols) - 1

    @property
    def first(self) -> int:
        return self.symbols[0]

    @property
    def last(self) -> int:
        return self.symbols[-1]

    @property
    def interior(self) -> tuple:
        return self.symbols[1:-1]

    def in_block(self, spec: "CocycleSpec", s: int, l: int | None = None) -> bool:
        """Membership in the renewal set, Markov form ``(s, l)`` or Bernoulli form ``(s)``."""
        if self.first != s or s not in spec.sing:
            return False
        if l is None:
            return all(w in spec.inv for w in self.symbols[1:])
        return self.n >= 1 and self.last == l and all(w in spec.inv for w in self.interior)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "(" + ",".join(str(s) for s in self.symbols) + ")"


# -- specification -----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    advisory: bool = False

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "advisory": self.advisory}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.advisory)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.advisory and not c.passed]

    @property
    def advisories(self) -> dict:
        return {c.name: c.passed for c in self.checks if c.advisory}

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _as_mats(matrices) -> tuple:
    out = []
    for m in matrices:
        try:
            out.append(Mat2.from_array(m))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidMatrix):
                raise
            raise InvalidMatrix(str(exc)) from exc
    return tuple(out)


@dataclass(frozen=True)
class CocycleSpec:
    """Alphabet partition, letter matrices and base law.

    Exactly one of ``p`` (Bernoulli) or ``P`` (Markov, left-stochastic) is
    set.  For Markov specs ``q`` is computed when omitted.  Instances are
    immutable; derived arrays are cached on first use.
    """

    matrices: tuple
    sing: tuple
    p: tuple | None = None
    P: tuple | None = None
    q: tuple | None = None
    rank_tol: float = DEFAULT_RANK_TOL
    block_cap: int = DEFAULT_BLOCK_CAP
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrices", _as_mats(self.matrices))
        object.__setattr__(self, "sing", tuple(sorted({int(s) for s in self.sing})))
        if (self.p is None) == (self.P is None):
            raise ValueError("give exactly one of p (Bernoulli) or P (Markov)")
        k = len(self.matrices)
        if self.p is not None:
            p = tuple(float(x) for x in self.p)
            if len(p) != k:
                raise ValueError(f"p has {len(p)} entries for {k} letters")
            object.__setattr__(self, "p", p)
        else:
            P = np.asarray(self.P, dtype=float)
            if P.shape != (k, k):
                raise ValueError(f"P has shape {P.shape}, expected {(k, k)}")
            object.__setattr__(self, "P", tuple(tuple(float(x) for x in row) for row in P))
            if self.q is None:
                try:
                    q = stationary_vector(P)
                except PrimitivityError:
                    q = None
                object.__setattr__(self, "q", None if q is None else tuple(float(x) for x in q))
            else:
                object.__setattr__(self, "q", tuple(float(x) for x in self.q))
        for s in self.sing:
            if not 1 <= s <= k:
                raise ValueError(f"singular symbol {s} outside 1..{k}")

    @classmethod
    def bernoulli(cls, matrices, p, sing, **kw) -> "CocycleSpec":
        return cls(matrices=matrices, sing=tuple(sing), p=tuple(p), **kw)

    @classmethod
    def markov(cls, matrices, P, sing, q=None, **kw) -> "CocycleSpec":
        return cls(matrices=matrices, sing=tuple(sing), P=P, q=q, **kw)

    def replace_matrices(self, matrices, name: str | None = None) -> "CocycleSpec":
        return CocycleSpec(matrices=tuple(matrices), sing=self.sing, p=self.p, P=self.P,
                           q=self.q, rank_tol=self.rank_tol, block_cap=self.block_cap,
                           name=self.name if name is None else name)

    # derived data
    @property
    def k(self) -> int:
        return len(self.matrices)

    @property
    def is_markov(self) -> bool:
        return self.P is not None

    @cached_property
    def inv(self) -> tuple:
        return tuple(i for i in range(1, self.k + 1) if i not in self.sing)

    @cached_property
    def sing_mask(self) -> np.ndarray:
        m = np.zeros(self.k, dtype=bool)
        m[[s - 1 for s in self.sing]] = True
        return m

    @cached_property
    def sing_idx(self) -> np.ndarray:
        return np.flatnonzero(self.sing_mask)

    @cached_property
    def inv_idx(self) -> np.ndarray:
        return np.flatnonzero(~self.sing_mask)

    @cached_property
    def mats(self) -> np.ndarray:
        return np.array([m.array for m in self.matrices])

    @cached_property
    def trans(self) -> np.ndarray:
        """Transition matrix, ``trans[i, j] = P(j -> i)``."""
        if self.is_markov:
            return np.array(self.P)
        p = np.array(self.p)
        return np.repeat(p[:, None], self.k, axis=1)

    @cached_property
    def stat(self) -> np.ndarray:
        """Stationary law of the symbol chain (``q`` or ``p``)."""
        if self.is_markov:
            if self.q is None:
                raise PrimitivityError("P is not primitive; no stationary vector")
            return np.array(self.q)
        return np.array(self.p)

    @cached_property
    def q0(self) -> float:
        """Stationary mass of the singular letters."""
        return float(self.stat[self.sing_idx].sum())

    @cached_property
    def classes(self) -> tuple:
        return tuple(classify(m, self.rank_tol) for m in self.matrices)

    @cached_property
    def _svds(self):
        return tuple(svd2(m) for m in self.matrices)

    @cached_property
    def range_theta(self) -> np.ndarray:
        out = np.full(self.k, np.nan)
        for i, (c, s) in enumerate(zip(self.classes, self._svds)):
            if c is MatrixClass.RANK1:
                out[i] = s.left1
        return out

    @cached_property
    def kernel_theta(self) -> np.ndarray:
        out = np.full(self.k, np.nan)
        for i, (c, s) in enumerate(zip(self.classes, self._svds)):
            if c is MatrixClass.RANK1:
                out[i] = s.right2
        return out

    @cached_property
    def range_vec(self) -> np.ndarray:
        t = np.nan_to_num(self.range_theta, nan=0.0)
        v = np.stack([np.cos(t), np.sin(t)], axis=1)
        v[~self.sing_mask] = 0.0
        return v

    @cached_property
    def letter_norms(self) -> np.ndarray:
        return np.array([s.sigma1 for s in self._svds])

    @cached_property
    def min_singular(self) -> np.ndarray:
        return np.array([s.sigma2 for s in self._svds])

    def range_point(self, s: int) -> ProjPoint:
        """Range direction of the singular letter ``s`` (1-based)."""
        if s not in self.sing:
            raise DomainError(f"symbol {s} is not singular")
        return ProjPoint(self.range_theta[s - 1])

    def kernel_point(self, s: int) -> ProjPoint:
        if s not in self.sing:
            raise DomainError(f"symbol {s} is not singular")
        return ProjPoint(self.kernel_theta[s - 1])

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    def describe(self) -> dict:
        d = {"name": self.name, "k": self.k, "sing": list(self.sing),
             "matrices": [list(m.entries) for m in self.matrices]}
        if self.is_markov:
            d["P"] = [list(r) for r in self.P]
            d["q"] = None if self.q is None else list(self.q)
        else:
            d["p"] = list(self.p)
        return d


# -- Markov chain helpers ----------------------------------------------------

def is_primitive(P) -> bool:
    """Whether some power of ``P`` up to the Wielandt bound is entrywise positive."""
    B = (np.asarray(P) > 0).astype(np.int64)
    k = B.shape[0]
    bound = (k - 1) ** 2 + 1
    M = B.copy()
    for _ in range(bound - 1):
        if M.all():
            return True
        M = ((B @ M) > 0).astype(np.int64)
    return bool(M.all())


def stationary_vector(P) -> np.ndarray:
    """Stationary vector of a primitive left-stochastic matrix.

    Repeated squaring of ``P`` drives its columns to ``q``; a few plain power
    steps polish the result, which is then residual-checked.
    """
    P = np.asarray(P, dtype=float)
    if not is_primitive(P):
        raise PrimitivityError("P is not primitive")
    k = P.shape[0]
    M = P.copy()
    for _ in range(200):
        M2 = M @ M
        spread = np.max(M2.max(axis=1) - M2.min(axis=1))
        M = M2
        if spread < 1e-15:
            break
    q = M.mean(axis=1)
    for _ in range(50):
        q = P @ q
        q = q / q.sum()
    resid = np.max(np.abs(P @ q - q))
    if resid > STOCH_TOL or np.any(q <= 0):
        # slow mixing: fall back to the null space of P - I
        A = np.vstack([P - np.eye(k), np.ones(k)])
        b = np.zeros(k + 1)
        b[-1] = 1.0
        q = np.linalg.lstsq(A, b, rcond=None)[0]
        q = np.clip(q, 0.0, None)
        q = q / q.sum()
    return q


def inv_block(spec: CocycleSpec) -> np.ndarray:
    """Transition block restricted to invertible letters (substochastic)."""
    I = spec.inv_idx
    return spec.trans[np.ix_(I, I)]


# -- validation --------------------------------------------------------------

def validate(spec: CocycleSpec) -> ValidationReport:
    """Check every structural invariant; never raises."""
    checks = []
    k = spec.k
    checks.append(Check("k>=2", k >= 2, f"k={k}"))
    checks.append(Check("sing_nonempty", len(spec.sing) > 0, f"sing={list(spec.sing)}"))
    checks.append(Check("inv_nonempty", len(spec.inv) > 0,
                        "all letters singular" if not spec.inv else "", advisory=True))
    for i, (m, c) in enumerate(zip(spec.matrices, spec.classes), start=1):
        want = MatrixClass.RANK1 if i in spec.sing else MatrixClass.INV_POS
        ok = c is want
        detail = f"letter {i}: {c.value}"
        if not ok:
            detail = f"letter {i}: expected {want.value}, got {c.value} (det={m.det:.6g})"
        checks.append(Check(f"rank[{i}]", ok, detail))

    law_ok = True
    if spec.is_markov:
        P = np.array(spec.P)
        cols = P.sum(axis=0)
        ok = bool(np.all(P >= 0) and np.all(np.abs(cols - 1) <= STOCH_TOL))
        law_ok &= ok
        checks.append(Check("P_stochastic", ok, f"column sums {np.round(cols, 15).tolist()}"))
        prim = is_primitive(P)
        law_ok &= prim
        checks.append(Check("primitivity", prim,
                            "" if prim else "PrimitivityError: P is not primitive"))
        if spec.q is None:
            checks.append(Check("stationary_q", False, "no stationary vector"))
            law_ok = False
        else:
            q = np.array(spec.q)
            res = float(np.max(np.abs(P @ q - q)))
            ok = res <= STOCH_TOL and bool(np.all(q > 0)) and abs(q.sum() - 1) <= STOCH_TOL
            law_ok &= ok
            checks.append(Check("stationary_q", ok, f"|Pq-q|={res:.3g}"))
    else:
        p = np.array(spec.p)
        ok = bool(np.all(p > 0)) and abs(p.sum() - 1) <= STOCH_TOL
        law_ok &= ok
        checks.append(Check("p_law", ok, f"sum={p.sum():.17g}, min={p.min():.3g}"))

    if law_ok and spec.sing:
        q0 = spec.q0
        mean_block = math.inf if q0 <= 0 else 1.0 / q0
        ok = mean_block <= spec.block_cap
        checks.append(Check("block_length", ok,
                            f"expected block length {mean_block:.3g}, cap {spec.block_cap}"))

    # advisory flags
    sing0 = [s - 1 for s in spec.sing]
    ranks_ok = all(spec.classes[i] is MatrixClass.RANK1 for i in sing0)
    if ranks_ok and sing0:
        dmin = min(proj_dist(spec.range_theta[i], spec.kernel_theta[j])
                   for i in sing0 for j in sing0)
        checks.append(Check("in_M_star", dmin > spec.rank_tol,
                            f"min dist(range, kernel)={dmin:.3g}", advisory=True))
    if spec.is_markov and spec.inv:
        B = inv_block(spec)
        checks.append(Check("inv_subshift_mixing", is_primitive(B), "", advisory=True))
    return ValidationReport(tuple(checks))


def require_valid(spec: CocycleSpec) -> CocycleSpec:
    rep = spec.report
    if not rep.ok:
        raise SpecError(rep)
    return spec


# -- words and products ------------------------------------------------------

def word_prob(spec: CocycleSpec, w: Word) -> float:
    """``p(w)``: transition product along the word, initial weight excluded."""
    T = spec.trans
    out = 1.0
    for a, b in zip(w.symbols[:-1], w.symbols[1:]):
        out *= T[b - 1, a - 1]
    return out


def words(spec: CocycleSpec, s: int, l: int | None, n: int) -> Iterator[tuple]:
    """Enumerate renewal words with their probabilities.

    With ``l`` given: words ``(s, w1..w_{n-1}, l)`` with invertible interior
    (requires ``n >= 1``).  With ``l=None`` (Bernoulli form): words
    ``(s, w1..wn)`` with all ``wi`` invertible (``n >= 0``).  Words of zero
    probability are skipped.
    """
    if s not in spec.sing:
        raise DomainError(f"start symbol {s} is not singular")
    if l is None:
        if n < 0:
            raise ValueError("n must be >= 0")
        tails = itertools.product(spec.inv, repeat=n)
        cands = ((s,) + t for t in tails)
    else:
        if n < 1:
            raise ValueError("n must be >= 1")
        cands = ((s,) + t + (l,) for t in itertools.product(spec.inv, repeat=n - 1))
    for syms in cands:
        w = Word(syms)
        pr = word_prob(spec, w)
        if pr > 0.0:
            yield w, pr


def fiber_product(spec: CocycleSpec, w: Word) -> Mat2:
    """``A[wn] ... A[w1]``; the identity for a one-letter word."""
    M = Mat2.identity()
    for sym in w.symbols[1:]:
        M = spec.matrices[sym - 1] @ M
    return M


def cocycle_constant(spec: CocycleSpec) -> float:
    """Smallest ``c`` with ``||A_i|| <= e^c``, ``||A_j^-1|| <= e^c`` (j invertible)
    and ``||A_i r_l|| >= e^-c`` for singular ``i, l``."""
    c = float(np.max(np.log(spec.letter_norms)))
    for j in spec.inv_idx:
        sm = spec.min_singular[j]
        if sm > 0:
            c = max(c, -math.log(sm))
    for i in spec.sing_idx:
        for l in spec.sing_idx:
            g = float(np.linalg.norm(spec.mats[i] @ spec.range_vec[l]))
            c = max(c, math.inf if g == 0 else -math.log(g))
    return c


# -- null words --------------------------------------------------------------

def _renewal_frontier(spec: CocycleSpec, max_interior: int, budget: int):
    """Yield ``(level, start, words, vecs)`` for all positive-probability
    invertible interiors up to ``max_interior`` letters, vectors normalized."""
    T = spec.trans
    inv = spec.inv_idx
    total = 0
    for s in spec.sing_idx:
        words_ = np.array([[s]], dtype=np.int64)
        vecs = spec.range_vec[[s]].copy()
        yield 0, s, words_, vecs
        for level in range(1, max_interior + 1):
            last = words_[:, -1]
            new_w, new_v = [], []
            for i in inv:
                keep = T[i, last] > 0
                if not keep.any():
                    continue
                w = np.concatenate([words_[keep], np.full((keep.sum(), 1), i)], axis=1)
                v = vecs[keep] @ spec.mats[i].T
                v /= np.linalg.norm(v, axis=1)[:, None]
                new_w.append(w)
                new_v.append(v)
            if not new_w:
                break
            words_ = np.concatenate(new_w)
            vecs = np.concatenate(new_v)
            total += len(words_)
            if total > budget:
                raise BudgetExceeded(f"null-word search exceeded {budget} words")
            yield level, s, words_, vecs


def find_null_words(spec: CocycleSpec, max_len: int, null_tol: float = DEFAULT_NULL_TOL,
                    budget: int = 5_000_000) -> list:
    """All renewal blocks ``(s, interior, s')`` with at most ``max_len``
    multiplied letters whose product kills ``r_s``.

    The test is ``||A_s' V|| <= null_tol * ||A_s'|| * ||V||`` where ``V`` is
    the interior product applied to ``r_s``.  An empty result says nothing
    about longer words.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    T = spec.trans
    found = []
    for level, s, W, V in _renewal_frontier(spec, max_len - 1, budget):
        last = W[:, -1]
        for sp in spec.sing_idx:
            ok = T[sp, last] > 0
            if not ok.any():
                continue
            g = np.linalg.norm(V[ok] @ spec.mats[sp].T, axis=1)
            hit = g <= null_tol * spec.letter_norms[sp]
            for row in W[ok][hit]:
                found.append(Word(tuple(int(x) + 1 for x in row) + (int(sp) + 1,)))
    return sorted(found, key=lambda w: (len(w), w.symbols))


@dataclass(frozen=True)
class NullCertificate:
    certified: bool
    method: str
    horizon: float
    detail: str = ""


def _cover_arc(points_lo, points_hi):
    """Smallest arc of the projective circle covering the given arcs.

    Arcs are ``[lo, lo + len]`` with angles mod pi.  Returns ``(lo, length)``.
    """
    lo = np.mod(np.asarray(points_lo, dtype=float), PI)
    ln = np.asarray(points_hi, dtype=float)
    if np.any(ln >= PI):
        return 0.0, PI
    order = np.argsort(lo)
    lo, ln = lo[order], ln[order]
    # sweep twice around to merge wrapping arcs
    starts = np.concatenate([lo, lo + PI])
    ends = np.concatenate([lo + ln, lo + ln + PI])
    best_gap, best_end = -1.0, None
    reach = ends[0]
    for a, b in zip(starts[1:], ends[1:]):
        if a > reach:
            gap = a - reach
            if gap > best_gap:
                best_gap, best_end = gap, (reach, a)
        reach = max(reach, b)
    if best_end is None or best_gap <= 0:
        return 0.0, PI
    gap_lo, gap_hi = best_end
    return float(np.mod(gap_hi, PI)), float(PI - best_gap)


def certify_null_free(spec: CocycleSpec, max_len: int, null_tol: float = DEFAULT_NULL_TOL,
                      enum_budget: int = 200_000) -> NullCertificate:
    """Prove that no renewal block with at most ``max_len`` letters is null.

    Small alphabets are enumerated exactly.  Otherwise an arc containing all
    ranges is pushed forward by the invertible letters; if no iterate touches
    a singular kernel the certificate holds (for every length once the arc
    is forward invariant).
    """
    require_valid(spec)
    n_inv = len(spec.inv)
    count = len(spec.sing) * sum(n_inv ** m for m in range(max_len))
    if count <= enum_budget:
        nw = find_null_words(spec, max_len, null_tol, budget=enum_budget * 2)
        return NullCertificate(not nw, "enumeration", max_len,
                               "" if not nw else f"null word {nw[0]}")
    kern = spec.kernel_theta[spec.sing_idx]
    margin = math.asin(min(1.0, null_tol))
    r = spec.range_theta[spec.sing_idx]
    base_lo, base_len = _cover_arc(r, np.zeros_like(r))
    lo, ln = base_lo, base_len
    for step in range(max_len):
        d = np.mod(kern - lo, PI)
        if np.any(d <= ln + margin) or np.any(d >= PI - margin):
            return NullCertificate(False, "arc", step, "arc reaches a kernel")
        if ln >= PI - 1e-12:
            return NullCertificate(False, "arc", step, "arc covers the circle")
        ends_lo, ends_len = [base_lo], [base_len]
        for j in spec.inv_idx:
            M = spec.mats[j]
            a = _act1(M, lo)
            b = _act1(M, lo + ln)
            ends_lo.append(a)
            ends_len.append(float(np.mod(b - a, PI)))
        new_lo, new_ln = _cover_arc(ends_lo, ends_len)
        if _arc_contains(lo, ln, new_lo, new_ln):
            return NullCertificate(True, "arc", math.inf, "forward-invariant arc")
        lo, ln = new_lo, new_ln
    return NullCertificate(True, "arc", max_len, "")


def _act1(M, t):
    x = M[0, 0] * math.cos(t) + M[0, 1] * math.sin(t)
    y = M[1, 0] * math.cos(t) + M[1, 1] * math.sin(t)
    return canonical_angle(math.atan2(y, x))


def _arc_contains(lo, ln, lo2, ln2, tol=1e-12):
    d = float(np.mod(lo2 - lo + tol, PI)) - tol
    return d >= -tol and d + ln2 <= ln + 2 * tol


# -- near-kernel arcs --------------------------------------------------------

@dataclass(frozen=True)
class KernelArcs:
    arcs: tuple          # (lo, hi) angle intervals, hi may exceed pi when wrapping
    total_length: float
    C: float             # total_length <= C * eps


def near_kernel_arcs(spec: CocycleSpec, eps: float) -> KernelArcs:
    """Arcs where some singular letter shrinks unit vectors below ``eps``.

    For a rank-one letter ``||A u(theta)|| = sigma1 |sin(theta - kernel)|``,
    so the arc is centred at the kernel with half-width ``arcsin(eps/sigma1)``.
    """
    sig = spec.letter_norms[spec.sing_idx]
    if not 0 < eps < sig.min():
        raise ValueError("need 0 < eps < smallest singular-letter norm")
    raw = []
    for i, s1 in zip(spec.sing_idx, sig):
        h = math.asin(eps / s1)
        c = spec.kernel_theta[i]
        raw.append((c - h, c + h))
    raw.sort()
    merged = []
    for a, b in raw:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    # the circle has length pi: glue the last arc onto the first if they wrap
    if len(merged) > 1 and merged[-1][1] - PI >= merged[0][0]:
        a, b = merged.pop()
        merged[0] = (a - PI, max(merged[0][1], b - PI))
    total = sum(b - a for a, b in merged)
    C = float(sum(PI / s for s in sig))
    return KernelArcs(tuple(merged), float(total), C)
