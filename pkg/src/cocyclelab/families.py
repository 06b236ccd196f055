"""One-parameter families ``t -> A_t``, positive winding and parameter scans.

Three kinds are supported:

* ``rotation``: invertible letters become ``A_j R_t``, singular letters are
  kept (the very same objects, so they are bitwise constant in ``t``);
* ``craig_simon``: ``A_1 = diag(1, 0)``, ``A_2(t) = [[a - t, -1], [1, 0]]``;
* ``custom``: any callable ``t -> list of matrices`` over a base spec.

Winding speed is the rate ``d/dt`` of the angle of ``A_t(j) v``, i.e.
``(A v ^ A' v) / ||A v||^2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .linalg2 import PI, Mat2, ProjPoint, diag, rot, unit
from .lyapunov import L1Estimate, l1_monte_carlo, l1_series, series_depth
from .model import CocycleSpec, find_null_words, require_valid
from .sampling import run_chunks

FD_STEP = 1e-5
CS_DERIVATIVE = np.array([[-1.0, 0.0], [0.0, 0.0]])


def rotation_family(spec: CocycleSpec, t: float, _check: bool = True) -> CocycleSpec:
    """``A_t(j) = A_j R_t`` for invertible ``j``; singular letters unchanged."""
    if _check and not -PI <= t <= PI:
        raise DomainError(f"t={t} outside [-pi, pi]")
    R = rot(t)
    sing = spec.sing_mask
    mats = [m if sing[i] else m @ R for i, m in enumerate(spec.matrices)]
    return spec.replace_matrices(mats)


def craig_simon(a: float, t: float, p=0.5) -> CocycleSpec:
    """Two-letter Bernoulli limit family; ``p`` is ``P(letter 1)`` or ``(p, 1 - p)``."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    p1 = float(p[0])
    if not 0.0 < p1 < 1.0 or (p.size == 2 and abs(p.sum() - 1.0) > 1e-12) or p.size > 2:
        raise DomainError(f"p must be (p, 1-p) with 0 < p < 1, got {p.tolist()}")
    A2 = Mat2(a - t, -1.0, 1.0, 0.0)
    return CocycleSpec.bernoulli([diag(1.0, 0.0), A2], [p1, 1.0 - p1], [1],
                                 name=f"craig_simon(a={a:g},t={t:g})")


@dataclass
class FamilySpec:
    """A family ``t -> A_t`` over a base spec.

    ``c0`` is filled in by :func:`verify_winding`.
    """

    base: CocycleSpec | None = None
    kind: str = "rotation"
    a: float = 0.0
    p: float = 0.5
    t_lo: float = -PI
    t_hi: float = PI
    c0: float | None = None
    matrix_fn: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("rotation", "craig_simon", "custom"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "craig_simon" and self.base is None:
            self.base = craig_simon(self.a, 0.0, self.p)
        if self.base is None:
            raise ValueError(f"{self.kind} family needs a base spec")
        if self.kind == "custom" and self.matrix_fn is None:
            raise ValueError("custom family needs matrix_fn")
        if self.t_lo > self.t_hi:
            raise ValueError("empty parameter interval")

    def at(self, t: float, _check: bool = True) -> CocycleSpec:
        if self.kind == "rotation":
            # finite differences may step just outside [-pi, pi]
            return rotation_family(self.base, t, _check)
        if self.kind == "craig_simon":
            return craig_simon(self.a, t, self.p)
        return self.base.replace_matrices([Mat2.from_array(m) for m in self.matrix_fn(t)])

    def singular_constant(self, t_grid) -> bool:
        """(A1): singular letters bitwise equal to the base ones on ``t_grid``."""
        ref = [self.base.matrices[i].entries for i in self.base.sing_idx]
        for t in t_grid:
            s = self.at(float(t))
            if [s.matrices[i].entries for i in s.sing_idx] != ref:
                return False
        return True

    def derivative(self, t: float, j: int) -> np.ndarray:
        """``d/dt A_t(j)`` (0-based ``j``)."""
        if self.kind == "rotation":
            A = self.base.matrices[j].array
            c, s = math.cos(t), math.sin(t)
            return A @ np.array([[-s, -c], [c, -s]])
        if self.kind == "craig_simon":
            return CS_DERIVATIVE if j == 1 else np.zeros((2, 2))
        hi = Mat2.from_array(self.matrix_fn(t + FD_STEP)[j]).array
        lo = Mat2.from_array(self.matrix_fn(t - FD_STEP)[j]).array
        return (hi - lo) / (2 * FD_STEP)


def _angles(x) -> np.ndarray:
    if isinstance(x, ProjPoint):
        return np.array([x.theta])
    return np.atleast_1d(np.asarray(x, dtype=float))


def _unit(x) -> np.ndarray:
    """Unit vectors for angles, exact on the axes (``cos(pi/2)`` is not 0)."""
    v = unit(_angles(x))
    v[np.abs(v) < 1e-15] = 0.0
    return v


def _inv_letter(family: FamilySpec, j: int) -> int:
    """1-based public letter to 0-based index, invertible letters only."""
    k = family.base.k
    if not 1 <= j <= k or family.base.sing_mask[j - 1]:
        raise DomainError(f"letter {j} is not an invertible letter")
    return j - 1


def winding_speed(family: FamilySpec, t: float, j: int, x):
    """Angular speed of ``t -> A_t(j) x`` (``x`` a ProjPoint or angles).

    Rotation: ``det(A_j) / ||A_j R_t v||^2``.  Other kinds use the wedge
    formula with the (analytic or finite-difference) derivative of ``A_t``.
    Returns a float for a single point, otherwise an array.
    """
    jj = _inv_letter(family, j)
    v = _unit(x)
    if family.kind == "rotation":
        A = family.base.matrices[jj]
        w = v @ rot(t).array.T @ A.array.T
        out = A.det / np.einsum("ij,ij->i", w, w)
    else:
        M = family.at(t).matrices[jj].array
        D = family.derivative(t, jj)
        Mv, Dv = v @ M.T, v @ D.T
        out = (Mv[:, 0] * Dv[:, 1] - Mv[:, 1] * Dv[:, 0]) / np.einsum("ij,ij->i", Mv, Mv)
    return float(out[0]) if isinstance(x, (ProjPoint, float, int)) else out


def _angle_rate(theta_hi, theta_lo, h):
    d = np.mod(theta_hi - theta_lo + PI / 2, PI) - PI / 2
    return d / (2 * h)


def winding_speed_fd(family: FamilySpec, t: float, j: int, x, h: float = FD_STEP):
    """Central finite difference of the angle of ``A_t(j) x`` in ``t``."""
    jj = _inv_letter(family, j)
    v = _unit(x)
    th = []
    for s in (t + h, t - h):
        w = v @ family.at(s, False).matrices[jj].array.T
        th.append(np.arctan2(w[:, 1], w[:, 0]))
    out = _angle_rate(th[0], th[1], h)
    return float(out[0]) if isinstance(x, (ProjPoint, float, int)) else out


@dataclass
class WindingReport:
    c0_hat: float
    passed: bool
    witness_t: float
    witness_letter: int
    witness_point: ProjPoint
    n0: int = 1
    fd_gap: float | None = None

    def __iter__(self):
        return iter((self.c0_hat, self.passed))

    def to_dict(self):
        return {"c0_hat": self.c0_hat, "passed": self.passed, "witness_t": self.witness_t,
                "witness_letter": self.witness_letter,
                "witness_theta": self.witness_point.theta, "n0": self.n0, "fd_gap": self.fd_gap}


def default_grids(family: FamilySpec, nt: int = 256, nx: int = 256):
    lo, hi = family.t_lo, family.t_hi
    if not (math.isfinite(lo) and math.isfinite(hi)):
        lo, hi = -PI, PI
    return np.linspace(lo, hi, nt), PI * np.arange(nx) / nx


def _word_speed(family, t, word, theta, h=FD_STEP):
    """Finite-difference speed of ``t -> A_t^n(word) x`` (0-based letters)."""
    th = []
    for s in (t + h, t - h):
        mats = family.at(s, False).matrices
        v = _unit(theta)
        for j in word:
            v = v @ mats[j].array.T
            v /= np.hypot(v[:, 0], v[:, 1])[:, None]
        th.append(np.arctan2(v[:, 1], v[:, 0]))
    return _angle_rate(th[0], th[1], h)


def verify_winding(family: FamilySpec, t_grid=None, x_grid=None, n0: int = 1,
                   check_fd: bool = False, zero_tol: float = 1e-12) -> WindingReport:
    """Minimum winding speed over the grids and invertible letters.

    With ``n0 > 1`` the speed of the iterate along every invertible word of
    length ``n0`` is used instead (finite differences).  Passes iff the
    minimum exceeds ``zero_tol``.  ``check_fd`` also records the largest gap between
    the analytic speed and finite differences.
    """
    dt, dx = default_grids(family)
    t_grid = dt if t_grid is None else np.asarray(t_grid, dtype=float)
    x_grid = dx if x_grid is None else np.asarray(x_grid, dtype=float)
    if t_grid.size == 0 or x_grid.size == 0:
        raise ValueError("winding grids must be nonempty")
    inv = [int(j) for j in family.base.inv_idx]
    if not inv:
        raise DomainError("family has no invertible letters")
    best = (math.inf, 0.0, 0, 0.0)
    gap = 0.0
    for t in t_grid:
        t = float(t)
        if n0 == 1:
            for j in inv:
                sp = winding_speed(family, t, j + 1, x_grid)
                if check_fd:
                    gap = max(gap, float(np.max(np.abs(sp - winding_speed_fd(family, t, j + 1, x_grid)))))
                a = int(np.argmin(sp))
                if sp[a] < best[0]:
                    best = (float(sp[a]), t, j + 1, float(x_grid[a]))
        else:
            for word in itertools.product(inv, repeat=n0):
                sp = _word_speed(family, t, word, x_grid)
                a = int(np.argmin(sp))
                if sp[a] < best[0]:
                    best = (float(sp[a]), t, word[0] + 1, float(x_grid[a]))
    c0_hat = best[0] + 0.0  # no negative zero
    family.c0 = c0_hat
    return WindingReport(c0_hat, c0_hat > zero_tol, best[1], best[2], ProjPoint(best[3]), n0,
                         gap if check_fd else None)


def iterated_winding(family: FamilySpec, t_grid, x_grid, max_len: int = 3) -> float:
    """``c1_hat``: minimum finite-difference speed of ``t -> A_t^n(w) x`` over
    invertible words ``w`` with ``1 <= n <= max_len``."""
    inv = [int(j) for j in family.base.inv_idx]
    x_grid = np.asarray(x_grid, dtype=float)
    c1 = math.inf
    for n in range(1, max_len + 1):
        for word in itertools.product(inv, repeat=n):
            for t in t_grid:
                c1 = min(c1, float(np.min(_word_speed(family, float(t), word, x_grid))))
    return c1


@dataclass
class ScanRow:
    t: float
    estimate: L1Estimate
    null_words: list
    error: str | None = None

    @property
    def structural(self) -> bool:
        return bool(self.null_words)

    @property
    def witness(self):
        if self.null_words:
            return self.null_words[0]
        return self.estimate.neg_inf_witness if self.estimate is not None else None

    def record(self) -> dict:
        e = self.estimate
        w = self.witness
        return {"t": self.t,
                "l1": e.value if e is not None else math.nan,
                "method": e.method if e is not None else "",
                "is_neg_inf": bool(e is not None and e.is_neg_inf),
                "witness": str(w) if w is not None else "",
                "tail_bound": e.tail_slack if e is not None else math.nan,
                "std_error": e.std_error if e is not None else math.nan,
                "structural": self.structural,
                "error": self.error or ""}


SCAN_COLUMNS = ("t", "l1", "method", "is_neg_inf", "witness", "tail_bound", "std_error",
                "structural", "error")


def scan(family: FamilySpec, t_grid, method: str = "series", method_params: dict | None = None,
         null_len: int = 6, seed: int = 0, threads: int | None = None) -> list:
    """``L1(A_t)`` over a parameter grid, sorted by ``t``.

    ``method`` is ``series`` (params ``depth``, ``tail_tol``) or ``mc_direct``
    (params ``n``, ``samples``).  Each point first runs a null-word scan up to
    ``null_len`` letters; points with a null word are flagged ``structural``.
    Failures are recorded in the row rather than raised.
    """
    if method not in ("series", "mc_direct"):
        raise ValueError(f"unknown scan method {method!r}")
    grid = np.sort(np.asarray(t_grid, dtype=float).ravel())
    if grid.size == 0:
        raise ValueError("empty parameter grid")
    if not np.all(np.isfinite(grid)):
        raise ValueError("parameter grid must be finite")
    params = dict(method_params or {})

    def work(i):
        t = float(grid[i])
        try:
            spec = require_valid(family.at(t))
            nulls = find_null_words(spec, null_len) if null_len > 0 else []
            if method == "series":
                depth = params.get("depth")
                if depth is None:
                    depth = series_depth(spec, params.get("tail_tol", 1e-12))
                est = l1_series(spec, int(depth))
            else:
                est = l1_monte_carlo(spec, int(params.get("n", 1000)), int(params.get("samples", 500)),
                                     seed, threads=1, purpose=f"scan{i}")
            return ScanRow(t, est, nulls)
        except Exception as exc:  # recorded per point
            return ScanRow(t, None, [], f"{type(exc).__name__}: {exc}")

    return run_chunks(work, grid.size, threads)
