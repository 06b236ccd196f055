"""Exact-size 2x2 linear algebra and the desingularized projective action.

Points of the projective line are stored as angles in ``[0, pi)``.  A rank-one
matrix acts on the projective line as the constant map onto its range, kernel
included.  Log-norms use ``-inf`` as a first-class value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidMatrix, RankError, ZeroMatrixError

PI = math.pi
DEFAULT_RANK_TOL = 1e-10
EPS = float(np.finfo(float).eps)


class MatrixClass(enum.Enum):
    RANK0 = "Rank0"
    RANK1 = "Rank1"
    INV_POS = "InvPos"
    INV_NEG = "InvNeg"


def canonical_angle(theta):
    """Reduce angles modulo pi into ``[0, pi)``; works on scalars and arrays."""
    t = np.mod(theta, PI)
    # np.mod can return exactly pi for tiny negative inputs
    t = np.where(t >= PI, 0.0, t)
    if np.ndim(t) == 0:
        return float(t)
    return t


def proj_dist(t1, t2):
    """Distance on the projective line, ``min(|t1-t2|, pi-|t1-t2|)``."""
    d = np.abs(np.mod(np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float), PI))
    d = np.minimum(d, PI - d)
    if np.ndim(d) == 0:
        return float(d)
    return d


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A line through the origin, represented by its angle in ``[0, pi)``."""

    theta: float

    def __post_init__(self):
        t = float(self.theta)
        if not math.isfinite(t):
            raise ValueError("projective angle must be finite")
        object.__setattr__(self, "theta", canonical_angle(t))

    @classmethod
    def from_vector(cls, v) -> "ProjPoint":
        x, y = float(v[0]), float(v[1])
        if x == 0.0 and y == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(math.atan2(y, x))

    @property
    def vector(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    def dist(self, other: "ProjPoint") -> float:
        return proj_dist(self.theta, other.theta)


@dataclass(frozen=True)
class SVD2:
    sigma1: float
    sigma2: float
    left1: float   # angle of the left singular direction for sigma1
    right1: float  # angle of the right singular direction for sigma1
    right2: float  # angle of the right singular direction for sigma2


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix ``[[a, b], [c, d]]``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidMatrix(f"non-finite entry {name}={v}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, m) -> "Mat2":
        if isinstance(m, Mat2):
            return m
        arr = np.asarray(m, dtype=float)
        if arr.shape == (4,):
            arr = arr.reshape(2, 2)
        if arr.shape != (2, 2):
            raise InvalidMatrix(f"expected a 2x2 matrix, got shape {arr.shape}")
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def svd(self) -> SVD2:
        return svd2(self)

    @property
    def norm(self) -> float:
        return svd2(self).sigma1

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        v = np.asarray(other, dtype=float)
        return np.array([self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]])

    def __mul__(self, s):
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    def __str__(self):
        return f"[[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]]"


def rot(t: float) -> Mat2:
    """Rotation by angle ``t``."""
    c, s = math.cos(t), math.sin(t)
    return Mat2(c, -s, s, c)


def diag(x: float, y: float) -> Mat2:
    return Mat2(x, 0.0, 0.0, y)


def svd2(A: Mat2) -> SVD2:
    """Closed-form SVD of a 2x2 matrix.

    Writes ``A = R(phi) diag(sx, sy) R(theta)`` with ``sx = Q + R`` and
    ``sy = Q - R``; the singular values are ``|sx|`` and ``|sy|``.
    """
    E = 0.5 * (A.a + A.d)
    F = 0.5 * (A.a - A.d)
    G = 0.5 * (A.c + A.b)
    H = 0.5 * (A.c - A.b)
    Q = math.hypot(E, H)
    R = math.hypot(F, G)
    a1 = math.atan2(G, F)
    a2 = math.atan2(H, E)
    theta = 0.5 * (a2 - a1)
    phi = 0.5 * (a2 + a1)
    s1 = Q + R
    s2 = abs(Q - R)
    # rows of R(theta) are the right singular vectors
    right1 = math.atan2(-math.sin(theta), math.cos(theta))
    right2 = math.atan2(math.cos(theta), math.sin(theta))
    return SVD2(s1, s2, canonical_angle(phi), canonical_angle(right1), canonical_angle(right2))


def classify(A: Mat2, rank_tol: float = DEFAULT_RANK_TOL) -> MatrixClass:
    """Rank/determinant class of ``A``.

    Rank one means ``|det| <= rank_tol * ||A||**2`` while ``||A|| > rank_tol``.
    """
    A = Mat2.from_array(A)
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    nrm = svd2(A).sigma1
    if nrm <= rank_tol:
        return MatrixClass.RANK0
    det = A.det
    if abs(det) <= rank_tol * nrm * nrm:
        return MatrixClass.RANK1
    return MatrixClass.INV_POS if det > 0 else MatrixClass.INV_NEG


def range_kernel(A: Mat2, rank_tol: float = DEFAULT_RANK_TOL) -> tuple[ProjPoint, ProjPoint]:
    """Range and kernel directions of a rank-one matrix."""
    A = Mat2.from_array(A)
    cls = classify(A, rank_tol)
    if cls is not MatrixClass.RANK1:
        raise RankError(f"matrix {A} is {cls.value}, not rank one")
    s = svd2(A)
    return ProjPoint(s.left1), ProjPoint(s.right2)


def projective_action(A: Mat2, x: ProjPoint, rank_tol: float = DEFAULT_RANK_TOL) -> ProjPoint:
    A = Mat2.from_array(A)
    cls = classify(A, rank_tol)
    if cls is MatrixClass.RANK0:
        raise ZeroMatrixError("the zero matrix has no projective action")
    if cls is MatrixClass.RANK1:
        return ProjPoint(svd2(A).left1)
    return ProjPoint.from_vector(A @ x.vector)


def apply_normalized(A: Mat2, x: ProjPoint, rank_tol: float = DEFAULT_RANK_TOL) -> tuple[ProjPoint, float]:
    """Image of ``x`` and ``log ||A v||`` for the unit representative ``v``.

    A gain within rounding of zero (``<= 4 eps ||A||``) is reported as
    ``-inf``: the stored angle of a kernel is only accurate to ``eps``.
    """
    A = Mat2.from_array(A)
    image = projective_action(A, x, rank_tol)
    w = A @ x.vector
    n = math.hypot(w[0], w[1])
    if n <= 4 * EPS * A.norm:
        return image, -math.inf
    return image, math.log(n)


def wedge(u, v) -> float:
    return float(u[0]) * float(v[1]) - float(u[1]) * float(v[0])


# -- vectorized helpers on angle arrays ------------------------------------

def unit(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def gain(M: np.ndarray, theta) -> np.ndarray:
    """``||M u(theta)||`` for an array of angles."""
    c, s = np.cos(theta), np.sin(theta)
    x = M[0, 0] * c + M[0, 1] * s
    y = M[1, 0] * c + M[1, 1] * s
    return np.hypot(x, y)


def act(M: np.ndarray, theta, range_angle: float | None = None) -> np.ndarray:
    """Projective action on an array of angles.

    ``range_angle`` marks ``M`` as rank one; the image is then that constant.
    """
    theta = np.asarray(theta, dtype=float)
    if range_angle is not None:
        return np.full(theta.shape, range_angle)
    c, s = np.cos(theta), np.sin(theta)
    x = M[0, 0] * c + M[0, 1] * s
    y = M[1, 0] * c + M[1, 1] * s
    return canonical_angle(np.arctan2(y, x))


def opnorm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))
