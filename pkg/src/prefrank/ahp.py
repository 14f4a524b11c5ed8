"""Pairwise-comparison weight elicitation.

Concordance gaps accumulated from user rankings are mapped onto the classic
1..9 comparison scale, assembled into a positive reciprocal matrix, and the
criterion weights are read off its principal eigenvector (power iteration;
the matrix is positive, so Perron-Frobenius guarantees a unique positive
fixed direction).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Saaty's random consistency index, used only for the diagnostic ratio
_RANDOM_INDEX = {3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}

_CONVERGENCE_TOL = 1e-12
_MAX_ITERATIONS = 10_000


@dataclass
class GapState:
    """Running average of pairwise concordance gaps, one per criterion pair.

    gaps[i, j] is the mean over absorbed rankings of (K_i - K_j), where K_i is
    criterion i's concordance with the user's ranking; antisymmetric by
    construction. `observations` counts rankings absorbed so far.
    """

    gaps: np.ndarray
    observations: int = 0

    @staticmethod
    def zeros(m: int) -> "GapState":
        if m < 2:
            raise ValueError("need at least 2 criteria")
        return GapState(np.zeros((m, m)))

    @property
    def m(self) -> int:
        return self.gaps.shape[0]

    def update(self, gap_matrix: np.ndarray) -> None:
        """Fold one ranking's gap matrix into the running average."""
        g = np.asarray(gap_matrix, dtype=float)
        if g.shape != self.gaps.shape:
            raise ValueError("gap matrix shape mismatch")
        l = self.observations
        self.gaps = (l * self.gaps + g) / (l + 1)
        self.observations = l + 1

    def copy(self) -> "GapState":
        return GapState(self.gaps.copy(), self.observations)


@dataclass(frozen=True)
class ComparisonMatrix:
    values: np.ndarray

    def __post_init__(self):
        a = self.values
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("comparison matrix must be square")
        if not (a > 0).all():
            raise ValueError("comparison matrix entries must be positive")

    @property
    def m(self) -> int:
        return self.values.shape[0]

    def to_jsonable(self) -> list[list[float]]:
        return self.values.tolist()


@dataclass(frozen=True)
class WeightVector:
    values: np.ndarray
    lambda_max: float | None = None  # principal eigenvalue, when eigen-derived

    def __post_init__(self):
        w = self.values
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty vector")
        if not (w >= 0).all():
            raise ValueError("weights must be non-negative")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")

    @staticmethod
    def uniform(m: int) -> "WeightVector":
        return WeightVector(np.full(m, 1.0 / m))

    @property
    def m(self) -> int:
        return self.values.size

    def to_jsonable(self) -> list[float]:
        return self.values.tolist()


def scale_gap(d: float) -> int:
    """Map a gap in [-1, 1] onto the signed 1..9 comparison scale.

    Magnitude is round-half-up(10*|d|) clamped to [1, 9]; the sign survives,
    and a zero gap means indifference, encoded as +1.
    """
    if abs(d) > 1:
        raise ValueError(f"gap magnitude exceeds 1: {d}")
    if d == 0:
        return 1
    mag = min(max(int(math.floor(10 * abs(d) + 0.5)), 1), 9)
    return mag if d > 0 else -mag


def comparison_matrix(state: GapState) -> ComparisonMatrix:
    """Assemble the reciprocal comparison matrix from averaged gaps.

    For i<j with s = scale_gap(gaps[i,j]): a positive s favors criterion i
    (a_ij = s), a negative one favors j (a_ji = |s|); the mirror entry is
    always the derived reciprocal, so a_ij * a_ji == 1 exactly.
    """
    m = state.m
    a = np.ones((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            s = scale_gap(state.gaps[i, j])
            if s > 0:
                a[i, j] = float(s)
                a[j, i] = 1.0 / s
            else:
                a[j, i] = float(-s)
                a[i, j] = 1.0 / (-s)
    return ComparisonMatrix(a)


def eigen_weights(matrix: ComparisonMatrix) -> WeightVector:
    """Principal-eigenvector weights of a positive comparison matrix.

    Power iteration with L1 renormalization, converged when successive
    iterates agree to 1e-12 in max-norm; the eigenvalue is the Rayleigh
    quotient at the fixed point.
    """
    a = matrix.values
    w = np.full(matrix.m, 1.0 / matrix.m)
    for _ in range(_MAX_ITERATIONS):
        nxt = a @ w
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - w)) < _CONVERGENCE_TOL:
            w = nxt
            break
        w = nxt
    else:
        raise ArithmeticError("power iteration failed to converge")
    aw = a @ w
    lam = float(w @ aw / (w @ w))
    return WeightVector(w, lambda_max=lam)


def consistency_ratio(matrix: ComparisonMatrix, lambda_max: float) -> float:
    """Diagnostic only — never used to reject a matrix."""
    m = matrix.m
    if m <= 2:
        return 0.0
    ci = (lambda_max - m) / (m - 1)
    ri = _RANDOM_INDEX.get(m)
    if ri is None:
        ri = 1.98 * (m - 2) / m  # Alonso-Lamata fit for larger m
    return ci / ri
