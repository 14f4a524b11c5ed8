"""Objective interestingness measures over 2x2 contingency tables.

The seven measures below are mutually independent picks (one per equivalence
group) in the Tan-et-al. sense; each maps a rule's contingency table to a real
in a known analytic range. Degenerate denominators are mapped to finite
neutral values so downstream aggregation and min-max scaling never see
NaN or infinity.
"""
from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .mining import ContingencyTable


class Measure(Enum):
    # order is load-bearing: measure vectors are index-aligned with this enum
    YULES_Y = "yules_y"
    COSINE = "cosine"
    LAPLACE = "laplace"
    LEVERAGE = "leverage"
    GK_LAMBDA = "gk_lambda"
    LIFT = "lift"
    CERTAINTY = "certainty"


MEASURE_NAMES: tuple[str, ...] = tuple(m.value for m in Measure)

# analytic ranges, for property checks and documentation
MEASURE_RANGES: dict[Measure, tuple[float, float]] = {
    Measure.YULES_Y: (-1.0, 1.0),
    Measure.COSINE: (0.0, 1.0),
    Measure.LAPLACE: (0.0, 1.0),
    Measure.LEVERAGE: (-0.25, 0.25),
    Measure.GK_LAMBDA: (0.0, 1.0),
    Measure.LIFT: (0.0, math.inf),
    Measure.CERTAINTY: (-1.0, 1.0),
}


def _yules_y(t: ContingencyTable) -> float:
    # odds-ratio transform: (sqrt(f11 f00) - sqrt(f10 f01)) / (sum of the same)
    a = math.sqrt(t.f11 * t.f00)
    b = math.sqrt(t.f10 * t.f01)
    if a + b == 0:
        return 0.0
    return (a - b) / (a + b)


def _cosine(t: ContingencyTable) -> float:
    if t.fx == 0 or t.fy == 0:
        return 0.0
    return t.f11 / math.sqrt(t.fx * t.fy)


def _laplace(t: ContingencyTable) -> float:
    return (t.f11 + 1) / (t.fx + 2)


def _leverage(t: ContingencyTable) -> float:
    # integer numerator keeps exact independence at exactly 0.0
    n = t.n
    return (t.f11 * n - t.fx * t.fy) / (n * n)


def _gk_lambda(t: ContingencyTable) -> float:
    # symmetric Goodman-Kruskal lambda on the 2x2 table:
    # rows = X present/absent, columns = Y present/absent
    row_maxes = max(t.f11, t.f10) + max(t.f01, t.f00)
    col_maxes = max(t.f11, t.f01) + max(t.f10, t.f00)
    max_row_sum = max(t.fx, t.n - t.fx)
    max_col_sum = max(t.fy, t.n - t.fy)
    den = 2 * t.n - max_row_sum - max_col_sum
    if den == 0:
        return 0.0
    return (row_maxes + col_maxes - max_row_sum - max_col_sum) / den


def _lift(t: ContingencyTable) -> float:
    if t.fx == 0 or t.fy == 0:
        return 0.0
    return t.n * t.f11 / (t.fx * t.fy)


def _certainty(t: ContingencyTable) -> float:
    if t.fx == 0:
        return 0.0  # confidence undefined: no evidence either way
    py = t.fy / t.n
    if py in (0.0, 1.0):
        return 0.0
    conf = t.f11 / t.fx
    if conf >= py:
        return (conf - py) / (1 - py)
    return (conf - py) / py


_FORMULAS = {
    Measure.YULES_Y: _yules_y,
    Measure.COSINE: _cosine,
    Measure.LAPLACE: _laplace,
    Measure.LEVERAGE: _leverage,
    Measure.GK_LAMBDA: _gk_lambda,
    Measure.LIFT: _lift,
    Measure.CERTAINTY: _certainty,
}


def measure_value(measure: Measure, table: ContingencyTable) -> float:
    return _FORMULAS[measure](table)


def measure_vector(table: ContingencyTable) -> np.ndarray:
    """All seven measures, index-aligned with the Measure enum order."""
    return np.array([_FORMULAS[m](table) for m in Measure], dtype=float)


def minmax_scale(values: np.ndarray) -> np.ndarray:
    """(v - min)/(max - min) elementwise; a constant vector maps to all 0.5."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot scale an empty value array")
    if not np.isfinite(v).all():
        raise ValueError("measure values must be finite")
    lo, hi = v.min(), v.max()
    if hi == lo:
        return np.full_like(v, 0.5)
    return (v - lo) / (hi - lo)
