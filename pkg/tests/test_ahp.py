import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefrank import (
    ComparisonMatrix,
    GapState,
    WeightVector,
    comparison_matrix,
    consistency_ratio,
    eigen_weights,
    scale_gap,
)
from worked_example import COMPARISON, EIGEN_LAMBDA, EIGEN_W, GAP_UPPER, SCALED_UPPER


def gap_state_from_upper(upper: dict, m: int = 5) -> GapState:
    state = GapState.zeros(m)
    g = np.zeros((m, m))
    for (i, j), d in upper.items():
        g[i, j] = d
        g[j, i] = -d
    state.update(g)
    return state


# --- gap scaling -------------------------------------------------------------

def test_scale_gap_worked_values():
    assert scale_gap(0.42) == 4
    assert scale_gap(0.28) == 3
    assert scale_gap(-0.60) == -6
    assert scale_gap(-0.08) == -1  # magnitude 1 = indifference
    assert scale_gap(0.0) == 1


def test_scale_gap_bounds():
    assert scale_gap(1.0) == 9
    assert scale_gap(-1.0) == -9
    assert scale_gap(0.04) == 1  # rounds below 1, clamped up
    assert scale_gap(0.999) == 9  # rounds to 10, clamped down
    with pytest.raises(ValueError):
        scale_gap(1.2)
    with pytest.raises(ValueError):
        scale_gap(-1.01)


@given(st.floats(-1.0, 1.0))
def test_scale_gap_range_and_sign(d):
    s = scale_gap(d)
    assert 1 <= abs(s) <= 9
    if d > 0:
        assert s > 0
    if d < 0:
        assert s < 0


@given(st.floats(0.0, 1.0))
def test_scale_gap_is_odd(d):
    if d == 0.0:
        return  # zero is a positive-indifference special case
    assert scale_gap(-d) == -scale_gap(d)


def test_reference_gaps_scale_exactly():
    for (i, j), d in GAP_UPPER.items():
        assert scale_gap(d) == SCALED_UPPER[(i, j)]


# --- gap state ---------------------------------------------------------------

def test_gap_state_first_update_is_identity():
    state = GapState.zeros(3)
    assert state.observations == 0
    g = np.array([[0, 0.4, -0.2], [-0.4, 0, 0.1], [0.2, -0.1, 0]])
    state.update(g)
    assert state.observations == 1
    assert np.array_equal(state.gaps, g)


def test_gap_state_running_average():
    state = GapState.zeros(2)
    state.update(np.array([[0, 1.0], [-1.0, 0]]))
    state.update(np.array([[0, 0.0], [0.0, 0]]))
    assert state.gaps[0, 1] == pytest.approx(0.5, abs=1e-12)
    state.update(np.array([[0, 0.5], [-0.5, 0]]))
    assert state.gaps[0, 1] == pytest.approx(0.5, abs=1e-12)
    assert state.observations == 3


@given(st.lists(st.floats(-1, 1), min_size=1, max_size=8))
def test_gap_state_equals_arithmetic_mean(values):
    state = GapState.zeros(2)
    for v in values:
        state.update(np.array([[0.0, v], [-v, 0.0]]))
    assert state.gaps[0, 1] == pytest.approx(np.mean(values), abs=1e-12)


def test_gap_state_copy_is_independent():
    state = GapState.zeros(2)
    state.update(np.array([[0, 0.3], [-0.3, 0]]))
    clone = state.copy()
    clone.update(np.array([[0, -0.9], [0.9, 0]]))
    assert state.gaps[0, 1] == pytest.approx(0.3)
    assert state.observations == 1


# --- comparison matrix construction ------------------------------------------

def test_reference_comparison_matrix_exact():
    state = gap_state_from_upper(GAP_UPPER)
    built = comparison_matrix(state)
    assert np.array_equal(built.values, COMPARISON)


def test_two_measure_matrix():
    state = gap_state_from_upper({(0, 1): 0.3}, m=2)
    built = comparison_matrix(state).values
    assert np.array_equal(built, np.array([[1, 3], [1 / 3, 1]]))


def test_negative_gap_fills_transpose_side():
    state = gap_state_from_upper({(0, 1): -0.52}, m=2)
    built = comparison_matrix(state).values
    assert built[1, 0] == 5
    assert built[0, 1] == 1 / 5


@given(st.lists(st.floats(-1, 1), min_size=3, max_size=10))
def test_built_matrix_is_reciprocal_exactly(flat):
    m = int((1 + np.sqrt(1 + 8 * len(flat))) / 2)
    upper = {}
    it = iter(flat)
    for i in range(m):
        for j in range(i + 1, m):
            try:
                upper[(i, j)] = next(it)
            except StopIteration:
                upper[(i, j)] = 0.0
    built = comparison_matrix(gap_state_from_upper(upper, m=m)).values
    assert np.array_equal(np.diag(built), np.ones(m))
    for i in range(m):
        for j in range(m):
            # exact float reciprocity: one side is an integer 1..9, the
            # other is literally 1/that integer
            assert built[i, j] * built[j, i] == 1.0


def test_comparison_matrix_validation():
    with pytest.raises(ValueError):
        ComparisonMatrix(np.array([[1.0, 2.0]]))  # not square
    with pytest.raises(ValueError):
        ComparisonMatrix(np.array([[1.0, 0.0], [2.0, 1.0]]))  # non-positive


# --- eigenvector weights ------------------------------------------------------

def test_three_criteria_worked_example():
    a = ComparisonMatrix(np.array([[1, 1 / 2, 1 / 4], [2, 1, 1 / 2], [4, 2, 1]]))
    w = eigen_weights(a)
    assert np.allclose(w.values, [1 / 7, 2 / 7, 4 / 7], atol=1e-6)
    assert w.lambda_max == pytest.approx(3.0, abs=1e-6)


def test_two_criteria_closed_form():
    a = ComparisonMatrix(np.array([[1.0, 2.0], [0.5, 1.0]]))
    w = eigen_weights(a)
    assert np.allclose(w.values, [2 / 3, 1 / 3], atol=1e-9)
    assert w.lambda_max == pytest.approx(2.0, abs=1e-9)


def test_reference_matrix_eigenvector():
    w = eigen_weights(ComparisonMatrix(COMPARISON))
    assert np.allclose(w.values, EIGEN_W, atol=1e-7)
    assert w.lambda_max == pytest.approx(EIGEN_LAMBDA, abs=1e-7)


def test_eigen_weights_match_dense_solver():
    rng = np.random.default_rng(3)
    for _ in range(25):
        m = int(rng.integers(2, 8))
        # random reciprocal matrix from random 1..9 judgements
        a = np.ones((m, m))
        for i in range(m):
            for j in range(i + 1, m):
                s = int(rng.integers(1, 10))
                if rng.random() < 0.5:
                    a[i, j], a[j, i] = s, 1 / s
                else:
                    a[i, j], a[j, i] = 1 / s, s
        mine = eigen_weights(ComparisonMatrix(a))
        vals, vecs = np.linalg.eig(a)
        k = int(np.argmax(vals.real))
        ref = np.abs(vecs[:, k].real)
        ref = ref / ref.sum()
        assert np.allclose(mine.values, ref, atol=1e-9)
        assert mine.lambda_max == pytest.approx(float(vals[k].real), abs=1e-8)
        assert mine.lambda_max >= m - 1e-9  # principal eigenvalue bound


@given(st.integers(2, 7), st.integers(0, 10_000))
def test_consistent_matrix_recovers_generating_weights(m, seed):
    rng = np.random.default_rng(seed)
    true = rng.random(m) + 0.05
    true = true / true.sum()
    a = np.outer(true, 1.0 / true)  # perfectly consistent by construction
    w = eigen_weights(ComparisonMatrix(a))
    assert np.allclose(w.values, true, atol=1e-9)
    assert w.lambda_max == pytest.approx(m, abs=1e-9)


def test_permutation_equivariance():
    rng = np.random.default_rng(11)
    perm = rng.permutation(5)
    base = eigen_weights(ComparisonMatrix(COMPARISON)).values
    shuffled = COMPARISON[np.ix_(perm, perm)]
    permuted = eigen_weights(ComparisonMatrix(shuffled)).values
    assert np.allclose(permuted, base[perm], atol=1e-10)


# --- weight vector and consistency -------------------------------------------

def test_weight_vector_validation():
    with pytest.raises(ValueError):
        WeightVector(np.array([0.5, 0.6]))  # does not sum to 1
    with pytest.raises(ValueError):
        WeightVector(np.array([1.5, -0.5]))  # negative entry
    u = WeightVector.uniform(4)
    assert np.allclose(u.values, 0.25)
    assert u.m == 4


def test_consistency_ratio_zero_for_consistent():
    a = ComparisonMatrix(np.array([[1, 1 / 2, 1 / 4], [2, 1, 1 / 2], [4, 2, 1]]))
    w = eigen_weights(a)
    assert consistency_ratio(a, w.lambda_max) == pytest.approx(0.0, abs=1e-9)


def test_consistency_ratio_flags_reference_matrix():
    # the worked-example matrix is noticeably inconsistent (lambda >> m)
    w = eigen_weights(ComparisonMatrix(COMPARISON))
    cr = consistency_ratio(ComparisonMatrix(COMPARISON), w.lambda_max)
    assert cr > 0.02


def test_consistency_ratio_small_matrices_are_zero():
    a = ComparisonMatrix(np.array([[1.0, 9.0], [1 / 9, 1.0]]))
    w = eigen_weights(a)
    assert consistency_ratio(a, w.lambda_max) == 0.0
