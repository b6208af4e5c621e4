import numpy as np
import pytest

from oracles import classical_cohesion_exact, to_float
from pald import (DimensionError, InvalidPairError, classical_cohesion, euclidean_distances, local_focus,
                  relevance_from_distances, support_from_distances, validate_arrays)


def test_local_focus_three_points(three_points):
    _, D = three_points
    assert local_focus(D, 0, 1) == {0, 1}
    assert local_focus(D, 0, 2) == {0, 1, 2}
    assert local_focus(D, 1, 2) == {0, 1, 2}
    with pytest.raises(InvalidPairError):
        local_focus(D, 1, 1)


def test_indicator_arrays_exactly_valid(rng):
    D = euclidean_distances(rng.integers(0, 4, size=(10, 2)))
    assert validate_arrays(relevance_from_distances(D), support_from_distances(D), tol=0.0) == []


def test_support_ties_half():
    D = np.array([[0, 1, 1], [1, 0, 2], [1, 2, 0]], dtype=float)
    Q = support_from_distances(D)
    # 0 is equidistant from 1 and 2
    assert Q[1, 2, 0] == 0.5 and Q[2, 1, 0] == 0.5
    assert Q[0, 1, 0] == 1.0 and Q[0, 1, 1] == 0.0


def test_lazy_path_matches_dense(rng):
    D = euclidean_distances(rng.random((30, 3)))
    dense = classical_cohesion(D)
    lazy = classical_cohesion(D, dense_cap=10, jobs=3)
    assert not relevance_from_distances(D, dense_cap=10).is_dense
    assert np.array_equal(dense, lazy)


def test_asymmetric_dissimilarity_matches_oracle(rng):
    D = rng.random((6, 6))
    np.fill_diagonal(D, 0.0)
    expected = to_float(classical_cohesion_exact(D.tolist()))
    assert np.max(np.abs(classical_cohesion(D) - expected)) <= 1e-14


def test_bad_matrices():
    with pytest.raises(DimensionError):
        classical_cohesion(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        classical_cohesion(np.array([[0, np.nan], [1, 0]]))
