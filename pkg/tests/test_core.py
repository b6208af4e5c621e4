import numpy as np
import pytest

from oracles import cohesion_from_arrays_exact, threshold_exact_fraction, to_float
from pald import (DimensionError, InvalidPairError, Role, TripletArray, ValidationError, cohesion,
                  conservation_residual, local_depths, local_distribution, random_valid_arrays,
                  threshold_bound, threshold_exact, validate_arrays)


def _lazy(T):
    return TripletArray.lazy(T.n, lambda x: T.values[x].copy(), T.role)


def test_random_arrays_are_valid(rng):
    for n in (2, 3, 7):
        R, Q = random_valid_arrays(n, rng, sparsity=0.5)
        assert validate_arrays(R, Q, tol=0.0) == []


def test_cohesion_matches_exact_rational(rng):
    for n in (2, 3, 5, 8):
        R, Q = random_valid_arrays(n, rng, sparsity=0.2)
        expected = to_float(cohesion_from_arrays_exact(R.values, Q.values))
        assert np.max(np.abs(cohesion(R, Q) - expected)) <= 1e-14


def test_threshold_exact_matches_rational(rng):
    R, Q = random_valid_arrays(6, rng)
    assert abs(threshold_exact(R, Q) - float(threshold_exact_fraction(R.values, Q.values))) <= 1e-15


def test_jobs_bit_identical(rng):
    R, Q = random_valid_arrays(20, rng)
    a = cohesion(R, Q, jobs=1)
    b = cohesion(R, Q, jobs=7)
    assert a.tobytes() == b.tobytes()
    assert threshold_exact(R, Q, jobs=1) == threshold_exact(R, Q, jobs=5)


def test_lazy_equals_dense(rng):
    R, Q = random_valid_arrays(9, rng)
    assert np.array_equal(cohesion(_lazy(R), _lazy(Q)), cohesion(R, Q))
    assert validate_arrays(_lazy(R), _lazy(Q)) == []


def test_from_function_oracle():
    n = 4
    R = TripletArray.from_function(n, lambda x, y, z: 1.0, Role.RELEVANCE)
    Q = TripletArray.from_function(n, lambda x, y, z: 1.0 if z == x else 0.0 if z == y else 0.5,
                                   Role.SUPPORT)
    C = cohesion(R, Q)
    assert conservation_residual(C) < 1e-15
    assert R[1, 2, 3] == 1.0 and R.to_dense().is_dense


def test_violations_are_located():
    R, Q = random_valid_arrays(4, 0)
    Rv = R.values.copy()
    Rv[0, 1, 2] = 1.5
    Rv[2, 3, 2] = 0.5
    Qv = Q.values.copy()
    Qv[1, 3, 0] += 0.1
    found = validate_arrays(TripletArray(Rv, "relevance"), TripletArray(Qv, "support"))
    props = {(v.prop, v.array, v.index) for v in found}
    assert ("a", "R", (0, 1, 2)) in props
    assert ("b", "R", (0, 1, 2)) in props
    assert ("c", "Q", (1, 3, 0)) in props
    assert ("d", "R", (2, 3, 2)) in props
    lazy = validate_arrays(_lazy(TripletArray(Rv, "relevance")), _lazy(TripletArray(Qv, "support")))
    assert lazy == found


def test_cohesion_rejects_invalid():
    R, Q = random_valid_arrays(3, 1)
    Qv = Q.values.copy()
    Qv[0, 1, 2] = 0.9
    Qv[1, 0, 2] = 0.9
    with pytest.raises(ValidationError) as info:
        cohesion(R, TripletArray(Qv, "support"))
    assert info.value.violations[0].prop == "c"
    Rv = R.values.copy()
    Rv[0, 1, 1] = 0.0
    with pytest.raises(ValidationError):
        cohesion(_lazy(TripletArray(Rv, "relevance")), _lazy(Q))


def test_dimension_and_role_errors():
    R, Q = random_valid_arrays(3, 2)
    R4, _ = random_valid_arrays(4, 2)
    with pytest.raises(DimensionError):
        cohesion(R4, Q)
    with pytest.raises(DimensionError):
        cohesion(Q, R)
    with pytest.raises(DimensionError):
        TripletArray(np.zeros((2, 3, 3)), "relevance")


def test_local_distribution():
    R, _ = random_valid_arrays(5, 3)
    p = local_distribution(R, 1, 3)
    assert abs(p.sum() - 1) < 1e-15 and p[1] == p[3] == p.max()
    with pytest.raises(InvalidPairError):
        local_distribution(R, 2, 2)


def test_depths_and_bound():
    C = np.array([[0.4, 0.1], [0.2, 0.3]])
    assert np.allclose(local_depths(C), [0.5, 0.5])
    assert threshold_bound(C) == pytest.approx(0.175)
    assert conservation_residual(C) == pytest.approx(0.0)


def test_dense_values_read_only(rng):
    R, _ = random_valid_arrays(3, rng)
    with pytest.raises(ValueError):
        R.values[0, 0, 0] = 0.3
