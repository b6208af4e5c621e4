import numpy as np
import pytest

from pald import (DimensionError, Partition, classical_cohesion, concentration_profile,
                  equivalent_ordinal_structure, euclidean_distances, generate_concentrated_instance,
                  generate_separated_instance, is_concentrated, is_sufficiently_separated,
                  relevance_from_distances, support_from_distances)


def _rq(D):
    return relevance_from_distances(D), support_from_distances(D)


def test_generated_separated_instance_holds():
    D, part, pos = generate_separated_instance(4, 3, 5.0, seed=1)
    R, Q = _rq(D)
    assert is_sufficiently_separated(R, Q, part.A, part.B, mutual=True)
    assert pos[:4].min() == 0.0 and pos[:4].max() == 1.0


def test_small_gap_reports_violation():
    D, part, _ = generate_separated_instance(3, 3, 0.2, seed=2)
    R, Q = _rq(D)
    check = is_sufficiently_separated(R, Q, part.A, part.B)
    assert not check
    assert check.condition and len(check.index) == 3
    assert "fails" in check.describe()


def test_concentration():
    D, part, _ = generate_concentrated_instance([0.0, 1.0, 2.5], 4, 1.7)
    R, Q = _rq(D)
    assert is_concentrated(R, Q, part.A, part.B)
    f = concentration_profile(R, part.A, part.B)
    assert f.shape == (3, 3)
    C = classical_cohesion(D)
    assert C[np.ix_(part.A, part.B)].max() <= 1 / 4
    # a spread-out B straddling A is not point-like
    D2 = euclidean_distances(np.array([0.0, 1.0, 0.4, 5.0]))
    R2, Q2 = _rq(D2)
    check = is_concentrated(R2, Q2, [0, 1], [2, 3])
    assert not check and check.condition.startswith("Q")
    with pytest.raises(ValueError):
        generate_concentrated_instance([0.0, 1.0], 2, 1.0)


def test_equivalent_structure(rng):
    pts = rng.random(5)
    R, Q = _rq(euclidean_distances(np.concatenate([pts, 10 + 7 * pts])))
    assert equivalent_ordinal_structure(R, Q, range(5), range(5, 10))
    R, Q = _rq(euclidean_distances(np.concatenate([pts, 10 + pts ** 3])))
    assert not equivalent_ordinal_structure(R, Q, range(5), range(5, 10))
    # within-block entries only depend on the order of distances
    Da = euclidean_distances(pts)
    Db = euclidean_distances(7 * pts)
    Ra, Qa = _rq(np.block([[Da, Da + 100], [Da + 100, Db]]))
    assert equivalent_ordinal_structure(Ra, Qa, range(5), range(5, 10))
    with pytest.raises(DimensionError):
        equivalent_ordinal_structure(R, Q, [0, 1], [2])


def test_partition_rejects_overlap():
    with pytest.raises(ValueError):
        Partition([0, 1], [1, 2])
