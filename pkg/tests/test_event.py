from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from pald import (EventSet, EventTable, IngestError, cohesion, competitiveness, event_arrays, event_triplet,
                  signed_differential, validate_arrays)
from pald.event import ScoreError


def _brute(a_xy, a_xz, a_yz):
    # explicit loop over every weighted combination, exact arithmetic
    r = q = Fraction(0)
    tot = [sum(Fraction(w) for _, w in a) for a in (a_xy, a_xz, a_yz)]
    for (v1, w1), (v2, w2), (v3, w3) in product(a_xy, a_xz, a_yz):
        p = Fraction(w1) * Fraction(w2) * Fraction(w3) / (tot[0] * tot[1] * tot[2])
        if v2 <= v1 or v3 <= v1:
            r += p
        q += p if v2 < v3 else p / 2 if v2 == v3 else 0
    return float(r), float(q)


def test_exact_triplet_against_brute_force(rng):
    for _ in range(30):
        sets = [[(int(rng.integers(0, 5)), int(rng.integers(1, 4))) for _ in range(rng.integers(1, 5))]
                for _ in range(3)]
        ev = [EventSet.of([v for v, _ in s], [w for _, w in s]) for s in sets]
        got = event_triplet(*ev)
        assert np.allclose(got, _brute(*sets), rtol=0, atol=1e-15)


def test_independent_draws_differ():
    a_xy, a_xz, a_yz = [0.0, 1.0], [0.5], [0.5]
    shared = event_triplet(a_xy, a_xz, a_yz)
    indep = event_triplet(a_xy, a_xz, a_yz, independent_draws=True)
    assert shared[0] == 0.5 and indep[0] == 0.75


def test_monte_carlo_seeded_and_keyed():
    a = [0.1, 0.2, 0.4]
    r1 = event_triplet(a, a, [0.3], exact_limit=0, samples=5000, seed=3, key=(0, 1, 2))
    r2 = event_triplet(a, a, [0.3], exact_limit=0, samples=5000, seed=3, key=(0, 1, 2))
    r3 = event_triplet(a, a, [0.3], exact_limit=0, samples=5000, seed=3, key=(0, 2, 1))
    assert r1 == r2 and r1 != r3
    with pytest.raises(ValueError):
        event_triplet(a, a, a, exact_limit=0, samples=10, seed=None)


def test_event_arrays_valid_and_conserving(rng):
    labels = list("abcde")
    recs = [(labels[i], labels[j], float(rng.random()), 1.0)
            for i in range(5) for j in range(i + 1, 5) for _ in range(rng.integers(1, 4))]
    R, Q = event_arrays(EventTable.from_records(recs))
    assert validate_arrays(R, Q, tol=1e-12) == []
    assert abs(cohesion(R, Q).sum() - 2.5) < 1e-12
    # every event is positive, so an element always supports itself
    assert Q[0, 1, 0] == 1.0 and Q[0, 1, 1] == 0.0


def test_incomplete_table_rejected():
    with pytest.raises(IngestError, match="b-c"):
        EventTable.from_records([("a", "b", 0.1), ("a", "c", 0.2)])
    with pytest.raises(IngestError):
        EventTable.from_records([("a", "a", 0.1)])


def test_multiset_accumulates_and_mean():
    t = EventTable.from_records([("a", "b", 0.1), ("b", "a", 0.3, 3.0)])
    assert len(t.pair(0, 1)) == 2
    assert t.induced_distances()[0, 1] == pytest.approx(0.25)
    assert t.max_combinations() == 1


def test_scores():
    assert competitiveness(110, 90) == 0.1
    assert signed_differential(90, 110) == -0.1
    with pytest.raises(ScoreError):
        competitiveness(0, 0)
    with pytest.raises(ScoreError):
        competitiveness(-1, 3)


def test_exact_probabilities_stay_in_unit_interval():
    third = EventSet.of([0.1, 0.2, 0.3])
    r, q = event_triplet(EventSet.of([0.9]), third, third)
    assert r == 1.0 and 0.0 <= q <= 1.0
    labels = list("abcd")
    recs = [(labels[i], labels[j], v, 1.0) for i in range(4) for j in range(i + 1, 4) for v in (0.1, 0.2, 0.7)]
    R, Q = event_arrays(EventTable.from_records(recs))
    assert R.values.max() <= 1.0 and Q.values.min() >= 0.0
