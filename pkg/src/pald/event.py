"""Relevance and support from repeated events.

Each unordered pair ``{x, y}`` carries a weighted multiset ``A[x, y]`` of
observed dissimilarities (for instance one competitiveness score per game).
Within one evaluation a single value is drawn from each pair's multiset;
``Q[x, y, z]`` is the probability that the drawn ``x-z`` value is smaller
than the drawn ``y-z`` value (ties count 1/2) and ``R[x, y, z]`` the
probability that either ``x-z`` or ``y-z`` is at most the drawn ``x-y``
value.
"""

from dataclasses import dataclass, field

import numpy as np

from ._parallel import parallel_map
from ._streams import substream
from .core import Role, TripletArray
from .errors import IngestError, InvalidPairError, PaldError

#: Largest N_xy * N_xz * N_yz enumerated exactly before switching to Monte Carlo.
EXACT_LIMIT = 10**6
MC_SAMPLES = 10**5


class ScoreError(PaldError, ValueError):
    category = "ingest"


def competitiveness(score_a, score_b):
    """Absolute point differential as a share of the total points scored."""
    if score_a < 0 or score_b < 0:
        raise ScoreError(f"scores must be nonnegative, got {score_a}, {score_b}")
    total = score_a + score_b
    if total <= 0:
        raise ScoreError("competitiveness is undefined when both scores are zero")
    return abs(score_a - score_b) / total


def signed_differential(score_a, score_b):
    """``(a - b) / (a + b)``; positive when ``a`` won."""
    total = score_a + score_b
    if total <= 0:
        raise ScoreError("differential is undefined when both scores are zero")
    return (score_a - score_b) / total


@dataclass(frozen=True)
class EventSet:
    """Weighted multiset of event dissimilarities, sorted by value."""

    values: np.ndarray
    probs: np.ndarray

    @classmethod
    def of(cls, values, weights=None):
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size == 0:
            raise ValueError("an event set needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("event values must be finite")
        if weights is None:
            weights = np.ones_like(values)
        weights = np.asarray(weights, dtype=np.float64).ravel()
        if weights.shape != values.shape:
            raise ValueError("values and weights differ in length")
        if not np.all(weights > 0):
            raise ValueError("event weights must be positive")
        order = np.lexsort((weights, values))
        values, weights = values[order], weights[order]
        return cls(values, weights / weights.sum())

    def __len__(self):
        return self.values.size

    def mean(self):
        return float(np.dot(self.values, self.probs))


ZERO = EventSet.of([0.0])


def _events(a):
    return a if isinstance(a, EventSet) else EventSet.of(a)


def _draw(rng, a, m):
    if len(a) == 1:
        return np.full(m, a.values[0])
    cdf = np.cumsum(a.probs)
    idx = np.searchsorted(cdf, rng.random(m) * cdf[-1], side="right")
    return a.values[np.minimum(idx, len(a) - 1)]


def _exact_triplet(a_xy, a_xz, a_yz, independent_draws):
    pq = a_xz.probs[:, None] * a_yz.probs[None, :]
    lt = a_xz.values[:, None] < a_yz.values[None, :]
    eq = a_xz.values[:, None] == a_yz.values[None, :]
    q = pq[lt].sum() + 0.5 * pq[eq].sum()

    near_x = a_xz.values[None, :] <= a_xy.values[:, None]
    near_y = a_yz.values[None, :] <= a_xy.values[:, None]
    if independent_draws:
        pa = (a_xy.probs[:, None] * a_xz.probs[None, :])[near_x].sum()
        pb = (a_xy.probs[:, None] * a_yz.probs[None, :])[near_y].sum()
        r = 1.0 - (1.0 - pa) * (1.0 - pb)
    else:
        cond = near_x[:, :, None] | near_y[:, None, :]
        p = a_xy.probs[:, None, None] * a_xz.probs[None, :, None] * a_yz.probs[None, None, :]
        r = p[cond].sum()
    # summed probabilities can overshoot by an ulp
    return min(max(float(r), 0.0), 1.0), min(max(float(q), 0.0), 1.0)


def _mc_triplet(a_xy, a_xz, a_yz, independent_draws, samples, seed, key):
    rng = substream(seed, *key)
    v_xy = _draw(rng, a_xy, samples)
    v_xz = _draw(rng, a_xz, samples)
    v_yz = _draw(rng, a_yz, samples)
    q = (np.count_nonzero(v_xz < v_yz) + 0.5 * np.count_nonzero(v_xz == v_yz)) / samples
    if independent_draws:
        v_xy2 = _draw(rng, a_xy, samples)
        cond = (v_xz <= v_xy) | (v_yz <= v_xy2)
    else:
        cond = (v_xz <= v_xy) | (v_yz <= v_xy)
    return np.count_nonzero(cond) / samples, float(q)


def event_triplet(a_xy, a_xz, a_yz, *, exact_limit=EXACT_LIMIT, samples=MC_SAMPLES,
                  seed=None, key=(), independent_draws=False):
    """``(R[x, y, z], Q[x, y, z])`` from three event multisets.

    Enumerates every weighted combination when
    ``N_xy * N_xz * N_yz <= exact_limit``; otherwise estimates both
    probabilities from ``samples`` draws of the Philox substream keyed by
    ``(seed, *key)``.

    ``independent_draws=True`` uses two separate ``x-y`` draws for the two
    halves of the relevance condition instead of a shared one.
    """
    a_xy, a_xz, a_yz = _events(a_xy), _events(a_xz), _events(a_yz)
    if len(a_xy) * len(a_xz) * len(a_yz) <= exact_limit:
        return _exact_triplet(a_xy, a_xz, a_yz, independent_draws)
    return _mc_triplet(a_xy, a_xz, a_yz, independent_draws, samples, seed, key)


@dataclass
class EventTable:
    """Per-pair event multisets over labelled elements.

    ``events`` is keyed by index pairs ``(i, j)`` with ``i < j``; every such
    pair must be present.
    """

    labels: tuple
    events: dict = field(default_factory=dict)

    def __post_init__(self):
        self.labels = tuple(str(label) for label in self.labels)
        if len(set(self.labels)) != len(self.labels):
            raise IngestError("duplicate labels in event table")
        n = len(self.labels)
        missing = [
            (self.labels[i], self.labels[j])
            for i in range(n) for j in range(i + 1, n) if (i, j) not in self.events
        ]
        if missing:
            shown = ", ".join(f"{a}-{b}" for a, b in missing[:5])
            more = f" (and {len(missing) - 5} more)" if len(missing) > 5 else ""
            raise IngestError(f"incomplete event table: no events for {shown}{more}")

    @property
    def n(self):
        return len(self.labels)

    @classmethod
    def from_records(cls, records, labels=None):
        """Build from ``(x_label, y_label, value, weight)`` records.

        Rows for the same unordered pair accumulate as a multiset.  Labels
        are taken in first-appearance order unless given explicitly.
        """
        records = list(records)
        if labels is None:
            labels = []
            for rec in records:
                for lab in rec[:2]:
                    if lab not in labels:
                        labels.append(lab)
        index = {lab: i for i, lab in enumerate(labels)}
        grouped = {}
        for rec in records:
            xl, yl, value = rec[0], rec[1], rec[2]
            weight = rec[3] if len(rec) > 3 and rec[3] is not None else 1.0
            if xl == yl:
                raise IngestError(f"event row pairs {xl!r} with itself")
            if weight <= 0:
                raise IngestError(f"nonpositive weight {weight} for pair {xl}-{yl}")
            if xl not in index or yl not in index:
                raise IngestError(f"unknown label in row {rec!r}")
            i, j = sorted((index[xl], index[yl]))
            grouped.setdefault((i, j), ([], []))
            grouped[(i, j)][0].append(float(value))
            grouped[(i, j)][1].append(float(weight))
        events = {k: EventSet.of(v, w) for k, (v, w) in grouped.items()}
        return cls(tuple(labels), events)

    def pair(self, x, y):
        if x == y:
            return ZERO
        return self.events[(x, y) if x < y else (y, x)]

    def max_combinations(self):
        """Largest ``N_xy * N_xz * N_yz`` over triples of distinct elements."""
        n = self.n
        best = 1
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(n):
                    if z != x and z != y:
                        best = max(best, len(self.pair(x, y)) * len(self.pair(x, z)) * len(self.pair(y, z)))
        return best

    def induced_distances(self):
        """Weighted mean event value per pair (the value itself for singletons)."""
        n = self.n
        D = np.zeros((n, n))
        for (i, j), ev in self.events.items():
            D[i, j] = D[j, i] = ev.mean()
        return D


def event_arrays(table, *, exact_limit=EXACT_LIMIT, samples=MC_SAMPLES, seed=None,
                 independent_draws=False, jobs=1):
    """Dense ``(R, Q)`` for every ordered triple of an :class:`EventTable`.

    Self-pairs carry the single value 0.  ``R`` is computed once per
    unordered pair and mirrored; ``Q[y, x, z]`` is stored as
    ``1 - Q[x, y, z]``, so properties (b) and (c) hold exactly.
    """
    n = table.n
    if n < 2:
        raise InvalidPairError("event arrays need at least two elements")
    R = np.zeros((n, n, n))
    Q = np.zeros((n, n, n))

    def pair_entries(pair):
        x, y = pair
        a_xy = table.pair(x, y)
        rows = []
        for z in range(n):
            if z == x or z == y:
                continue
            rows.append((z, *event_triplet(
                a_xy, table.pair(x, z), table.pair(y, z),
                exact_limit=exact_limit, samples=samples, seed=seed,
                key=(x, y, z), independent_draws=independent_draws)))
        return rows

    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    for (x, y), rows in zip(pairs, parallel_map(pair_entries, pairs, jobs)):
        a_xy = table.pair(x, y)
        # x against the drawn x-y value; exactly 1 when every event is positive
        lost = a_xy.probs[a_xy.values < 0.0].sum() + 0.5 * a_xy.probs[a_xy.values == 0.0].sum()
        self_support = 1.0 - lost
        R[x, y, x] = R[y, x, x] = R[x, y, y] = R[y, x, y] = 1.0
        Q[x, y, x] = self_support
        Q[y, x, x] = 1.0 - self_support
        Q[y, x, y] = self_support
        Q[x, y, y] = 1.0 - self_support
        for z, r, q in rows:
            R[x, y, z] = R[y, x, z] = r
            Q[x, y, z] = q
            Q[y, x, z] = 1.0 - q

    for x in range(n):
        for z in range(n):
            if z == x:
                R[x, x, x] = 1.0
            else:
                a = table.pair(x, z)
                R[x, x, z] = a.probs[a.values <= 0.0].sum()
        Q[x, x, :] = 0.5
    return TripletArray(R, Role.RELEVANCE), TripletArray(Q, Role.SUPPORT)
