"""Structural predicates on relevance/support arrays, plus instance generators.

The predicates answer whether two disjoint sets are separated, whether one
set is point-like relative to another, and whether two index lists look the
same to ``R`` and ``Q``.  Failures carry the first offending index triple so
they double as diagnostics on real data.
"""

from dataclasses import dataclass

import numpy as np

from .classical import euclidean_distances
from .errors import DimensionError


@dataclass(frozen=True)
class Partition:
    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(int(a) for a in self.A))
        object.__setattr__(self, "B", tuple(int(b) for b in self.B))
        if set(self.A) & set(self.B):
            raise ValueError(f"sets overlap on {sorted(set(self.A) & set(self.B))}")


@dataclass(frozen=True)
class Check:
    """Outcome of a structural predicate; truthy iff it holds."""

    holds: bool
    condition: str = ""
    index: tuple = ()
    value: float = float("nan")

    def __bool__(self):
        return self.holds

    def describe(self):
        if self.holds:
            return "holds"
        return f"fails: {self.condition} at {self.index} (value {self.value!r})"


def _sets(A, B):
    A = [int(a) for a in A]
    B = [int(b) for b in B]
    if not A or not B:
        raise ValueError("both sets must be nonempty")
    if set(A) & set(B):
        raise ValueError(f"sets overlap on {sorted(set(A) & set(B))}")
    return A, B


def _first_mismatch(block, target, tol, labels, indices):
    bad = np.argwhere(~(np.abs(block - target) <= tol))
    if bad.size == 0:
        return None
    k = tuple(int(i) for i in bad[0])
    return Check(False, labels, tuple(ix[i] for ix, i in zip(indices, k)), float(block[k]))


def _take(T, xs, ys, zs):
    return np.stack([T.slice(x)[np.ix_(ys, zs)] for x in xs])


def is_sufficiently_separated(R, Q, A, B, *, mutual=False, tol=0.0):
    """Whether ``A`` is sufficiently separated from ``B``.

    For all ``c, c* in A`` and ``d in B``: ``R[c, d, c*] = 1``,
    ``R[c, c*, d] = 0`` and ``Q[c, d, c*] = 1``.  With ``mutual=True`` the
    roles of ``A`` and ``B`` are also swapped.

    Returns a :class:`Check` naming the first violated condition.
    """
    A, B = _sets(A, B)
    directions = [(A, B), (B, A)] if mutual else [(A, B)]
    for S, T in directions:
        # blocks are indexed [c, d, c*] and [c, c*, d]
        found = (
            _first_mismatch(_take(R, S, T, S), 1.0, tol, "R[c, d, c*] = 1", (S, T, S))
            or _first_mismatch(_take(R, S, S, T), 0.0, tol, "R[c, c*, d] = 0", (S, S, T))
            or _first_mismatch(_take(Q, S, T, S), 1.0, tol, "Q[c, d, c*] = 1", (S, T, S))
        )
        if found is not None:
            return found
    return Check(True)


def is_concentrated(R, Q, A, B, *, tol=0.0):
    """Whether ``B`` is concentrated with respect to ``A``.

    Requires ``Q[a, b, b*] <= tol`` and, for each pair ``(a, a*)``, the
    values ``R[a, a*, b]`` over ``b in B`` to spread by at most ``tol``.
    """
    A, B = _sets(A, B)
    q = _take(Q, A, B, B)
    bad = np.argwhere(q > tol)
    if bad.size:
        i, j, k = bad[0]
        return Check(False, "Q[a, b, b*] = 0", (A[i], B[j], B[k]), float(q[i, j, k]))
    r = _take(R, A, A, B)
    spread = r.max(axis=2) - r.min(axis=2)
    bad = np.argwhere(spread > tol)
    if bad.size:
        i, j = bad[0]
        k = int(np.argmax(r[i, j]))
        return Check(False, "R[a, a*, b] constant over b", (A[i], A[j], B[k]), float(spread[i, j]))
    return Check(True)


def concentration_profile(R, A, B):
    """The common value ``R[a, a*, b]`` for each ``(a, a*)`` (first ``b``)."""
    A, B = _sets(A, B)
    return _take(R, A, A, B[:1])[:, :, 0]


def equivalent_ordinal_structure(R, Q, A, A2):
    """Whether ``R`` and ``Q`` agree exactly on corresponding index triples."""
    A = [int(a) for a in A]
    A2 = [int(a) for a in A2]
    if len(A) != len(A2):
        raise DimensionError(f"index lists differ in length: {len(A)} vs {len(A2)}")
    for name, T in (("R", R), ("Q", Q)):
        left = _take(T, A, A, A)
        right = _take(T, A2, A2, A2)
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, k = bad[0]
            return Check(False, f"{name} differs from {name} at {(A2[i], A2[j], A2[k])}",
                         (A[i], A[j], A[k]), float(left[i, j, k]))
    return Check(True)


def _cluster(rng, m):
    if m == 1:
        return np.zeros(1)
    inner = np.sort(rng.random(m - 2))
    return np.concatenate([[0.0], inner, [1.0]])


def generate_separated_instance(m_a, m_b, gap, seed=None, *, coincident_b=False):
    """Two one-dimensional clusters of diameter at most 1, ``gap`` apart.

    ``A`` occupies indices ``0 .. m_a-1`` inside ``[0, 1]`` and ``B`` the
    next ``m_b`` indices inside ``[1 + gap, 2 + gap]``.  With ``gap > 1`` the
    indicator arrays make the sets mutually sufficiently separated.

    ``coincident_b`` stacks every ``B`` point on one location, which also
    makes ``B`` concentrated with respect to ``A``.

    Returns ``(D, Partition, positions)``.
    """
    if m_a < 1 or m_b < 1:
        raise ValueError("cluster sizes must be positive")
    rng = np.random.default_rng(seed)
    pos_a = _cluster(rng, m_a)
    pos_b = np.full(m_b, 1.0 + gap + 0.5) if coincident_b else 1.0 + gap + _cluster(rng, m_b)
    pos = np.concatenate([pos_a, pos_b])
    part = Partition(range(m_a), range(m_a, m_a + m_b))
    return euclidean_distances(pos), part, pos


def generate_concentrated_instance(points_a, m_b, location):
    """``A`` at ``points_a`` plus ``m_b`` coincident points at ``location``.

    Provided ``location`` differs from every point of ``A``, the coincident
    block is sufficiently separated from and concentrated with respect to
    ``A`` under the indicator arrays, while still lying inside ``A``'s
    local foci when placed among its points.
    """
    points_a = np.asarray(points_a, dtype=np.float64)
    if points_a.ndim == 1:
        points_a = points_a[:, None]
    if m_b < 1:
        raise ValueError("m_b must be positive")
    loc = np.broadcast_to(np.asarray(location, dtype=np.float64), points_a.shape[1:])
    if np.any(np.all(points_a == loc, axis=1)):
        raise ValueError("location coincides with a point of A")
    pos = np.vstack([points_a, np.repeat(loc[None, :], m_b, axis=0)])
    m_a = points_a.shape[0]
    return euclidean_distances(pos), Partition(range(m_a), range(m_a, m_a + m_b)), pos
