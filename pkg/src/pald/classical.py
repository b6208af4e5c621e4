"""Indicator relevance/support arrays built from a dissimilarity matrix.

With ``R`` the local-focus indicator and ``Q`` the closer-to-x indicator
(ties worth 1/2), the generalized kernel reproduces the original
partitioned-local-depth cohesion.  All comparisons are exact; no epsilon is
applied to stored values.
"""

import numpy as np

from .core import DENSE_CAP, Role, TripletArray, cohesion
from .errors import DimensionError, InvalidPairError


def check_dissimilarity(D):
    """Return ``D`` as a float array after checking it is square and finite.

    Symmetry and the triangle inequality are not required.
    """
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionError(f"dissimilarity matrix must be square, got shape {D.shape}")
    if not np.all(np.isfinite(D)):
        raise DimensionError("dissimilarity matrix has non-finite entries")
    return D


def euclidean_distances(points):
    """Pairwise Euclidean distances between the rows of ``points``."""
    P = np.asarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P[:, None]
    diff = P[:, None, :] - P[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def local_focus(D, x, y):
    """Elements as close to ``x`` as ``y`` is, or as close to ``y`` as ``x`` is."""
    if x == y:
        raise InvalidPairError(f"local focus needs x != y, got x = y = {x}")
    D = check_dissimilarity(D)
    inside = (D[:, x] <= D[y, x]) | (D[:, y] <= D[x, y])
    return frozenset(int(z) for z in np.flatnonzero(inside))


def _relevance_slice(D, Dt, x):
    # [y, z] -> d(z, x) <= d(y, x)  or  d(z, y) <= d(x, y)
    dzx = D[:, x]
    inside = (dzx[None, :] <= dzx[:, None]) | (Dt <= D[x, :, None])
    return inside.astype(np.float64)


def _support_slice(D, Dt, x):
    # [y, z] -> 1 if d(z, x) < d(z, y), 1/2 on ties
    dzx = D[:, x][None, :]
    out = (dzx < Dt).astype(np.float64)
    out[dzx == Dt] = 0.5
    return out


def _build(D, slice_builder, role, dense_cap):
    D = check_dissimilarity(D)
    Dt = np.ascontiguousarray(D.T)
    n = D.shape[0]
    if n <= dense_cap:
        return TripletArray(np.stack([slice_builder(D, Dt, x) for x in range(n)]), role)
    return TripletArray.lazy(n, lambda x: slice_builder(D, Dt, x), role)


def relevance_from_distances(D, *, dense_cap=DENSE_CAP):
    """Local-focus indicator array ``R[x, y, z] = [z in U(x, y)]``.

    Dense when ``n <= dense_cap``, otherwise a lazy slice producer.
    """
    return _build(D, _relevance_slice, Role.RELEVANCE, dense_cap)


def support_from_distances(D, *, dense_cap=DENSE_CAP):
    """Support indicator ``Q[x, y, z]``: 1 if ``d(z,x) < d(z,y)``, 1/2 on ties, else 0."""
    return _build(D, _support_slice, Role.SUPPORT, dense_cap)


def classical_cohesion(D, *, jobs=1, dense_cap=DENSE_CAP):
    """Cohesion matrix of a dissimilarity matrix via the indicator arrays."""
    D = check_dissimilarity(D)
    R = relevance_from_distances(D, dense_cap=dense_cap)
    Q = support_from_distances(D, dense_cap=dense_cap)
    # Indicator arrays satisfy (a)-(d) by construction; skipping the cubic
    # validation pass keeps large inputs cheap.
    return cohesion(R, Q, jobs=jobs, validate=False)
