"""Weighted fusion of several dissimilarity sources.

Two routes are offered: combine the distance matrices first and run the
indicator pipeline on the result, or build indicator arrays per source and
combine the relevance/support probabilities.  They generally disagree.
"""

import numpy as np

from .classical import check_dissimilarity
from .core import TripletArray
from .errors import DimensionError


def normalize_weights(weights):
    """Nonnegative relative weights rescaled to sum to one."""
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.size == 0:
        raise ValueError("weight vector is empty")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError(f"weights must be finite and nonnegative, got {w.tolist()}")
    total = w.sum()
    if total <= 0:
        raise ValueError("weights must not all be zero")
    return w / total


def combine_distances(Ds, weights):
    """Entrywise convex combination ``sum_i w_i D_i``."""
    Ds = [check_dissimilarity(D) for D in Ds]
    w = normalize_weights(weights)
    if len(Ds) != w.size:
        raise DimensionError(f"{len(Ds)} matrices but {w.size} weights")
    if len({D.shape for D in Ds}) != 1:
        raise DimensionError("all dissimilarity matrices must have the same size")
    out = np.zeros_like(Ds[0])
    for wi, D in zip(w, Ds):
        out += wi * D
    return out


def combine_triplet_arrays(arrays, weights):
    """Entrywise convex combination of same-role triplet arrays.

    Properties (a)-(d) are affine in the entries, so a convex combination
    of valid arrays is valid.  The result is dense if every input is dense,
    and lazy otherwise.
    """
    arrays = list(arrays)
    w = normalize_weights(weights)
    if len(arrays) != w.size:
        raise DimensionError(f"{len(arrays)} arrays but {w.size} weights")
    if len({A.n for A in arrays}) != 1:
        raise DimensionError("all arrays must have the same n")
    roles = {A.role for A in arrays}
    if len(roles) != 1:
        raise DimensionError(f"cannot combine arrays with roles {sorted(r.value for r in roles)}")
    role = roles.pop()
    n = arrays[0].n

    def mix(x):
        out = np.zeros((n, n))
        for wi, A in zip(w, arrays):
            if wi:
                out += wi * A.slice(x)
        return out

    if all(A.is_dense for A in arrays):
        return TripletArray(np.stack([mix(x) for x in range(n)]), role)
    return TripletArray.lazy(n, mix, role)


def edge_set_jaccard(edges_a, edges_b):
    """Jaccard similarity of two undirected edge sets (stability diagnostic)."""
    a = {tuple(sorted(e[:2])) for e in edges_a}
    b = {tuple(sorted(e[:2])) for e in edges_b}
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)
