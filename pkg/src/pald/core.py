"""Relevance/support arrays and the generalized cohesion kernel.

A relevance array ``R[x, y, z]`` is the probability that ``z`` is local to the
pair ``(x, y)``; a support array ``Q[x, y, z]`` is the probability that ``z``
supports ``x`` over ``y``.  Cohesion is obtained by drawing ``Y`` uniformly
from ``S \\ {x}``, drawing ``Z`` proportionally to ``R[x, Y, :]`` and
recording the probability that ``Z = w`` and ``Z`` supports ``x``.
"""

import enum
import math
from typing import NamedTuple

import numpy as np

from ._parallel import parallel_map
from .errors import DimensionError, InvalidPairError, ValidationError

#: Largest n for which builders materialize full n x n x n arrays.
DENSE_CAP = 256

#: Default slack for property validation of computed (non-indicator) arrays.
DEFAULT_TOL = 1e-9


class Role(str, enum.Enum):
    RELEVANCE = "relevance"
    SUPPORT = "support"


class TripletArray:
    """An ``n x n x n`` probability array, stored densely or produced lazily.

    The lazy form is a function ``slice_fn(x)`` returning the ``(n, n)``
    matrix ``A[x, :, :]`` indexed by ``(y, z)``.  The cohesion kernel only
    ever asks for one ``x`` slice at a time, so lazy arrays never need cubic
    memory.
    """

    __slots__ = ("n", "role", "_values", "_slice_fn")

    def __init__(self, values, role):
        values = np.array(values, dtype=np.float64)
        if values.ndim != 3 or not (values.shape[0] == values.shape[1] == values.shape[2]):
            raise DimensionError(f"expected an n x n x n array, got shape {values.shape}")
        values.setflags(write=False)
        self.n = values.shape[0]
        self.role = Role(role)
        self._values = values
        self._slice_fn = None

    @classmethod
    def lazy(cls, n, slice_fn, role):
        obj = cls.__new__(cls)
        obj.n = int(n)
        obj.role = Role(role)
        obj._values = None
        obj._slice_fn = slice_fn
        return obj

    @classmethod
    def from_function(cls, n, fn, role):
        """Lazy array backed by a scalar oracle ``fn(x, y, z) -> float``."""

        def slice_fn(x):
            out = np.empty((n, n))
            for y in range(n):
                for z in range(n):
                    out[y, z] = fn(x, y, z)
            return out

        return cls.lazy(n, slice_fn, role)

    @property
    def is_dense(self):
        return self._values is not None

    @property
    def values(self):
        """Dense view; raises for lazy arrays (use :meth:`to_dense`)."""
        if self._values is None:
            raise TypeError("lazy TripletArray has no stored values; call to_dense()")
        return self._values

    def slice(self, x):
        if self._values is not None:
            return self._values[x]
        out = np.asarray(self._slice_fn(x), dtype=np.float64)
        if out.shape != (self.n, self.n):
            raise DimensionError(f"slice {x} has shape {out.shape}, expected {(self.n, self.n)}")
        return out

    def __getitem__(self, index):
        x, y, z = index
        if self._values is not None:
            return float(self._values[x, y, z])
        return float(self.slice(x)[y, z])

    def to_dense(self):
        if self._values is not None:
            return self
        return TripletArray(np.stack([self.slice(x) for x in range(self.n)]), self.role)

    def __repr__(self):
        kind = "dense" if self.is_dense else "lazy"
        return f"TripletArray(n={self.n}, role={self.role.value}, {kind})"


class Violation(NamedTuple):
    prop: str
    array: str
    index: tuple
    value: float


def _check_pair(R, Q):
    if not isinstance(R, TripletArray) or not isinstance(Q, TripletArray):
        raise TypeError("R and Q must be TripletArray instances")
    if R.n != Q.n:
        raise DimensionError(f"R has n={R.n} but Q has n={Q.n}")
    if R.role is not Role.RELEVANCE:
        raise DimensionError("first array must have the relevance role")
    if Q.role is not Role.SUPPORT:
        raise DimensionError("second array must have the support role")


def _range_violations(name, A, tol, offset=None):
    bad = ~((A >= -tol) & (A <= 1.0 + tol))
    out = []
    for idx in np.argwhere(bad):
        idx = tuple(int(i) for i in idx)
        full = idx if offset is None else (offset, *idx)
        out.append(Violation("a", name, full, float(A[idx])))
    return out


def _dense_violations(R, Q, tol):
    n = R.shape[0]
    out = _range_violations("R", R, tol) + _range_violations("Q", Q, tol)

    x, y = np.triu_indices(n, k=1)
    diff = np.abs(R[x, y, :] - R[y, x, :])
    for k, z in np.argwhere(diff > tol):
        out.append(Violation("b", "R", (int(x[k]), int(y[k]), int(z)), float(R[x[k], y[k], z])))

    x, y = np.triu_indices(n, k=0)
    resid = np.abs(Q[x, y, :] + Q[y, x, :] - 1.0)
    for k, z in np.argwhere(~(resid <= tol)):
        out.append(Violation("c", "Q", (int(x[k]), int(y[k]), int(z)), float(Q[x[k], y[k], z])))

    ix = np.arange(n)
    self_x = R[ix[:, None], ix[None, :], ix[:, None]]
    self_y = R[ix[:, None], ix[None, :], ix[None, :]]
    for block, third in ((self_x, 0), (self_y, 1)):
        for a, b in np.argwhere(~(np.abs(block - 1.0) <= tol)):
            z = (a, b)[third]
            out.append(Violation("d", "R", (int(a), int(b), int(z)), float(block[a, b])))
    return out


def _slice_local_violations(x, Rs, Qs, tol):
    """Properties checkable from the ``x`` slice alone: (a) and (d)."""
    n = Rs.shape[0]
    out = _range_violations("R", Rs, tol, offset=x) + _range_violations("Q", Qs, tol, offset=x)
    ys = np.arange(n)
    for z_of_y in (np.full(n, x), ys):
        vals = Rs[ys, z_of_y]
        for y in np.flatnonzero(~(np.abs(vals - 1.0) <= tol)):
            out.append(Violation("d", "R", (x, int(y), int(z_of_y[y])), float(vals[y])))
    return out


def validate_arrays(R, Q, tol=DEFAULT_TOL):
    """Check the structural properties (a)-(d) of a relevance/support pair.

    Parameters
    ----------
    R, Q : TripletArray
        Relevance and support arrays of the same size.
    tol : float
        Absolute slack.  Indicator constructions are exact and can be
        checked with ``tol=0``.

    Returns
    -------
    list of Violation
        Empty iff every property holds.  Symmetric properties (b) and (c)
        are reported once per unordered pair, at the index with ``x <= y``.

    Raises
    ------
    DimensionError
        If the arrays differ in size or carry the wrong roles.
    """
    _check_pair(R, Q)
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    order = {"a": 0, "b": 1, "c": 2, "d": 3}
    if R.is_dense and Q.is_dense:
        out = _dense_violations(R.values, Q.values, tol)
        out.sort(key=lambda v: (order[v.prop], v.array, v.index))
        return out

    # Lazy arrays: (b) and (c) couple slices x and y, so every pair of slices
    # is visited.  This costs O(n^4) and is meant for diagnostics only.
    n = R.n
    out = []
    for x in range(n):
        Rx, Qx = R.slice(x), Q.slice(x)
        out.extend(_slice_local_violations(x, Rx, Qx, tol))
        for y in range(x, n):
            Ry = Rx if y == x else R.slice(y)
            Qy = Qx if y == x else Q.slice(y)
            if y > x:
                for z in np.flatnonzero(np.abs(Rx[y] - Ry[x]) > tol):
                    out.append(Violation("b", "R", (x, y, int(z)), float(Rx[y, z])))
            for z in np.flatnonzero(~(np.abs(Qx[y] + Qy[x] - 1.0) <= tol)):
                out.append(Violation("c", "Q", (x, y, int(z)), float(Qx[y, z])))
    out.sort(key=lambda v: (order[v.prop], v.array, v.index))
    return out


def _require_valid(R, Q, tol):
    violations = validate_arrays(R, Q, tol)
    if violations:
        first = violations[0]
        raise ValidationError(
            f"{len(violations)} property violation(s); first: property ({first.prop}) "
            f"of {first.array} at {first.index} (value {first.value!r})",
            violations,
        )


def local_distribution(R, x, y):
    """Distribution of the local element ``Z`` for the pair ``(x, y)``.

    ``P(Z = z)`` is proportional to ``R[x, y, z]``; property (d) guarantees
    the normalizer is at least 2.
    """
    if x == y:
        raise InvalidPairError(f"local distribution needs x != y, got x = y = {x}")
    row = R.slice(x)[y]
    return row / row.sum()


def _row_setup(R, Q, validate, tol):
    _check_pair(R, Q)
    n = R.n
    if n < 2:
        raise DimensionError("cohesion needs at least two elements")
    check_slices = False
    if validate:
        if R.is_dense and Q.is_dense:
            _require_valid(R, Q, tol)
        else:
            check_slices = True
    return n, check_slices


def _weighted_slice(R, Q, i, check, tol):
    Rs = R.slice(i)
    Qs = Q.slice(i)
    if check:
        bad = _slice_local_violations(i, Rs, Qs, tol)
        if bad:
            raise ValidationError(
                f"property ({bad[0].prop}) of {bad[0].array} violated at {bad[0].index}", bad
            )
    P = Rs / Rs.sum(axis=1, keepdims=True)
    return P, Qs


def cohesion(R, Q, *, jobs=1, validate=True, tol=DEFAULT_TOL):
    """Cohesion matrix ``C[x, w]`` from relevance and support arrays.

    Rows are independent: row ``i`` accumulates, over ``j != i``, the local
    distribution of the pair ``(i, j)`` weighted by ``Q[i, j, :]`` and
    scaled by ``1 / (n - 1)``.  Each row is computed privately by the same
    code, so the result is bit-identical for every value of ``jobs``.

    With ``validate=True`` dense inputs are fully checked against (a)-(d);
    lazy inputs are checked slice by slice for (a) and (d) only.
    """
    n, check = _row_setup(R, Q, validate, tol)

    def row(i):
        P, Qs = _weighted_slice(R, Q, i, check, tol)
        P *= Qs
        P[i] = 0.0
        return P.sum(axis=0) / (n - 1)

    return np.vstack(parallel_map(row, range(n), jobs))


def local_depths(C):
    """Local depth of each element: the row sums of ``C``."""
    return np.asarray(C).sum(axis=1)


def threshold_bound(C):
    """Strong-tie threshold ``(1 / 2n) * trace(C)``."""
    C = np.asarray(C)
    return float(np.trace(C)) / (2 * C.shape[0])


def threshold_exact(R, Q, *, jobs=1, validate=True, tol=DEFAULT_TOL):
    """``P(Z = W, Z supports X)`` with ``Z, W`` i.i.d. local to ``(X, Y)``.

    Never exceeds :func:`threshold_bound` when every element fully supports
    itself against any opponent (``Q[x, y, x] = 1``); coincides with it for
    distance-derived indicator arrays without duplicate points.
    """
    n, check = _row_setup(R, Q, validate, tol)

    def row(i):
        P, Qs = _weighted_slice(R, Q, i, check, tol)
        T = P * P * Qs
        T[i] = 0.0
        return float(T.sum())

    return math.fsum(parallel_map(row, range(n), jobs)) / (n * (n - 1))


def conservation_residual(C):
    """``|sum(C) - n/2|``; zero up to rounding for any valid input."""
    C = np.asarray(C)
    return abs(math.fsum(C.ravel()) - C.shape[0] / 2)


def random_valid_arrays(n, rng, *, sparsity=0.0, self_support=False):
    """Random ``(R, Q)`` satisfying (a)-(d) exactly.

    ``sparsity`` is the chance that an off-structure relevance entry is zero.
    ``self_support`` additionally forces ``Q[x, y, x] = 1``.
    """
    rng = np.random.default_rng(rng)
    R = rng.random((n, n, n))
    if sparsity:
        R[rng.random((n, n, n)) < sparsity] = 0.0
    x, y = np.tril_indices(n, k=-1)
    R[x, y, :] = R[y, x, :]
    ix = np.arange(n)
    R[ix[:, None], ix[None, :], ix[:, None]] = 1.0
    R[ix[:, None], ix[None, :], ix[None, :]] = 1.0

    Q = rng.random((n, n, n))
    if self_support:
        Q[ix[:, None], ix[None, :], ix[:, None]] = 1.0
        Q[ix[:, None], ix[None, :], ix[None, :]] = 0.0
    Q[x, y, :] = 1.0 - Q[y, x, :]
    Q[ix, ix, :] = 0.5
    return TripletArray(R, Role.RELEVANCE), TripletArray(Q, Role.SUPPORT)
