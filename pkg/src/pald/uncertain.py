"""Relevance and support under bounded measurement noise.

Every observed value ``a`` stands for a true value drawn uniformly from
``[a - eps, a + eps]``.  For one-dimensional data both probabilities are
computed deterministically:

1. An interval-arithmetic pre-pass returns exactly 0 or 1 when the
   comparison has the same outcome for every admissible realization.
2. Otherwise the ``Z`` integral is done in closed form, the ``Y`` integral
   exactly over its linear pieces, and the remaining ``X`` integral by
   adaptive Gauss-Legendre quadrature seeded with the kink locations.

Higher-dimensional balls are handled by seeded Monte Carlo with the same
array interface.
"""

from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from ._streams import substream
from .core import DEFAULT_TOL, Role, TripletArray, cohesion, validate_arrays
from .errors import InvalidPairError, ValidationError

QUAD_TOL = 1e-8
MAX_PIECES = 1 << 16

_GL3 = np.polynomial.legendre.leggauss(3)
_GL5 = np.polynomial.legendre.leggauss(5)


@dataclass(frozen=True)
class UncertainPoints1D:
    base: np.ndarray
    epsilon: float

    def __post_init__(self):
        base = np.asarray(self.base, dtype=np.float64).ravel()
        if not np.all(np.isfinite(base)):
            raise ValueError("base values must be finite")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def n(self):
        return self.base.size


# -- interval pre-pass -------------------------------------------------------

def _span(center, radius):
    return center - radius, center + radius


def _product_sign(u, v):
    """+1 / -1 if ``u * v`` is surely positive / negative, else 0."""
    lo = min(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
    hi = max(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def _surely_nonpositive(u, v):
    hi = max(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
    return hi <= 0


def _surely_positive(u, v):
    return _product_sign(u, v) == 1


def interval_support(x0, y0, z0, eps):
    """Exact support value if decided for all realizations, else ``None``.

    ``|Z-X| < |Z-Y|`` is equivalent to ``(Y-X)(2Z-X-Y) < 0``.
    """
    sign = _product_sign(_span(y0 - x0, 2 * eps), _span(2 * z0 - x0 - y0, 4 * eps))
    if sign < 0:
        return 1.0
    if sign > 0:
        return 0.0
    return None


def interval_relevance(x0, y0, z0, eps):
    """Exact relevance value if decided for all realizations, else ``None``.

    ``|Z-X| <= |Y-X|`` iff ``(Z-Y)(Z+Y-2X) <= 0`` and
    ``|Z-Y| <= |X-Y|`` iff ``(Z-X)(Z+X-2Y) <= 0``.
    """
    near_x = (_span(z0 - y0, 2 * eps), _span(z0 + y0 - 2 * x0, 4 * eps))
    near_y = (_span(z0 - x0, 2 * eps), _span(z0 + x0 - 2 * y0, 4 * eps))
    if _surely_nonpositive(*near_x) or _surely_nonpositive(*near_y):
        return 1.0
    if _surely_positive(*near_x) and _surely_positive(*near_y):
        return 0.0
    return None


# -- quadrature --------------------------------------------------------------
#
# Inner integrands give P(condition | X, Y) after integrating Z in closed
# form.  Each is linear in Y between the breakpoints returned alongside it;
# breakpoints are (alpha, beta) pairs meaning alpha * X + beta.

def _relevance_given(X, Y, a, b, eps):
    r = np.abs(X - Y)
    lo = np.minimum(X, Y) - r
    hi = np.maximum(X, Y) + r
    return np.clip(np.minimum(hi, b) - np.maximum(lo, a), 0.0, None) / (2 * eps)


def _support_given(X, Y, a, b, eps):
    below = np.clip((0.5 * (X + Y) - a) / (2 * eps), 0.0, 1.0)
    return np.where(X < Y, below, np.where(X > Y, 1.0 - below, 0.5))


def _relevance_breaks(a, b):
    return [(1.0, 0.0), (0.5, 0.5 * a), (0.5, 0.5 * b), (2.0, -a), (2.0, -b)]


def _support_breaks(a, b):
    return [(1.0, 0.0), (-1.0, 2 * a), (-1.0, 2 * b)]


def _inner(X, given, breaks, y_lo, y_hi, a, b, eps):
    """Exact mean over Y of ``given`` for each X (piecewise midpoint rule)."""
    X = np.asarray(X, dtype=np.float64)
    cols = [alpha * X + beta for alpha, beta in breaks]
    cols += [np.full_like(X, y_lo), np.full_like(X, y_hi)]
    pts = np.sort(np.clip(np.stack(cols, axis=-1), y_lo, y_hi), axis=-1)
    lens = np.diff(pts, axis=-1)
    mids = 0.5 * (pts[..., 1:] + pts[..., :-1])
    vals = given(X[..., None], mids, a, b, eps)
    return (lens * vals).sum(axis=-1) / (y_hi - y_lo)


def _outer_breaks(breaks, y_lo, y_hi, x_lo, x_hi):
    lines = list(breaks) + [(0.0, y_lo), (0.0, y_hi)]
    found = set()
    for i, (a1, b1) in enumerate(lines):
        for a2, b2 in lines[i + 1:]:
            if a1 != a2:
                t = (b2 - b1) / (a1 - a2)
                if x_lo < t < x_hi:
                    found.add(t)
    return sorted(found)


def _gauss(f, lo, hi, rule):
    nodes, weights = rule
    half = 0.5 * (hi - lo)
    return half * float(np.dot(weights, f(0.5 * (hi + lo) + half * nodes)))


def _adaptive(f, x_lo, x_hi, seeds, tol):
    edges = [x_lo, *seeds, x_hi]
    stack = [(edges[k], edges[k + 1]) for k in range(len(edges) - 1)][::-1]
    width = x_hi - x_lo
    total = 0.0
    pieces = 0
    while stack:
        lo, hi = stack.pop()
        coarse = _gauss(f, lo, hi, _GL3)
        fine = _gauss(f, lo, hi, _GL5)
        pieces += 1
        if abs(fine - coarse) <= tol * (hi - lo) / width or pieces >= MAX_PIECES:
            total += fine
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
    return total


def _quadrature(x0, y0, z0, eps, given, breaks_of, tol):
    a, b = z0 - eps, z0 + eps
    y_lo, y_hi = y0 - eps, y0 + eps
    x_lo, x_hi = x0 - eps, x0 + eps
    breaks = breaks_of(a, b)
    seeds = _outer_breaks(breaks, y_lo, y_hi, x_lo, x_hi)

    def f(X):
        return _inner(X, given, breaks, y_lo, y_hi, a, b, eps)

    return _adaptive(f, x_lo, x_hi, seeds, tol) / (x_hi - x_lo)


def triplet_values_1d(x0, y0, z0, eps, tol=QUAD_TOL):
    """``(R, Q)`` for three distinct uncertain values centred at ``x0, y0, z0``."""
    r = interval_relevance(x0, y0, z0, eps)
    if r is None:
        r = _quadrature(x0, y0, z0, eps, _relevance_given, _relevance_breaks, tol)
        r = min(max(r, 0.0), 1.0)
    q = interval_support(x0, y0, z0, eps)
    if q is None:
        q = _quadrature(x0, y0, z0, eps, _support_given, _support_breaks, tol)
        q = min(max(q, 0.0), 1.0)
    return r, q


def uncertain_triplet_1d(points, x, y, z, tol=QUAD_TOL):
    """``(R[x, y, z], Q[x, y, z])`` under the uniform noise model.

    Repeated indices follow the conventions used for arrays: ``z`` equal to
    ``x`` or ``y`` is always relevant and supports the element it is.
    """
    if x == y:
        raise InvalidPairError(f"triplet needs x != y, got x = y = {x}")
    if z == x:
        return 1.0, 1.0
    if z == y:
        return 1.0, 0.0
    b = points.base
    return triplet_values_1d(b[x], b[y], b[z], points.epsilon, tol)


def _assemble(n, pair_rows, jobs, tol_check):
    R = np.zeros((n, n, n))
    Q = np.zeros((n, n, n))
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    for (x, y), rows in zip(pairs, parallel_map(pair_rows, pairs, jobs)):
        R[x, y, x] = R[y, x, x] = R[x, y, y] = R[y, x, y] = 1.0
        Q[x, y, x] = Q[y, x, y] = 1.0
        Q[x, y, y] = Q[y, x, x] = 0.0
        for z, r, q in rows:
            R[x, y, z] = R[y, x, z] = r
            Q[x, y, z] = q
            Q[y, x, z] = 1.0 - q
    ix = np.arange(n)
    R[ix, ix, ix] = 1.0
    Q[ix, ix, :] = 0.5
    Ra, Qa = TripletArray(R, Role.RELEVANCE), TripletArray(Q, Role.SUPPORT)
    bad = validate_arrays(Ra, Qa, tol_check)
    if bad:
        raise ValidationError(f"uncertain arrays violate property ({bad[0].prop}) at {bad[0].index}", bad)
    return Ra, Qa


def uncertain_arrays(points, *, tol=QUAD_TOL, jobs=1):
    """Dense ``(R, Q)`` for one-dimensional uncertain points.

    ``R[x, x, z]`` is 0 for ``z != x``: with a single realization of ``X``
    nothing other than ``x`` itself lies within distance 0.
    """
    n = points.n
    if n < 2:
        raise InvalidPairError("uncertain arrays need at least two elements")
    base, eps = points.base, points.epsilon

    def pair_rows(pair):
        x, y = pair
        return [(z, *triplet_values_1d(base[x], base[y], base[z], eps, tol))
                for z in range(n) if z != x and z != y]

    return _assemble(n, pair_rows, jobs, 1e-6)


# -- Monte Carlo ---------------------------------------------------------------

def _ball(rng, center, eps, samples):
    d = center.size
    if d == 1:
        return center + rng.uniform(-eps, eps, size=(samples, 1))
    direction = rng.standard_normal((samples, d))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    radius = eps * rng.random(samples) ** (1.0 / d)
    return center + direction * radius[:, None]


def triplet_values_mc(x0, y0, z0, eps, samples, seed, key=()):
    """Monte Carlo ``(R, Q)`` for centres in any dimension (uniform balls)."""
    rng = substream(seed, *key)
    x0, y0, z0 = (np.atleast_1d(np.asarray(c, dtype=np.float64)) for c in (x0, y0, z0))
    X = _ball(rng, x0, eps, samples)
    Y = _ball(rng, y0, eps, samples)
    Z = _ball(rng, z0, eps, samples)
    dzx = np.linalg.norm(Z - X, axis=1)
    dzy = np.linalg.norm(Z - Y, axis=1)
    dxy = np.linalg.norm(X - Y, axis=1)
    r = np.count_nonzero((dzx <= dxy) | (dzy <= dxy)) / samples
    q = (np.count_nonzero(dzx < dzy) + 0.5 * np.count_nonzero(dzx == dzy)) / samples
    return r, q


def uncertain_arrays_mc(points, epsilon, *, samples=10**5, seed, jobs=1):
    """Monte Carlo ``(R, Q)`` for points of shape ``(n,)`` or ``(n, d)``.

    Each triple uses its own substream keyed by ``(seed, x, y, z)``.
    """
    P = np.asarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P[:, None]
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n = P.shape[0]
    if n < 2:
        raise InvalidPairError("uncertain arrays need at least two elements")

    def pair_rows(pair):
        x, y = pair
        return [(z, *triplet_values_mc(P[x], P[y], P[z], epsilon, samples, seed, (x, y, z)))
                for z in range(n) if z != x and z != y]

    return _assemble(n, pair_rows, jobs, DEFAULT_TOL)


# -- sweeps ------------------------------------------------------------------

def epsilon_sweep(base, eps_list, *, jobs=1, tol=QUAD_TOL):
    """Cohesion matrices for a strictly increasing list of noise radii."""
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise ValueError("eps_list is empty")
    if any(e <= 0 for e in eps_list):
        raise ValueError("every epsilon must be positive")
    if any(b <= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_list must be strictly increasing")
    out = []
    for eps in eps_list:
        R, Q = uncertain_arrays(UncertainPoints1D(base, eps), tol=tol, jobs=jobs)
        out.append((eps, cohesion(R, Q, jobs=jobs, tol=1e-6)))
    return out


def sweep_records(sweep, labels):
    """Long-format rows ``(epsilon, x_label, w_label, cohesion)``."""
    rows = []
    for eps, C in sweep:
        for x, xl in enumerate(labels):
            for w, wl in enumerate(labels):
                rows.append((eps, xl, wl, float(C[x, w])))
    return rows
