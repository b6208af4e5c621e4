"""Independent reference implementations used only by the tests.

Nothing here imports the kernels under test.  The classical oracle works
from squared distances in exact rational arithmetic; the uncertain
reference uses nested adaptive quadrature from scipy.
"""

from fractions import Fraction

import numpy as np
from scipy import integrate


def exact_sq_distances(points):
    """Squared Euclidean distances as Fractions (floats converted exactly)."""
    P = [[Fraction(float(c)) for c in np.atleast_1d(p)] for p in np.asarray(points, dtype=float)]
    n = len(P)
    return [[sum((a - b) ** 2 for a, b in zip(P[i], P[j])) for j in range(n)] for i in range(n)]


def classical_cohesion_exact(d):
    """Brute-force cohesion by enumeration.

    ``d`` is any exact dissimilarity table (list of lists).  Y runs over
    every other element, Z uniformly over the local focus of (x, Y); Z
    supports x when strictly closer to x than to Y, half on a tie.
    """
    n = len(d)
    C = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            focus = [z for z in range(n) if d[z][x] <= d[y][x] or d[z][y] <= d[x][y]]
            share = Fraction(1, (n - 1) * len(focus))
            for z in focus:
                if d[z][x] < d[z][y]:
                    C[x][z] += share
                elif d[z][x] == d[z][y]:
                    C[x][z] += share / 2
    return C


def cohesion_from_arrays_exact(R, Q):
    """Cohesion from arbitrary (R, Q) with exact rational accumulation."""
    R = np.asarray(R)
    Q = np.asarray(Q)
    n = R.shape[0]
    C = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            r = [Fraction(float(v)) for v in R[x, y]]
            total = sum(r)
            for z in range(n):
                C[x][z] += r[z] / total * Fraction(float(Q[x, y, z])) / (n - 1)
    return C


def threshold_exact_fraction(R, Q):
    R = np.asarray(R)
    Q = np.asarray(Q)
    n = R.shape[0]
    acc = Fraction(0)
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            r = [Fraction(float(v)) for v in R[x, y]]
            total = sum(r)
            acc += sum((rz / total) ** 2 * Fraction(float(Q[x, y, z])) for z, rz in enumerate(r))
    return acc / (n * (n - 1))


def to_float(M):
    return np.array([[float(v) for v in row] for row in M])


def uncertain_reference(x0, y0, z0, eps):
    """``(R, Q)`` for uniform noise by nested scipy quadrature.

    Z is integrated by hand (length of an interval overlap); Y and X by
    ``quad`` with the kinks passed as break points.
    """
    a, b = z0 - eps, z0 + eps
    w = 2 * eps

    def rel(Y, X):
        r = abs(X - Y)
        lo, hi = min(X, Y) - r, max(X, Y) + r
        return max(0.0, min(hi, b) - max(lo, a)) / w

    def sup(Y, X):
        m = 0.5 * (X + Y)
        if X < Y:
            return min(max((m - a) / w, 0.0), 1.0)
        if X > Y:
            return min(max((b - m) / w, 0.0), 1.0)
        return 0.5

    def outer(f, breaks):
        def g(X):
            pts = [p for p in breaks(X) if y0 - eps < p < y0 + eps]
            return integrate.quad(f, y0 - eps, y0 + eps, args=(X,), points=pts or None,
                                  limit=200, epsabs=1e-13, epsrel=1e-12)[0] / w
        xs = [p for p in (y0 - eps, y0 + eps, a, b, 2 * a - y0, 2 * b - y0, (a + y0) / 2, (b + y0) / 2,
                          2 * y0 - a, 2 * y0 - b, z0) if x0 - eps < p < x0 + eps]
        return integrate.quad(g, x0 - eps, x0 + eps, points=xs or None,
                              limit=200, epsabs=1e-12, epsrel=1e-11)[0] / w

    r = outer(rel, lambda X: [X, (X + a) / 2, (X + b) / 2, 2 * X - a, 2 * X - b])
    q = outer(sup, lambda X: [X, 2 * a - X, 2 * b - X])
    return r, q
