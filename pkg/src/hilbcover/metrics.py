"""Funk, Hilbert and Minkowski distances, balls and the projective polar map.

For K = {<n_i, x> <= b_i} and interior x, the body K - x has gauge
g_x(v) = max_i <n_i, v> / (b_i - <n_i, x>), so the Funk distance is
d_F(x, y) = -log(1 - g_x(y - x)).  Most routines are vectorized over the
leading axes of their point arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import (EPS_BOUNDARY, R_PLUS, TOL_CROSS, TOL_SET_DIST,
                     default_ndir)
from .convex_core import ConvexBody, centroid, ray_exit
from .errors import (DimensionError, DomainViolation, InvalidParameter, RadiusOutOfRange,
                     OriginNotInterior, PointNotInterior)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _as_points(K: ConvexBody, X):
    X = np.asarray(X, float)
    if X.ndim == 0 or X.shape[-1] != K.dim:
        if K.dim == 1 and X.ndim <= 1:
            X = X[..., None]
        else:
            raise DimensionError(f"points of dimension {X.shape[-1:]} in a {K.dim}-body")
    return X


def check_interior(K: ConvexBody, X, what: str = "point"):
    X = _as_points(K, X)
    if np.any(np.min(K.slack(X), axis=-1) <= EPS_BOUNDARY):
        raise PointNotInterior(f"{what} is not interior to K")
    return X


FAST_FACETS = 48


def funk_gauge(K: ConvexBody, X, V):
    """Gauge of K - x evaluated at v, broadcast over leading axes."""
    if K.dim == 2 and K.n_facets > FAST_FACETS:
        return _funk_gauge_polygon(K, X, V)
    slack = K.offsets - X @ K.normals.T
    return np.max((V @ K.normals.T) / slack, axis=-1)


def _funk_gauge_polygon(K: ConvexBody, X, V):
    """Same gauge for many-sided polygons in O(log F) per query.

    The exit facet of the ray from x along v is located by binary search on
    the angles of the vertices seen from x, which increase around x.  The
    three facets around the hit are then compared exactly.
    """
    X, V = np.broadcast_arrays(np.asarray(X, float), np.asarray(V, float))
    shape = X.shape[:-1]
    X = X.reshape(-1, 2)
    V = V.reshape(-1, 2)
    P = K.vertices
    F = len(P)
    two_pi = 2 * np.pi
    th0 = np.arctan2(P[0, 1] - X[:, 1], P[0, 0] - X[:, 0])
    phi = np.mod(np.arctan2(V[:, 1], V[:, 0]) - th0, two_pi)
    lo = np.zeros(len(X), int)
    hi = np.full(len(X), F)
    while True:
        open_ = hi - lo > 1
        if not open_.any():
            break
        mid = (lo + hi) // 2
        q = P[np.minimum(mid, F - 1)]
        th = np.mod(np.arctan2(q[:, 1] - X[:, 1], q[:, 0] - X[:, 0]) - th0, two_pi)
        go = (th <= phi) & open_
        lo = np.where(go, mid, lo)
        hi = np.where(open_ & ~go, mid, hi)
    idx = (lo[:, None] + np.array([-1, 0, 1])[None, :]) % F
    N = K.normals[idx]
    slack = K.offsets[idx] - np.einsum("qkd,qd->qk", N, X)
    g = np.einsum("qkd,qd->qk", N, V) / slack
    return g.max(axis=1).reshape(shape)


def funk_distance(K: ConvexBody, x, y):
    """Funk distance d_F(x, y) = log(t / (t - 1)) along the ray from x through y."""
    x = check_interior(K, x, "x")
    y = check_interior(K, y, "y")
    g = np.maximum(funk_gauge(K, x, y - x), 0.0)
    return -np.log1p(-g)


def funk_distance_variational(K: ConvexBody, x, y):
    """Funk distance as log sup over z in the polar of (1 - <z,x>) / (1 - <z,y>).

    The body is first recentered at its centroid so the polar exists; the
    Funk distance is unchanged by translations.
    """
    x = check_interior(K, x, "x")
    y = check_interior(K, y, "y")
    c = centroid(K)
    Z = K.normals / (K.offsets - K.normals @ c)[:, None]
    num = 1.0 - (x - c) @ Z.T
    den = 1.0 - (y - c) @ Z.T
    return np.maximum(np.log(np.max(num / den, axis=-1)), 0.0)


def hilbert_distance(K: ConvexBody, x, y):
    x = check_interior(K, x, "x")
    y = check_interior(K, y, "y")
    g1 = np.maximum(funk_gauge(K, x, y - x), 0.0)
    g2 = np.maximum(funk_gauge(K, y, x - y), 0.0)
    return -0.5 * (np.log1p(-g1) + np.log1p(-g2))


# metric objects -------------------------------------------------------------

class HilbertMetric:
    """Hilbert metric of K, usable wherever a generic metric is expected."""
    tag = "hilbert"
    symmetric = True

    def __init__(self, K: ConvexBody):
        self.K = K
        self.dim = K.dim

    @property
    def body(self):
        return self.K

    def check(self, X):
        return check_interior(self.K, X)

    def distance(self, X, Y):
        K = self.K
        g1 = np.maximum(funk_gauge(K, X, Y - X), 0.0)
        g2 = np.maximum(funk_gauge(K, Y, X - Y), 0.0)
        return -0.5 * (np.log1p(-g1) + np.log1p(-g2))

    def _scaled(self, X):
        slack = self.K.offsets - X @ self.K.normals.T
        Nt = self.K.normals[None, :, :] / slack[:, :, None]  # (m, F, d)
        c = np.einsum("mfd,md->mf", Nt, X)
        return Nt, c

    def pairwise(self, X, Y, prepared=None):
        """Distance matrix (len X, len Y) using one matrix product per side."""
        X = np.atleast_2d(X)
        Y = np.atleast_2d(Y)
        m, k, F = len(X), len(Y), self.K.n_facets
        Nx, cx = prepared[0] if prepared else self._scaled(X)
        Ny, cy = prepared[1] if prepared else self._scaled(Y)
        g1 = (Nx.reshape(m * F, -1) @ Y.T).reshape(m, F, k) - cx[:, :, None]
        g2 = (Ny.reshape(k * F, -1) @ X.T).reshape(k, F, m) - cy[:, :, None]
        g1 = np.maximum(g1.max(axis=1), 0.0)
        g2 = np.maximum(g2.max(axis=1), 0.0).T
        return -0.5 * (np.log1p(-g1) + np.log1p(-g2))

    def prepare(self, X):
        return self._scaled(np.atleast_2d(X))


class FunkMetric(HilbertMetric):
    tag = "funk"
    symmetric = False

    def distance(self, X, Y):
        return -np.log1p(-np.maximum(funk_gauge(self.K, X, Y - X), 0.0))

    def pairwise(self, X, Y, prepared=None):
        X = np.atleast_2d(X)
        Y = np.atleast_2d(Y)
        m, k, F = len(X), len(Y), self.K.n_facets
        Nx, cx = prepared[0] if prepared else self._scaled(X)
        g1 = (Nx.reshape(m * F, -1) @ Y.T).reshape(m, F, k) - cx[:, :, None]
        return -np.log1p(-np.maximum(g1.max(axis=1), 0.0))


class MinkowskiMetric:
    """dist(x, y) = ||y - x||_D for a body D with the origin in its interior."""
    tag = "minkowski"

    def __init__(self, D: ConvexBody):
        if not D.contains_origin_interior:
            raise OriginNotInterior("the unit ball must contain the origin in its interior")
        self.D = D
        self.dim = D.dim
        self.symmetric = D.centrally_symmetric
        self._Ns = D.normals / D.offsets[:, None]

    @property
    def body(self):
        return self.D

    def check(self, X):
        return np.asarray(X, float)

    def norm(self, V):
        return np.maximum((np.asarray(V, float) @ self._Ns.T).max(axis=-1), 0.0)

    def distance(self, X, Y):
        return self.norm(np.asarray(Y, float) - np.asarray(X, float))

    def prepare(self, X):
        return np.atleast_2d(X) @ self._Ns.T

    def euclidean_reach(self, alpha: float) -> float:
        """Euclidean radius of a ball of radius alpha (the ball is c + alpha D)."""
        return alpha * self.D.circumradius

    def pairwise(self, X, Y, prepared=None):
        px = prepared[0] if prepared else self.prepare(X)
        py = prepared[1] if prepared else self.prepare(Y)
        return np.maximum((py[None, :, :] - px[:, None, :]).max(axis=-1), 0.0)


def make_metric(kind: str, body: ConvexBody):
    if kind == "hilbert":
        return HilbertMetric(body)
    if kind == "funk":
        return FunkMetric(body)
    if kind == "minkowski":
        return MinkowskiMetric(body)
    raise InvalidParameter(f"unknown metric {kind!r}")


# balls ----------------------------------------------------------------------

def direction_fan(dim: int, n: int | None = None) -> np.ndarray:
    """Unit directions closed under negation (n rounded up to even)."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    n = default_ndir(dim) if n is None else int(n)
    n += n % 2
    if dim == 2:
        th = 2 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(th), np.sin(th)])
    if dim == 3:
        h = n // 2
        i = np.arange(h) + 0.5
        z = i / h
        phi = np.pi * (1 + 5 ** 0.5) * i
        rho = np.sqrt(1 - z * z)
        half = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
        return np.vstack([half, -half])
    raise DimensionError(f"dimension {dim} not supported")


@dataclass(frozen=True, eq=False)
class FinslerBall:
    center: np.ndarray
    directions: np.ndarray
    radii: np.ndarray
    tag: str

    @property
    def points(self):
        return self.center + self.radii[:, None] * self.directions

    def to_body(self) -> ConvexBody:
        return ConvexBody.from_points(self.points, name=f"{self.tag}_ball")

    def is_convex(self, tol: float = 1e-9) -> bool:
        """Every radial point lies on the boundary of the hull of all of them."""
        if self.center.shape[-1] == 1:
            return True
        body = self.to_body()
        return bool(np.all(body.interior_clearance(self.points) <= tol))


def chord_params(K: ConvexBody, x, U):
    """Forward and backward exit parameters (t+, t-) of the chord through x."""
    x = np.asarray(x, float)
    U = np.atleast_2d(U)
    return ray_exit(K, x, U), ray_exit(K, x, -U)


def ball_radius(tp, tm, r):
    """Radius s with d_H(x, x + s u) = r on a chord with exit parameters t+, t-."""
    r = np.asarray(r, float)
    return tp * tm * np.expm1(2 * r) / (tp + np.exp(2 * r) * tm)


def _check_radius(r):
    if not (0 < r <= R_PLUS):
        raise RadiusOutOfRange(f"radius must lie in (0, {R_PLUS}]")


def hilbert_ball(K: ConvexBody, x, r: float, n_dir: int | None = None) -> FinslerBall:
    """Radial description of the Hilbert ball of radius r about x."""
    _check_radius(r)
    x = check_interior(K, x, "center").reshape(-1)
    U = direction_fan(K.dim, n_dir)
    tp, tm = chord_params(K, x, U)
    return FinslerBall(x, U, ball_radius(tp, tm, r), "hilbert")


def hilbert_ball_bisect(K: ConvexBody, x, u, r: float, iters: int = 200) -> float:
    """Radius along u found by bisection on t -> d_H(x, x + t u); reference routine."""
    x = np.asarray(x, float)
    u = np.asarray(u, float)
    lo, hi = 0.0, float(ray_exit(K, x, u[None])[0])
    L = hi
    for _ in range(iters):
        if hi - lo < 1e-15 * L:
            break
        mid = 0.5 * (lo + hi)
        if hilbert_distance(K, x, x + mid * u) < r:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def funk_finsler_ball(K: ConvexBody, x, n_dir: int | None = None) -> FinslerBall:
    """Unit ball of the Funk norm at x, which is K - x."""
    x = check_interior(K, x, "center").reshape(-1)
    U = direction_fan(K.dim, n_dir)
    return FinslerBall(x, U, ray_exit(K, x, U), "funk")


def hilbert_finsler_ball(K: ConvexBody, x, n_dir: int | None = None) -> FinslerBall:
    """Unit ball of the Hilbert norm at x; its radius is the harmonic mean of t+ and t-."""
    x = check_interior(K, x, "center").reshape(-1)
    U = direction_fan(K.dim, n_dir)
    tp, tm = chord_params(K, x, U)
    return FinslerBall(x, U, 2 * tp * tm / (tp + tm), "hilbert")


def macbeath_radii(K: ConvexBody, x, U):
    tp, tm = chord_params(K, x, U)
    return np.minimum(tp, tm)


def sandwich_estimate(K: ConvexBody, x, r: float, n_dir: int | None = None):
    """Extreme radial ratios between the Hilbert ball and the Macbeath region.

    Returns (sigma, tau) with M(x, sigma r) inside B_H(x, r) inside
    M(x, tau r) along every sampled direction.
    """
    _check_radius(r)
    x = check_interior(K, x, "center").reshape(-1)
    U = direction_fan(K.dim, n_dir)
    tp, tm = chord_params(K, x, U)
    q = ball_radius(tp, tm, r) / (r * np.minimum(tp, tm))
    return float(q.min()), float(q.max())


# projective polar map ---------------------------------------------------------

def projective_polar_map(x, y):
    """P_x(y) = y / (1 - <x, y>) with its Jacobian and determinant."""
    x = np.atleast_1d(np.asarray(x, float))
    y = np.atleast_1d(np.asarray(y, float))
    s = float(x @ y)
    if s >= 1.0:
        raise DomainViolation("<x, y> must be below 1")
    d = len(x)
    J = ((1 - s) * np.eye(d) + np.outer(y, x)) / (1 - s) ** 2
    return y / (1 - s), J, float(np.linalg.det(J))


# distance to a set --------------------------------------------------------------

def _golden_min(f, n, iters=60):
    """Vectorized golden-section minimization of n unimodal functions on [0, 1]."""
    a = np.zeros(n)
    b = np.ones(n)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc <= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - GOLDEN * (b - a), d)
        nd = np.where(left, c, a + GOLDEN * (b - a))
        fnew = f(np.where(left, nc, nd))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    t = 0.5 * (a + b)
    return np.minimum.reduce([f(t), f(np.zeros(n)), f(np.ones(n))])


def _set_metric(metric):
    if isinstance(metric, (HilbertMetric, MinkowskiMetric)):
        return metric
    kind, body = metric
    return make_metric(kind, body)


def _to_set(m, Z, Gp):
    """Distance measured so that G expanded by alpha is the alpha sublevel set."""
    if m.tag == "minkowski":
        return m.distance(Gp, Z)
    return m.distance(Z, Gp)


def distance_to_set(metric, z, G: ConvexBody, tol: float = TOL_SET_DIST, iters: int | None = None):
    """inf over g in G of the distance between z and g.

    For a Minkowski metric this is inf ||z - g||_D, so that the alpha
    sublevel set is G + alpha D.  Vectorized over rows of z.
    """
    m = _set_metric(metric)
    if G.dim != m.dim:
        raise DimensionError("G and the metric live in different dimensions")
    Z = np.asarray(z, float)
    single = Z.ndim <= 1 and Z.size == m.dim
    Z = np.atleast_2d(Z).reshape(-1, m.dim)
    if m.tag != "minkowski":
        check_interior(m.K, Z)
        check_interior(m.K, G.vertices, "G")
    out = np.zeros(len(Z))
    outside = ~G.contains(Z, tol=0.0)
    if iters is None:
        iters = int(np.ceil(np.log(tol * 1e-3) / np.log(GOLDEN)))
    if np.any(outside):
        out[outside] = _dist_outside(m, Z[outside], G, iters)
    return float(out[0]) if single else out


def _dist_outside(m, Z, G, iters):
    d = G.dim
    if d == 1:
        V = G.vertices
        return np.minimum(_to_set(m, Z, V[0]), _to_set(m, Z, V[1]))
    if d == 2:
        E = G.edges()
        vis = Z @ G.normals.T > G.offsets + 1e-15
        zi, ei = np.nonzero(vis)
        A, B, P = E[ei, 0], E[ei, 1] - E[ei, 0], Z[zi]

        def f(t):
            return _to_set(m, P, A + t[:, None] * B)

        best = _golden_min(f, len(zi), iters)
        out = np.full(len(Z), np.inf)
        np.minimum.at(out, zi, best)
        return out
    T = G.triangles
    nrm = np.cross(T[:, 1] - T[:, 0], T[:, 2] - T[:, 0])
    vis = np.einsum("zd,td->zt", Z, nrm) > np.einsum("td,td->t", T[:, 0], nrm) + 1e-15
    zi, ti = np.nonzero(vis)
    A, B, C, P = T[ti, 0], T[ti, 1], T[ti, 2], Z[zi]
    inner_iters = max(30, iters // 2)

    def g(s):
        # best point on the segment at barycentric height s
        lo = A + s[:, None] * (C - A)
        hi = B + s[:, None] * (C - B)
        return _golden_min(lambda t: _to_set(m, P, lo + t[:, None] * (hi - lo)), len(s), inner_iters)

    best = _golden_min(g, len(zi), inner_iters)
    out = np.full(len(Z), np.inf)
    np.minimum.at(out, zi, best)
    return out


def cross_ratio_1d(a, x, y, b):
    """The 1D cross ratio (a, x; y, b) used for Hilbert lengths on a chord."""
    return ((b - x) * (y - a)) / ((b - y) * (x - a))


def hilbert_distance_cross_ratio(K: ConvexBody, x, y):
    """Hilbert distance from the chord endpoints: half the log cross ratio."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    v = y - x
    L = np.linalg.norm(v)
    if L < TOL_CROSS:
        return 0.0
    u = v / L
    tp, tm = chord_params(K, x, u)
    return 0.5 * math.log(cross_ratio_1d(-float(tm[0]), 0.0, L, float(tp[0])))
