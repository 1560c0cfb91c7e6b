"""Holmes-Thompson and Busemann measures in Minkowski, Funk and Hilbert geometry.

Local densities use the fact that the polar of the Funk unit ball at x is
(K - x)^polar, whose vertices are n_i / (b_i - <n_i, x>), and that the
polar of the Hilbert unit ball is half the difference body of that polygon.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial import ConvexHull

from .config import DEFAULT_SAMPLES, QUAD_ORDER, R_PLUS, default_ndir
from .convex_core import (ConvexBody, Subspace, centroid, gauge, lebesgue, polar,
                          sample_uniform, section)
from .errors import (DimensionError, InvalidParameter, NotCentrallySymmetric,
                     RadiusOutOfRange, RegionNotInterior)
from .metrics import (FunkMetric, HilbertMetric, MinkowskiMetric, ball_radius,
                      chord_params, direction_fan, hilbert_distance)

MC_BATCH = 4096


def omega(d: int) -> float:
    """Volume of the Euclidean unit ball in dimension d <= 3."""
    return {0: 1.0, 1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}[d]


@dataclass
class MeasureEstimate:
    value: float
    std_error: float = 0.0
    n_samples: int = 0
    method: str = "exact"
    geometry_tag: str = ""
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def __float__(self) -> float:
        return float(self.value)


def _geometry(geom):
    """Accept a metric object or a (kind, body) pair."""
    if isinstance(geom, (HilbertMetric, MinkowskiMetric)):
        return geom.tag, geom.body
    kind, body = geom
    if kind not in ("funk", "hilbert", "minkowski"):
        raise InvalidParameter(f"unknown geometry {kind!r}")
    return kind, body


def _need_symmetric(D: ConvexBody):
    if not D.centrally_symmetric:
        raise NotCentrallySymmetric("D must be centrally symmetric")


# planar polygon helpers (vectorized over a leading axis) -------------------------

def _shoelace(P):
    Q = np.roll(P, -1, axis=-2)
    return 0.5 * np.sum(P[..., 0] * Q[..., 1] - Q[..., 0] * P[..., 1], axis=-1)


def _half_difference_area(P):
    """Area of (P - P)/2 for counter-clockwise polygons P (..., m, 2).

    Uses area(P - P) = 2 area(P) + 2 V(P, -P) with the mixed area
    V(P, -P) = 1/2 sum_j h_P(-n_j) l_j over the edges of P.
    """
    P = np.asarray(P, float)
    lead = P.shape[:-2]
    P = P.reshape(-1, *P.shape[-2:])
    n, m = P.shape[:2]
    E = np.roll(P, -1, axis=1) - P
    w = np.stack([-E[..., 1], E[..., 0]], axis=-1)  # -(outer normal * length)
    # the vertex supporting -n_j is found by merging sorted normal angles
    th = np.unwrap(np.arctan2(-E[..., 0], E[..., 1]), axis=1)
    th = th - th[:, :1]
    ext = np.concatenate([th, th + 2 * np.pi], axis=1)
    off = 8 * np.pi * np.arange(n)[:, None]
    idx = np.searchsorted((ext + off).ravel(), (th + np.pi + off).ravel())
    k = (idx.reshape(n, m) - 2 * m * np.arange(n)[:, None]) % m
    sup = np.take_along_axis(P, k[..., None], axis=1)
    mixed = 0.5 * np.einsum("nkd,nkd->n", sup, w)
    return (0.5 * (_shoelace(P) + mixed)).reshape(lead)


# local densities ----------------------------------------------------------------

def dual_vertices(K: ConvexBody, X):
    """Vertices of (K - x)^polar for each row of X, shape (n, F, d)."""
    X = np.atleast_2d(X)
    slack = K.offsets - X @ K.normals.T
    if np.any(slack <= 0):
        raise RegionNotInterior("points must be interior to K")
    return K.normals[None, :, :] / slack[:, :, None]


@lru_cache(maxsize=64)
def _polar_triangulation(K: ConvexBody):
    """Outward triangles of the polar's boundary, as indices of K's facets.

    Every (K - x)^polar is a projective image of the polar of K, so this
    combinatorial triangulation serves all interior x.
    """
    Z = dual_vertices(K, centroid(K)[None])[0]
    hull = ConvexHull(Z)
    S = hull.simplices.copy()
    det = np.einsum("ij,ij->i", Z[S[:, 0]], np.cross(Z[S[:, 1]], Z[S[:, 2]]))
    S[det < 0] = S[det < 0][:, [0, 2, 1]]
    return S


def _hull_area_2d(pts) -> float:
    return ConvexBody.from_points(pts).volume


def volume_density(kind: str, K: ConvexBody, X):
    """Holmes-Thompson volume density of the Funk or Hilbert geometry at X."""
    X = np.atleast_2d(X)
    d = K.dim
    P = dual_vertices(K, X)
    if d == 1:
        return (P[:, 1, 0] - P[:, 0, 0]) / omega(1)
    if d == 2:
        lam = _shoelace(P) if kind == "funk" else _half_difference_area(P)
        return lam / omega(2)
    if kind == "funk":
        S = _polar_triangulation(K)
        a, b, c = P[:, S[:, 0]], P[:, S[:, 1]], P[:, S[:, 2]]
        return np.einsum("nti,nti->n", a, np.cross(b, c)) / 6.0 / omega(3)
    out = np.empty(len(X))
    for i, p in enumerate(P):
        diff = (p[:, None, :] - p[None, :, :]).reshape(-1, 3) / 2.0
        out[i] = ConvexHull(diff).volume
    return out / omega(3)


def _plane_basis(n):
    n = np.asarray(n, float) / np.linalg.norm(n)
    a = np.eye(3)[np.argmin(np.abs(n))]
    e1 = np.cross(n, a)
    e1 /= np.linalg.norm(e1)
    return np.vstack([e1, np.cross(n, e1)])


def area_density(kind: str, K: ConvexBody, X, T):
    """Holmes-Thompson area density at X for tangent data T.

    In the plane T holds unit tangent directions and the density is the
    Finsler norm (g(u) + g(-u)) / 2, the same for Funk and Hilbert.  In space
    T holds unit normals and the density is the area of the projected local
    polar divided by pi.
    """
    X = np.atleast_2d(X)
    T = np.atleast_2d(T)
    d = K.dim
    if d == 1:
        return np.ones(len(X))
    P = dual_vertices(K, X)
    if d == 2:
        hp = np.einsum("nfd,nd->nf", P, T).max(axis=1)
        hm = np.einsum("nfd,nd->nf", P, -T).max(axis=1)
        return 0.5 * (hp + hm)
    out = np.empty(len(X))
    for i, (p, n) in enumerate(zip(P, T)):
        q = ConvexBody.from_points(p @ _plane_basis(n).T).vertices
        out[i] = _shoelace(q) if kind == "funk" else _half_difference_area(q)
    return out / omega(2)


# Minkowski measures ----------------------------------------------------------------

def ht_volume_minkowski(D: ConvexBody, U: ConvexBody) -> MeasureEstimate:
    _need_symmetric(D)
    val = polar(D).volume / omega(D.dim) * lebesgue(U)[0]
    return MeasureEstimate(val, 0.0, 0, "exact", "minkowski")


def _facet_pieces(C: ConvexBody):
    """(measure, unit normal, unit tangent or None) per boundary facet."""
    d = C.dim
    if d == 2:
        E = C.edges()
        V = E[:, 1] - E[:, 0]
        L = np.linalg.norm(V, axis=1)
        return L, C.normals, V / L[:, None]
    if d == 3:
        T = C.triangles
        cr = np.cross(T[:, 1] - T[:, 0], T[:, 2] - T[:, 0])
        A = 0.5 * np.linalg.norm(cr, axis=1)
        return A, cr / (2 * A[:, None]), None
    raise DimensionError("facet pieces need dimension 2 or 3")


def minkowski_area_density(D: ConvexBody, normals, tangents=None):
    """HT area density of the norm with unit ball D for facets with these normals."""
    d = D.dim
    if d == 2:
        U = tangents if tangents is not None else np.column_stack(
            [-normals[:, 1], normals[:, 0]])
        return 0.5 * (gauge(D, U) + gauge(D, -U))
    Dp = polar(D)
    out = np.empty(len(normals))
    for i, n in enumerate(normals):
        out[i] = ConvexBody.from_points(Dp.vertices @ _plane_basis(n).T).volume
    return out / omega(2)


def ht_area_minkowski(D: ConvexBody, C: ConvexBody) -> MeasureEstimate:
    """HT boundary area of C in the normed plane or space with unit ball D."""
    _need_symmetric(D)
    if C.dim == 1:
        return MeasureEstimate(2.0, 0.0, 0, "exact", "minkowski")
    A, N, T = _facet_pieces(C)
    val = float(np.sum(A * minkowski_area_density(D, N, T)))
    return MeasureEstimate(val, 0.0, 0, "exact", "minkowski")


def ht_area_minkowski_cauchy(D: ConvexBody, C: ConvexBody) -> MeasureEstimate:
    """Same area through projections of C integrated over the boundary of the polar of D."""
    _need_symmetric(D)
    d = C.dim
    Dp = polar(D)
    if d == 2:
        E = Dp.edges()
        L = np.linalg.norm(E[:, 1] - E[:, 0], axis=1)
        t = np.column_stack([-Dp.normals[:, 1], Dp.normals[:, 0]])
        w = (t @ C.vertices.T).max(axis=1) + (-t @ C.vertices.T).max(axis=1)
        val = float(np.sum(L * w)) / omega(1)
    elif d == 3:
        A, N, _ = _facet_pieces(Dp)
        proj = np.array([ConvexBody.from_points(C.vertices @ _plane_basis(n).T).volume
                         for n in N])
        val = float(np.sum(A * proj)) / omega(2)
    else:
        val = 2.0
    return MeasureEstimate(val, 0.0, 0, "exact", "minkowski")


def busemann_area_density(D: ConvexBody, normals):
    """omega_{d-1} / lambda_{d-1}(D cap n-perp) for each normal."""
    d = D.dim
    out = np.empty(len(normals))
    for i, n in enumerate(normals):
        if d == 2:
            E = Subspace(np.array([[-n[1], n[0]]]))
        else:
            E = Subspace(_plane_basis(n))
        out[i] = omega(d - 1) / section(D, E).volume
    return out


def busemann_measures(D: ConvexBody, U: ConvexBody | None = None,
                      S: ConvexBody | None = None) -> MeasureEstimate:
    """Busemann volume of U, or Busemann area of the boundary of S."""
    _need_symmetric(D)
    if (U is None) == (S is None):
        raise InvalidParameter("give exactly one of U and S")
    d = D.dim
    if U is not None:
        val = omega(d) * U.volume / D.volume
    else:
        A, N, _ = _facet_pieces(S)
        val = float(np.sum(A * busemann_area_density(D, N)))
    return MeasureEstimate(val, 0.0, 0, "exact", "busemann")


def volume_product(D: ConvexBody) -> float:
    """Normalized volume product lambda(D) lambda(D polar) / omega_d^2."""
    return D.volume * polar(D).volume / omega(D.dim) ** 2


# Funk and Hilbert measures ------------------------------------------------------------

def _check_region(K: ConvexBody, U: ConvexBody):
    if K.interior_clearance(U.vertices).min() <= 0:
        raise RegionNotInterior("region must lie in the interior of K")


def ht_volume_finsler(geom, U: ConvexBody, n_samples: int = DEFAULT_SAMPLES,
                      seed: int = 0) -> MeasureEstimate:
    """Monte Carlo HT volume; batch k draws from the stream (seed, k)."""
    kind, K = _geometry(geom)
    if hasattr(U, "to_body"):
        U = U.to_body()
    _check_region(K, U)
    lam = U.volume
    if lam == 0 or n_samples <= 0:
        return MeasureEstimate(0.0, 0.0, max(n_samples, 0), "monte_carlo", kind, seed)
    vals = []
    for k, start in enumerate(range(0, n_samples, MC_BATCH)):
        m = min(MC_BATCH, n_samples - start)
        rng = np.random.default_rng([seed, k])
        vals.append(volume_density(kind, K, sample_uniform(U, m, rng)))
    f = np.concatenate(vals)
    se = lam * f.std(ddof=1) / math.sqrt(len(f)) if len(f) > 1 else 0.0
    return MeasureEstimate(lam * float(f.mean()), float(se), len(f), "monte_carlo", kind, seed)


def _gl(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def _area_quad(kind, K, G, order):
    d = G.dim
    if d == 2:
        E = G.edges()
        V = E[:, 1] - E[:, 0]
        L = np.linalg.norm(V, axis=1)
        s, w = _gl(order)
        X = E[:, None, 0] + s[None, :, None] * V[:, None, :]
        T = np.repeat(V / L[:, None], order, axis=0)
        f = area_density(kind, K, X.reshape(-1, 2), T).reshape(len(E), order)
        return float(np.sum(L * (f @ w)))
    # collapsed Gauss rule on triangles
    s, w = _gl(order)
    uu, vv = np.meshgrid(s, s, indexing="ij")
    a = uu.ravel()
    b = (vv * (1 - uu)).ravel()
    wt = (np.outer(w, w) * (1 - uu)).ravel()
    total = 0.0
    A, N, _ = _facet_pieces(G)
    for tri, area, n in zip(G.triangles, A, N):
        X = tri[0] + a[:, None] * (tri[1] - tri[0]) + b[:, None] * (tri[2] - tri[0])
        f = area_density(kind, K, X, np.repeat(n[None], len(X), axis=0))
        total += 2 * area * float(f @ wt)
    return total


def ht_area_finsler(geom, G: ConvexBody, quad_order: int = QUAD_ORDER) -> MeasureEstimate:
    """HT boundary area by Gauss-Legendre quadrature on each facet.

    The error estimate is the gap to the rule of half the order.
    """
    kind, K = _geometry(geom)
    if hasattr(G, "to_body"):
        G = G.to_body()
    _check_region(K, G)
    if G.dim == 1:
        return MeasureEstimate(2.0, 0.0, 0, "exact", kind)
    q = _area_quad(kind, K, G, quad_order)
    q2 = _area_quad(kind, K, G, max(1, quad_order // 2))
    return MeasureEstimate(q, abs(q - q2), 0, "quadrature", kind)


def hilbert_perimeter(K: ConvexBody, G: ConvexBody) -> MeasureEstimate:
    """Exact planar HT area in Hilbert geometry: the Hilbert length of the boundary."""
    _check_region(K, G)
    V = G.vertices
    val = float(np.sum(hilbert_distance(K, V, np.roll(V, -1, axis=0))))
    return MeasureEstimate(val, 0.0, 0, "exact", "hilbert")


def hilbert_ball_measures(K: ConvexBody, x, r: float, n_theta: int = 256,
                          order: int = QUAD_ORDER, kind: str = "hilbert"):
    """Deterministic (volume, area) of the planar Hilbert ball B(x, r).

    Volume by polar quadrature with the exact radial function; area as the
    Hilbert length of the inscribed n_theta-gon (a slight underestimate).
    """
    if K.dim != 2:
        raise DimensionError("planar bodies only")
    if not (0 < r <= R_PLUS):
        raise RadiusOutOfRange("radius out of range")
    x = np.asarray(x, float)
    U = direction_fan(2, n_theta)
    tp, tm = chord_params(K, x, U)
    rho = ball_radius(tp, tm, r)
    s, w = _gl(order)
    X = x + (rho[:, None, None] * s[None, :, None]) * U[:, None, :]
    f = volume_density(kind, K, X.reshape(-1, 2)).reshape(len(U), order)
    vol = float(np.sum((2 * np.pi / len(U)) * rho ** 2 * ((f * s) @ w)))
    P = x + rho[:, None] * U
    area = float(np.sum(hilbert_distance(K, P, np.roll(P, -1, axis=0))))
    return vol, area


def ball_growth_profile(geom, center, radii, n_samples: int = DEFAULT_SAMPLES,
                        seed: int = 0, n_dir: int | None = None):
    """Rows (r, vol, area) for balls about center and the log-log slopes.

    Returns (rows, slope_vol, slope_area).
    """
    kind, body = _geometry(geom)
    radii = np.asarray(radii, float)
    center = np.asarray(center, float)
    rows = []
    if kind == "minkowski":
        for r in radii:
            B = body.scaled(r).translate(center)
            rows.append((float(r), ht_volume_minkowski(body, B).value,
                         ht_area_minkowski(body, B).value))
    else:
        if np.any(radii <= 0) or np.any(radii > R_PLUS):
            raise RadiusOutOfRange("radii must lie in (0, r_plus]")
        for r in radii:
            if body.dim == 2:
                vol, area = hilbert_ball_measures(body, center, float(r),
                                                  n_dir or 256, kind=kind)
            else:
                from .metrics import hilbert_ball
                ball = hilbert_ball(body, center, float(r), n_dir or default_ndir(body.dim))
                B = ball.to_body()
                vol = ht_volume_finsler((kind, body), B, n_samples, seed).value
                area = ht_area_finsler((kind, body), B, 2).value
            rows.append((float(r), vol, area))
    arr = np.array(rows)
    lr = np.log(arr[:, 0])
    slope_vol = float(np.polyfit(lr, np.log(arr[:, 1]), 1)[0])
    slope_area = float(np.polyfit(lr, np.log(arr[:, 2]), 1)[0])
    return rows, slope_vol, slope_area


def funk_area_density_oracle(K: ConvexBody, x, n, order: int = 16) -> float:
    """Planar Funk area density at x for facet normal n via the Jacobian double integral.

    Integrates |det J_{x,y}| |<J_{x,y}^{-T} n_polar(y), n>| over the boundary of
    the polar of K (K must contain the origin) and divides by 2 omega_1.
    """
    Kp = polar(K)
    E = Kp.edges()
    V = E[:, 1] - E[:, 0]
    L = np.linalg.norm(V, axis=1)
    s, w = _gl(order)
    x = np.asarray(x, float)
    n = np.asarray(n, float)
    total = 0.0
    for e in range(len(E)):
        ne = Kp.normals[e]
        for si, wi in zip(s, w):
            y = E[e, 0] + si * V[e]
            t = 1.0 - x @ y
            J = (t * np.eye(2) + np.outer(y, x)) / t ** 2
            val = abs(np.linalg.det(J)) * abs(np.linalg.solve(J.T, ne) @ n)
            total += L[e] * wi * val
    return total / (2 * omega(1))
