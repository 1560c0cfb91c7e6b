"""Convex polytopes in dimensions 1 to 3.

A body stores its vertices and its facets as unit outer normals with offsets,
so that K = {x : <n_i, x> <= b_i}.  Planar bodies keep their vertices in
counter-clockwise order, with facet i running from vertex i to vertex i+1.
Solid bodies also carry an outward oriented boundary triangulation.
"""
from __future__ import annotations

import json
import math
import re
import time
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .config import EPS_GEOM, TOL_DUAL
from .errors import (DegenerateBody, DimensionError, GeometryError, InvalidParameter,
                     OriginNotInterior, ParseError, PointNotInterior)
from .report import CheckReport

MAX_CIRCUMRADIUS = 10.0


@dataclass(frozen=True)
class Halfspace:
    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, float)
        nn = np.linalg.norm(n)
        if nn == 0:
            raise InvalidParameter("zero normal")
        object.__setattr__(self, "normal", n / nn)
        object.__setattr__(self, "offset", float(self.offset) / nn)

    def contains(self, pts, tol=EPS_GEOM):
        return np.asarray(pts, float) @ self.normal <= self.offset + tol


@dataclass(frozen=True)
class Subspace:
    """Linear subspace through the origin with an orthonormal basis (rows)."""
    basis: np.ndarray

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, float))
        q, r = np.linalg.qr(b.T)
        if np.min(np.abs(np.diag(r))) < EPS_GEOM:
            raise InvalidParameter("basis is rank deficient")
        object.__setattr__(self, "basis", q.T)

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient(self) -> int:
        return self.basis.shape[1]

    def coords(self, pts):
        return np.asarray(pts, float) @ self.basis.T

    def lift(self, coords):
        return np.asarray(coords, float) @ self.basis


@dataclass(frozen=True, eq=False)
class ConvexBody:
    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    triangles: np.ndarray | None = None
    name: str = ""
    scale: float = 1.0

    # construction ----------------------------------------------------------
    @classmethod
    def from_points(cls, points, name: str = "", scale: float = 1.0) -> "ConvexBody":
        pts = np.asarray(points, float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise DegenerateBody("no points")
        if not np.all(np.isfinite(pts)):
            raise DegenerateBody("non-finite coordinates")
        d = pts.shape[1]
        if d == 1:
            lo, hi = pts.min(), pts.max()
            if hi - lo <= EPS_GEOM:
                raise DegenerateBody("interval has no interior")
            return cls(np.array([[lo], [hi]]), np.array([[-1.0], [1.0]]),
                       np.array([-lo, hi]), None, name, scale)
        if d == 2:
            v = _hull_2d(pts)
            e = np.roll(v, -1, axis=0) - v
            ln = np.linalg.norm(e, axis=1)
            nrm = np.column_stack([e[:, 1], -e[:, 0]]) / ln[:, None]
            off = np.einsum("ij,ij->i", nrm, v)
            body = cls(v, nrm, off, None, name, scale)
            if body.volume <= EPS_GEOM:
                raise DegenerateBody("polygon has no interior")
            return body
        if d == 3:
            return cls(*_hull_3d(pts), name=name, scale=scale)
        raise DimensionError(f"dimension {d} not supported")

    @classmethod
    def from_halfspaces(cls, normals, offsets, interior_point=None, name="") -> "ConvexBody":
        """Bounded intersection of halfspaces containing ``interior_point``."""
        n = np.atleast_2d(np.asarray(normals, float))
        b = np.asarray(offsets, float).ravel()
        p = np.zeros(n.shape[1]) if interior_point is None else np.asarray(interior_point, float)
        slack = b - n @ p
        if np.any(slack <= EPS_GEOM):
            raise DegenerateBody("point is not interior to the halfspaces")
        dual = n / slack[:, None]
        try:
            dual_body = ConvexBody.from_points(dual)
        except DegenerateBody as exc:
            raise DegenerateBody("halfspace intersection is unbounded") from exc
        if dual_body.offsets.min() <= EPS_GEOM:
            raise DegenerateBody("halfspace intersection is unbounded")
        v = dual_body.normals / dual_body.offsets[:, None] + p
        return cls.from_points(v, name=name)

    # basic attributes --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_facets(self) -> int:
        return self.normals.shape[0]

    @cached_property
    def contains_origin_interior(self) -> bool:
        return bool(self.offsets.min() > EPS_GEOM)

    @cached_property
    def centrally_symmetric(self) -> bool:
        return _same_point_set(self.vertices, -self.vertices)

    @cached_property
    def _measures(self):
        return _lebesgue(self)

    @property
    def volume(self) -> float:
        return self._measures[0]

    @property
    def boundary_area(self) -> float:
        return self._measures[1]

    @cached_property
    def circumradius(self) -> float:
        return float(np.linalg.norm(self.vertices, axis=1).max())

    @cached_property
    def inradius(self) -> float:
        """Distance from the origin to the boundary (origin assumed interior)."""
        return float(self.offsets.min())

    def edges(self):
        """Planar edges as an (m, 2, 2) array, counter-clockwise."""
        if self.dim != 2:
            raise DimensionError("edges are defined for planar bodies")
        v = self.vertices
        return np.stack([v, np.roll(v, -1, axis=0)], axis=1)

    def slack(self, pts):
        pts = np.asarray(pts, float)
        return self.offsets - pts @ self.normals.T

    def contains(self, pts, tol: float = EPS_GEOM):
        pts = np.atleast_2d(np.asarray(pts, float))
        return np.min(self.slack(pts), axis=-1) >= -tol

    def interior_clearance(self, pts):
        """Smallest facet slack, i.e. Euclidean distance to the boundary for interior points."""
        return np.min(self.slack(np.atleast_2d(pts)), axis=-1)

    # transforms --------------------------------------------------------------
    def translate(self, v) -> "ConvexBody":
        v = np.asarray(v, float)
        tri = None if self.triangles is None else self.triangles + v
        return ConvexBody(self.vertices + v, self.normals.copy(),
                          self.offsets + self.normals @ v, tri, self.name, self.scale)

    def scaled(self, s: float) -> "ConvexBody":
        if s <= 0:
            raise InvalidParameter("scale factor must be positive")
        tri = None if self.triangles is None else self.triangles * s
        return ConvexBody(self.vertices * s, self.normals.copy(), self.offsets * s,
                          tri, self.name, self.scale)

    def linear_image(self, A) -> "ConvexBody":
        A = np.asarray(A, float)
        return ConvexBody.from_points(self.vertices @ A.T, name=self.name)

    def __neg__(self) -> "ConvexBody":
        return ConvexBody.from_points(-self.vertices, name=self.name)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "vertices": self.vertices.tolist(), "name": self.name}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ConvexBody":
        d = json.loads(text) if isinstance(text, str) else text
        v = np.asarray(d["vertices"], float).reshape(-1, int(d["dim"]))
        return cls.from_points(v, name=d.get("name", ""))

    def __repr__(self) -> str:
        return f"ConvexBody(dim={self.dim}, n_vertices={len(self.vertices)}, name={self.name!r})"


# hulls ------------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts):
    """Andrew's monotone chain; drops collinear and repeated points."""
    p = np.unique(np.round(pts, 15), axis=0)
    order = np.lexsort((p[:, 1], p[:, 0]))
    p = p[order]
    if len(p) < 3:
        raise DegenerateBody("fewer than three distinct points")
    pl = p.tolist()

    def chain(seq):
        out = []
        for q in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                la = math.hypot(a[0] - o[0], a[1] - o[1])
                lq = math.hypot(q[0] - o[0], q[1] - o[1])
                if _cross(o, a, q) <= EPS_GEOM * max(la, lq, 1e-300):
                    out.pop()
                else:
                    break
            out.append(q)
        return out

    lower = chain(pl)
    upper = chain(pl[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateBody("points are collinear")
    return np.array(hull)


def _hull_3d(pts):
    try:
        hull = ConvexHull(pts)
    except (QhullError, ValueError) as exc:
        raise DegenerateBody("points do not span a solid") from exc
    eq = hull.equations
    nrm, off = eq[:, :3], -eq[:, 3]
    scale = max(1.0, float(np.abs(pts).max()))
    uniq_n, uniq_b = [], []
    for n, b in zip(nrm, off):
        for un, ub in zip(uniq_n, uniq_b):
            if np.abs(un - n).max() < 1e-8 and abs(ub - b) < 1e-8 * scale:
                break
        else:
            uniq_n.append(n)
            uniq_b.append(b)
    N, B = np.array(uniq_n), np.array(uniq_b)
    cand = pts[hull.vertices]
    keep = []
    for v in cand:
        inc = np.abs(N @ v - B) < 1e-8 * scale
        if inc.sum() >= 3 and np.linalg.matrix_rank(N[inc], tol=1e-7) == 3:
            keep.append(v)
    V = np.array(keep)
    tri = pts[hull.simplices].copy()
    cr = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    flip = np.einsum("ij,ij->i", cr, nrm) < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    if len(V) < 4:
        raise DegenerateBody("solid hull has fewer than four vertices")
    return V, N, B, tri


def _same_point_set(A, B, tol=1e-9):
    if A.shape != B.shape:
        return False
    d = np.linalg.norm(A[:, None, :] - B[None, :, :], axis=2)
    return bool(np.all(d.min(axis=1) < tol) and np.all(d.min(axis=0) < tol))


# measures -----------------------------------------------------------------------

def _lebesgue(body: ConvexBody):
    d = body.dim
    v = body.vertices
    if d == 1:
        return float(v[1, 0] - v[0, 0]), 2.0
    if d == 2:
        w = np.roll(v, -1, axis=0)
        area = 0.5 * float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]))
        per = float(np.linalg.norm(w - v, axis=1).sum())
        return area, per
    tri = body.triangles
    r = v.mean(axis=0)
    a, b, c = tri[:, 0] - r, tri[:, 1] - r, tri[:, 2] - r
    vol = float(np.abs(np.einsum("ij,ij->i", a, np.cross(b, c))).sum() / 6.0)
    area = float(0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1).sum())
    return vol, area


def lebesgue(body: ConvexBody) -> tuple[float, float]:
    """(volume, boundary measure).  In dimension 1 the boundary measure is 2."""
    return body.volume, body.boundary_area


def centroid(body: ConvexBody) -> np.ndarray:
    d = body.dim
    v = body.vertices
    if d == 1:
        return v.mean(axis=0)
    if d == 2:
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        a = cr.sum() / 2.0
        return ((v + w) * cr[:, None]).sum(axis=0) / (6.0 * a)
    r = v.mean(axis=0)
    tri = body.triangles
    a, b, c = tri[:, 0] - r, tri[:, 1] - r, tri[:, 2] - r
    vols = np.abs(np.einsum("ij,ij->i", a, np.cross(b, c))) / 6.0
    cents = (a + b + c) / 4.0
    return r + (vols[:, None] * cents).sum(axis=0) / vols.sum()


# ray shooting, gauge, support ---------------------------------------------------

def ray_exit(body: ConvexBody, X, V):
    """Forward exit parameters t with X + t V on the boundary (vectorized).

    X must be interior; rows of V equal to zero give inf.
    """
    X = np.asarray(X, float)
    V = np.asarray(V, float)
    slack = body.offsets - X @ body.normals.T
    rate = V @ body.normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(rate > 0, slack / rate, np.inf)
    return t.min(axis=-1)


def ray_boundary_intersection(body: ConvexBody, origin, direction):
    """Boundary point hit from ``origin`` along ``direction`` and its parameter."""
    x = np.asarray(origin, float)
    u = np.asarray(direction, float)
    if np.linalg.norm(u) == 0:
        raise InvalidParameter("zero direction")
    if body.interior_clearance(x)[0] <= EPS_GEOM:
        raise OriginNotInterior("ray origin is not interior")
    t = float(ray_exit(body, x[None], u[None])[0])
    return x + t * u, t


def gauge(D: ConvexBody, u):
    """Minkowski functional of D, vectorized over rows of u."""
    if not D.contains_origin_interior:
        raise OriginNotInterior("gauge needs the origin in the interior")
    u = np.asarray(u, float)
    g = (u @ D.normals.T) / D.offsets
    return np.maximum(g.max(axis=-1), 0.0)


def support(K: ConvexBody, u):
    u = np.asarray(u, float)
    return (u @ K.vertices.T).max(axis=-1)


def width(K: ConvexBody, u):
    return support(K, u) + support(K, -np.asarray(u, float))


def polar(K: ConvexBody) -> ConvexBody:
    if not K.contains_origin_interior:
        raise OriginNotInterior("polar needs the origin in the interior")
    return ConvexBody.from_points(K.normals / K.offsets[:, None], name=f"polar({K.name})")


# constructions ------------------------------------------------------------------

def minkowski_sum(A: ConvexBody, B: ConvexBody) -> ConvexBody:
    if A.dim != B.dim:
        raise DimensionError("dimension mismatch")
    pts = (A.vertices[:, None, :] + B.vertices[None, :, :]).reshape(-1, A.dim)
    return ConvexBody.from_points(pts)


def macbeath(K: ConvexBody, x, lam: float) -> ConvexBody:
    """x + lam ((K - x) intersected with (x - K))."""
    if lam <= 0:
        raise DegenerateBody("scale factor must be positive")
    x = np.asarray(x, float)
    s = K.slack(x)
    if s.min() <= EPS_GEOM:
        raise PointNotInterior("x must be interior")
    n = np.vstack([K.normals, -K.normals])
    b = np.concatenate([s, s])
    core = ConvexBody.from_halfspaces(n, b)
    return ConvexBody.from_points(core.vertices * lam + x)


def symmetrize(C: ConvexBody, mode: str) -> ConvexBody:
    if mode == "core":
        if not C.contains_origin_interior:
            raise DegenerateBody("C and -C share no interior around the origin")
        return ConvexBody.from_halfspaces(np.vstack([C.normals, -C.normals]),
                                          np.concatenate([C.offsets, C.offsets]))
    if mode == "union":
        return ConvexBody.from_points(np.vstack([C.vertices, -C.vertices]))
    if mode == "difference":
        return minkowski_sum(C, -C)
    raise InvalidParameter(f"unknown mode {mode!r}")


def clip(body: ConvexBody, normal, offset: float):
    """body intersected with {<normal, x> <= offset}; None if that has no interior."""
    n = np.asarray(normal, float)
    v = body.vertices
    s = v @ n - offset
    if np.all(s <= EPS_GEOM):
        return body
    if np.all(s >= -EPS_GEOM):
        return None
    pts = [v[s <= 0]]
    if body.dim == 2:
        w = np.roll(v, -1, axis=0)
        sw = np.roll(s, -1)
        cut = (s < 0) & (sw > 0) | (s > 0) & (sw < 0)
    else:
        i, j = np.triu_indices(len(v), 1)
        cut = (s[i] < 0) & (s[j] > 0) | (s[i] > 0) & (s[j] < 0)
        v, w, s, sw = v[i], v[j], s[i], s[j]
    if np.any(cut):
        t = s[cut] / (s[cut] - sw[cut])
        pts.append(v[cut] + t[:, None] * (w[cut] - v[cut]))
    try:
        return ConvexBody.from_points(np.vstack(pts))
    except DegenerateBody:
        return None


def intersection(A: ConvexBody, B: ConvexBody):
    out = A
    for n, b in zip(B.normals, B.offsets):
        out = clip(out, n, b)
        if out is None:
            return None
    return out


def section_points(body: ConvexBody, normal, offset: float):
    """Vertices (ambient coordinates) of body intersected with a hyperplane."""
    n = np.asarray(normal, float)
    v = body.vertices
    s = v @ n - offset
    pts = [v[np.abs(s) <= EPS_GEOM]]
    i, j = np.triu_indices(len(v), 1)
    cut = (s[i] < -EPS_GEOM) & (s[j] > EPS_GEOM) | (s[i] > EPS_GEOM) & (s[j] < -EPS_GEOM)
    if np.any(cut):
        a, b = v[i[cut]], v[j[cut]]
        t = s[i[cut]] / (s[i[cut]] - s[j[cut]])
        pts.append(a + t[:, None] * (b - a))
    return np.vstack(pts)


def section(K: ConvexBody, E: Subspace) -> ConvexBody:
    """K intersected with E, in the coordinates of E's basis."""
    d, k = E.ambient, E.k
    if k == d:
        return ConvexBody.from_points(E.coords(K.vertices))
    if k == 1:
        u = E.basis[0]
        lo = -1.0 / gauge(K, -u)
        hi = 1.0 / gauge(K, u)
        return ConvexBody.from_points(np.array([[lo], [hi]]))
    # hyperplane section (k = d - 1 = 2)
    n = np.linalg.svd(E.basis)[2][-1]
    pts = section_points(K, n, 0.0)
    return ConvexBody.from_points(E.coords(pts))


def projection(K: ConvexBody, E: Subspace) -> ConvexBody:
    return ConvexBody.from_points(E.coords(K.vertices))


# distances --------------------------------------------------------------------------

def _point_segment_dist(P, A, B):
    ab = B - A
    L2 = np.einsum("...i,...i->...", ab, ab)
    t = np.clip(np.einsum("...i,...i->...", P - A, ab) / np.where(L2 > 0, L2, 1.0), 0, 1)
    q = A + t[..., None] * ab
    return np.linalg.norm(P - q, axis=-1)


def _point_triangle_dist(P, T):
    """Distance from points P (n, 3) to triangles T (m, 3, 3), shape (n, m)."""
    p = P[:, None, :]
    a, b, c = T[None, :, 0], T[None, :, 1], T[None, :, 2]
    nrm = np.cross(b - a, c - a)
    nn = np.linalg.norm(nrm, axis=-1, keepdims=True)
    nrm = nrm / np.where(nn > 0, nn, 1.0)
    h = np.einsum("nmi,nmi->nm", p - a, nrm)
    q = p - h[..., None] * nrm
    inside = np.ones(h.shape, bool)
    for u, w in ((a, b), (b, c), (c, a)):
        inside &= np.einsum("nmi,nmi->nm", np.cross(w - u, q - u), nrm) >= 0
    d_face = np.where(inside, np.abs(h), np.inf)
    d_edge = np.minimum.reduce([_point_segment_dist(p, a, b), _point_segment_dist(p, b, c),
                                _point_segment_dist(p, c, a)])
    return np.minimum(d_face, d_edge)


def point_body_distance(body: ConvexBody, pts):
    """Euclidean distance from each point to the body (0 inside)."""
    P = np.atleast_2d(np.asarray(pts, float))
    inside = body.contains(P, tol=0.0)
    d = body.dim
    if d == 1:
        lo, hi = body.vertices[0, 0], body.vertices[1, 0]
        out = np.maximum(np.maximum(lo - P[:, 0], P[:, 0] - hi), 0.0)
    elif d == 2:
        E = body.edges()
        out = _point_segment_dist(P[:, None, :], E[None, :, 0], E[None, :, 1]).min(axis=1)
    else:
        out = _point_triangle_dist(P, body.triangles).min(axis=1)
    return np.where(inside, 0.0, out)


def hausdorff(A: ConvexBody, B: ConvexBody) -> float:
    """Exact Hausdorff distance between convex polytopes (attained at vertices)."""
    return float(max(point_body_distance(B, A.vertices).max(),
                     point_body_distance(A, B.vertices).max()))


def slice_project_dual_check(K: ConvexBody, E: Subspace, seed: int | None = None) -> CheckReport:
    """Compare (K cap E)^polar in E with the projection of K^polar onto E."""
    t0 = time.perf_counter()
    lhs_body = polar(section(K, E))
    rhs_body = projection(polar(K), E)
    res = hausdorff(lhs_body, rhs_body)
    return CheckReport("slice_project_dual", {"dim": K.dim, "k": E.k, "body": K.name},
                       res, TOL_DUAL, res / TOL_DUAL, TOL_DUAL, res <= TOL_DUAL, seed,
                       1e3 * (time.perf_counter() - t0))


# sampling -------------------------------------------------------------------------

def _simplices(body: ConvexBody):
    """Decomposition into simplices as (m, d+1, d) with weights proportional to volume."""
    d = body.dim
    c = centroid(body)
    if d == 1:
        S = np.array([[body.vertices[0], body.vertices[1]]])
    elif d == 2:
        E = body.edges()
        S = np.concatenate([np.broadcast_to(c, (len(E), 1, 2)), E], axis=1)
    else:
        T = body.triangles
        S = np.concatenate([np.broadcast_to(c, (len(T), 1, 3)), T], axis=1)
    M = S[:, 1:] - S[:, :1]
    vol = np.abs(np.linalg.det(M)) if d > 1 else np.abs(M[:, 0, 0])
    return S, vol / vol.sum()


def sample_uniform(body: ConvexBody, n: int, rng: np.random.Generator):
    """Uniform points in the body via a simplex decomposition."""
    S, w = _simplices(body)
    idx = rng.choice(len(S), size=n, p=w)
    bary = rng.dirichlet(np.ones(body.dim + 1), size=n)
    return np.einsum("nk,nkd->nd", bary, S[idx])


def sample_boundary(body: ConvexBody, n: int, rng: np.random.Generator):
    """Points uniform on the boundary with their facet normals."""
    d = body.dim
    if d == 1:
        i = rng.integers(0, 2, size=n)
        return body.vertices[i], body.normals[i]
    if d == 2:
        E = body.edges()
        L = np.linalg.norm(E[:, 1] - E[:, 0], axis=1)
        i = rng.choice(len(E), size=n, p=L / L.sum())
        t = rng.random(n)
        return E[i, 0] + t[:, None] * (E[i, 1] - E[i, 0]), body.normals[i]
    T = body.triangles
    cr = np.cross(T[:, 1] - T[:, 0], T[:, 2] - T[:, 0])
    A = np.linalg.norm(cr, axis=1)
    i = rng.choice(len(T), size=n, p=A / A.sum())
    bary = rng.dirichlet(np.ones(3), size=n)
    return np.einsum("nk,nkd->nd", bary, T[i]), cr[i] / A[i, None]


# generators -------------------------------------------------------------------------

def cube(dim: int) -> ConvexBody:
    pts = np.array(np.meshgrid(*[[-1.0, 1.0]] * dim, indexing="ij")).reshape(dim, -1).T
    return ConvexBody.from_points(pts, name="cube")


def cross_polytope(dim: int) -> ConvexBody:
    e = np.eye(dim)
    return ConvexBody.from_points(np.vstack([e, -e]), name="cross")


def regular_simplex(dim: int) -> ConvexBody:
    """Regular simplex centered at the origin with circumradius 1."""
    e = np.eye(dim + 1)
    c = e - e.mean(axis=0)
    # orthonormal coordinates of the hyperplane sum(x) = 0
    q = np.linalg.svd(c)[2][:dim]
    v = c @ q.T
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return ConvexBody.from_points(v, name="simplex")


def ngon(k: int, radius: float = 1.0, phase: float = 0.0) -> ConvexBody:
    if k < 3:
        raise InvalidParameter("ngon needs k >= 3")
    th = phase + 2 * np.pi * np.arange(k) / k
    return ConvexBody.from_points(radius * np.column_stack([np.cos(th), np.sin(th)]),
                                  name=f"ngon:{k}")


def interval(a: float, b: float) -> ConvexBody:
    return ConvexBody.from_points(np.array([[a], [b]]), name=f"interval:{a},{b}")


def random_hull(n: int, seed: int, dim: int = 2, center: bool = True) -> ConvexBody:
    """Hull of n random points with radii in [0.5, 1], optionally centered at its centroid."""
    rng = np.random.default_rng(seed)
    while True:
        g = rng.standard_normal((n, dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        pts = g * rng.uniform(0.5, 1.0, size=(n, 1))
        try:
            body = ConvexBody.from_points(pts, name=f"random_hull:{n},{seed}")
        except DegenerateBody:
            continue
        if center:
            body = body.translate(-centroid(body))
        if body.contains_origin_interior:
            return body


def parse_body_spec(spec: str, dim: int = 2) -> ConvexBody:
    """Build a body from a generator name or a JSON document / file path.

    Bodies whose circumradius exceeds 10 are rescaled; the factor is kept
    in ``body.scale``.
    """
    spec = spec.strip()
    try:
        body = _parse_body_text(spec, dim)
    except (json.JSONDecodeError, KeyError, IndexError, TypeError) as exc:
        raise ParseError(f"cannot parse body spec {spec!r}: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, GeometryError):
            raise
        raise ParseError(f"cannot parse body spec {spec!r}: {exc}") from exc
    R = body.circumradius
    if R > MAX_CIRCUMRADIUS:
        s = MAX_CIRCUMRADIUS / R
        body = ConvexBody.from_points(body.vertices * s, name=body.name, scale=s)
    return body


def _parse_body_text(spec: str, dim: int) -> ConvexBody:
    if spec.startswith("{"):
        body = ConvexBody.from_json(spec)
    elif spec.endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            body = ConvexBody.from_json(fh.read())
    else:
        name, _, arg = spec.partition(":")
        args = [a for a in re.split(r"[,\s]+", arg) if a] if arg else []
        if name == "cube":
            body = cube(dim)
        elif name == "cross":
            body = cross_polytope(dim)
        elif name == "simplex":
            body = regular_simplex(dim)
        elif name == "ngon":
            body = ngon(int(args[0]), float(args[1]) if len(args) > 1 else 1.0)
        elif name == "interval":
            body = interval(float(args[0]), float(args[1]))
        elif name == "random_hull":
            n = int(args[0])
            seed = int(args[1].split("=")[-1]) if len(args) > 1 else 0
            body = random_hull(n, seed, dim)
        else:
            raise ParseError(f"unknown body generator {name!r}")
    return body
