"""Expansions, nets and covering estimates, plus the boundary diagnostics.

Covering numbers are bracketed: the upper bound is the size of a greedy
maximal alpha-separated net on a dense ground set, the lower bound is the
target's measure divided by the largest measure of an alpha-ball about a
net center.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .config import (DEFAULT_SAMPLES, EPS_GEOM, N_SEEDS, TOL_CHORD,
                     TOL_EXPAND, default_ndir)
from .convex_core import (ConvexBody, Halfspace, centroid, clip, gauge,
                          intersection, minkowski_sum, point_body_distance,
                          ray_exit, sample_boundary, section_points)
from .errors import (DegenerateCut, DimensionError, GeometryError,
                     InvalidParameter, NotCentrallySymmetric, NotContained,
                     RadiusOutOfRange)
from .measures import (_gl, _plane_basis, busemann_area_density,
                       hilbert_ball_measures, hilbert_perimeter,
                       ht_area_finsler, ht_volume_finsler,
                       minkowski_area_density, omega, volume_density)
from .metrics import (HilbertMetric, MinkowskiMetric, ball_radius,
                      chord_params, direction_fan, distance_to_set,
                      hilbert_ball, hilbert_distance)
from .report import CheckReport

log = logging.getLogger(__name__)

SEP_SLACK = 1e-12


class EmptyGroundSet(GeometryError):
    pass


class SearchFailed(GeometryError):
    pass


BodyNotInterior = NotContained


# expansions ----------------------------------------------------------------------

def expand_minkowski(C: ConvexBody, D: ConvexBody, alpha: float) -> ConvexBody:
    """C + alpha D."""
    if not D.centrally_symmetric:
        raise NotCentrallySymmetric("D must be centrally symmetric")
    if alpha < 0:
        raise InvalidParameter("alpha must be nonnegative")
    if alpha == 0:
        return C
    return minkowski_sum(C, D.scaled(alpha))


def _check_inner(K: ConvexBody, G: ConvexBody):
    if K.interior_clearance(G.vertices).min() <= 1e-12:
        raise BodyNotInterior("G must lie in the interior of K")


def expand_hilbert(K: ConvexBody, G: ConvexBody, alpha: float, n_dir: int | None = None,
                   tol: float = TOL_EXPAND) -> ConvexBody:
    """The set of points within Hilbert distance alpha of G.

    Along each ray from the centroid of G the distance to G increases, so the
    level alpha is located by bisection.  The starting bracket uses the ball
    of radius alpha about the exit point of G, which is contained in the
    expansion.
    """
    if not (0 < alpha <= 1):
        raise RadiusOutOfRange("alpha must lie in (0, 1]")
    _check_inner(K, G)
    if G.dim == 1:
        lo, hi = G.vertices[0], G.vertices[1]
        a, b = K.vertices[0, 0], K.vertices[1, 0]
        right = ball_radius(b - hi[0], hi[0] - a, alpha)
        left = ball_radius(lo[0] - a, b - lo[0], alpha)
        return ConvexBody.from_points(np.array([[lo[0] - left], [hi[0] + right]]),
                                      name="hilbert_expansion")
    m = HilbertMetric(K)
    c = centroid(G)
    U = direction_fan(G.dim, n_dir)
    tG = ray_exit(G, c, U)
    tK = ray_exit(K, c, U)
    gE = c + tG[:, None] * U
    tp = ray_exit(K, gE, U)
    tm = ray_exit(K, gE, -U)
    lo = tG + ball_radius(tp, tm, alpha)
    hi = lo + (tK - lo) * (1 - 1e-9)

    def f(t):
        return distance_to_set(m, c + t[:, None] * U, G)

    if np.any(f(hi) < alpha):
        raise GeometryError("expansion bracket failed")
    while True:
        mid = 0.5 * (lo + hi)
        below = f(mid) < alpha
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.max(hi - lo) <= tol:
            break
    return ConvexBody.from_points(c + (0.5 * (lo + hi))[:, None] * U, name="hilbert_expansion")


# ground sets --------------------------------------------------------------------------

def _hilbert_chain(K: ConvexBody, A, B, step: float):
    """Points on segments A->B spaced at most ``step`` apart in Hilbert length.

    On a chord with exit parameters t- < 0 < t+, the coordinate
    phi(t) = artanh-type 0.5 log((t - t-)/(t+ - t)) is a Hilbert arc length.
    """
    out = []
    for a, b in zip(A, B):
        v = b - a
        L = np.linalg.norm(v)
        if L == 0:
            out.append(a[None])
            continue
        u = v / L
        tp = float(ray_exit(K, a[None], u[None])[0])
        tm = -float(ray_exit(K, a[None], -u[None])[0])

        def phi(t):
            return 0.5 * np.log((t - tm) / (tp - t))

        p0, p1 = phi(0.0), phi(L)
        n = max(1, int(math.ceil((p1 - p0) / step)))
        ph = np.linspace(p0, p1, n + 1)[:-1]
        e = np.exp(2 * ph)
        t = (tm + tp * e) / (1 + e)
        out.append(a + t[:, None] * u)
    return np.vstack(out)


def boundary_ground_set(metric, G: ConvexBody, alpha: float, frac: float = 1 / 20):
    """Dense chain on the boundary of G at metric resolution alpha * frac."""
    step = alpha * frac
    d = G.dim
    if d == 1:
        return G.vertices.copy()
    if d == 2:
        E = G.edges()
        if metric.tag == "minkowski":
            out = []
            for a, b in E:
                v = b - a
                n = max(1, int(math.ceil(max(metric.norm(v), metric.norm(-v)) / step)))
                out.append(a + np.linspace(0, 1, n + 1)[:-1, None] * v)
            return np.vstack(out)
        return _hilbert_chain(metric.K, E[:, 0], E[:, 1], step)
    # solid bodies: barycentric grids on each boundary triangle
    out = []
    for tri in G.triangles:
        edge = max(np.linalg.norm(tri[1] - tri[0]), np.linalg.norm(tri[2] - tri[1]),
                   np.linalg.norm(tri[0] - tri[2]))
        h = _euclid_step(metric, tri, step)
        n = max(1, int(math.ceil(edge / h)))
        i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
        keep = i + j <= n
        a, b = i[keep] / n, j[keep] / n
        out.append(tri[0] + a[:, None] * (tri[1] - tri[0]) + b[:, None] * (tri[2] - tri[0]))
    return np.unique(np.round(np.vstack(out), 13), axis=0)


def _euclid_step(metric, pts, step):
    """Euclidean length whose metric length is at most ``step`` near pts."""
    if metric.tag == "minkowski":
        return step * metric.D.inradius
    clear = metric.K.interior_clearance(np.atleast_2d(pts)).min()
    return step * clear / (1 + step)


def interior_ground_set(metric, G: ConvexBody, alpha: float, frac: float = 1 / 10,
                        max_points: int = 2_000_000):
    """Sample of G at metric spacing alpha * frac, plus a boundary chain.

    Minkowski metrics use a lattice.  Hilbert metrics use an adaptive
    quadtree (octree): a cell is accepted once its side s satisfies
    s / (c - s) <= spacing, where c is the clearance of its center from the
    boundary of K, which bounds the Hilbert length of the cell's edges.
    """
    h = alpha * frac
    d = G.dim
    lo = G.vertices.min(axis=0)
    hi = G.vertices.max(axis=0)
    if d == 1:
        if metric.tag == "minkowski":
            n = int(math.ceil((hi[0] - lo[0]) / (h * metric.D.inradius)))
            return np.linspace(lo[0], hi[0], n + 1)[:, None]
        chain = _hilbert_chain(metric.K, G.vertices[:1], G.vertices[1:], h)
        return np.vstack([chain, G.vertices[1:]])
    boundary = boundary_ground_set(metric, G, alpha, frac)
    if metric.tag == "minkowski":
        s = h * metric.D.inradius
        axes = [np.arange(lo[i] + s / 2, hi[i], s) for i in range(d)]
        grid = np.array(np.meshgrid(*axes, indexing="ij")).reshape(d, -1).T
        if len(grid) > max_points:
            raise GeometryError("ground set too large")
        grid = grid[G.contains(grid, tol=0.0)]
        return np.vstack([grid, boundary])
    K = metric.K
    side = float((hi - lo).max())
    centers = (lo + side / 2)[None, :]
    accepted = []
    total = 0
    while len(centers):
        half_diag = side * math.sqrt(d) / 2
        dist = point_body_distance(G, centers)
        centers = centers[dist <= half_diag]
        clear = K.interior_clearance(centers)
        ok = side <= h * (clear - half_diag)
        done = centers[ok]
        accepted.append(done[G.contains(done, tol=0.0)])
        total += len(accepted[-1])
        rest = centers[~ok]
        if len(rest) == 0:
            break
        if total + len(rest) * 2 ** d > max_points:
            raise GeometryError("ground set too large")
        offs = np.array(np.meshgrid(*[[-0.25, 0.25]] * d, indexing="ij")).reshape(d, -1).T
        centers = (rest[:, None, :] + side * offs[None]).reshape(-1, d)
        side /= 2
    return np.vstack(accepted + [boundary])


# nets ------------------------------------------------------------------------------------

@dataclass
class Net:
    centers: np.ndarray
    radius: float
    metric_tag: str
    separated: bool
    ground_size: int = 0
    seed: int | None = None

    def __len__(self):
        return len(self.centers)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["centers"] = self.centers.tolist()
        return d


def maximal_separated_net(metric, ground, alpha: float, seed: int = 0) -> Net:
    """Greedy maximal alpha-separated subset of a shuffled ground set.

    A sample becomes a center when every existing center is at distance at
    least alpha from it (distance measured from the center), so afterwards
    every sample lies within alpha of some center.
    """
    ground = np.atleast_2d(np.asarray(ground, float))
    if ground.size == 0:
        raise EmptyGroundSet("ground set is empty")
    if alpha <= 0:
        raise InvalidParameter("alpha must be positive")
    order = np.random.default_rng(seed).permutation(len(ground))
    pts = ground[order]
    thr = alpha - SEP_SLACK
    centers = []
    cprep = None
    F = getattr(metric.body, "n_facets", 1)
    start = 0
    reach = metric.euclidean_reach(alpha) if hasattr(metric, "euclidean_reach") else None
    while start < len(pts):
        k = len(centers)
        chunk = int(max(64, min(4096, 4_000_000 // max(1, k * F))))
        S = pts[start:start + chunk]
        start += chunk
        sprep = metric.prepare(S)
        if k and reach is not None and k > 64:
            covered = _covered_local(metric, np.array(centers), S, reach, thr)
        elif k:
            covered = (metric.pairwise(np.array(centers), S, (cprep, sprep)) < thr).any(axis=0)
        else:
            covered = np.zeros(len(S), bool)
        new = []
        for i in np.flatnonzero(~covered):
            if covered[i]:
                continue
            new.append(S[i])
            covered[i] = True
            rest = i + 1
            if rest < len(S):
                dd = metric.distance(S[i][None], S[rest:])
                covered[rest:] |= dd < thr
        if new:
            centers.extend(new)
            cprep = metric.prepare(np.array(centers))
    C = np.array(centers)
    return Net(C, float(alpha), metric.tag, True, len(ground), seed)


def _covered_local(metric, centers, S, reach, thr):
    """Coverage test that only compares samples with centers within Euclidean reach."""
    hits = cKDTree(centers).query_ball_point(S, reach * (1 + 1e-9) + 1e-12)
    lens = np.fromiter((len(h) for h in hits), int, len(hits))
    covered = np.zeros(len(S), bool)
    if lens.sum() == 0:
        return covered
    ci = np.concatenate([np.asarray(h, int) for h in hits])
    si = np.repeat(np.arange(len(S)), lens)
    near = metric.distance(centers[ci], S[si]) < thr
    covered[si[near]] = True
    return covered


# covering estimates -------------------------------------------------------------------------

@dataclass
class CoverEstimate:
    upper: int
    lower: int
    alpha: float
    target_tag: str
    uppers: list = field(default_factory=list)
    measure: float = 0.0
    ball_measure: float = 0.0
    clamped: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def exact_cover_count_1d(metric, G: ConvexBody, alpha: float, target: str = "body") -> int:
    """Covering number of an interval (or its endpoints) by alpha-balls on a line."""
    if metric.tag == "minkowski":
        D = metric.D
        L = float(G.vertices[1, 0] - G.vertices[0, 0])
        w = alpha * float(D.vertices[1, 0] - D.vertices[0, 0])
    else:
        L = float(hilbert_distance(metric.K, G.vertices[0], G.vertices[1]))
        w = 2 * alpha
    if target == "boundary":
        return 1 if L <= w * (1 + 1e-12) else 2
    return max(1, int(math.ceil(L / w - 1e-9)))


def _target_measure(metric, G, target, n_samples, seed):
    kind = metric.tag
    if kind == "minkowski":
        D = metric.D
        if D.centrally_symmetric:
            from .measures import ht_area_minkowski, ht_volume_minkowski
            if target == "body":
                return ht_volume_minkowski(D, G).value
            return ht_area_minkowski(D, G).value
        return G.volume if target == "body" else G.boundary_area
    if target == "body":
        return ht_volume_finsler(metric, G, n_samples, seed).value
    if G.dim == 2:
        return hilbert_perimeter(metric.K, G).value
    return ht_area_finsler(metric, G, 4).value


def _ball_measure(metric, c, alpha, target, n_samples, seed):
    kind = metric.tag
    if kind == "minkowski":
        D = metric.D
        if D.centrally_symmetric:
            from .measures import ht_area_minkowski, ht_volume_minkowski
            B = D.scaled(alpha)
            return ht_volume_minkowski(D, B).value if target == "body" \
                else ht_area_minkowski(D, B).value
        B = D.scaled(alpha)
        return B.volume if target == "body" else B.boundary_area
    K = metric.K
    if K.dim == 2:
        vol, area = hilbert_ball_measures(K, c, alpha, 256)
        return vol if target == "body" else area
    B = hilbert_ball(K, c, alpha, 256).to_body()
    if target == "body":
        return ht_volume_finsler(metric, B, n_samples // 4, seed).value
    return ht_area_finsler(metric, B, 2).value


def covering_estimate(metric, G: ConvexBody, alpha: float, target: str = "body",
                      seeds=tuple(range(N_SEEDS)), n_samples: int = DEFAULT_SAMPLES,
                      ground=None, measure: float | None = None,
                      ball_measure: float | None = None) -> CoverEstimate:
    """Upper/lower bracket for the covering number of G (or its boundary)."""
    if target not in ("body", "boundary"):
        raise InvalidParameter("target is 'body' or 'boundary'")
    if metric.tag == "hilbert":
        if not (0 < alpha <= 1):
            raise RadiusOutOfRange("alpha must lie in (0, 1]")
        _check_inner(metric.K, G)
    if G.dim == 1:
        n = exact_cover_count_1d(metric, G, alpha, target)
        return CoverEstimate(n, n, alpha, target, [n] * len(seeds))
    if ground is None:
        ground = (interior_ground_set if target == "body" else boundary_ground_set)(metric, G, alpha)
    nets = [maximal_separated_net(metric, ground, alpha, s) for s in seeds]
    sizes = [len(n) for n in nets]
    med = sorted(range(len(nets)), key=lambda i: sizes[i])[(len(nets) - 1) // 2]
    upper = sizes[med]
    if measure is None:
        measure = _target_measure(metric, G, target, n_samples, seeds[0])
    if ball_measure is not None:
        ball = ball_measure
    elif metric.tag == "minkowski":
        ball = _ball_measure(metric, None, alpha, target, n_samples, seeds[0])
    else:
        ball = max(_ball_measure(metric, c, alpha, target, n_samples, seeds[0])
                   for c in nets[med].centers)
    lower = max(1, int(math.ceil(measure / ball - 1e-9)))
    clamped = lower > upper
    if clamped:
        log.warning("lower bound %d exceeds upper bound %d (alpha=%g, %s); clamping",
                    lower, upper, alpha, target)
        lower = upper
    return CoverEstimate(upper, lower, alpha, target, sizes, float(measure), float(ball), clamped)


def brute_force_cover_1d(metric, G: ConvexBody, alpha: float, target: str = "body",
                         iters: int = 200) -> int:
    """Greedy left-to-right interval cover driven only by the distance function.

    Optimal on a line: each ball is placed as far right as possible while
    still covering the leftmost uncovered point, found by bisection.
    """
    K = metric.body
    lo_pt, hi_pt = float(G.vertices[0, 0]), float(G.vertices[1, 0])
    if target == "boundary":
        return 1 if _reach(metric, lo_pt, hi_pt, alpha, iters) >= hi_pt else 2
    count, left = 0, lo_pt
    while True:
        count += 1
        right = _reach(metric, left, None, alpha, iters)
        if right >= hi_pt or count > 10_000:
            return count
        left = right


def _reach(metric, left, target_hi, alpha, iters):
    """Rightmost point covered by a ball of radius alpha that still covers ``left``."""
    K = metric.body
    top = float(K.vertices[1, 0])
    if metric.tag == "minkowski":
        D = metric.D
        # ball c + alpha D covers left iff c - left in -alpha D
        c = left + alpha * -float(D.vertices[0, 0])
        return c + alpha * float(D.vertices[1, 0])

    def d(a, b):
        return float(hilbert_distance(K, np.array([a]), np.array([b])))

    def far(x0):
        lo, hi = x0, top
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if d(x0, mid) <= alpha:
                lo = mid
            else:
                hi = mid
        return lo

    return far(far(left))


# complementary chords ----------------------------------------------------------------------

@dataclass
class Chord:
    a: np.ndarray
    b: np.ndarray
    normal_a: np.ndarray
    normal_b: np.ndarray
    residual: float
    meet: np.ndarray | None
    iterations: int = 0


def _line_vec(n, p):
    """Homogeneous coordinates (n, -<n,p>) of a line, normalized."""
    v = np.array([n[0], n[1], -float(n @ p)])
    return v / np.linalg.norm(v)


class _LiftedCircle:
    """Chord directions from x with vertex directions blown up into normal-cone intervals."""

    def __init__(self, K: ConvexBody, x):
        self.K = K
        self.x = np.asarray(x, float)
        V = K.vertices - self.x
        base = np.mod(np.arctan2(V[:, 1], V[:, 0]), np.pi)
        base = np.unique(np.round(base, 14))
        ev = np.concatenate([base, base + np.pi])
        self.events = ev
        self.ell = 1.0
        gaps = np.diff(np.append(ev, ev[0] + 2 * np.pi))
        self.starts = np.concatenate([[0.0], np.cumsum(self.ell + gaps)[:-1]])
        self.gaps = gaps
        self.length = len(ev) * self.ell + 2 * np.pi

    def at(self, psi):
        psi = float(np.mod(psi, self.length))
        k = int(np.searchsorted(self.starts, psi, side="right") - 1)
        local = psi - self.starts[k]
        K, x = self.K, self.x
        if local <= self.ell:
            th = self.events[k]
            tau = local / self.ell
        else:
            th = self.events[k] + (local - self.ell)
            tau = None
        u = np.array([math.cos(th), math.sin(th)])
        slack = K.offsets - K.normals @ x
        rate = K.normals @ u
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(rate > 0, slack / rate, np.inf)
        tmin = t.min()
        a = x + tmin * u
        active = np.flatnonzero(t <= tmin * (1 + 1e-10))
        if len(active) == 1:
            return a, K.normals[active[0]]
        m = K.n_facets
        i, j = active[0], active[-1]
        # order the two facets counter-clockwise around the vertex
        if (j - i) % m != 1:
            i, j = j, i
        if tau is None:
            # a segment end that rounds onto a vertex: keep the facet of this segment
            tau = 0.0 if local - self.ell > 0.5 * self.gaps[k] else 1.0
        n = (1 - tau) * K.normals[i] + tau * K.normals[j]
        return a, n / np.linalg.norm(n)


def complementary_chord_2d(K: ConvexBody, x, h: Halfspace, tol: float = TOL_CHORD,
                           max_iter: int = 200) -> Chord:
    """A chord (a, b) through x whose supporting lines meet on the line of h."""
    if K.dim != 2:
        raise DimensionError("complementary chords are planar")
    x = np.asarray(x, float)
    if K.interior_clearance(x)[0] <= EPS_GEOM:
        raise NotContained("x must be interior")
    if abs(h.normal @ x - h.offset) > 1e-9:
        raise InvalidParameter("x must lie on the line of h")
    w = np.array([-h.normal[1], h.normal[0]])
    circ = _LiftedCircle(K, x)
    half = circ.length / 2

    def q(psi):
        a, n = circ.at(psi)
        return (n @ w) / (n @ (a - x)), a, n

    def g(psi):
        qa, a, na = q(psi)
        qb, b, nb = q(psi + half)
        return qa - qb, (a, na, b, nb)

    lo, hi = 0.0, half
    glo, _ = g(lo)
    trace = [glo]
    it = 0
    hl = _line_vec(h.normal, x)

    def resid(data):
        a, na, b, nb = data
        return abs(np.linalg.det(np.vstack([_line_vec(na, a), _line_vec(nb, b), hl]))), data

    r, data = resid(g(lo)[1])
    while r > tol * 1e-3 and it < max_iter:
        mid = 0.5 * (lo + hi)
        gm, data = g(mid)
        trace.append(gm)
        r, _ = resid(data)
        if (gm > 0) == (glo > 0) and gm != 0:
            lo, glo = mid, gm
        else:
            hi = mid
        it += 1
        if hi - lo < 1e-15:
            break
    if r > tol:
        raise SearchFailed(f"complementary chord search failed; residual {r:.3g}; trace {trace[-5:]}")
    a, na, b, nb = data
    M = np.array([na, nb])
    meet = None
    if abs(np.linalg.det(M)) > 1e-14:
        meet = np.linalg.solve(M, np.array([na @ a, nb @ b]))
    return Chord(a, b, na, nb, float(r), meet, it)


def supporting_normal(G: ConvexBody, p):
    """An outer normal of G at boundary point p (the normal-cone bisector at vertices)."""
    s = G.slack(np.asarray(p, float))
    act = np.flatnonzero(np.abs(s) <= 1e-9 * max(1.0, G.circumradius))
    if len(act) == 0:
        act = [int(np.argmin(np.abs(s)))]
    n = G.normals[act].sum(axis=0)
    return n / np.linalg.norm(n)


def boundary_transfer_point(K: ConvexBody, G: ConvexBody, x, alpha: float):
    """Point p with d_H(x, p) = alpha beyond the supporting line of G at x."""
    nG = supporting_normal(G, x)
    ch = complementary_chord_2d(K, x, Halfspace(nG, float(nG @ x)))
    a, b = ch.a, ch.b
    if nG @ (b - x) < 0:
        a, b = b, a
    tp = np.linalg.norm(b - x)
    tm = np.linalg.norm(x - a)
    s = float(ball_radius(tp, tm, alpha))
    return x + s * (b - x) / tp, ch


def boundary_transfer_check(K: ConvexBody, G: ConvexBody, alpha: float, n_probes: int = 20,
                            seed: int = 0, tol: float = 1e-5) -> CheckReport:
    """Probe points x on the boundary of G and exhibit y at distance alpha from G."""
    t0 = time.perf_counter()
    if not (0 < alpha <= 1):
        raise RadiusOutOfRange("alpha must lie in (0, 1]")
    _check_inner(K, G)
    m = HilbertMetric(K)
    rng = np.random.default_rng(seed)
    if G.dim == 1:
        X = G.vertices
        Y = expand_hilbert(K, G, alpha).vertices
    else:
        X, _ = sample_boundary(G, n_probes, rng)
        Y = np.array([boundary_transfer_point(K, G, x, alpha)[0] for x in X])
    dxy = m.distance(X, Y)
    dset = distance_to_set(m, Y, G, tol=tol * 1e-2)
    err = np.maximum(np.abs(dxy - alpha), np.abs(dset - alpha))
    worst = float(err.max())
    frac = float(np.mean(err <= tol))
    return CheckReport("boundary_transfer", {"dim": G.dim, "alpha": alpha, "n_probes": len(X)},
                       worst, tol, worst / tol, tol, frac == 1.0, seed,
                       1e3 * (time.perf_counter() - t0), 0.0, {"pass_rate": frac})


# fatness and relative isoperimetry -------------------------------------------------------------

def _clip_segments(P, Q, B: ConvexBody):
    """Parts of segments P->Q inside the convex polygon B (Cyrus-Beck)."""
    V = Q - P
    t0 = np.zeros(len(P))
    t1 = np.ones(len(P))
    for n, b in zip(B.normals, B.offsets):
        num = b - P @ n
        den = V @ n
        with np.errstate(divide="ignore", invalid="ignore"):
            t = num / den
        enter = den < 0
        leave = den > 0
        t0 = np.where(enter, np.maximum(t0, t), t0)
        t1 = np.where(leave, np.minimum(t1, t), t1)
        t1 = np.where((den == 0) & (num < 0), -1.0, t1)
    keep = t1 > t0 + 1e-15
    return P[keep] + t0[keep, None] * V[keep], P[keep] + t1[keep, None] * V[keep]


def _hilbert_ball_body(K, x, r, n_dir):
    return hilbert_ball(K, x, r, n_dir).to_body()


def _radial_fraction(kind, K, z, r, E_exit, n_dir, order=16):
    """Fraction of the HT volume of B(z, r) within the cone region E from a boundary point z."""
    U = direction_fan(2, n_dir)
    tp, tm = chord_params(K, z, U)
    rho = ball_radius(tp, tm, r)
    e = np.clip(E_exit(U), 0.0, None)
    s, w = _gl(order)

    def integral(R):
        X = z + (R[:, None, None] * s[None, :, None]) * U[:, None, :]
        f = volume_density(kind, K, X.reshape(-1, 2)).reshape(len(U), order)
        return np.sum(R ** 2 * ((f * s) @ w))

    return float(integral(np.minimum(rho, e)) / integral(rho))


def _exit_from_boundary(E: ConvexBody, z):
    def f(U):
        slack = np.maximum(E.offsets - E.normals @ z, 0.0)
        rate = U @ E.normals.T
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(rate > 1e-15, slack / rate, np.inf)
        return t.min(axis=1)
    return f


def _piece_measure_hilbert(K, P, Q):
    keep = np.linalg.norm(Q - P, axis=1) > 0
    if not np.any(keep):
        return 0.0
    return float(np.sum(hilbert_distance(K, P[keep], Q[keep])))


def _piece_measure_minkowski(D, P, Q):
    V = Q - P
    L = np.linalg.norm(V, axis=1)
    keep = L > 0
    if not np.any(keep):
        return 0.0
    u = V[keep] / L[keep, None]
    return float(np.sum(L[keep] * 0.5 * (gauge(D, u) + gauge(D, -u))))


def fatness_check(metric, E: ConvexBody, alpha: float, gamma_threshold: float,
                  n_probes: int = 20, seed: int = 0, radii=(1.0, 0.5, 0.25),
                  n_dir: int = 256) -> CheckReport:
    """Minimum volume and boundary-area fractions of balls centered on the boundary of E."""
    t0 = time.perf_counter()
    if E.dim != 2:
        raise DimensionError("fatness diagnostics are planar")
    rng = np.random.default_rng(seed)
    Z, _ = sample_boundary(E, n_probes, rng)
    edges = E.edges()
    vfr, afr = [], []
    for z in Z:
        for f in radii:
            r = alpha * f
            if metric.tag == "minkowski":
                D = metric.D
                B = D.scaled(r).translate(z)
                EB = intersection(E, B)
                vfr.append(0.0 if EB is None else EB.volume / B.volume)
                P, Q = _clip_segments(edges[:, 0], edges[:, 1], B)
                Bd = B.edges()
                afr.append(_piece_measure_minkowski(D, P, Q)
                           / _piece_measure_minkowski(D, Bd[:, 0], Bd[:, 1]))
            else:
                K = metric.K
                vfr.append(_radial_fraction("hilbert", K, z, r, _exit_from_boundary(E, z), n_dir))
                B = _hilbert_ball_body(K, z, r, n_dir)
                P, Q = _clip_segments(edges[:, 0], edges[:, 1], B)
                afr.append(_piece_measure_hilbert(K, P, Q) / hilbert_perimeter(K, B).value)
    vmin, amin = float(min(vfr)), float(min(afr))
    return CheckReport("expansion_fatness", {"dim": 2, "alpha": alpha, "metric": metric.tag,
                                             "n_probes": n_probes},
                       vmin, gamma_threshold, vmin / gamma_threshold, 0.0,
                       vmin >= gamma_threshold, seed, 1e3 * (time.perf_counter() - t0), 0.0,
                       {"min_area_fraction": amin})


def _pieces_3d(body_pts_list):
    out = []
    for pts, n in body_pts_list:
        if len(pts) < 3:
            continue
        q = pts @ _plane_basis(n).T
        try:
            out.append((ConvexBody.from_points(q).volume, n))
        except GeometryError:
            continue
    return out


def relative_isoperimetry_sample(ball_spec, E, normalization: str = "ht", n_dir: int = 512):
    """(mu, beta): volume fraction of the ball inside E and area fraction of the cut.

    ball_spec is ("minkowski", D, z, r) or ("hilbert", K, x, r).  E is a body
    or a Halfspace.  The Minkowski case supports Holmes-Thompson and Busemann
    normalizations (volume fractions agree; area densities differ).
    """
    kind, body, z, r = ball_spec
    z = np.asarray(z, float)
    d = body.dim
    if kind == "minkowski":
        D = body
        B = D.scaled(r).translate(z)
        if isinstance(E, Halfspace):
            EB = clip(B, E.normal, E.offset)
            cuts = [(section_points(B, E.normal, E.offset), E.normal)]
        else:
            EB = intersection(E, B)
            cuts = [] if EB is None else [(section_points(EB, n, b), n)
                                          for n, b in zip(E.normals, E.offsets)]
        mu = 0.0 if EB is None else EB.volume / B.volume
        if mu <= 1e-12 or mu >= 1 - 1e-12:
            raise DegenerateCut("the cut must split the ball")

        def density(normals):
            normals = np.atleast_2d(normals)
            if normalization == "busemann":
                return busemann_area_density(D, normals)
            return minkowski_area_density(D, normals)

        if d == 2:
            cut = 0.0
            for pts, n in cuts:
                if len(pts) >= 2:
                    L = np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))
                    cut += L * float(density(n)[0])
            A = np.linalg.norm(B.edges()[:, 1] - B.edges()[:, 0], axis=1)
            total = float(np.sum(A * density(B.normals)))
        else:
            cut = sum(a * float(density(n)[0]) for a, n in _pieces_3d(cuts))
            from .measures import _facet_pieces
            A, N, _ = _facet_pieces(B)
            total = float(np.sum(A * density(N)))
        return float(mu), float(cut / total)
    if kind != "hilbert":
        raise InvalidParameter(f"unknown ball kind {kind!r}")
    K = body
    if d != 2:
        raise DimensionError("Hilbert cuts are planar")
    if r > 1:
        raise RadiusOutOfRange("r must be at most 1")
    if isinstance(E, Halfspace):
        if abs(E.normal @ z - E.offset) > 1e-9:
            raise InvalidParameter("x must lie on the boundary of E")
        n, c = E.normal, E.offset

        def exit_fn(U):
            rate = U @ n
            return np.where(rate < 0, np.inf, 0.0)
    else:
        if abs(E.interior_clearance(z)[0]) > 1e-9:
            raise InvalidParameter("x must lie on the boundary of E")
        exit_fn = _exit_from_boundary(E, z)
    mu = _radial_fraction("hilbert", K, z, r, exit_fn, n_dir)
    if mu <= 1e-12 or mu >= 1 - 1e-12:
        raise DegenerateCut("the cut must split the ball")
    B = _hilbert_ball_body(K, z, r, n_dir)
    if isinstance(E, Halfspace):
        pts = section_points(B, E.normal, E.offset)
        P, Q = pts[:1], pts[-1:]
        if len(pts) > 2:
            t = pts @ np.array([-E.normal[1], E.normal[0]])
            P, Q = pts[[np.argmin(t)]], pts[[np.argmax(t)]]
    else:
        edges = E.edges()
        P, Q = _clip_segments(edges[:, 0], edges[:, 1], B)
    beta = _piece_measure_hilbert(K, P, Q) / hilbert_perimeter(K, B).value
    return float(mu), float(beta)
