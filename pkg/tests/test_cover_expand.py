import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hilbcover.convex_core import (Halfspace, cube, hausdorff, interval, minkowski_sum, ngon,
                                   polar, sample_uniform)
from hilbcover.cover_expand import (EmptyGroundSet, boundary_transfer_check,
                                    boundary_transfer_point, brute_force_cover_1d,
                                    complementary_chord_2d, covering_estimate,
                                    exact_cover_count_1d, expand_hilbert, expand_minkowski,
                                    fatness_check, interior_ground_set,
                                    maximal_separated_net, relative_isoperimetry_sample)
from hilbcover.errors import NotCentrallySymmetric, NotContained, RadiusOutOfRange
from hilbcover.instances import random_body, random_pair, random_point, random_symmetric
from hilbcover.metrics import HilbertMetric, MinkowskiMetric, distance_to_set, hilbert_distance

from conftest import nested_pairs, seeds


def test_minkowski_expansion_is_sum():
    C = random_body(1)
    D = random_symmetric(2)
    E = expand_minkowski(C, D, 0.3)
    assert hausdorff(E, minkowski_sum(C, D.scaled(0.3))) < 1e-12
    with pytest.raises(NotCentrallySymmetric):
        expand_minkowski(C, C.translate(np.array([0.05, 0.0])), 0.3)


def test_minkowski_sublevel_is_expansion(rng):
    C = random_body(3)
    D = random_symmetric(4)
    E = expand_minkowski(C, D, 0.4)
    M = MinkowskiMetric(D)
    Z = sample_uniform(E.scaled(1.3), 400, rng)
    inside = E.contains(Z, tol=-1e-9)
    outside = ~E.contains(Z, tol=1e-9)
    d = distance_to_set(M, Z, C, tol=1e-10)
    assert np.all(d[inside] <= 0.4 + 1e-8)
    assert np.all(d[outside] >= 0.4 - 1e-8)


def test_hilbert_expansion_of_disk():
    K = ngon(128)
    G = ngon(64, 0.4)
    alpha = 0.5
    E = expand_hilbert(K, G, alpha, 64)
    R = math.tanh(math.atanh(0.4) + alpha)
    r = np.linalg.norm(E.vertices, axis=1)
    assert np.allclose(r, R, rtol=1e-8)


@given(seeds, st.sampled_from([0.1, 0.5, 1.0]))
def test_hilbert_expansion_one_dim(s, alpha):
    G, K = random_pair(s, 1)
    E = expand_hilbert(K, G, alpha)
    m = HilbertMetric(K)
    for e, g in zip(E.vertices, G.vertices):
        assert m.distance(e, g) == pytest.approx(alpha, abs=1e-12)


def test_hilbert_expansion_level_set():
    G, K = random_pair(11)
    E = expand_hilbert(K, G, 0.3, 90)
    d = distance_to_set(HilbertMetric(K), E.vertices, G, tol=1e-10)
    assert np.allclose(d, 0.3, atol=1e-7)


def test_expansion_errors():
    G, K = random_pair(2)
    with pytest.raises(RadiusOutOfRange):
        expand_hilbert(K, G, 1.5)
    with pytest.raises(NotContained):
        expand_hilbert(G, K, 0.3)


@given(seeds)
def test_net_is_separated_and_covering(s):
    G, K = random_pair(s)
    m = HilbertMetric(K)
    alpha = 0.3
    ground = interior_ground_set(m, G, alpha)
    net = maximal_separated_net(m, ground, alpha, s)
    P = m.pairwise(net.centers, net.centers)
    np.fill_diagonal(P, np.inf)
    assert P.min() >= alpha - 1e-9
    assert (m.pairwise(net.centers, ground) < alpha).any(axis=0).all()


def test_net_local_search_matches_dense():
    # the KD-tree shortcut for norms must not change the net
    C = random_body(5)
    D = random_symmetric(6)
    m = MinkowskiMetric(D)
    ground = interior_ground_set(m, C, 0.15)

    class Dense:
        tag = "minkowski"
        body = D
        prepare = staticmethod(m.prepare)
        pairwise = staticmethod(m.pairwise)
        distance = staticmethod(m.distance)

    a = maximal_separated_net(m, ground, 0.15, 3)
    b = maximal_separated_net(Dense(), ground, 0.15, 3)
    assert np.array_equal(a.centers, b.centers)


def test_empty_ground_set():
    with pytest.raises(EmptyGroundSet):
        maximal_separated_net(HilbertMetric(cube(2)), np.empty((0, 2)), 0.2)


@given(seeds, st.floats(0.05, 1.0))
def test_one_dim_counts_match_brute_force(s, alpha):
    G, K = random_pair(s, 1)
    for m, U in ((HilbertMetric(K), G), (HilbertMetric(polar(G)), polar(K))):
        for target in ("body", "boundary"):
            assert exact_cover_count_1d(m, U, alpha, target) == brute_force_cover_1d(m, U, alpha,
                                                                                      target)
    D = interval(-0.7, 0.7)
    C = random_body(s, 1)
    m = MinkowskiMetric(D)
    assert exact_cover_count_1d(m, C, alpha) == brute_force_cover_1d(m, C, alpha)


def test_one_dim_hilbert_count_value():
    # [-0.9, 0.9] inside [-1, 1] has Hilbert length 2 artanh(0.9)
    K = interval(-1, 1)
    G = interval(-0.9, 0.9)
    L = 2 * math.atanh(0.9)
    for alpha in (0.1, 0.2, 0.3):
        n = exact_cover_count_1d(HilbertMetric(K), G, alpha)
        assert n == math.ceil(L / (2 * alpha) - 1e-12)
        assert n == brute_force_cover_1d(HilbertMetric(K), G, alpha)


def test_covering_bracket():
    G, K = random_pair(7)
    est = covering_estimate(HilbertMetric(K), G, 0.2, "body", seeds=(0, 1, 2))
    assert 1 <= est.lower <= est.upper
    assert est.upper in est.uppers
    est = covering_estimate(HilbertMetric(K), G, 0.2, "boundary", seeds=(0,))
    assert 1 <= est.lower <= est.upper
    with pytest.raises(RadiusOutOfRange):
        covering_estimate(HilbertMetric(K), G, 2.0)


def test_covering_square_by_squares():
    # the l_inf plane: translative covering of [-1,1]^2 by 0.5-squares needs exactly 4
    m = MinkowskiMetric(cube(2))
    est = covering_estimate(m, cube(2), 0.5, "body", seeds=(0, 1, 2, 3, 4))
    assert est.lower == 4
    assert est.upper >= 4


@given(seeds)
def test_complementary_chord(s):
    rng = np.random.default_rng(s)
    K = random_body(s)
    x = random_point(K, s)
    th = rng.uniform(0, np.pi)
    n = np.array([math.cos(th), math.sin(th)])
    h = Halfspace(n, float(n @ x))
    ch = complementary_chord_2d(K, x, h)
    assert ch.residual <= 1e-6
    # x lies on the chord and both ends lie on the boundary
    u = (ch.b - ch.a) / np.linalg.norm(ch.b - ch.a)
    w = x - ch.a
    assert abs(u[0] * w[1] - u[1] * w[0]) < 1e-9
    assert np.abs(K.slack(np.array([ch.a, ch.b])).min(axis=1)).max() < 1e-9
    if ch.meet is not None and np.linalg.norm(ch.meet) < 1e6:
        assert abs(h.normal @ ch.meet - h.offset) <= 1e-6 * max(1.0, np.linalg.norm(ch.meet))


def test_complementary_chord_disk():
    # through the center of a disk the tangents at the chord ends are parallel,
    # so they meet on the line h at infinity only for the chord perpendicular to h
    K = ngon(720)
    ch = complementary_chord_2d(K, np.zeros(2), Halfspace(np.array([0.0, 1.0]), 0.0))
    assert ch.residual <= 1e-6
    assert abs(ch.a[0]) < 1e-6 and abs(ch.b[0]) < 1e-6


@given(nested_pairs(), st.sampled_from([0.1, 0.5, 1.0]))
def test_boundary_transfer(pair, alpha):
    G, K = pair
    rep = boundary_transfer_check(K, G, alpha, 5, 0)
    assert rep.passed, rep.lhs


def test_boundary_transfer_point_geometry():
    G, K = random_pair(9)
    x = G.vertices[0] * 0.5 + G.vertices[1] * 0.5
    p, _ = boundary_transfer_point(K, G, x, 0.4)
    m = HilbertMetric(K)
    assert m.distance(x, p) == pytest.approx(0.4, abs=1e-9)
    assert distance_to_set(m, p, G, tol=1e-10) == pytest.approx(0.4, abs=1e-7)


def test_fatness_minkowski():
    C = random_body(21)
    D = random_symmetric(22)
    E = expand_minkowski(C, D, 0.3)
    rep = fatness_check(MinkowskiMetric(D), E, 0.3, 0.25, 15, 0)
    assert rep.lhs >= 2.0 ** -2 - 0.02


def test_fatness_hilbert():
    G, K = random_pair(23)
    E = expand_hilbert(K, G, 0.3, 180)
    rep = fatness_check(HilbertMetric(K), E, 0.3, 0.1, 8, 0)
    assert rep.lhs > 0.1


@pytest.mark.parametrize("d,beta", [(2, 0.25), (3, 1 / 6)])
def test_cube_halfspace_busemann(d, beta):
    n = np.zeros(d)
    n[0] = 1.0
    mu, b = relative_isoperimetry_sample(("minkowski", cube(d), np.zeros(d), 1.0),
                                         Halfspace(n, 0.0), "busemann")
    assert mu == pytest.approx(0.5, abs=1e-12)
    assert b == pytest.approx(beta, abs=1e-9)


def test_hyperbolic_halfplane_cut():
    # a diameter cuts a hyperbolic disk in half; the cut has length 2r against
    # the full circle 2 pi sinh r
    K = ngon(1024)
    r = 0.5
    mu, b = relative_isoperimetry_sample(("hilbert", K, np.zeros(2), r),
                                         Halfspace(np.array([1.0, 0.0]), 0.0), "ht", 512)
    assert mu == pytest.approx(0.5, abs=1e-6)
    assert b == pytest.approx(2 * r / (2 * math.pi * math.sinh(r)), rel=1e-3)


def test_chord_direction_rounding_onto_vertex():
    # a chord direction at the end of an edge segment that rounds onto a vertex
    # direction once picked the facet past the vertex and stalled the search
    G, K = random_pair(2)
    rep = boundary_transfer_check(K, G, 0.1, 20, 2)
    assert rep.passed and rep.extra["pass_rate"] == 1.0


def test_transfer_many_instances():
    for s in range(40):
        G, K = random_pair(1000 + s)
        assert boundary_transfer_check(K, G, 0.2, 10, s).passed
