import math

import numpy as np
import pytest
from hypothesis import given

from hilbcover.config import TOL_QUADRATURE
from hilbcover.convex_core import (ConvexBody, cross_polytope, cube, interval, minkowski_sum,
                                   ngon, polar)
from hilbcover.instances import random_pair, random_point, random_symmetric
from hilbcover.measures import (area_density, ball_growth_profile, busemann_area_density,
                                busemann_measures, dual_vertices, funk_area_density_oracle,
                                hilbert_ball_measures, hilbert_perimeter, ht_area_finsler,
                                ht_area_minkowski, ht_area_minkowski_cauchy, ht_volume_finsler,
                                ht_volume_minkowski, omega, volume_density, volume_product)

from conftest import body_and_points, nested_pairs, seeds


def test_square_normed_plane():
    Q = cube(2)
    assert ht_volume_minkowski(Q, Q).value == pytest.approx(8 / math.pi)
    # HT perimeter of the unit square of the l_inf plane: the density of each
    # edge is the l_1 length of its normal divided by omega_1, times 4 edges of length 2
    assert ht_area_minkowski(Q, Q).value == pytest.approx(8.0)
    assert ht_area_minkowski_cauchy(Q, Q).value == pytest.approx(8.0)
    assert volume_product(Q) == pytest.approx(8 / math.pi ** 2)


def test_cube_area_two_ways():
    Q = cube(3)
    a = ht_area_minkowski(Q, Q).value
    assert a == pytest.approx(ht_area_minkowski_cauchy(Q, Q).value, rel=1e-9)
    assert a == pytest.approx(48 / math.pi, rel=1e-9)


def test_euclidean_limit():
    # for a near-round unit ball the HT measures approach the Euclidean ones
    D = ngon(2000)
    C = ngon(7, 0.8)
    assert ht_volume_minkowski(D, C).value == pytest.approx(C.volume, rel=1e-5)
    assert ht_area_minkowski(D, C).value == pytest.approx(C.boundary_area, rel=1e-5)
    assert volume_product(D) == pytest.approx(1.0, rel=1e-5)


@given(seeds)
def test_minkowski_measure_duality(s):
    for d in (2, 3):
        C = random_symmetric(s, d)
        D = random_symmetric(s + 1, d)
        assert ht_volume_minkowski(D, C).value == pytest.approx(
            ht_volume_minkowski(polar(C), polar(D)).value, rel=1e-6)
        assert ht_area_minkowski(D, C).value == pytest.approx(
            ht_area_minkowski(polar(C), polar(D)).value, rel=1e-6)
        assert ht_area_minkowski(D, C).value == pytest.approx(
            ht_area_minkowski_cauchy(D, C).value, rel=1e-6)


def test_busemann_of_cube():
    Q = cube(2)
    assert busemann_measures(Q, U=Q).value == pytest.approx(math.pi)
    # a coordinate section of the square has length 2, so the density is 1
    assert busemann_area_density(Q, np.array([[1.0, 0.0]]))[0] == pytest.approx(1.0)
    assert busemann_measures(Q, S=Q).value == pytest.approx(8.0)
    with pytest.raises(Exception):
        busemann_measures(Q)


@given(body_and_points(k=3))
def test_hilbert_density_mixed_area_oracle(data):
    K, X = data
    X = np.array(X)
    got = volume_density("hilbert", K, X)
    for x, g in zip(X, got):
        P = ConvexBody.from_points(dual_vertices(K, x)[0])
        half_diff = minkowski_sum(P.scaled(0.5), (-P).scaled(0.5))
        assert g == pytest.approx(half_diff.volume / math.pi, rel=1e-10)


@given(body_and_points(k=3))
def test_funk_density_is_polar_volume(data):
    K, X = data
    for x in X:
        ref = polar(K.translate(-x)).volume / math.pi
        assert volume_density("funk", K, x)[0] == pytest.approx(ref, rel=1e-10)


@given(body_and_points(dim=3, k=2))
def test_density_3d(data):
    K, X = data
    for x in X:
        ref = polar(K.translate(-x)).volume / omega(3)
        assert volume_density("funk", K, x)[0] == pytest.approx(ref, rel=1e-9)
        P = ConvexBody.from_points(dual_vertices(K, x)[0])
        hd = minkowski_sum(P.scaled(0.5), (-P).scaled(0.5))
        assert volume_density("hilbert", K, x)[0] == pytest.approx(hd.volume / omega(3), rel=1e-9)
        # the Hilbert unit ball is inscribed between the Funk ones, so its polar is larger
        assert volume_density("hilbert", K, x)[0] >= volume_density("funk", K, x)[0] * (1 - 1e-12)


@given(body_and_points(k=2), seeds)
def test_funk_area_density_jacobian_oracle(data, s):
    K, (x, _) = data
    th = np.random.default_rng(s).uniform(0, 2 * np.pi)
    n = np.array([math.cos(th), math.sin(th)])
    t = np.array([-n[1], n[0]])
    ref = funk_area_density_oracle(K, x, n, order=64)
    assert area_density("funk", K, x, t)[0] == pytest.approx(ref, rel=1e-9)


def test_interval_density():
    K = interval(-1.0, 1.0)
    x = np.array([[0.5]])
    # (K - x)^polar = [-1/1.5, 1/0.5]
    assert volume_density("funk", K, x)[0] == pytest.approx((2 + 1 / 1.5) / 2)


def test_hyperbolic_ball():
    # the Klein disk carries the hyperbolic metric, so ball measures are classical
    K = ngon(2048)
    r = 0.7
    vol, area = hilbert_ball_measures(K, np.zeros(2), r, 1024)
    assert vol == pytest.approx(2 * math.pi * (math.cosh(r) - 1), rel=1e-3)
    assert area == pytest.approx(2 * math.pi * math.sinh(r), rel=1e-3)


@given(nested_pairs())
def test_hilbert_perimeter_matches_quadrature(pair):
    G, K = pair
    exact = hilbert_perimeter(K, G).value
    assert exact == pytest.approx(ht_area_finsler(("hilbert", K), G).value, rel=TOL_QUADRATURE)
    assert exact == pytest.approx(ht_area_finsler(("hilbert", K), G, 32).value, rel=1e-12)


def test_funk_volume_duality_mc():
    for i in range(3):
        G, K = random_pair(100 + i)
        a = ht_volume_finsler(("funk", K), G, 20_000, 1)
        b = ht_volume_finsler(("funk", polar(G)), polar(K), 20_000, 2)
        assert abs(a.value - b.value) <= 3 * (a.std_error + b.std_error)


@given(nested_pairs())
def test_funk_area_duality(pair):
    G, K = pair
    a = ht_area_finsler(("funk", K), G).value
    b = ht_area_finsler(("funk", polar(G)), polar(K)).value
    assert a == pytest.approx(b, rel=1e-3)


def test_mc_is_seeded():
    G, K = random_pair(5)
    a = ht_volume_finsler(("hilbert", K), G, 5000, 9)
    b = ht_volume_finsler(("hilbert", K), G, 5000, 9)
    assert a.value == b.value and a.std_error == b.std_error > 0


def test_ball_growth_slopes():
    G, K = random_pair(3)
    x = random_point(K, 4, 0.5)
    _, sv, sa = ball_growth_profile(("hilbert", K), x, np.geomspace(0.05, 1.0, 8))
    assert 1.9 <= sv <= 2.1
    assert 0.9 <= sa <= 1.1
    _, sv, sa = ball_growth_profile(("minkowski", cross_polytope(2)), np.zeros(2), [0.1, 0.5, 1])
    assert sv == pytest.approx(2.0) and sa == pytest.approx(1.0)
