# -*- coding: utf-8 -*-
import itertools
import math
import numpy as np
import pytest
import sumset_core as sc
from tests.conftest import TRIANGLE, random_clouds, random_weights

UNIT_SQUARE = [[0, 0], [1, 0], [0, 1], [1, 1]]


def _sum_points(clouds):
    """All sums of one point per cloud, without deduplication."""
    acc = np.zeros((1, clouds[0].shape[1]))
    for c in clouds:
        acc = (acc[:, None, :] + c[None, :, :]).reshape(-1, acc.shape[1])
    return acc


def _members(cloud, point):
    return bool(np.any(np.all(np.asarray(cloud) == point, axis=1)))


def test_conic_combination_validation():
    with pytest.raises(sc.InvalidCombinationError):
        sc.ConicCombination([1, -0.5], [[0, 1], [1, 0]])
    with pytest.raises(sc.DimensionError):
        sc.ConicCombination([1, 1], [[0, 1, 2]])
    comb = sc.ConicCombination([1, 2], [[1, 0], [0, 1]])
    assert comb.value().tolist() == [1, 2]
    assert comb.total == 3
    assert comb.dict() == {"coeffs": [1.0, 2.0], "points": [[1, 0], [0, 1]], "labels": [0, 1]}


def test_conic_reduce_zero_value():
    comb = sc.ConicCombination([1, 1, 1], [[1, 0], [-1, 0], [0, 0]])
    assert len(sc.conic_reduce(comb, 2)) == 0


def test_conic_reduce_three_terms_in_plane():
    comb = sc.ConicCombination([1, 1, 1], [[1, 0], [0, 1], [1, 1]])
    reduced = sc.conic_reduce(comb, 2)
    assert len(reduced) <= 2
    assert np.allclose(reduced.value(), [2, 2], atol=1e-12)
    assert np.all(reduced.coeffs > 0)
    # both tied terms drop in the same step
    assert reduced.labels.tolist() == [2]
    assert reduced.coeffs.tolist() == pytest.approx([2.0])


def test_conic_reduce_shortest_dependent_prefix():
    comb = sc.ConicCombination([1, 1, 1], [[1, 0], [2, 0], [0, 1]])
    reduced = sc.conic_reduce(comb, 2)
    assert reduced.labels.tolist() == [1, 2]
    assert reduced.coeffs.tolist() == pytest.approx([1.5, 1.0])


def test_conic_reduce_depends_on_term_order_only(rng):
    for _ in range(100):
        m, k = int(rng.integers(2, 5)), int(rng.integers(6, 12))
        coeffs, points = rng.random(k), rng.normal(size=(k, m))
        shift = rng.normal(scale=1e-13, size=(k, m))
        a = sc.conic_reduce(sc.ConicCombination(coeffs, points), m)
        b = sc.conic_reduce(sc.ConicCombination(coeffs, points + shift), m)
        assert a.labels.tolist() == b.labels.tolist()


def test_conic_reduce_single_term_unchanged():
    reduced = sc.conic_reduce(sc.ConicCombination([3], [[1, 1]]), 2)
    assert reduced.coeffs.tolist() == [3.0]
    assert reduced.points.tolist() == [[1.0, 1.0]]


def test_conic_reduce_dimension_mismatch():
    with pytest.raises(sc.DimensionError):
        sc.conic_reduce(sc.ConicCombination([1], [[1, 1]]), 3)


def test_conic_reduce_random_cones(rng):
    for _ in range(1000):
        m = int(rng.integers(1, 6))
        k = int(rng.integers(1, 21))
        comb = sc.ConicCombination(rng.random(k), rng.normal(size=(k, m)))
        reduced = sc.conic_reduce(comb, m)
        assert len(reduced) <= m
        assert np.all(reduced.coeffs > 0)
        assert np.linalg.norm(reduced.value() - comb.value()) <= 1e-8
        # labels point back at the original terms
        for coeff, point, label in zip(reduced.coeffs, reduced.points, reduced.labels):
            assert np.array_equal(point, comb.points[label])


def test_hull_membership_triangle():
    comb = sc.hull_membership(TRIANGLE, [0.25, 0.25])
    assert len(comb) <= 3
    assert comb.total == pytest.approx(1.0)
    assert np.allclose(comb.value(), [0.25, 0.25])
    with pytest.raises(sc.HullMembershipError):
        sc.hull_membership(TRIANGLE, [0.8, 0.8])


def test_hull_membership_line():
    comb = sc.hull_membership([0, 1, 3], [2])
    assert comb.labels.tolist() == [1, 2]
    assert comb.coeffs.tolist() == [0.5, 0.5]
    vertex = sc.hull_membership([0, 1, 3], [1])
    assert vertex.labels.tolist() == [1]
    with pytest.raises(sc.HullMembershipError):
        sc.hull_membership([0, 1, 3], [3.5])


def test_sf_decompose_three_bits():
    clouds = [[0, 1]] * 3
    dec = sc.sf_decompose(clouds, [[0.5, 0.5]] * 3)
    assert len(dec.exceptional) <= 1
    assert dec.residual <= 1e-9
    for i, a in dec.exact.items():
        assert a.tolist() in ([0.0], [1.0])
    for comb in dec.convexified.values():
        assert comb.total == pytest.approx(1.0)


def test_sf_decompose_vertices_have_no_exceptions():
    dec = sc.sf_decompose([[0, 1], [0, 1]], [[1, 0], [0, 1]])
    assert dec.exceptional == []
    assert dec.residual == 0.0
    assert dec.exact_index == {0: 0, 1: 1}


def test_sf_decompose_single_summand():
    dec = sc.sf_decompose([TRIANGLE], [[1 / 3, 1 / 3, 1 / 3]])
    assert dec.exceptional == [0]
    assert np.allclose(dec.convexified[0].value(), [1 / 3, 1 / 3])


def test_sf_decompose_dict():
    dec = sc.sf_decompose([[0, 1]] * 2, [[1, 0], [0.5, 0.5]])
    data = dec.dict()
    assert set(data) == {"target", "exceptional", "exact", "convexified"}
    assert data["target"] == [0.5]


def test_sf_decompose_invalid_combinations():
    with pytest.raises(sc.InvalidCombinationError):
        sc.sf_decompose([[0, 1]], [[0.5, 0.6]])
    with pytest.raises(sc.InvalidCombinationError):
        sc.sf_decompose([[0, 1]], [[1.5, -0.5]])
    with pytest.raises(sc.InvalidCombinationError):
        sc.sf_decompose([[0, 1]], [[1.0]])
    with pytest.raises(sc.InvalidCombinationError):
        sc.sf_decompose([[0, 1]], [[1, 0], [1, 0]])
    with pytest.raises(sc.DimensionError):
        sc.sf_decompose([[0, 1], TRIANGLE], [[1, 0], [1, 0, 0]])


def test_sf_decompose_random(rng):
    for _ in range(200):
        n, d = int(rng.integers(1, 9)), int(rng.integers(1, 4))
        clouds = random_clouds(rng, n, d)
        dec = sc.sf_decompose(clouds, random_weights(rng, clouds))
        assert len(dec.exceptional) <= d
        assert dec.residual <= 1e-8
        for i, a in dec.exact.items():
            assert _members(clouds[i], a)
        for comb in dec.convexified.values():
            assert abs(comb.total - 1) <= 1e-9


def test_sf_decompose_point():
    dec = sc.sf_decompose_point([[0, 1]] * 3, [1.5])
    assert len(dec.exceptional) <= 1
    assert dec.reconstruct() == pytest.approx([1.5])
    with pytest.raises(sc.HullMembershipError):
        sc.sf_decompose_point([[0, 1]] * 3, [4])


def test_greedy_round_two_halves():
    res = sc.greedy_round([[0, 1]] * 2, [[0.5]] * 2, [[0.5]] * 2, 0.5)
    assert res.indices == [0, 1]
    assert res.error == 0.0
    assert res.bound == pytest.approx(0.5 * math.sqrt(2))


def test_greedy_round_thirds():
    res = sc.greedy_round([[0, 1]] * 3, [[1 / 3]] * 3, [[0.5]] * 3, 0.5)
    assert res.error <= 0.5 * math.sqrt(3)
    assert res.error == pytest.approx(0.0, abs=1e-12)
    assert res.total.tolist() == pytest.approx([1.0])


def test_greedy_round_exact_points():
    res = sc.greedy_round([TRIANGLE] * 2, [[1, 0], [0, 1]], [[0.5, 0.5]] * 2, math.sqrt(0.5))
    assert res.error == 0.0


def test_greedy_round_premises():
    with pytest.raises(sc.ContainmentError) as excinfo:
        sc.greedy_round([[0, 1]], [[0.5]], [[0]], 0.5)
    assert excinfo.value.worst == 1.0
    with pytest.raises(sc.HullMembershipError):
        sc.greedy_round([[0, 1]], [[1.2]], [[0.5]], 0.5)
    with pytest.raises(ValueError):
        sc.greedy_round([[0, 1]], [[0.5]], [[0.5]], 0)
    with pytest.raises(sc.DimensionError):
        sc.greedy_round([[0, 1]] * 2, [[0.5]], [[0.5]] * 2, 0.5)


def test_greedy_round_random(rng):
    for _ in range(1000):
        m, d = int(rng.integers(1, 9)), int(rng.integers(1, 4))
        clouds = [rng.normal(size=(int(rng.integers(2, 6)), d)) for _ in range(m)]
        weights = random_weights(rng, clouds)
        ys = [w @ c for w, c in zip(weights, clouds)]
        balls = [sc.rad(c) for c in clouds]
        R = max(b.radius for b in balls)
        res = sc.greedy_round(clouds, ys, [b.center for b in balls], R)
        assert res.error <= R * math.sqrt(m) + 1e-9
        for cloud, a in zip(clouds, res.chosen):
            assert _members(cloud, a)


def test_sf_round_radius_three_bits():
    res = sc.sf_round_radius([[0, 1]] * 3, [[0.5, 0.5]] * 3)
    assert res.bound == pytest.approx(0.5)
    assert res.error == pytest.approx(0.5)
    data = res.dict()
    for key in ("exceptional", "exact", "convexified", "error", "bound"):
        assert key in data


def test_sf_round_radius_translation(rng):
    for _ in range(200):
        n, d = int(rng.integers(2, 6)), int(rng.integers(2, 4))
        clouds = [rng.normal(size=(int(rng.integers(2, 5)), d)) for _ in range(n)]
        weights = random_weights(rng, clouds)
        shifts = rng.normal(scale=5.0, size=(n, d))
        a = sc.sf_round_radius(clouds, weights)
        b = sc.sf_round_radius([c + t for c, t in zip(clouds, shifts)], weights)
        assert b.indices == a.indices
        assert b.decomposition.exceptional == a.decomposition.exceptional
        assert b.total.tolist() == pytest.approx((a.total + shifts.sum(axis=0)).tolist(), abs=1e-8)
        assert b.error == pytest.approx(a.error, abs=1e-8)


def test_sf_decompose_translation_line():
    shifts = [0.25, -3.0, 7.5]
    a = sc.sf_decompose([[0, 1]] * 3, [[0.5, 0.5]] * 3)
    b = sc.sf_decompose([[t, t + 1] for t in shifts], [[0.5, 0.5]] * 3)
    assert b.exceptional == a.exceptional
    assert b.exact_index == a.exact_index
    assert b.target.tolist() == pytest.approx([1.5 + sum(shifts)])


def test_sf_round_radius_no_exceptions():
    res = sc.sf_round_radius([[0, 1], [0, 1]], [[1, 0], [0, 1]])
    assert res.error == 0.0
    assert res.decomposition.exceptional == []


def test_sf_round_radius_square_vertices():
    res = sc.sf_round_radius([UNIT_SQUARE] * 2, [[0.25] * 4] * 2)
    assert res.bound == pytest.approx(math.sqrt(0.5) * math.sqrt(2))
    assert res.error <= res.bound + 1e-9
    assert res.target.tolist() == pytest.approx([1.0, 1.0])


def test_sf_round_radius_random(rng):
    done = 0
    while done < 500:
        n, d = int(rng.integers(1, 9)), int(rng.integers(1, 4))
        clouds = random_clouds(rng, n, d)
        if np.prod([len(c) for c in clouds]) > 10**5:
            continue
        res = sc.sf_round_radius(clouds, random_weights(rng, clouds))
        bound = max(sc.rad(c).radius for c in clouds) * math.sqrt(min(n, d))
        assert res.error <= bound + 1e-9
        oracle = np.min(np.linalg.norm(_sum_points(clouds) - res.target, axis=1))
        assert res.error >= oracle - 1e-9
        for cloud, a in zip(clouds, res.chosen):
            assert _members(cloud, a)
        done += 1


def _min_enclosing_circle(points):
    """Smallest circle through pairs or triples that contains every point."""
    best = math.inf
    for p, q in itertools.combinations(points, 2):
        center, radius = (p + q) / 2, np.linalg.norm(p - q) / 2
        if np.all(np.linalg.norm(points - center, axis=1) <= radius + 1e-9):
            best = min(best, radius)
    for p, q, s in itertools.combinations(points, 3):
        A = 2 * np.array([q - p, s - p])
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        center = np.linalg.solve(A, [q @ q - p @ p, s @ s - p @ p])
        radius = np.linalg.norm(p - center)
        if np.all(np.linalg.norm(points - center, axis=1) <= radius + 1e-9):
            best = min(best, radius)
    return best


def test_rad_examples():
    assert sc.rad([0, 1]) == sc.Ball([0.5], 0.5)
    assert sc.rad([[2, 3]]).radius == 0.0
    ball = sc.rad(TRIANGLE)
    assert ball.center.tolist() == pytest.approx([0.5, 0.5])
    assert ball.radius == pytest.approx(math.sqrt(2) / 2)


def test_rad_matches_brute_force(rng):
    for _ in range(50):
        points = rng.normal(size=(6, 2))
        ball = sc.rad(points)
        assert np.all(np.linalg.norm(points - ball.center, axis=1) <= ball.radius + 1e-12)
        assert ball.radius == pytest.approx(_min_enclosing_circle(points), abs=1e-9)


def test_rad_3d_contains_cloud(rng):
    points = rng.normal(size=(30, 3))
    ball = sc.rad(points)
    assert np.max(np.linalg.norm(points - ball.center, axis=1)) == pytest.approx(ball.radius)
    assert ball.radius >= sc.diameter(points) / 2 - 1e-12


def test_radius_bounds():
    assert sc.radius_bound([[0, 1]] * 3) == 0.5
    assert sc.radius_bound([TRIANGLE] * 2) == pytest.approx(1.0)
    assert sc.radius_bound([TRIANGLE]) == pytest.approx(math.sqrt(0.5))
    assert sc.coarse_residual_bound(0.5, 4) == 1.0


def test_residual_measure():
    assert sc.residual_measure([[[1, 2]], [[0, 3]]]) == 0.0
    measured = sc.residual_measure([[0, 1]] * 5, samples=1000, seed=7)
    assert 0.4 < measured <= 0.5 + 1e-9
    assert sc.residual_measure([[0, 1]] * 5, samples=1000, seed=7) == measured
    square = sc.residual_measure([UNIT_SQUARE] * 2, samples=500)
    assert square <= sc.radius_bound([UNIT_SQUARE] * 2) + 1e-9


def test_residual_report():
    report = sc.residual_report([[0, 1]] * 5, samples=1000, seed=7)
    assert report.measured == sc.residual_measure([[0, 1]] * 5, samples=1000, seed=7)
    assert (report.samples, report.seed) == (1000, 7)
    assert sc.sum_distance([[0, 1]] * 5, report.worst) == pytest.approx(report.measured)
    data = report.dict()
    assert set(data) == {"measured", "samples", "seed", "worst"}
    sc.core_opts.seed = 3
    try:
        assert sc.residual_report([[0, 1]] * 5, samples=10).seed == 3
    finally:
        sc.core_opts.seed = 0
    single = sc.residual_report([[[1, 2]], [[0, 3]]], samples=5, seed=2)
    assert single.dict() == {"measured": 0.0, "samples": 5, "seed": 2, "worst": None}


def test_residual_measure_cap():
    sc.core_opts.oracle_cap = 10
    try:
        with pytest.raises(sc.CapExceededError):
            sc.residual_measure([[0, 1]] * 5)
    finally:
        sc.core_opts.oracle_cap = 10**6
