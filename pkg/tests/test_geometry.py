import math

import numpy as np
import pytest

from jchlab import (
    ConvergenceError,
    kmeans_partition_cost, kmeans_partition_cost_centroid,
    best_center_continuous, weiszfeld_geometric_median, coordinate_median,
    min_enclosing_ball, separation_center_bound_check,
    l1sq_pairwise_lower_bound,
)

TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])


def test_partition_cost_two_points():
    pts = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert kmeans_partition_cost(pts, [(0, 1)]) == pytest.approx(2.0)


def test_partition_cost_singletons():
    assert kmeans_partition_cost(TRIANGLE, [(0,), (1,), (2,)]) == 0.0


def test_partition_cost_equilateral_both_forms():
    # pairwise: (1/6) * (6 ordered pairs * 1); centroid: 3 * (1/sqrt(3))^2
    pair = kmeans_partition_cost(TRIANGLE, [(0, 1, 2)])
    cen = kmeans_partition_cost_centroid(TRIANGLE, [(0, 1, 2)])
    assert pair == pytest.approx(1.0, abs=1e-12)
    assert abs(pair - cen) <= 1e-9


def test_partition_cost_forms_agree_random():
    rng = np.random.default_rng(123)
    for _ in range(200):
        m = rng.integers(2, 12)
        d = rng.integers(1, 6)
        pts = rng.normal(size=(m, d)) * rng.uniform(0.5, 4.0)
        cut = sorted(set(rng.integers(0, m, size=2).tolist()) - {0, m})
        parts, prev = [], 0
        for c in cut + [m]:
            if c > prev:
                parts.append(tuple(range(prev, c)))
                prev = c
        a = kmeans_partition_cost(pts, parts)
        b = kmeans_partition_cost_centroid(pts, parts)
        assert abs(a - b) <= 1e-9 * max(1.0, a)


def test_partition_validation():
    with pytest.raises(ValueError):
        kmeans_partition_cost(TRIANGLE, [(0, 1)])
    with pytest.raises(ValueError):
        kmeans_partition_cost(TRIANGLE, [(0, 1, 2), ()])


def test_weiszfeld_equilateral_vs_grid():
    center, cost = weiszfeld_geometric_median(TRIANGLE)
    assert cost == pytest.approx(math.sqrt(3), abs=1e-4)
    # grid oracle at 1e-3 mesh over the bounding box
    xs = np.arange(0.0, 1.0, 1e-3)
    ys = np.arange(0.0, 0.9, 1e-3)
    gx, gy = np.meshgrid(xs, ys)
    grid = np.stack([gx.ravel(), gy.ravel()], axis=1)
    dist_sum = np.zeros(len(grid))
    for p in TRIANGLE:
        dist_sum += np.sqrt(((grid - p) ** 2).sum(axis=1))
    assert cost <= float(dist_sum.min()) + 1e-4


def test_weiszfeld_single_and_pair():
    c, cost = weiszfeld_geometric_median(np.array([[1.0, 2.0]]))
    assert cost == 0.0 and np.allclose(c, [1, 2])
    c, cost = weiszfeld_geometric_median(np.array([[0.0, 0.0], [4.0, 0.0]]))
    assert cost == pytest.approx(4.0, abs=1e-8)


def test_weiszfeld_optimum_at_data_point():
    # star: the center point is the geometric median, a singular iterate
    star = np.array([[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    c, cost = weiszfeld_geometric_median(star)
    assert np.allclose(c, [0.0, 0.0], atol=1e-6)
    assert cost == pytest.approx(4.0, abs=1e-6)


def test_coordinate_median_examples():
    pts = np.array([[0, 0, 0], [0, 1, 1], [1, 0, 1]])
    assert coordinate_median(pts).tolist() == [0, 0, 1]
    c, cost = best_center_continuous(pts, "l1", 1)
    assert cost == 3 and isinstance(cost, int)
    # even count with a 50/50 split resolves downward
    even = np.array([[0], [0], [1], [1]])
    assert coordinate_median(even).tolist() == [0]


def test_best_center_centroid():
    c, cost = best_center_continuous(TRIANGLE, "l2", 2)
    assert np.allclose(c, TRIANGLE.mean(axis=0))
    assert cost == pytest.approx(1.0, abs=1e-12)


def test_best_center_l1sq_heuristic_vs_bound():
    pts = np.array([[0, 0, 0], [0, 1, 1], [1, 0, 1]], dtype=float)
    c, cost = best_center_continuous(pts, "l1", 2)
    lb = l1sq_pairwise_lower_bound(pts)
    assert lb <= cost + 1e-9
    assert cost <= 3.0 + 1e-6  # coordinate median already achieves 3


def test_best_center_rejects_unknown():
    with pytest.raises(ValueError):
        best_center_continuous(TRIANGLE, "l2", 3)
    with pytest.raises(ValueError):
        best_center_continuous(np.empty((0, 2)), "l2", 2)


def test_meb_basis_vectors():
    pts = np.eye(50)
    c, r = min_enclosing_ball(pts)
    assert r == pytest.approx(math.sqrt(1 - 1 / 50), abs=1e-6)
    assert np.allclose(c, np.full(50, 1 / 50), atol=1e-4)


def test_meb_scaled_basis():
    _, r = min_enclosing_ball(2 * np.eye(50))
    assert r == pytest.approx(2 * math.sqrt(1 - 1 / 50), abs=1e-6)


def test_meb_collinear():
    _, r = min_enclosing_ball(np.array([[0.0], [1.0], [4.0]]))
    assert r == pytest.approx(2.0, abs=1e-6)


def test_separation_check_passes():
    assert separation_center_bound_check(np.eye(50), 0.1)
    assert separation_center_bound_check(2 * np.eye(50), 0.1)


def test_separation_check_preconditions():
    with pytest.raises(ValueError):
        separation_center_bound_check(np.eye(10), 0.1)   # too few points
    pts = np.eye(50) * 0.5                                # pairwise < sqrt(2)
    with pytest.raises(ValueError):
        separation_center_bound_check(pts, 0.1)
