import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ybkit.errors import Degenerate, NotConvex
from ybkit.geometry import (
    GeoConfig,
    conjecture_probe,
    disk_cover_check,
    fuzz,
    fuzz_configs,
    random_config,
    second_intersections,
    tangent_collinearity,
    tangent_pairs,
    verify_johnson,
)

SYMMETRIC = GeoConfig.from_degrees(1, (90, 210, 330))
angles = st.floats(0, 2 * math.pi)


def on_circle(p, c, r):
    return abs(np.linalg.norm(p - c) - r)


def test_second_intersections_hand_oracle():
    # circles of equal radius through O meet again at c_i + c_j
    cfg = GeoConfig.from_degrees(2.5, (10, 130, 250))
    c = cfg.centers()
    for p, (i, j) in zip(second_intersections(cfg), ((0, 1), (0, 2), (1, 2))):
        assert np.allclose(p, c[i] + c[j], atol=1e-12)


def test_symmetric_configuration_is_equilateral():
    A, B, C = second_intersections(SYMMETRIC)
    sides = [np.linalg.norm(A - B), np.linalg.norm(B - C), np.linalg.norm(C - A)]
    assert np.allclose(sides, math.sqrt(3))
    rep = verify_johnson(SYMMETRIC)
    assert rep.circumradius == pytest.approx(1, abs=1e-15)
    assert np.allclose(rep.circumcenter, 0, atol=1e-15)


@given(st.floats(0.1, 10), angles, angles, angles)
def test_points_lie_on_their_circles(r, a, b, c):
    try:
        cfg = GeoConfig(r, (a, b, c))
        pts = second_intersections(cfg)
    except Degenerate:
        return
    centers = cfg.centers()
    for p, (i, j) in zip(pts, ((0, 1), (0, 2), (1, 2))):
        assert on_circle(p, centers[i], r) <= 1e-12 * r * 10
        assert on_circle(p, centers[j], r) <= 1e-12 * r * 10


def test_johnson_center_is_sum_of_centers():
    cfg = GeoConfig.from_degrees(2.5, (10, 130, 250))
    rep = verify_johnson(cfg)
    assert np.allclose(rep.circumcenter, sum(cfg.centers()), atol=1e-12)
    assert rep.johnson_residual <= 1e-9 * cfg.r


def test_degenerate_configurations():
    with pytest.raises(Degenerate) as err:
        second_intersections(GeoConfig.from_degrees(1, (40, 40, 100)))
    assert err.value.pair == [0, 1]
    with pytest.raises(Degenerate):
        verify_johnson(GeoConfig.from_degrees(1, (0, 360, 100)))
    with pytest.raises(ValueError):
        GeoConfig(-1, (0, 1, 2))


def test_tangent_pair_is_a_limit_case():
    cfg = GeoConfig.from_degrees(1, (20, 140, 200))
    assert tangent_pairs(cfg) == [[0, 2]]
    rep = tangent_collinearity(cfg)
    assert np.allclose(rep.points[1], 0, atol=1e-15)
    assert rep.johnson_residual <= 1e-9
    assert rep.collinearity_residual <= 1e-6


def test_symmetric_tangent_points_are_ideal():
    rep = tangent_collinearity(SYMMETRIC)
    for P in rep.tangent_points:
        assert abs(P[2]) < 1e-12
    assert rep.collinearity_residual <= 1e-6


def test_collinearity_example():
    rep = tangent_collinearity(GeoConfig.from_degrees(1, (20, 150, 260)))
    assert rep.collinearity_residual <= 1e-6
    P, Q, R = (p[:2] / p[2] for p in rep.tangent_points)
    area = (Q - P)[0] * (R - P)[1] - (Q - P)[1] * (R - P)[0]
    assert abs(area) <= 1e-9 * max(np.linalg.norm(Q - P), np.linalg.norm(R - P)) ** 2


def test_tangent_points_lie_on_tangent_and_chord():
    cfg = GeoConfig.from_degrees(1.5, (15, 100, 230))
    rep = tangent_collinearity(cfg)
    A, B, C = rep.points
    chords = [(A, B), (A, C), (B, C)]
    for P, c, (u, v) in zip(rep.tangent_points, cfg.centers(), chords):
        p = P[:2] / P[2]
        assert abs(np.dot(p, c)) <= 1e-9 * np.linalg.norm(p) * np.linalg.norm(c)
        d1, d2 = v - u, p - u
        assert abs(d1[0] * d2[1] - d1[1] * d2[0]) <= 1e-9 * np.linalg.norm(d1) * np.linalg.norm(d2)


@given(angles, st.floats(-5, 5), st.floats(-5, 5))
def test_residuals_invariant_under_rigid_motion(angle, dx, dy):
    cfg = random_config(random.Random(11))
    moved = cfg.rotated(angle).translated(dx, dy)
    base = tangent_collinearity(cfg)
    other = tangent_collinearity(moved)
    assert abs(base.collinearity_residual - other.collinearity_residual) <= 1e-6
    assert other.johnson_residual <= 1e-9 * cfg.r


def test_fuzz_corpus():
    out = fuzz(1000, seed=0)
    assert out["max_relative_johnson_residual"] <= 1e-9
    assert out["max_collinearity_residual"] <= 1e-6


def test_fuzz_is_deterministic():
    assert fuzz_configs(5, 3) == fuzz_configs(5, 3)
    assert fuzz_configs(5, 3) != fuzz_configs(5, 4)
    assert fuzz_configs(5, 3)[2] == fuzz_configs(3, 3)[2]


def test_disk_cover_symmetric():
    out = disk_cover_check(SYMMETRIC, 10_000)
    assert out["contained"]
    assert out["worst_margin"] >= -1e-12


def test_disk_cover_zero_samples():
    out = disk_cover_check(SYMMETRIC, 0)
    assert out["contained"] and out["worst_margin"] == math.inf


def test_disk_cover_reports_when_circumcenter_disk_misses():
    # centers crowd into a half-plane: O lies outside the circumcenter disk,
    # yet one of the original disks covers every lens
    cfg = GeoConfig.from_degrees(1, (0, 40, 80))
    out = disk_cover_check(cfg, 2000, seed=1)
    assert not out["contained"]
    assert out["any_candidate_contains"]
    assert out["candidate_margins"]["disk1"] >= -1e-12
    assert out == disk_cover_check(cfg, 2000, seed=1)


def test_circle_probe():
    out = conjecture_probe({"ellipse": [1, 1]})
    assert out["ratio_low"] == pytest.approx(math.pi, abs=1e-10)
    assert out["ratio_high"] == pytest.approx(math.pi, abs=1e-10)
    assert out["ok"]
    assert out["quadratic"]["discriminant"] == pytest.approx(math.pi**2 - 4 * math.pi)
    assert out["quadratic"]["roots"] == []


@pytest.mark.parametrize("a,b", [(2, 1), (3, 0.5), (1.2, 1.1)])
def test_ellipse_perimeter_against_two_rules(a, b):
    L = conjecture_probe({"ellipse": [a, b]})["L"]
    assert L == pytest.approx(oracles.ellipse_perimeter(a, b), rel=1e-10)
    assert L == pytest.approx(oracles.ellipse_perimeter_gauss(a, b), rel=1e-10)


def test_square_probe():
    out = conjecture_probe({"polygon": [[0, 0], [1, 0], [1, 1], [0, 1]]})
    assert out["L"] == 4
    assert out["D"] == pytest.approx(math.sqrt(2), rel=1e-12)
    assert out["d"] == pytest.approx(1, rel=1e-9)
    assert out["ratio_low"] == pytest.approx(2 * math.sqrt(2))
    # 2.83 <= pi <= 4, so the two-sided inequality is satisfied
    assert out["ok"]


def test_polygon_orientation_and_centroid():
    cw = conjecture_probe({"polygon": [[0, 0], [0, 1], [2, 0]]})
    ccw = conjecture_probe({"polygon": [[0, 0], [2, 0], [0, 1]]})
    assert cw["centroid"] == pytest.approx([2 / 3, 1 / 3])
    assert cw["D"] == pytest.approx(ccw["D"]) and cw["d"] == pytest.approx(ccw["d"])
    assert cw["area"] == pytest.approx(1)


def test_regular_polygon_approaches_circle():
    k = 360
    poly = [[math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)] for i in range(k)]
    out = conjecture_probe({"polygon": poly})
    assert out["ratio_low"] == pytest.approx(math.pi, rel=1e-4)


def test_non_convex_inputs():
    with pytest.raises(NotConvex):
        conjecture_probe({"polygon": [[0, 0], [2, 0], [1, 0.2], [1, 1]]})
    with pytest.raises(NotConvex):
        conjecture_probe({"polygon": [[0, 0], [1, 1], [1, 0], [0, 1]]})
    with pytest.raises(NotConvex):
        conjecture_probe({"polygon": [[0, 0], [1, 0]]})
    with pytest.raises(ValueError):
        conjecture_probe({"ellipse": [1, 2]})
