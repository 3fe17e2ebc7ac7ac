"""Monte Carlo averaging of pointwise counters, and the exact shortcuts."""

import math

import numpy as np
import pytest

import normcount as nc

import oracles


UNIT_SQUARE = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]


def test_disk_normal_average_has_zero_variance():
    rep = nc.estimate_interior_average(nc.disk(1.0), "normals", 2000, seed=1)
    assert rep.mean == 2.0
    assert rep.std_error == 0.0
    assert rep.ci95 == (2.0, 2.0)
    assert rep.samples_used == 2000


def test_square_normal_average_is_exact_eight():
    P = nc.build_polygon(UNIT_SQUARE)
    rep = nc.estimate_interior_average(P, "normals", 1000, seed=2)
    assert rep.mean == 8.0
    assert rep.std_error == 0.0
    assert rep.exact == pytest.approx(8.0, abs=1e-12)


def test_polygon_report_carries_exact_value():
    rng = np.random.default_rng(7)
    P = oracles.random_convex_polygon(rng, 6)
    _, n = nc.exact_average_normals(P)
    rep = nc.estimate_interior_average(P, "normals", 5000, seed=3)
    assert rep.exact == pytest.approx(n, abs=1e-12)
    assert abs(rep.mean - n) < 4 * rep.std_error + 1e-12


def test_boundary_average_square_is_eight():
    P = nc.build_polygon(UNIT_SQUARE)
    rep = nc.estimate_boundary_average(P, "normals", 500, seed=4)
    assert rep.mean == 8.0
    assert rep.std_error == 0.0


def test_boundary_average_smooth_evolute_inside_is_two():
    B = nc.SmoothBody2(1.0, (0.0, 0.02))
    rep = nc.estimate_boundary_average(B, "normals", 400, seed=5)
    assert rep.mean == 2.0
    assert rep.std_error == 0.0


def test_reports_are_deterministic():
    B = nc.SmoothBody2(1.0, (0.0, 0.06), (0.02,))
    a = nc.estimate_interior_average(B, "normals", 2000, seed=11)
    b = nc.estimate_interior_average(B, "normals", 2000, seed=11)
    assert a == b
    c = nc.estimate_interior_average(B, "normals", 2000, seed=12)
    assert c.mean != a.mean  # different stream actually differs


def test_degenerate_points_are_resampled():
    # diameter counter is degenerate at the disk center; the report must
    # resample rather than silently keep flagged values
    rep = nc.average_diameters(nc.disk(1.0), 500, seed=8)
    assert rep.mean == 1.0
    assert rep.degenerate_resampled >= 0
    assert rep.samples_used == 500


def test_minimum_sample_size_enforced():
    with pytest.raises(nc.DomainError):
        nc.estimate_interior_average(nc.disk(1.0), "normals", 50, seed=0)


def test_unknown_counter_rejected():
    with pytest.raises(nc.UnsupportedCombinationError):
        nc.estimate_interior_average(nc.disk(1.0), "widgets", 500, seed=0)


def test_minkowski_counter_needs_norm_ball():
    with pytest.raises(nc.UnsupportedCombinationError):
        nc.estimate_interior_average(nc.disk(1.0), "minkowski", 500, seed=0)


def test_boundary_average_rejects_polytopes():
    with pytest.raises(nc.UnsupportedCombinationError):
        nc.estimate_boundary_average(
            nc.standard_polytope("cube"), "normals", 500, seed=0)


def test_field_map_square_is_constant_eight():
    P = nc.build_polygon(UNIT_SQUARE)
    F = nc.field_map(P, (16, 12))
    assert F.shape == (12, 16)
    inside = F[F >= 0]
    assert len(inside) > 0
    assert np.all(inside == 8)
    assert np.all((F == 8) | (F == -1))


def test_field_map_disk_marks_center_degenerate():
    F = nc.field_map(nc.disk(1.0), (41, 41))
    assert F[20, 20] == -2  # exact center cell
    inside = F[(F >= 0)]
    assert np.all(inside == 2)


def test_field_map_diameters_counter():
    F = nc.field_map(nc.disk(1.0), (21, 21), counter="diameters")
    inside = F[F >= 0]
    assert np.all(inside == 1)


def test_interior_average_matches_exact_on_cube():
    P = nc.standard_polytope("cube")
    rep = nc.estimate_interior_average(P, "normals", 2000, seed=6)
    assert rep.mean == 26.0
    assert rep.std_error == 0.0
