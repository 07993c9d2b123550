"""Unit and property tests for the unfold/cube/sphere transforms."""

import math

import numpy as np
import pytest

from cubemc.geometry import (
    CubeLayout,
    Face,
    cube_to_sphere,
    cube_to_unfold,
    face_of,
    sphere_to_cube,
    sphere_to_unfold,
    unfold_to_cube,
    unfold_to_sphere,
)

L64 = CubeLayout(64, 64)


def oracle_unfold_to_cube(x_u, y_u, w):
    """Scalar reference: the per-face maps written out case by case."""
    h = w
    if 0 <= x_u < w and 0 <= y_u < h:
        return (x_u - w / 2, y_u - h / 2, h / 2)                      # TOP
    if 0 <= x_u < w and h <= y_u < 2 * h:
        return (x_u - w / 2, h / 2, 3 * h / 2 - y_u)                  # FRONT
    if 0 <= x_u < w and 2 * h <= y_u < 3 * h:
        return (x_u - w / 2, 5 * h / 2 - y_u, -h / 2)                 # BOTTOM
    if w <= x_u < 2 * w and h <= y_u < 2 * h:
        return (h / 2, 3 * w / 2 - x_u, 3 * h / 2 - y_u)              # RIGHT
    if 2 * w <= x_u < 3 * w and h <= y_u < 2 * h:
        return (5 * w / 2 - x_u, -h / 2, 3 * h / 2 - y_u)             # REAR
    if 3 * w <= x_u < 4 * w and h <= y_u < 2 * h:
        return (-h / 2, x_u - 7 * w / 2, 3 * h / 2 - y_u)             # LEFT
    raise AssertionError("oracle input off-face")


def sample_on_face_points(n, layout, rng, margin=1e-6):
    """Uniform points on faces, at least `margin` px from rect borders."""
    w = layout.face_width
    faces = rng.integers(0, 6, size=n)
    xs = np.empty(n)
    ys = np.empty(n)
    for f in Face:
        m = faces == f
        x0, y0, x1, y1 = layout.face_rect(f)
        xs[m] = rng.uniform(x0 + margin, x1 - margin, size=m.sum())
        ys[m] = rng.uniform(y0 + margin, y1 - margin, size=m.sum())
    return faces.astype(np.int8), xs, ys


class TestFaceOf:
    def test_front_center(self):
        assert face_of(32, 96, L64) is Face.FRONT

    def test_corner_hole_is_none(self):
        assert face_of(200, 10, L64) is None

    def test_half_open_boundary(self):
        assert face_of(63.999, 63.999, L64) is Face.TOP
        assert face_of(64.0, 64.0, L64) is Face.RIGHT

    def test_out_of_canvas(self):
        assert face_of(-0.001, 96, L64) is None
        assert face_of(500, 96, L64) is None

    def test_array_input(self):
        f = face_of(np.array([32.0, 200.0]), np.array([96.0, 10.0]), L64)
        assert f.tolist() == [Face.FRONT, -1]

    def test_rects_cover_exactly_six_cells(self):
        rng = np.random.default_rng(7)
        x = rng.uniform(0, 256, 5000)
        y = rng.uniform(0, 192, 5000)
        f = face_of(x, y, L64)
        on = f >= 0
        # every on-face point is inside its face rect
        for fid in Face:
            m = f == fid
            x0, y0, x1, y1 = L64.face_rect(fid)
            assert np.all((x[m] >= x0) & (x[m] < x1))
            assert np.all((y[m] >= y0) & (y[m] < y1))
        # holes are the two 3x1 corner strips
        hole = ~on
        assert np.all((x[hole] >= 64) | (y[hole] < 64) | (y[hole] >= 128))


class TestUnfoldToCube:
    def test_front_center(self):
        assert unfold_to_cube(32, 96, L64) == (0, 32, 0)

    def test_right_face_point(self):
        assert unfold_to_cube(96, 96, L64) == (32, 0, 0)

    def test_front_off_center(self):
        assert unfold_to_cube(48, 80, L64) == (16, 32, 16)

    def test_matches_scalar_oracle(self):
        rng = np.random.default_rng(11)
        _, xs, ys = sample_on_face_points(500, L64, rng)
        xc, yc, zc = unfold_to_cube(xs, ys, L64)
        for i in range(len(xs)):
            exp = oracle_unfold_to_cube(xs[i], ys[i], 64)
            assert (xc[i], yc[i], zc[i]) == pytest.approx(exp, abs=1e-12)

    def test_off_face_raises(self):
        with pytest.raises(ValueError, match="not on a face"):
            unfold_to_cube(200, 10, L64)

    def test_dominant_coordinate_is_half_width(self):
        rng = np.random.default_rng(13)
        _, xs, ys = sample_on_face_points(2000, L64, rng)
        xc, yc, zc = unfold_to_cube(xs, ys, L64)
        m = np.maximum(np.maximum(np.abs(xc), np.abs(yc)), np.abs(zc))
        assert np.all(m == 32.0)


class TestCubeToUnfold:
    def test_front_center_inverse(self):
        assert cube_to_unfold(0, 32, 0, L64) == (Face.FRONT, 32, 96)

    def test_rear_row_inverse(self):
        assert cube_to_unfold(0, -32, 0, L64) == (Face.REAR, 160, 96)

    def test_front_off_center_inverse(self):
        assert cube_to_unfold(16, 32, 16, L64) == (Face.FRONT, 48, 80)

    def test_interior_point_raises(self):
        with pytest.raises(ValueError, match="not on surface"):
            cube_to_unfold(1, 2, 3, L64)

    def test_edge_tie_prefers_priority_order(self):
        # +y/+z edge: TOP wins over FRONT
        f, _, _ = cube_to_unfold(0, 32, 32, L64)
        assert f is Face.TOP
        # +x/+y edge: FRONT wins over RIGHT
        f, _, _ = cube_to_unfold(32, 32, 0, L64)
        assert f is Face.FRONT


class TestSphereHops:
    def test_face_center_ray_fixed(self):
        assert cube_to_sphere(0, 32, 0, L64) == (0, 32, 0)

    def test_generic_point(self):
        s = cube_to_sphere(16, 32, 16, L64)
        r = 32 / math.sqrt(16**2 + 32**2 + 16**2)
        assert s == pytest.approx((16 * r, 32 * r, 16 * r), abs=1e-12)
        assert s == pytest.approx((13.0639, 26.1279, 13.0639), abs=1e-3)

    def test_negative_axis_keeps_sign(self):
        assert cube_to_sphere(-32, 0, 0, L64) == (-32, 0, 0)

    def test_zero_vector_raises(self):
        with pytest.raises(ValueError, match="degenerate"):
            cube_to_sphere(0, 0, 0, L64)
        with pytest.raises(ValueError, match="degenerate"):
            sphere_to_cube(0, 0, 0, L64)

    def test_sphere_to_cube_roundtrip(self):
        c = sphere_to_cube(13.0639, 26.1279, 13.0639, L64)
        assert c == pytest.approx((16, 32, 16), abs=1e-3)

    def test_sphere_to_cube_off_sphere_input(self):
        c = sphere_to_cube(5.8651, 15.3988, 0, L64)
        assert c == pytest.approx((12.188, 32, 0), abs=1e-3)


class TestComposites:
    def test_unfold_to_sphere_center(self):
        assert unfold_to_sphere(32, 96, L64) == (0, 32, 0)

    def test_sphere_to_unfold_center(self):
        assert sphere_to_unfold(0, 32, 0, L64) == (Face.FRONT, 32, 96)

    def test_unfold_to_sphere_generic(self):
        s = unfold_to_sphere(48, 80, L64)
        assert s == pytest.approx((13.0639, 26.1279, 13.0639), abs=1e-3)

    def test_face_centers_map_to_axes(self):
        expected = {
            Face.TOP: (0, 0, 32),
            Face.FRONT: (0, 32, 0),
            Face.BOTTOM: (0, 0, -32),
            Face.RIGHT: (32, 0, 0),
            Face.REAR: (0, -32, 0),
            Face.LEFT: (-32, 0, 0),
        }
        for f, axis in expected.items():
            cx, cy = L64.face_center(f)
            assert unfold_to_sphere(cx, cy, L64) == pytest.approx(axis, abs=1e-12)


class TestRoundTripProperties:
    def test_round_trip_100k(self):
        rng = np.random.default_rng(101)
        faces, xs, ys = sample_on_face_points(100_000, L64, rng)
        f2, x2, y2 = sphere_to_unfold(*unfold_to_sphere(xs, ys, L64), L64)
        err = np.maximum(np.abs(x2 - xs), np.abs(y2 - ys))
        assert err.max() < 1e-9 * 64
        assert np.array_equal(f2, faces)

    def test_sphere_norm(self):
        rng = np.random.default_rng(103)
        _, xs, ys = sample_on_face_points(10_000, L64, rng)
        sx, sy, sz = unfold_to_sphere(xs, ys, L64)
        r = np.sqrt(sx * sx + sy * sy + sz * sz)
        assert np.abs(r - 32.0).max() < 1e-9 * 64

    def test_collinearity_cube_sphere(self):
        rng = np.random.default_rng(107)
        _, xs, ys = sample_on_face_points(10_000, L64, rng)
        c = np.stack(unfold_to_cube(xs, ys, L64))
        s = np.stack(cube_to_sphere(*c, L64))
        cross = np.cross(c.T, s.T)
        sin_angle = np.linalg.norm(cross, axis=1) / (
            np.linalg.norm(c.T, axis=1) * np.linalg.norm(s.T, axis=1)
        )
        assert sin_angle.max() < 1e-12

    def test_other_layout_sizes(self):
        for w in (8, 32, 128):
            layout = CubeLayout(w, w)
            rng = np.random.default_rng(w)
            faces, xs, ys = sample_on_face_points(5_000, layout, rng)
            f2, x2, y2 = sphere_to_unfold(*unfold_to_sphere(xs, ys, layout), layout)
            err = np.maximum(np.abs(x2 - xs), np.abs(y2 - ys))
            assert err.max() < 1e-9 * w
            assert np.array_equal(f2, faces)


class TestLayoutValidation:
    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            CubeLayout(64, 32)

    def test_rejects_tiny_faces(self):
        with pytest.raises(ValueError, match=">= 8"):
            CubeLayout(4, 4)

    def test_rect_disjointness(self):
        rects = [L64.face_rect(f) for f in Face]
        for i, a in enumerate(rects):
            for b in rects[i + 1:]:
                disjoint = a[2] <= b[0] or b[2] <= a[0] or a[3] <= b[1] or b[3] <= a[1]
                assert disjoint
        for x0, y0, x1, y1 in rects:
            assert 0 <= x0 < x1 <= 256 and 0 <= y0 < y1 <= 192
