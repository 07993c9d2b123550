"""Tests for the DCT filter bank and fixed-point warping."""

import numpy as np
import numpy.testing as npt

from cubemc.interp import (
    chroma_field,
    fetch_block,
    generate_dctif_bank,
    sample_fractional,
    warp_block,
)
from cubemc.motion_model import Block, CorrespondenceField, MotionVector, translational_field


def oracle_sample(plane, bank, x_q6, y_q6):
    """Slow reference interpolation, written independently of interp."""
    xi, px = x_q6 // 64, x_q6 % 64
    yi, py = y_q6 // 64, y_q6 % 64
    h, w = plane.shape
    inter = []
    for r in range(8):
        yy = min(max(yi - 3 + r, 0), h - 1)
        s = 0
        for c in range(8):
            xx = min(max(xi - 3 + c, 0), w - 1)
            s += int(bank[px][c]) * int(plane[yy, xx])
        inter.append((s + 32) >> 6)
    v = sum(int(bank[py][r]) * inter[r] for r in range(8))
    return min(max((v + 32) >> 6, 0), 255)


class TestBankStructure:
    def test_published_phases_reproduced(self):
        bank = generate_dctif_bank()
        assert bank[0].tolist() == [0, 0, 0, 64, 0, 0, 0, 0]
        assert bank[16].tolist() == [-1, 4, -10, 58, 17, -5, 1, 0]
        assert bank[32].tolist() == [-1, 4, -11, 40, 40, -11, 4, -1]
        assert bank[48].tolist() == [0, 1, -5, 17, 58, -10, 4, -1]

    def test_every_phase_sums_to_64(self):
        bank = generate_dctif_bank()
        npt.assert_array_equal(bank.sum(axis=1), np.full(64, 64))

    def test_mirror_symmetry(self):
        bank = generate_dctif_bank()
        for p in range(1, 64):
            npt.assert_array_equal(bank[p], bank[64 - p][::-1])

    def test_shape_and_dtype(self):
        bank = generate_dctif_bank()
        assert bank.shape == (64, 8)
        assert bank.dtype == np.int32
        assert not bank.flags.writeable


class TestSampling:
    def test_integer_positions_copy_input(self):
        rng = np.random.default_rng(2)
        plane = rng.integers(0, 256, size=(24, 24), dtype=np.uint8)
        for x, y in [(5, 7), (0, 0), (23, 23), (11, 3)]:
            assert sample_fractional(plane, x * 64, y * 64) == plane[y, x]

    def test_constant_plane_reproduced_at_any_phase(self):
        plane = np.full((20, 20), 128, dtype=np.uint8)
        rng = np.random.default_rng(4)
        for _ in range(40):
            x = int(rng.integers(3 * 64, 16 * 64))
            y = int(rng.integers(3 * 64, 16 * 64))
            assert sample_fractional(plane, x, y) == 128

    def test_half_pel_on_ramp(self):
        # luma(x) = 2x; the half-pel sample at x = 10.5 is exactly 21
        plane = np.tile((2 * np.arange(32)).astype(np.uint8), (8, 1))
        assert sample_fractional(plane, int(10.5 * 64), 4 * 64) == 21

    def test_linear_ramp_within_one_at_every_phase(self):
        plane = np.tile((2 * np.arange(64)).astype(np.uint8), (16, 1))
        for p in range(64):
            got = sample_fractional(plane, 20 * 64 + p, 8 * 64)
            assert abs(got - (2 * 20 + 2 * p / 64)) <= 1.0

    def test_matches_reference_implementation(self):
        bank = generate_dctif_bank()
        rng = np.random.default_rng(9)
        plane = rng.integers(0, 256, size=(32, 40), dtype=np.uint8)
        for _ in range(120):
            x = int(rng.integers(-3 * 64, 43 * 64))
            y = int(rng.integers(-3 * 64, 35 * 64))
            assert sample_fractional(plane, x, y) == oracle_sample(plane, bank, x, y)

    def test_edge_clamp_on_column_constant_plane(self):
        plane = np.tile(np.arange(16, 16 + 24, dtype=np.uint8), (12, 1))
        # far left of the plane every horizontal tap clamps to column 0
        assert sample_fractional(plane, -6 * 64 + 17, 5 * 64 + 33) == 16


class TestWarpBlock:
    def test_agrees_with_scalar_sampling(self):
        rng = np.random.default_rng(13)
        plane = rng.integers(0, 256, size=(48, 48), dtype=np.uint8)
        rx = rng.integers(2 * 64, 40 * 64, size=(6, 6)).astype(np.int32)
        ry = rng.integers(2 * 64, 40 * 64, size=(6, 6)).astype(np.int32)
        field = CorrespondenceField(rx, ry, np.ones((6, 6), dtype=bool))
        got = warp_block(plane, field)
        assert got.dtype == np.uint8
        for j in range(6):
            for i in range(6):
                assert got[j, i] == sample_fractional(plane, int(rx[j, i]), int(ry[j, i]))

    def test_zero_mv_warp_is_copy(self):
        rng = np.random.default_rng(17)
        plane = rng.integers(0, 256, size=(40, 40), dtype=np.uint8)
        blk = Block(8, 8, 16, 16)
        field = translational_field(blk, MotionVector(0, 0))
        npt.assert_array_equal(warp_block(plane, field), plane[8:24, 8:24])

    def test_integer_mv_warp_is_shifted_copy(self):
        rng = np.random.default_rng(19)
        plane = rng.integers(0, 256, size=(40, 40), dtype=np.uint8)
        blk = Block(12, 12, 8, 8)
        field = translational_field(blk, MotionVector(4 * 3, 4 * -2))
        npt.assert_array_equal(warp_block(plane, field), plane[10:18, 15:23])


class TestFetchBlock:
    def test_interior_read(self):
        plane = np.arange(100, dtype=np.uint8).reshape(10, 10)
        npt.assert_array_equal(fetch_block(plane, 2, 3, 4, 2), plane[3:5, 2:6])

    def test_edge_clamped_read(self):
        plane = np.arange(16, dtype=np.uint8).reshape(4, 4)
        got = fetch_block(plane, -2, 3, 3, 2)
        npt.assert_array_equal(got, [[12, 12, 12], [12, 12, 12]])


class TestChromaField:
    def test_subsamples_and_halves(self):
        rx = np.array(
            [[-1, 9, 3, 9], [9, 9, 9, 9], [5, 9, 64, 9], [9, 9, 9, 9]], dtype=np.int32
        )
        ry = np.array(
            [[2, 9, -7, 9], [9, 9, 9, 9], [0, 9, 127, 9], [9, 9, 9, 9]], dtype=np.int32
        )
        valid = np.ones((4, 4), dtype=bool)
        valid[2, 2] = False
        sub = chroma_field(CorrespondenceField(rx, ry, valid))
        assert sub.rx_q6.tolist() == [[-1, 2], [3, 32]]
        assert sub.ry_q6.tolist() == [[1, -4], [0, 64]]
        assert sub.valid.tolist() == [[True, True], [True, False]]
        assert sub.rx_q6.dtype == np.int32
