"""Per-pixel motion correspondence derived from one block motion vector.

A block carries a single MV measured at its center in the unfold plane.
Because most scene motion is uniform on the sphere rather than in the
projected plane, the true displacement of off-center pixels differs from
the center MV.  The transport here maps the center displacement onto the
sphere, applies it to each pixel's sphere position, and maps the result
back to the unfold plane, yielding one fractional reference coordinate
per pixel.

Fixed-point conventions: MVs are quarter-pel integers, correspondence
fields are 1/64-pel integers, both rounded half away from zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from cubemc.geometry import (
    CubeLayout,
    Face,
    _face_of_arrays,
    face_of,
    sphere_to_unfold,
    unfold_to_sphere,
)

__all__ = [
    "MotionVector",
    "Block",
    "CorrespondenceField",
    "transport_point",
    "build_correspondence_field",
    "translational_field",
    "transport_mv_predictor",
    "round_half_away",
]

MV_UNIT = 4        # quarter-pel positions per pixel
FIELD_UNIT = 64    # 1/64-pel positions per pixel

# |s1 - s0 + s2| below this (times face_width) cannot be projected back
# to the cube reliably; affected pixels fall back to translation.
DEGENERATE_NORM = 1e-6


class MotionVector(NamedTuple):
    """2-D displacement in the unfold plane, quarter-pel units."""

    dx_q2: int
    dy_q2: int


class Block(NamedTuple):
    """Pixel-aligned block; must lie inside a single face rectangle."""

    x0: int
    y0: int
    width: int
    height: int

    @property
    def center(self) -> tuple[float, float]:
        """Continuous block center under the pixel-center convention."""
        return (self.x0 + (self.width - 1) / 2.0, self.y0 + (self.height - 1) / 2.0)


@dataclass
class CorrespondenceField:
    """Per-pixel reference coordinates for one block, 1/64-pel integers.

    ``valid`` is False only where the sphere transport degenerated and
    the entry was filled with the translational fallback.
    """

    rx_q6: np.ndarray
    ry_q6: np.ndarray
    valid: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.rx_q6.shape


def round_half_away(x):
    """Round to nearest integer, halves away from zero (sign-symmetric)."""
    x = np.asarray(x)
    return np.copysign(np.floor(np.abs(x) + 0.5), x).astype(np.int64)


def block_face(block: Block, layout: CubeLayout):
    """The face containing the whole block; raises if it straddles."""
    xs = np.array([block.x0, block.x0 + block.width - 1], dtype=np.float64)
    ys = np.array([block.y0, block.y0 + block.height - 1], dtype=np.float64)
    corners = _face_of_arrays(xs[[0, 1, 0, 1]], ys[[0, 0, 1, 1]], layout)
    if corners[0] < 0 or np.any(corners != corners[0]):
        raise ValueError("block must lie inside a single face")
    return Face(int(corners[0]))


def _transport_from_sphere(s0, s1, s2x, s2y, s2z, layout: CubeLayout):
    s3x = s1[0] - s0[0] + s2x
    s3y = s1[1] - s0[1] + s2y
    s3z = s1[2] - s0[2] + s2z

    norm = np.sqrt(s3x * s3x + s3y * s3y + s3z * s3z)
    ok = norm >= DEGENERATE_NORM * layout.face_width
    # keep sphere_to_unfold total: substitute a unit ray where degenerate
    s3x = np.where(ok, s3x, 1.0)
    s3y = np.where(ok, s3y, 0.0)
    s3z = np.where(ok, s3z, 0.0)
    _, x3, y3 = sphere_to_unfold(s3x, s3y, s3z, layout)
    return x3, y3, ok


def _transport_arrays(u0, u1, x2, y2, layout: CubeLayout):
    """Vectorized sphere-uniform transport; returns (x3, y3, ok).

    Entries with ok == False hold unusable coordinates and must be
    replaced by the caller's fallback.
    """
    s0 = unfold_to_sphere(u0[0], u0[1], layout)
    s1 = unfold_to_sphere(u1[0], u1[1], layout)
    s2x, s2y, s2z = unfold_to_sphere(x2, y2, layout)
    return _transport_from_sphere(s0, s1, s2x, s2y, s2z, layout)


@lru_cache(maxsize=4096)
def _block_sphere_grid(x0: int, y0: int, width: int, height: int, layout: CubeLayout):
    """Sphere positions of a block's pixel grid (cached; blocks recur
    across search candidates and frames)."""
    ys, xs = np.mgrid[y0 : y0 + height, x0 : x0 + width]
    grid = unfold_to_sphere(xs.astype(np.float64), ys.astype(np.float64), layout)
    for axis in grid:
        axis.flags.writeable = False
    return grid


def transport_point(u0, u1, u2, layout: CubeLayout) -> tuple[float, float]:
    """Transport the center displacement u0 -> u1 to the pixel u2.

    All three inputs are on-face unfold points.  The result may land on
    a different face than u2.  Raises ``ValueError`` when the transported
    sphere point collapses toward the origin.
    """
    x3, y3, ok = _transport_arrays(
        u0, u1, np.float64(u2[0]), np.float64(u2[1]), layout
    )
    if not np.all(ok):
        raise ValueError("degenerate transport")
    if np.ndim(x3) == 0:
        return float(x3), float(y3)
    return x3, y3


def build_correspondence_field(
    block: Block, mv: MotionVector, layout: CubeLayout
) -> CorrespondenceField:
    """Reference coordinates for every pixel of ``block`` under ``mv``.

    The center MV is applied at quarter-pel precision; per-pixel results
    are quantized to 1/64 pel.  Degenerate pixels fall back to plain
    translation and are flagged invalid.
    """
    block_face(block, layout)
    u0 = block.center
    u1 = (u0[0] + mv.dx_q2 / MV_UNIT, u0[1] + mv.dy_q2 / MV_UNIT)
    if face_of(u1[0], u1[1], layout) is None:
        raise ValueError("invalid center MV")

    s0 = unfold_to_sphere(u0[0], u0[1], layout)
    s1 = unfold_to_sphere(u1[0], u1[1], layout)
    s2x, s2y, s2z = _block_sphere_grid(block.x0, block.y0, block.width, block.height, layout)
    x3, y3, ok = _transport_from_sphere(s0, s1, s2x, s2y, s2z, layout)

    ys, xs = np.mgrid[
        block.y0 : block.y0 + block.height, block.x0 : block.x0 + block.width
    ]
    rx = round_half_away(x3 * FIELD_UNIT)
    ry = round_half_away(y3 * FIELD_UNIT)
    # translational fallback is exact in integer 1/64-pel arithmetic
    fx = xs.astype(np.int64) * FIELD_UNIT + mv.dx_q2 * (FIELD_UNIT // MV_UNIT)
    fy = ys.astype(np.int64) * FIELD_UNIT + mv.dy_q2 * (FIELD_UNIT // MV_UNIT)
    rx = np.where(ok, rx, fx)
    ry = np.where(ok, ry, fy)
    return CorrespondenceField(
        rx.astype(np.int32), ry.astype(np.int32), np.asarray(ok, dtype=bool)
    )


def translational_field(block: Block, mv: MotionVector) -> CorrespondenceField:
    """Classic block MC: every pixel shares the center MV."""
    ys, xs = np.mgrid[
        block.y0 : block.y0 + block.height, block.x0 : block.x0 + block.width
    ]
    rx = xs.astype(np.int64) * FIELD_UNIT + mv.dx_q2 * (FIELD_UNIT // MV_UNIT)
    ry = ys.astype(np.int64) * FIELD_UNIT + mv.dy_q2 * (FIELD_UNIT // MV_UNIT)
    return CorrespondenceField(
        rx.astype(np.int32), ry.astype(np.int32), np.ones(xs.shape, dtype=bool)
    )


def transport_mv_predictor(
    nb_center: tuple[float, float],
    nb_mv: MotionVector,
    cur_center: tuple[float, float],
    layout: CubeLayout,
) -> MotionVector:
    """Carry a neighbor's MV to the current block center.

    The neighbor's displacement is transported through the sphere to the
    current center and re-rounded to the quarter-pel grid.  Degenerate
    transport returns ``nb_mv`` unchanged.
    """
    u1 = (nb_center[0] + nb_mv.dx_q2 / MV_UNIT, nb_center[1] + nb_mv.dy_q2 / MV_UNIT)
    x3, y3, ok = _transport_arrays(
        nb_center, u1, np.float64(cur_center[0]), np.float64(cur_center[1]), layout
    )
    if not bool(ok):
        return nb_mv
    dx = int(round_half_away((float(x3) - cur_center[0]) * MV_UNIT))
    dy = int(round_half_away((float(y3) - cur_center[1]) * MV_UNIT))
    return MotionVector(dx, dy)
