"""Fractional-sample interpolation with a 64-phase 8-tap filter bank.

Correspondence fields address the reference picture at 1/64-pel
resolution, so plain quarter-pel filters are not enough.  The bank here
extends the standard quarter/half-pel 8-tap filters to all 64 phases:
a DCT-derived kernel supplies smooth intermediate responses and a cubic
spline correction pins the published quarter-, half- and integer-phase
taps exactly.  All filtering is integer-only: 6-bit coefficients, one
horizontal and one vertical pass, each with a (+32) >> 6 stage.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline

from cubemc.motion_model import CorrespondenceField

__all__ = [
    "TAPS",
    "PHASES",
    "generate_dctif_bank",
    "sample_fractional",
    "warp_block",
    "fetch_block",
    "chroma_field",
]

TAPS = 8
PHASES = 64
_GAIN = 64  # coefficient sum of every phase

# Published 8-tap luma filters that the generated bank must contain
# verbatim (integer, quarter and half positions).
_IDENT0 = np.array([0, 0, 0, 64, 0, 0, 0, 0], dtype=np.float64) / 64.0
_IDENT1 = np.array([0, 0, 0, 0, 64, 0, 0, 0], dtype=np.float64) / 64.0
_QUARTER = np.array([-1, 4, -10, 58, 17, -5, 1, 0], dtype=np.float64) / 64.0
_HALF = np.array([-1, 4, -11, 40, 40, -11, 4, -1], dtype=np.float64) / 64.0

_BANK: np.ndarray | None = None


def _dct_row(t: float) -> np.ndarray:
    """Ideal DCT interpolation weights for a sample at position t.

    Expresses the 8 integer samples in the DCT basis and re-evaluates
    the series at t; row sums are exactly 1 for any t.
    """
    k = np.arange(TAPS)
    w = np.full(TAPS, 1.0 / TAPS)
    for n in range(1, TAPS):
        w += (
            (2.0 / TAPS)
            * np.cos(np.pi * n * (2 * k + 1) / (2 * TAPS))
            * np.cos(np.pi * n * (2 * t + 1) / (2 * TAPS))
        )
    return w


def generate_dctif_bank() -> np.ndarray:
    """The (64, 8) int32 coefficient bank, built once and cached.

    Construction: raw DCT rows for phases p/64 around the center tap,
    plus a natural cubic spline through the residuals of the five known
    filters (phases 0, 16, 32, 48 and the next integer), so those phases
    reproduce the published taps exactly after rounding.  Rows are then
    symmetrized so phase p mirrors phase 64 - p, rounded half away from
    zero, and sum-corrected to 64 on the largest-magnitude tap.
    """
    global _BANK
    if _BANK is not None:
        return _BANK

    knots = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    anchors = np.vstack([_IDENT0, _QUARTER, _HALF, _QUARTER[::-1], _IDENT1])
    resid = anchors - np.vstack([_dct_row(3.0 + a) for a in knots])
    corr = CubicSpline(knots, resid, axis=0, bc_type="natural")

    alphas = np.arange(PHASES) / PHASES
    raw = np.vstack([_dct_row(3.0 + a) for a in alphas]) + corr(alphas)

    # enforce w[p] == w[64 - p] reversed, with the identity as phase 64
    ext = np.vstack([raw, _IDENT1])
    sym = (raw + ext[::-1][:PHASES][:, ::-1]) / 2.0

    scaled = sym * _GAIN
    bank = (np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)).astype(np.int32)
    for p in range(PHASES):
        diff = _GAIN - int(bank[p].sum())
        if diff:
            big = np.flatnonzero(np.abs(bank[p]) == np.abs(bank[p]).max())
            idx = big[0] if (p <= PHASES // 2 or len(big) == 1) else big[-1]
            bank[p, idx] += diff

    bank.flags.writeable = False
    _BANK = bank
    return bank


def _warp_arrays(
    plane: np.ndarray, rx_q6: np.ndarray, ry_q6: np.ndarray, bank: np.ndarray
) -> np.ndarray:
    """Separable 8x8-tap filtering at 1/64-pel positions, int32 math.

    Out-of-plane taps clamp to the nearest edge pixel.  The plane is
    edge-padded once and all 64 neighborhood samples are gathered in a
    single indexing step; base positions further out than one full tap
    span are clipped first, which cannot change the clamped result.
    """
    src = plane.astype(np.int32, copy=False)
    height, width = src.shape

    xi = np.clip(rx_q6 >> 6, -TAPS + 3, width + TAPS - 4)
    yi = np.clip(ry_q6 >> 6, -TAPS + 3, height + TAPS - 4)
    ch = bank[rx_q6 & 63]  # (..., 8)
    cv = bank[ry_q6 & 63]

    pad = TAPS + 1
    padded = np.pad(src, ((pad, pad + 1), (pad, pad + 1)), mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (TAPS, TAPS))
    # window start = tap base (xi - 3) shifted by the padding
    sel = windows[yi + pad - TAPS // 2 + 1, xi + pad - TAPS // 2 + 1]
    rows = (np.einsum("...rc,...c->...r", sel, ch, dtype=np.int32) + 32) >> 6
    out = (np.einsum("...r,...r->...", cv, rows, dtype=np.int32) + 32) >> 6
    return np.clip(out, 0, 255).astype(np.uint8)


def sample_fractional(
    plane: np.ndarray, x_q6: int, y_q6: int, bank: np.ndarray | None = None
) -> int:
    """One interpolated sample at a 1/64-pel position (edge-clamped)."""
    if bank is None:
        bank = generate_dctif_bank()
    rx = np.full((1, 1), x_q6, dtype=np.int64)
    ry = np.full((1, 1), y_q6, dtype=np.int64)
    return int(_warp_arrays(plane, rx, ry, bank)[0, 0])


def warp_block(
    plane: np.ndarray, field: CorrespondenceField, bank: np.ndarray | None = None
) -> np.ndarray:
    """Predict a block from ``plane`` at the field's reference positions.

    Taps falling outside the plane are clamped to the nearest edge
    pixel; output is uint8 in [0, 255].
    """
    if bank is None:
        bank = generate_dctif_bank()
    return _warp_arrays(
        plane, field.rx_q6.astype(np.int64), field.ry_q6.astype(np.int64), bank
    )


def fetch_block(plane: np.ndarray, x0: int, y0: int, width: int, height: int) -> np.ndarray:
    """Integer-pel block read with edge clamp (no filtering)."""
    ys = np.clip(np.arange(y0, y0 + height), 0, plane.shape[0] - 1)
    xs = np.clip(np.arange(x0, x0 + width), 0, plane.shape[1] - 1)
    return plane[np.ix_(ys, xs)]


def _halve_q6(v: np.ndarray) -> np.ndarray:
    # v/2 in 1/64-pel units, rounded half away from zero
    return (np.sign(v) * ((np.abs(v.astype(np.int64)) + 1) // 2)).astype(np.int32)


def chroma_field(field: CorrespondenceField) -> CorrespondenceField:
    """Luma field adapted to half-resolution chroma planes.

    Keeps every second row and column and halves the coordinates, so
    chroma follows the luma correspondence without a second transport.
    """
    return CorrespondenceField(
        _halve_q6(field.rx_q6[::2, ::2]),
        _halve_q6(field.ry_q6[::2, ::2]),
        field.valid[::2, ::2].copy(),
    )
