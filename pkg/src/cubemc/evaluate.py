"""Sequence-level comparison of translational vs advanced prediction.

For every frame t >= d the evaluator predicts the frame from frame
t - d twice: once with the advanced modes disabled (every block gets
its translational search result) and once with the full mode decision.
Both policies share the translational search, which is seeded with the
zero MV only and therefore independent of neighbor decisions.

There is no entropy coder in this package, so there is no rate axis and
no BD-rate; the reported figures are prediction PSNR deltas and
per-block SAD, computed over face pixels only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from cubemc.frame_io import (
    HOLE_VALUE,
    Frame,
    SyntheticSpec,
    generate_synthetic,
    read_yuv420,
)
from cubemc.geometry import CubeLayout
from cubemc.interp import chroma_field, generate_dctif_bank, warp_block
from cubemc.motion_model import Block, MotionVector, build_correspondence_field, translational_field
from cubemc.motion_search import (
    BlockGrid,
    PredMode,
    ReferencePicture,
    SearchConfig,
    mode_decide,
    sad,
    tzs_search,
)

__all__ = [
    "EvalConfig",
    "EvalConfigError",
    "BlockResult",
    "FrameResult",
    "EvalReport",
    "run_eval",
    "emit_csv",
    "CSV_HEADER",
]

CSV_HEADER = "frame,bx,by,mode,mv_x_q2,mv_y_q2,sad_trans,sad_adv"


class EvalConfigError(ValueError):
    """Configuration problem detected before or while running."""


@dataclass(frozen=True)
class EvalConfig:
    input: str                      # path to a raw 4:2:0 file, or "synthetic"
    face_size: int
    width: int = 0                  # required for file input; derived otherwise
    height: int = 0
    block_size: int = 16
    ref_distance: int = 1
    search_range: int = 64
    lambda_: float = 0.0
    out: str = "report.csv"
    synth_velocity: tuple[float, float, float] = (2.0, 0.0, 0.0)
    synth_frames: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.block_size not in (16, 32, 64):
            raise EvalConfigError("block_size must be 16, 32 or 64")
        if self.face_size < 8:
            raise EvalConfigError("face_size must be at least 8")
        if self.ref_distance < 1:
            raise EvalConfigError("ref_distance must be at least 1")
        if self.search_range < 1:
            raise EvalConfigError("search_range must be positive")
        if self.lambda_ < 0:
            raise EvalConfigError("lambda must be non-negative")
        if self.input != "synthetic":
            if self.width != 4 * self.face_size or self.height != 3 * self.face_size:
                raise EvalConfigError(
                    "width/height must be 4x and 3x the face size for file input"
                )
        elif self.synth_frames < 1:
            raise EvalConfigError("synth_frames must be at least 1")


@dataclass
class BlockResult:
    bx: int
    by: int
    mode: PredMode
    mv: MotionVector
    sad_trans: int
    sad_adv: int


@dataclass
class FrameResult:
    poc: int
    psnr_trans: tuple[float, float, float]
    psnr_adv: tuple[float, float, float]
    blocks: list[BlockResult] = field(default_factory=list)


@dataclass
class EvalReport:
    config: EvalConfig
    frames: list[FrameResult]

    def mean_delta(self, plane: int = 0) -> float:
        """Mean advanced-minus-translational PSNR over evaluated frames."""
        deltas = [_psnr_delta(f.psnr_adv[plane], f.psnr_trans[plane]) for f in self.frames]
        return sum(deltas) / len(deltas) if deltas else 0.0

    def advanced_fraction(self) -> float:
        total = sum(len(f.blocks) for f in self.frames)
        adv = sum(
            1 for f in self.frames for b in f.blocks if b.mode is not PredMode.TRANS
        )
        return adv / total if total else 0.0


def _psnr_delta(a: float, b: float) -> float:
    if math.isinf(a) and math.isinf(b):
        return 0.0
    return a - b


def _psnr(err_sq_sum: float, count: int) -> float:
    if count == 0 or err_sq_sum == 0.0:
        return float("inf")
    return 10.0 * math.log10(255.0**2 / (err_sq_sum / count))


def _load_frames(cfg: EvalConfig) -> list[Frame]:
    if cfg.input == "synthetic":
        try:
            spec = SyntheticSpec(
                face_width=cfg.face_size,
                frames=cfg.synth_frames,
                velocity=cfg.synth_velocity,
                seed=cfg.seed,
            )
        except ValueError as exc:
            raise EvalConfigError(str(exc)) from exc
        return generate_synthetic(spec)
    return read_yuv420(cfg.input, cfg.width, cfg.height)


def _field_for(block: Block, rec_mode: PredMode, mv: MotionVector, layout: CubeLayout):
    if rec_mode is PredMode.TRANS:
        return translational_field(block, mv)
    return build_correspondence_field(block, mv, layout)


class _Predictor:
    """Accumulates one predicted picture and its squared error."""

    def __init__(self, cur: Frame):
        self.cur = cur
        self.y = np.full_like(cur.y, HOLE_VALUE)
        self.u = np.full_like(cur.u, HOLE_VALUE)
        self.v = np.full_like(cur.v, HOLE_VALUE)
        self.err = [0.0, 0.0, 0.0]
        self.count = [0, 0, 0]

    def place(self, block: Block, fld, ref: Frame, bank) -> int:
        """Warp one block (luma + chroma) into the picture; returns luma SAD."""
        x0, y0, w, h = block.x0, block.y0, block.width, block.height
        pred_y = warp_block(ref.y, fld, bank)
        self.y[y0 : y0 + h, x0 : x0 + w] = pred_y
        cfld = chroma_field(fld)
        pred_u = warp_block(ref.u, cfld, bank)
        pred_v = warp_block(ref.v, cfld, bank)
        cx, cy, cw, chh = x0 // 2, y0 // 2, w // 2, h // 2
        self.u[cy : cy + chh, cx : cx + cw] = pred_u
        self.v[cy : cy + chh, cx : cx + cw] = pred_v

        cur_y = self.cur.y[y0 : y0 + h, x0 : x0 + w]
        cur_u = self.cur.u[cy : cy + chh, cx : cx + cw]
        cur_v = self.cur.v[cy : cy + chh, cx : cx + cw]
        for i, (got, want) in enumerate(
            ((pred_y, cur_y), (pred_u, cur_u), (pred_v, cur_v))
        ):
            diff = got.astype(np.float64) - want.astype(np.float64)
            self.err[i] += float((diff * diff).sum())
            self.count[i] += diff.size
        return sad(cur_y, pred_y)

    def psnr(self) -> tuple[float, float, float]:
        return tuple(_psnr(e, c) for e, c in zip(self.err, self.count))


def run_eval(cfg: EvalConfig) -> EvalReport:
    """Run both policies over the sequence and collect the report.

    Frames are predicted from the reference ``ref_distance`` earlier;
    PSNR is accumulated over grid-covered face pixels only, identically
    for both policies.
    """
    frames = _load_frames(cfg)
    layout = CubeLayout(cfg.face_size, cfg.face_size)
    expect = (layout.canvas_height, layout.canvas_width)
    if frames and frames[0].y.shape != expect:
        raise EvalConfigError(
            f"frame size {frames[0].y.shape[::-1]} does not match face_size {cfg.face_size}"
        )
    if len(frames) <= cfg.ref_distance:
        raise EvalConfigError(
            f"need more than {cfg.ref_distance} frames for ref_distance {cfg.ref_distance}"
        )

    search = SearchConfig(search_range=cfg.search_range, lambda_=cfg.lambda_)
    bank = generate_dctif_bank()
    zero = MotionVector(0, 0)

    results = []
    for t in range(cfg.ref_distance, len(frames)):
        cur = frames[t]
        refp = ReferencePicture(frames[t - cfg.ref_distance], frames[t - cfg.ref_distance].poc)
        grid = BlockGrid(layout, cfg.block_size, poc=cur.poc)
        pol_t = _Predictor(cur)
        pol_a = _Predictor(cur)
        rows = []
        for block in grid.blocks:
            mv_t, cost_t = tzs_search(
                block, cur.y, refp, [zero], search, layout, bank,
                advanced=False, pred_for_bits=zero,
            )
            rec = mode_decide(
                block, cur.y, refp, grid, search, layout, bank,
                trans_result=(mv_t, cost_t),
            )
            sad_trans = pol_t.place(block, translational_field(block, mv_t), refp.frame, bank)
            sad_adv = pol_a.place(
                block, _field_for(block, rec.mode, rec.mv, layout), refp.frame, bank
            )
            rows.append(BlockResult(block.x0, block.y0, rec.mode, rec.mv, sad_trans, sad_adv))
        results.append(FrameResult(cur.poc, pol_t.psnr(), pol_a.psnr(), rows))
    return EvalReport(cfg, results)


def emit_csv(report: EvalReport, path) -> None:
    """Write the per-block CSV and the key=value summary next to it."""
    lines = [CSV_HEADER]
    for f in report.frames:
        for b in f.blocks:
            lines.append(
                f"{f.poc},{b.bx},{b.by},{b.mode.value},"
                f"{b.mv.dx_q2},{b.mv.dy_q2},{b.sad_trans},{b.sad_adv}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")

    def fmt(x: float) -> str:
        return "inf" if math.isinf(x) else f"{x:.3f}"

    mean_psnr = lambda sel, i: (
        sum(sel(f)[i] for f in report.frames) / len(report.frames)
        if report.frames
        else float("inf")
    )
    summary = [
        f"frames={len(report.frames)}",
        f"blocks_per_frame={len(report.frames[0].blocks) if report.frames else 0}",
    ]
    for i, plane in enumerate("yuv"):
        summary.append(f"mean_psnr_{plane}_trans={fmt(mean_psnr(lambda f: f.psnr_trans, i))}")
        summary.append(f"mean_psnr_{plane}_adv={fmt(mean_psnr(lambda f: f.psnr_adv, i))}")
        summary.append(f"mean_delta_{plane}={fmt(report.mean_delta(i))}")
    summary.append(f"advanced_fraction={report.advanced_fraction():.4f}")
    with open(str(path) + ".summary", "w") as fh:
        fh.write("\n".join(summary) + "\n")
