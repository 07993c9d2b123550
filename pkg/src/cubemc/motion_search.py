"""Block motion estimation, predictor derivation and mode decision.

The estimator is a staged zone search.  Integer-pel stages (predictors,
expanding diamond, optional raster, diamond refinement) rank candidates
with plain translational SAD, which is cheap and good enough to locate
the basin.  The final quarter-pel stage re-ranks with the true cost of
the requested motion model: for the advanced model that means building
the per-pixel correspondence field and warping through the filter bank
for every candidate.

Mode decision compares three flavors per block: translational,
advanced-merge (a transported neighbor MV, no search, no MV-difference
bits) and advanced-AMVP (searched, predictor-differential bits).
Decided blocks are written into the grid so later blocks can use them
as merge/AMVP neighbors, which fixes the scan order to raster order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from cubemc.frame_io import Frame
from cubemc.geometry import CubeLayout, face_of
from cubemc.interp import fetch_block, generate_dctif_bank, warp_block
from cubemc.motion_model import (
    Block,
    MotionVector,
    build_correspondence_field,
    round_half_away,
    translational_field,
    transport_mv_predictor,
)

__all__ = [
    "PredMode",
    "SearchConfig",
    "BlockRecord",
    "BlockGrid",
    "ReferencePicture",
    "sad",
    "mv_bits",
    "tzs_search",
    "merge_candidate",
    "amvp_predictor",
    "scale_mv",
    "mode_decide",
]

MV_CLIP = 1 << 15  # q2 component range is [-2^15, 2^15 - 1]


class PredMode(Enum):
    TRANS = "trans"
    ADV_MERGE = "adv_merge"
    ADV_AMVP = "adv_amvp"


@dataclass(frozen=True)
class SearchConfig:
    search_range: int = 64          # pixels, integer stages
    raster_step: int = 8            # pixels, stage-3 grid
    refine_window_q2: int = 8       # quarter-pel units, stage-5 window
    lambda_: float = 0.0            # weight of the MV-bits proxy

    def __post_init__(self):
        if self.search_range <= 0 or self.raster_step <= 0 or self.refine_window_q2 <= 0:
            raise ValueError("search parameters must be positive")
        if self.lambda_ < 0:
            raise ValueError("lambda must be non-negative")


@dataclass
class BlockRecord:
    mode: PredMode
    mv: MotionVector
    ref_index: int
    cost: float


@dataclass
class ReferencePicture:
    frame: Frame
    poc: int


class BlockGrid:
    """Raster-ordered tiling of the face areas into square blocks.

    Only blocks fully inside a single face are part of the grid;
    partial blocks at face borders and the corner holes are skipped.
    """

    def __init__(self, layout: CubeLayout, block_size: int, poc: int = 0):
        if block_size not in (16, 32, 64):
            raise ValueError("block_size must be 16, 32 or 64")
        self.layout = layout
        self.block_size = block_size
        self.poc = poc
        self.records: dict[tuple[int, int], BlockRecord] = {}
        self.blocks: list[Block] = []
        bs = block_size
        for y0 in range(0, layout.canvas_height - bs + 1, bs):
            for x0 in range(0, layout.canvas_width - bs + 1, bs):
                f0 = face_of(x0, y0, layout)
                f1 = face_of(x0 + bs - 1, y0 + bs - 1, layout)
                if f0 is not None and f0 == f1:
                    self.blocks.append(Block(x0, y0, bs, bs))

    def record(self, block: Block) -> BlockRecord | None:
        return self.records.get((block.x0, block.y0))

    def set_record(self, block: Block, rec: BlockRecord) -> None:
        self.records[(block.x0, block.y0)] = rec


def sad(a: np.ndarray, b: np.ndarray) -> int:
    """Sum of absolute differences; blocks must share one shape."""
    if a.shape != b.shape:
        raise ValueError("block dimensions differ")
    return int(np.abs(a.astype(np.int64) - b.astype(np.int64)).sum())


def mv_bits(mv: MotionVector, pred: MotionVector) -> int:
    """Exp-Golomb-like size proxy for coding mv as predictor + difference."""
    bits = 0
    for d in (mv.dx_q2 - pred.dx_q2, mv.dy_q2 - pred.dy_q2):
        bits += 1 + 2 * int(abs(d)).bit_length()
    return bits


def scale_mv(mv: MotionVector, d_target: int, d_neighbor: int) -> MotionVector:
    """Rescale an MV between POC distances, as used by AMVP."""
    if d_neighbor == 0:
        raise ValueError("neighbor POC distance is zero")
    sx = int(round_half_away(mv.dx_q2 * d_target / d_neighbor))
    sy = int(round_half_away(mv.dy_q2 * d_target / d_neighbor))
    clip = lambda v: max(-MV_CLIP, min(MV_CLIP - 1, v))
    return MotionVector(clip(sx), clip(sy))


def _mv_valid_q2(mv: MotionVector, block: Block, cfg: SearchConfig, layout: CubeLayout) -> bool:
    limit = 4 * cfg.search_range
    if abs(mv.dx_q2) > limit or abs(mv.dy_q2) > limit:
        return False
    cx, cy = block.center
    return face_of(cx + mv.dx_q2 / 4.0, cy + mv.dy_q2 / 4.0, layout) is not None


class _ModelCost:
    """Stage-5 candidate evaluator for one block and one cost model."""

    def __init__(self, block, cur_plane, ref_plane, cfg, layout, bank, advanced, pred):
        self.block = block
        self.cur = cur_plane[
            block.y0 : block.y0 + block.height, block.x0 : block.x0 + block.width
        ]
        self.ref_plane = ref_plane
        self.cfg = cfg
        self.layout = layout
        self.bank = bank
        self.advanced = advanced
        self.pred = pred
        self.cache: dict[MotionVector, float] = {}

    def __call__(self, mv: MotionVector) -> float:
        got = self.cache.get(mv)
        if got is not None:
            return got
        if not _mv_valid_q2(mv, self.block, self.cfg, self.layout):
            cost = float("inf")
        else:
            if self.advanced:
                field = build_correspondence_field(self.block, mv, self.layout)
            else:
                field = translational_field(self.block, mv)
            pred_blk = warp_block(self.ref_plane, field, self.bank)
            cost = float(sad(self.cur, pred_blk))
            if self.cfg.lambda_:
                cost += self.cfg.lambda_ * mv_bits(mv, self.pred)
        self.cache[mv] = cost
        return cost


def _better(key_new, key_old) -> bool:
    return key_new < key_old


def _mv_key(cost, dx, dy):
    # tie-break: cost, then shorter MV, then smaller dy, then smaller dx
    return (cost, dx * dx + dy * dy, dy, dx)


def tzs_search(
    block: Block,
    cur: np.ndarray,
    ref: ReferencePicture,
    predictors: list[MotionVector],
    cfg: SearchConfig,
    layout: CubeLayout,
    bank: np.ndarray | None = None,
    advanced: bool = True,
    pred_for_bits: MotionVector | None = None,
) -> tuple[MotionVector, float]:
    """Zone search for the best MV of ``block`` in ``ref``.

    Integer stages use translational SAD; the quarter-pel stage ranks
    with the model cost (advanced correspondence warp by default).  All
    quarter-pel predictors are also evaluated exactly in the final
    stage, so the returned cost never exceeds the cost of any valid
    predictor.  Raises ``ValueError`` if no starting candidate is valid.
    """
    if bank is None:
        bank = generate_dctif_bank()
    ref_plane = ref.frame.y
    cur_blk = cur[block.y0 : block.y0 + block.height, block.x0 : block.x0 + block.width]
    cx, cy = block.center

    def int_valid(dx, dy):
        if abs(dx) > cfg.search_range or abs(dy) > cfg.search_range:
            return False
        return face_of(cx + dx, cy + dy, layout) is not None

    int_cache: dict[tuple[int, int], int] = {}

    def int_cost(dx, dy):
        got = int_cache.get((dx, dy))
        if got is None:
            patch = fetch_block(ref_plane, block.x0 + dx, block.y0 + dy, block.width, block.height)
            got = sad(cur_blk, patch)
            int_cache[(dx, dy)] = got
        return got

    # stage 1: zero MV plus rounded predictors
    starts = [(0, 0)]
    for p in predictors:
        cand = (int(round_half_away(p.dx_q2 / 4.0)), int(round_half_away(p.dy_q2 / 4.0)))
        if cand not in starts:
            starts.append(cand)
    starts = [c for c in starts if int_valid(*c)]
    if not starts:
        raise ValueError("no valid motion")

    best = None
    best_key = None
    for dx, dy in starts:
        key = _mv_key(int_cost(dx, dy), dx, dy)
        if best_key is None or _better(key, best_key):
            best, best_key = (dx, dy), key

    def diamond(center, dist):
        cx0, cy0 = center
        pts = [(cx0 + dist, cy0), (cx0 - dist, cy0), (cx0, cy0 + dist), (cx0, cy0 - dist)]
        if dist >= 2:
            h = dist // 2
            pts += [
                (cx0 + h, cy0 + h),
                (cx0 + h, cy0 - h),
                (cx0 - h, cy0 + h),
                (cx0 - h, cy0 - h),
            ]
        return pts

    # stage 2: expanding diamond around the stage-1 winner; once the
    # rings pass distance 1 without moving the best away from the
    # anchor's immediate neighborhood, wider rings are skipped
    anchor = best
    best_dist = 0
    d = 1
    while d <= cfg.search_range:
        for dx, dy in diamond(anchor, d):
            if not int_valid(dx, dy):
                continue
            key = _mv_key(int_cost(dx, dy), dx, dy)
            if _better(key, best_key):
                best, best_key = (dx, dy), key
                best_dist = d
        if d >= 2 and best_dist <= 1:
            break
        d *= 2

    # stage 3: coarse raster only when the motion looks large
    if best_dist > 5:
        r = cfg.search_range
        for dy in range(-r, r + 1, cfg.raster_step):
            for dx in range(-r, r + 1, cfg.raster_step):
                if not int_valid(dx, dy):
                    continue
                key = _mv_key(int_cost(dx, dy), dx, dy)
                if _better(key, best_key):
                    best, best_key = (dx, dy), key

    # stage 4: re-centering small-diamond refinement
    improved = True
    while improved:
        improved = False
        for d in (1, 2):
            for dx, dy in diamond(best, d):
                if not int_valid(dx, dy):
                    continue
                key = _mv_key(int_cost(dx, dy), dx, dy)
                if _better(key, best_key):
                    best, best_key = (dx, dy), key
                    improved = True
            if improved:
                break

    # stage 5: quarter-pel refinement under the model cost
    if pred_for_bits is None:
        pred_for_bits = predictors[0] if predictors else MotionVector(0, 0)
    evaluate = _ModelCost(block, cur, ref_plane, cfg, layout, bank, advanced, pred_for_bits)

    anchor_q2 = MotionVector(4 * best[0], 4 * best[1])
    seeds = [anchor_q2]
    for p in predictors:
        if p not in seeds:
            seeds.append(p)

    best_mv = None
    best_q2_key = None
    for mv in seeds:
        key = _mv_key(evaluate(mv), mv.dx_q2, mv.dy_q2)
        if best_q2_key is None or _better(key, best_q2_key):
            best_mv, best_q2_key = mv, key
    if best_mv is None or best_q2_key[0] == float("inf"):
        raise ValueError("no valid motion")

    def in_window(mv):
        return (
            abs(mv.dx_q2 - anchor_q2.dx_q2) <= cfg.refine_window_q2
            and abs(mv.dy_q2 - anchor_q2.dy_q2) <= cfg.refine_window_q2
        )

    step = 2
    while step >= 1:
        moved = False
        for ox, oy in ((step, 0), (-step, 0), (0, step), (0, -step),
                       (step, step), (step, -step), (-step, step), (-step, -step)):
            cand = MotionVector(best_mv.dx_q2 + ox, best_mv.dy_q2 + oy)
            if not in_window(cand):
                continue
            key = _mv_key(evaluate(cand), cand.dx_q2, cand.dy_q2)
            if _better(key, best_q2_key):
                best_mv, best_q2_key = cand, key
                moved = True
        if not moved:
            step //= 2
    return best_mv, best_q2_key[0]


_MERGE_OFFSETS = (
    ("A", (-1, 0)),
    ("B", (0, -1)),
    ("C", (1, -1)),
    ("D", (-1, 1)),
    ("E", (-1, -1)),
)

_AMVP_OFFSETS = (
    ("A0", (-1, 1)),
    ("A1", (-1, 0)),
    ("B0", (1, -1)),
    ("B1", (0, -1)),
    ("B2", (-1, -1)),
)


def _neighbor(grid: BlockGrid, block: Block, step: tuple[int, int]):
    bs = grid.block_size
    nx, ny = block.x0 + step[0] * bs, block.y0 + step[1] * bs
    rec = grid.records.get((nx, ny))
    if rec is None:
        return None, None
    return Block(nx, ny, bs, bs), rec


def merge_candidate(grid: BlockGrid, block: Block, layout: CubeLayout) -> MotionVector | None:
    """First advanced-coded neighbor MV, transported to this block.

    Zero MVs never qualify, neither at the neighbor nor after the
    transport re-rounds the carried vector to the quarter-pel grid; a
    candidate that collapses to zero is skipped and the scan goes on.
    Returns None when no neighbor qualifies (merge unavailable).
    """
    cur_center = block.center
    for _, step in _MERGE_OFFSETS:
        nb, rec = _neighbor(grid, block, step)
        if rec is None or rec.mode is PredMode.TRANS:
            continue
        if rec.mv == MotionVector(0, 0):
            continue
        cand = transport_mv_predictor(nb.center, rec.mv, cur_center, layout)
        if cand == MotionVector(0, 0):
            continue
        return cand
    return None


def amvp_predictor(
    grid: BlockGrid,
    block: Block,
    target_ref: ReferencePicture,
    refs: list[ReferencePicture],
    layout: CubeLayout,
) -> MotionVector:
    """Predictor for the searched advanced mode; zero MV as fallback.

    The first decided neighbor supplies its MV, transported to this
    block's center and rescaled when it points at a different reference.
    """
    cur_center = block.center
    for _, step in _AMVP_OFFSETS:
        nb, rec = _neighbor(grid, block, step)
        if rec is None:
            continue
        mv = transport_mv_predictor(nb.center, rec.mv, cur_center, layout)
        nb_ref = refs[rec.ref_index]
        if nb_ref.poc != target_ref.poc:
            d_target = grid.poc - target_ref.poc
            d_neighbor = grid.poc - nb_ref.poc
            mv = scale_mv(mv, d_target, d_neighbor)
        return mv
    return MotionVector(0, 0)


def mode_decide(
    block: Block,
    cur: np.ndarray,
    ref: ReferencePicture,
    grid: BlockGrid,
    cfg: SearchConfig,
    layout: CubeLayout,
    bank: np.ndarray | None = None,
    ref_index: int = 0,
    trans_result: tuple[MotionVector, float] | None = None,
) -> BlockRecord:
    """Pick the cheapest of translational / merge / AMVP for one block.

    The translational flavor is searched with the zero MV as its only
    seed, so its result never depends on previously decided blocks and
    the advanced policy can always fall back to it.  A caller that has
    already run that search (the evaluator shares it across policies)
    can pass it as ``trans_result``.  Ties keep the earlier flavor in
    the order TRANS, ADV_MERGE, ADV_AMVP.  The record is stored in the
    grid for use by later blocks.
    """
    if bank is None:
        bank = generate_dctif_bank()

    if trans_result is None:
        mv_t, cost_t = tzs_search(
            block, cur, ref, [MotionVector(0, 0)], cfg, layout, bank,
            advanced=False, pred_for_bits=MotionVector(0, 0),
        )
    else:
        mv_t, cost_t = trans_result
    mode, mv, cost = PredMode.TRANS, mv_t, cost_t

    merge_mv = merge_candidate(grid, block, layout)
    if merge_mv is not None and _mv_valid_q2(merge_mv, block, cfg, layout):
        field = build_correspondence_field(block, merge_mv, layout)
        pred_blk = warp_block(ref.frame.y, field, bank)
        cur_blk = cur[block.y0 : block.y0 + block.height, block.x0 : block.x0 + block.width]
        cost_m = float(sad(cur_blk, pred_blk))  # merge codes no MV difference
        if cost_m < cost:
            mode, mv, cost = PredMode.ADV_MERGE, merge_mv, cost_m

    amvp = amvp_predictor(grid, block, ref, [ref], layout)
    mv_a, cost_a = tzs_search(
        block, cur, ref, [amvp], cfg, layout, bank,
        advanced=True, pred_for_bits=amvp,
    )
    if cost_a < cost:
        mode, mv, cost = PredMode.ADV_AMVP, mv_a, cost_a

    rec = BlockRecord(mode, mv, ref_index, cost)
    grid.set_record(block, rec)
    return rec
