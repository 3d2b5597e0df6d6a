"""Grid aggregation, correlation, agreement, and dataset validation.

The central report shape is the Object x Action cell grid: 4 object
variation rows by 11 action variation columns, with the (none, none) cell
permanently empty. Cells hold episode counts, success rate, mean pair
difficulty, and the aggregate PRIDE of the cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (ConstantSeries, DegenerateInput, LengthMismatch,
                     UnknownVariationTag, ZeroTotalDifficulty)
from .instructions import (ActionVariation, ObjectVariation,
                           legal_combinations)
from .metric import AggregateMode, EpisodeScore, aggregate_pride

Cell = tuple[ObjectVariation, ActionVariation]


@dataclass(frozen=True)
class CellStats:
    """Statistics of one grid cell; all but ``n`` absent when n = 0."""

    n: int
    sr: float | None = None
    mean_pd: float | None = None
    pride: float | None = None


@dataclass(frozen=True)
class CellGrid:
    """4 x 11 grid of per-cell statistics keyed by variation pair."""

    cells: Mapping[Cell, CellStats]

    rows = tuple(ObjectVariation)
    cols = tuple(ActionVariation)

    def cell(self, obj: ObjectVariation, act: ActionVariation) -> CellStats:
        return self.cells.get((obj, act), CellStats(n=0))

    def total(self) -> int:
        return sum(s.n for s in self.cells.values())

    def row_total(self, obj: ObjectVariation) -> int:
        return sum(self.cell(obj, a).n for a in self.cols)

    def col_total(self, act: ActionVariation) -> int:
        return sum(self.cell(o, act).n for o in self.rows)


def build_grid(episodes: Sequence[EpisodeScore],
               pair_vars: Mapping[str, tuple[ObjectVariation, ActionVariation]],
               mode: AggregateMode = AggregateMode.DIFFICULTY_WEIGHTED,
               ) -> CellGrid:
    """Bucket scored episodes into the variation grid.

    ``pair_vars`` maps each pair_id to its decoded variation tags; every
    episode's pair must be present and legally tagged. Cell sr is percent;
    mean_pd averages over the cell's distinct pairs (each pair counted
    once, however many episodes it has); pride is the chosen aggregate of
    the cell's episodes, absent when undefined.
    """
    grouped: dict[Cell, list[EpisodeScore]] = {}
    for ep in episodes:
        if ep.pair_id not in pair_vars:
            raise UnknownVariationTag(
                f"episode {ep.episode_id!r} references pair {ep.pair_id!r} "
                "with no variation tags")
        cell = pair_vars[ep.pair_id]
        if not (isinstance(cell[0], ObjectVariation)
                and isinstance(cell[1], ActionVariation)):
            raise UnknownVariationTag(
                f"pair {ep.pair_id!r} carries undecoded variation tags")
        grouped.setdefault(cell, []).append(ep)

    cells: dict[Cell, CellStats] = {}
    for cell, eps in grouped.items():
        successes = sum(1 for e in eps if e.success)
        sr = successes / len(eps) * 100.0
        pair_pds: dict[str, float] = {}
        for e in eps:
            pair_pds.setdefault(e.pair_id, e.pd)
        mean_pd = math.fsum(pair_pds.values()) / len(pair_pds)
        try:
            pride = aggregate_pride(eps, mode)
        except ZeroTotalDifficulty:
            pride = None
        cells[cell] = CellStats(n=len(eps), sr=sr, mean_pd=mean_pd,
                                pride=pride)
    return CellGrid(cells=cells)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    if len(x) != len(y):
        raise LengthMismatch(
            f"series lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise LengthMismatch(
            f"need at least 2 points, got {len(x)}")
    mx = math.fsum(x) / len(x)
    my = math.fsum(y) / len(y)
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantSeries("correlation of a constant series is undefined")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def gwet_ac1(ratings: Sequence[Sequence[int]]) -> float:
    """Gwet's AC1 chance-corrected agreement for binary ratings.

    ``ratings`` is items x raters with values 0 or 1 and no missing cells.
    Pa is the mean pairwise agreement per item; chance agreement uses the
    two-category closed form Pe = 2 * pi * (1 - pi) with pi the overall
    proportion of positive ratings.
    """
    if len(ratings) < 1:
        raise ValueError("need at least one rated item")
    r = len(ratings[0])
    if r < 2:
        raise ValueError("need at least two raters")
    for i, row in enumerate(ratings):
        if len(row) != r:
            raise ValueError(f"item {i} has {len(row)} ratings, expected {r}")
        if any(v not in (0, 1) for v in row):
            raise ValueError(f"item {i} has a non-binary rating")

    agreements = []
    positives = 0
    for row in ratings:
        k = sum(row)
        positives += k
        pairs_agree = k * (k - 1) + (r - k) * (r - k - 1)
        agreements.append(pairs_agree / (r * (r - 1)))
    pa = math.fsum(agreements) / len(agreements)
    pi = positives / (len(ratings) * r)
    pe = 2.0 * pi * (1.0 - pi)
    if pe == 1.0:
        raise DegenerateInput("chance agreement Pe = 1")
    return (pa - pe) / (1.0 - pe)


# ---------------------------------------------------------------------------
# dataset validation

# Design target of the benchmark: roughly 100 paraphrases per legal cell.
CELL_TARGET = 100
CELL_TOLERANCE = 0.5


@dataclass(frozen=True)
class ValidationFlag:
    kind: str  # "illegal_combination" | "cell_count_deviation" | "duplicate_pair_id"
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    total: int
    cell_counts: Mapping[Cell, int]
    per_original: Mapping[str, int]
    flags: tuple[ValidationFlag, ...]

    @property
    def ok(self) -> bool:
        return not self.flags

    def row_total(self, obj: ObjectVariation) -> int:
        return sum(n for (o, _), n in self.cell_counts.items() if o is obj)

    def col_total(self, act: ActionVariation) -> int:
        return sum(n for (_, a), n in self.cell_counts.items() if a is act)


def validate_dataset(records: Iterable) -> ValidationReport:
    """Count and sanity-check a benchmark manifest.

    Accepts any records exposing pair_id, original_text and decoded
    object_var/action_var tags (manifest records or full pairs). Flags
    illegal (none, none) rows, duplicate pair ids, and legal cells whose
    count strays more than 50% from the ~100 design target. Pure and
    deterministic: same records, same report.
    """
    cell_counts: dict[Cell, int] = {}
    per_original: dict[str, int] = {}
    flags: list[ValidationFlag] = []
    seen_ids: set[str] = set()
    total = 0

    for rec in records:
        total += 1
        cell = (rec.object_var, rec.action_var)
        cell_counts[cell] = cell_counts.get(cell, 0) + 1
        text = rec.original_text if hasattr(rec, "original_text") \
            else rec.original.text
        per_original[text] = per_original.get(text, 0) + 1
        if rec.pair_id in seen_ids:
            flags.append(ValidationFlag(
                kind="duplicate_pair_id",
                detail=f"pair_id {rec.pair_id!r} appears more than once"))
        seen_ids.add(rec.pair_id)
        if (cell[0] is ObjectVariation.NONE
                and cell[1] is ActionVariation.NONE):
            flags.append(ValidationFlag(
                kind="illegal_combination",
                detail=f"pair {rec.pair_id!r} varies neither axis"))

    for cell in legal_combinations():
        n = cell_counts.get(cell, 0)
        if abs(n - CELL_TARGET) > CELL_TARGET * CELL_TOLERANCE:
            obj, act = cell
            flags.append(ValidationFlag(
                kind="cell_count_deviation",
                detail=(f"cell ({obj.value}, {act.value}) has {n} pairs, "
                        f"outside 50% of the {CELL_TARGET} design target")))

    return ValidationReport(total=total,
                            cell_counts=cell_counts,
                            per_original=per_original,
                            flags=tuple(flags))
