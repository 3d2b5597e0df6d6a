"""Paraphrase distance and the PRIDE score.

PD combines keyword and structural similarity with weight alpha and is
clamped into [0, 1]. Per episode, PRIDE equals PD on success and 0 on
failure. Two aggregations are shipped because a raw per-episode mean and a
difficulty-weighted rate answer different questions; reports always label
which mode produced a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (AlphaOutOfRange, EmptyInput, ZeroSuccessRate,
                     ZeroTotalDifficulty)


class AggregateMode(Enum):
    RAW_MEAN = "raw"
    DIFFICULTY_WEIGHTED = "weighted"


def paraphrase_distance(s_k: float, s_t: float, alpha: float = 0.5) -> float:
    """PD = clamp(1 - (alpha * s_k + (1 - alpha) * s_t), 0, 1).

    The expression is evaluated literally in this form so the endpoint
    identities hold exactly in floating point: alpha = 1 multiplies s_t by
    zero and returns clamp(1 - s_k) bit for bit, and symmetrically for
    alpha = 0.
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    raw = 1.0 - (alpha * s_k + (1.0 - alpha) * s_t)
    return max(0.0, min(1.0, raw))


def episode_pride(pd: float, success: bool) -> float:
    """Per-episode PRIDE: the pair's PD if the episode succeeded, else 0."""
    return pd if success else 0.0


@dataclass(frozen=True)
class PairDistance:
    """Scored pair: cached similarities plus the combined distance."""

    pair_id: str
    s_k: float
    s_t: float
    pd: float
    alpha: float

    @classmethod
    def from_similarities(cls, pair_id: str, s_k: float, s_t: float,
                          alpha: float = 0.5) -> "PairDistance":
        return cls(pair_id=pair_id, s_k=s_k, s_t=s_t,
                   pd=paraphrase_distance(s_k, s_t, alpha), alpha=alpha)


@dataclass(frozen=True)
class EpisodeScore:
    """One rollout's outcome joined with its pair's difficulty.

    ``pd`` is carried alongside ``pride`` because the difficulty-weighted
    aggregate needs the difficulty of failed episodes too.
    """

    episode_id: str
    pair_id: str
    success: bool
    pd: float
    pride: float

    @classmethod
    def from_outcome(cls, episode_id: str, pair_id: str, success: bool,
                     pd: float) -> "EpisodeScore":
        return cls(episode_id=episode_id, pair_id=pair_id, success=success,
                   pd=pd, pride=episode_pride(pd, success))


def aggregate_pride(episodes: Sequence[EpisodeScore],
                    mode: AggregateMode) -> float:
    """Aggregate per-episode scores to one number in [0, 1].

    RAW_MEAN is the plain mean of per-episode PRIDE values.
    DIFFICULTY_WEIGHTED is sum(pd_i * success_i) / sum(pd_i), a success
    rate where each episode counts proportionally to how hard its
    paraphrase is. Reports scale either to percent at serialization.
    """
    if not episodes:
        raise EmptyInput("no episodes to aggregate")
    if mode is AggregateMode.RAW_MEAN:
        return math.fsum(e.pride for e in episodes) / len(episodes)
    total = math.fsum(e.pd for e in episodes)
    if total == 0.0:
        raise ZeroTotalDifficulty(
            "difficulty-weighted aggregate with all-zero pds")
    return math.fsum(e.pride for e in episodes) / total


def overestimation(sr: float, pride: float) -> float:
    """How much the uniform success rate overstates robustness, in percent.

    Both inputs are percent-scale; sr must be positive.
    """
    if sr <= 0.0:
        raise ZeroSuccessRate(f"success rate must be > 0, got {sr}")
    return (sr - pride) / sr * 100.0


@dataclass(frozen=True)
class SweepResult:
    """Aggregate PRIDE per alpha plus the least-squares slope."""

    points: tuple[tuple[float, float], ...]
    slope: float | None


def alpha_sweep(pairs: Sequence[PairDistance],
                episodes: Sequence[EpisodeScore],
                alphas: Iterable[float],
                mode: AggregateMode = AggregateMode.DIFFICULTY_WEIGHTED,
                ) -> SweepResult:
    """Recompute PD and the chosen aggregate for each alpha.

    Pairs must carry cached s_k and s_t; episodes are rejoined to them by
    pair_id. The slope is the ordinary least-squares fit of aggregate
    versus alpha, or None when fewer than two distinct alphas are swept.
    """
    similarity = {p.pair_id: (p.s_k, p.s_t) for p in pairs}
    missing = sorted({e.pair_id for e in episodes} - similarity.keys())
    if missing:
        raise ValueError(f"episodes reference unscored pairs: {missing[:5]}")

    points: list[tuple[float, float]] = []
    for alpha in alphas:
        rescored = []
        for e in episodes:
            s_k, s_t = similarity[e.pair_id]
            pd = paraphrase_distance(s_k, s_t, alpha)
            rescored.append(EpisodeScore.from_outcome(
                e.episode_id, e.pair_id, e.success, pd))
        points.append((alpha, aggregate_pride(rescored, mode)))

    slope = _least_squares_slope(points)
    return SweepResult(points=tuple(points), slope=slope)


def _least_squares_slope(points: Sequence[tuple[float, float]]) -> float | None:
    if len(points) < 2:
        return None
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    mx = math.fsum(xs) / len(xs)
    my = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        return None
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx
