"""Trajectory resampling, DTW, and Near-GT/Far-GT failure classification.

Per task: successful episodes define a pseudo ground-truth trajectory (the
pointwise mean of the resampled successes) and a distance envelope tau.
Failures whose DTW distance to the pseudo-GT stays within tau are
execution-level failures (Near-GT); the rest failed at the planning level
(Far-GT). Tasks without a single success cannot be judged this way and
yield Unclassifiable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import (BadK, DimensionMismatch, EmptyInput, NoSuccesses,
                     RaggedRows, TooShort)


@dataclass(frozen=True)
class Trajectory:
    """Ordered state vectors; dims 1-3 are end-effector x, y, z in meters."""

    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise TooShort(
                f"trajectory needs at least 2 points, got {len(self.points)}")
        width = len(self.points[0])
        if any(len(p) != width for p in self.points):
            raise RaggedRows("trajectory rows differ in width")
        if width < 3:
            raise DimensionMismatch(
                f"state dimension must be >= 3, got {width}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class Episode:
    """One evaluation rollout of a (task, paraphrase, seed) triple."""

    episode_id: str
    task_id: int
    pair_id: str
    seed: int
    success: bool
    trajectory: Trajectory

    def __post_init__(self):
        if not 0 <= self.task_id <= 9:
            raise ValueError(f"task_id must be in 0..9, got {self.task_id}")


class TauRule(Enum):
    MAX = "max"
    P99 = "p99"
    P95 = "p95"
    P90 = "p90"


class FailureLabel(Enum):
    NEAR_GT = "near_gt"
    FAR_GT = "far_gt"
    UNCLASSIFIABLE = "unclassifiable"


@dataclass(frozen=True)
class ClassificationResult:
    """Label for one failed episode.

    ``dtw_distance`` and ``tau_used`` are None exactly when the label is
    Unclassifiable (no successes, so no pseudo-GT and no threshold exist).
    """

    episode_id: str
    task_id: int
    dtw_distance: float | None
    label: FailureLabel
    tau_used: float | None
    tau_rule: TauRule


def _as_points(traj) -> np.ndarray:
    pts = traj.points if isinstance(traj, Trajectory) else traj
    arr = np.asarray(pts, dtype=float)
    if arr.size == 0:
        raise EmptyInput("empty trajectory")
    if arr.ndim != 2:
        raise RaggedRows("trajectory rows differ in width")
    return arr


def resample(traj, k: int) -> Trajectory:
    """Linear-interpolation resample to exactly ``k`` points.

    Output points sit at uniform normalized times 0, 1/(k-1), ..., 1 over
    the input's own uniform time grid; the first and last input points are
    preserved exactly.
    """
    if k < 2:
        raise BadK(f"resample target must be >= 2, got {k}")
    arr = _as_points(traj)
    if len(arr) < 2:
        raise TooShort(
            f"trajectory needs at least 2 points, got {len(arr)}")
    t_in = np.linspace(0.0, 1.0, len(arr))
    t_out = np.linspace(0.0, 1.0, k)
    cols = [np.interp(t_out, t_in, arr[:, d]) for d in range(arr.shape[1])]
    out = np.column_stack(cols)
    return Trajectory(tuple(tuple(row) for row in out))


def dtw_distance(a, b) -> float:
    """Length-normalized exact DTW between two trajectories.

    Local cost is the Euclidean distance over the xyz sub-vectors, steps
    are {(1,0), (0,1), (1,1)} with both endpoints anchored. The dynamic
    program minimizes (total cost, path length) lexicographically, and the
    result is total cost divided by that path's length, which reduces to
    the sequence length on the diagonal and stays well defined for unequal
    input lengths. Totals within a 1e-9 relative tolerance count as tied,
    so the shorter path still wins when distinct paths share the same
    multiset of local costs and only addition order separates their sums.
    """
    pa = _as_points(a)
    pb = _as_points(b)
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        raise EmptyInput("DTW of an empty trajectory")
    if pa.shape[1] != pb.shape[1]:
        raise DimensionMismatch(
            f"trajectories have dimensions {pa.shape[1]} and {pb.shape[1]}")
    if pa.shape[1] < 3:
        raise DimensionMismatch(
            f"state dimension must be >= 3, got {pa.shape[1]}")
    xa = pa[:, :3]
    xb = pb[:, :3]
    diff = xa[:, None, :] - xb[None, :, :]
    local = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))

    m, n = local.shape
    cost = np.empty((m, n))
    length = np.empty((m, n), dtype=int)
    cost[0, 0] = local[0, 0]
    length[0, 0] = 1
    for j in range(1, n):
        cost[0, j] = cost[0, j - 1] + local[0, j]
        length[0, j] = j + 1
    for i in range(1, m):
        cost[i, 0] = cost[i - 1, 0] + local[i, 0]
        length[i, 0] = i + 1
        for j in range(1, n):
            best_c, best_l = cost[i - 1, j - 1], length[i - 1, j - 1]
            for ci, li in ((cost[i - 1, j], length[i - 1, j]),
                           (cost[i, j - 1], length[i, j - 1])):
                tol = 1e-9 * max(1.0, abs(ci), abs(best_c))
                if ci < best_c - tol or (abs(ci - best_c) <= tol
                                         and li < best_l):
                    best_c, best_l = ci, li
            cost[i, j] = best_c + local[i, j]
            length[i, j] = best_l + 1
    return float(cost[m - 1, n - 1]) / int(length[m - 1, n - 1])


def percentile(values: Sequence[float], p: float) -> float:
    """Linear-interpolation percentile (inclusive method).

    Sort ascending, take index (p/100) * (n-1), interpolate between the
    bracketing order statistics.
    """
    if len(values) == 0:
        raise EmptyInput("percentile of an empty list")
    if not 0.0 < p <= 100.0:
        raise ValueError(f"percentile p must be in (0, 100], got {p}")
    ordered = sorted(values)
    idx = (p / 100.0) * (len(ordered) - 1)
    lo = math.floor(idx)
    hi = math.ceil(idx)
    if lo == hi:
        return ordered[lo]
    return ordered[lo] + (ordered[hi] - ordered[lo]) * (idx - lo)


def _xyz_prefix(episode: Episode, l_max: int) -> np.ndarray:
    pts = np.asarray(episode.trajectory.points, dtype=float)
    return pts[:l_max, :3]


def build_pseudo_gt(successes: Sequence[Episode], k: int) -> Trajectory:
    """Pointwise mean of the successes' xyz trajectories, resampled to k."""
    if not successes:
        raise NoSuccesses("cannot build a pseudo-GT without successes")
    stack = []
    for ep in successes:
        xyz = np.asarray(ep.trajectory.points, dtype=float)[:, :3]
        stack.append(np.asarray(resample(xyz, k).points))
    mean = np.mean(np.stack(stack), axis=0)
    return Trajectory(tuple(tuple(row) for row in mean))


def _tau(success_distances: Sequence[float], rule: TauRule) -> float:
    if rule is TauRule.MAX:
        return max(success_distances)
    p = {TauRule.P99: 99.0, TauRule.P95: 95.0, TauRule.P90: 90.0}[rule]
    return percentile(success_distances, p)


def classify_failures(episodes: Sequence[Episode], k: int = 50,
                      tau_rule: TauRule = TauRule.MAX,
                      ) -> list[ClassificationResult]:
    """Algorithm: per task, label each failed episode Near-GT or Far-GT.

    Per task group: truncate every trajectory to the longest success
    length L_max, resample the xyz channels to k points, build the
    pseudo-GT from the successes, and measure every episode's DTW distance
    to it. tau is the max (or the p99/p95/p90 percentile) of the success
    distances; a failure is Near-GT iff its distance is <= tau. Tasks with
    zero successes yield Unclassifiable for each failure. Successes are
    never labeled. Results are ordered by (task_id, episode_id) so the
    outcome is independent of input order.
    """
    if not episodes:
        raise EmptyInput("no episodes to classify")
    if k < 2:
        raise BadK(f"resample target must be >= 2, got {k}")

    by_task: dict[int, list[Episode]] = {}
    for ep in episodes:
        by_task.setdefault(ep.task_id, []).append(ep)

    results: list[ClassificationResult] = []
    for task_id in sorted(by_task):
        group = by_task[task_id]
        successes = [ep for ep in group if ep.success]
        failures = [ep for ep in group if not ep.success]
        if not successes:
            for ep in failures:
                results.append(ClassificationResult(
                    episode_id=ep.episode_id, task_id=task_id,
                    dtw_distance=None, label=FailureLabel.UNCLASSIFIABLE,
                    tau_used=None, tau_rule=tau_rule))
            continue

        l_max = max(len(ep.trajectory) for ep in successes)
        pseudo = build_pseudo_gt(
            [_truncated(ep, l_max) for ep in successes], k)

        def distance(ep: Episode) -> float:
            return dtw_distance(resample(_xyz_prefix(ep, l_max), k), pseudo)

        success_d = [distance(ep) for ep in successes]
        tau = _tau(success_d, tau_rule)
        for ep in failures:
            d = distance(ep)
            label = (FailureLabel.NEAR_GT if d <= tau
                     else FailureLabel.FAR_GT)
            results.append(ClassificationResult(
                episode_id=ep.episode_id, task_id=task_id,
                dtw_distance=d, label=label,
                tau_used=tau, tau_rule=tau_rule))

    results.sort(key=lambda r: (r.task_id, r.episode_id))
    return results


def _truncated(episode: Episode, l_max: int) -> Episode:
    pts = episode.trajectory.points
    if len(pts) <= l_max:
        return episode
    return Episode(episode_id=episode.episode_id, task_id=episode.task_id,
                   pair_id=episode.pair_id, seed=episode.seed,
                   success=episode.success,
                   trajectory=Trajectory(pts[:l_max]))
