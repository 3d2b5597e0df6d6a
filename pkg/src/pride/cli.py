"""Batch command-line front end.

Four subcommands wire the pipeline together:

score
    Join a manifest with parse and embedding files, compute per-pair
    keyword/structural similarities and the paraphrase distance, write
    ``scores.csv``.
classify
    Run trajectory failure classification over an episode file, write
    ``classification.csv`` (failed episodes only) and
    ``classify_summary.csv`` (pooled and per-task counts).
report
    Join scores, episodes and the manifest into the analysis outputs:
    count/SR/mean-PD/PRIDE grids, the per-model overestimation row, an
    optional alpha sweep, and ``summary.json``.
validate
    Print dataset statistics for a manifest and flag taxonomy violations.

Exit codes: 0 success, 1 internal error, 2 input error, 3 validation
findings. Every knob is settable three ways with the precedence
flag > environment (``PRIDE_<FLAG>``) > ``--config`` JSON file > default.
Outputs are deterministic: identical inputs and settings produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import traceback
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

from .errors import ConstantSeries, FormatError, PrideError, ZeroSuccessRate
from .instructions import (ActionVariation, Instruction, ObjectVariation,
                           build_dependency_tree)
from .io_formats import (ManifestRecord, format_float, read_embeddings,
                         read_episodes, read_manifest, read_parses,
                         read_scores, sentence_id, write_scores)
from .keywords import keyword_similarity
from .metric import (AggregateMode, EpisodeScore, PairDistance,
                     aggregate_pride, alpha_sweep, overestimation)
from .stats import CellGrid, ValidationReport, build_grid, pearson, validate_dataset
from .trajectory import FailureLabel, TauRule, classify_failures
from .trees import structural_similarity


class _InputError(Exception):
    """User-facing input problem; reported on stderr with exit code 2."""


@dataclass
class RunConfig:
    alpha: float = 0.5
    k: int = 50
    tau_rule: TauRule = TauRule.MAX
    aggregate_mode: AggregateMode = AggregateMode.DIFFICULTY_WEIGHTED
    sweep: tuple[float, ...] | None = None
    out_dir: str = "."
    label: str | None = None
    manifest: str | None = None
    parses: str | None = None
    embeddings: str | None = None
    episodes: str | None = None
    scores: str | None = None


_SETTING_NAMES = tuple(f.name for f in fields(RunConfig))
_PATH_SETTINGS = ("out_dir", "manifest", "parses", "embeddings", "episodes",
                  "scores")


# ---------------------------------------------------------------------------
# configuration resolution

def _resolve_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, str] = {}

    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                loaded = json.load(handle)
        except json.JSONDecodeError as exc:
            raise _InputError(f"config file {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise _InputError(
                f"config file {args.config} must hold a JSON object")
        unknown = sorted(set(loaded) - set(_SETTING_NAMES))
        if unknown:
            raise _InputError(
                f"config file {args.config}: unknown keys {unknown}")
        for key, value in loaded.items():
            if value is not None:
                raw[key] = str(value)

    for name in _SETTING_NAMES:
        env_value = os.environ.get("PRIDE_" + name.upper(), "")
        if env_value != "":
            raw[name] = env_value

    for name in _SETTING_NAMES:
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            raw[name] = flag_value

    cfg = RunConfig()
    if "alpha" in raw:
        cfg.alpha = _coerce_float(raw["alpha"], "alpha")
    if not 0.0 <= cfg.alpha <= 1.0:
        raise _InputError(f"alpha must be in [0, 1], got {cfg.alpha}")
    if "k" in raw:
        cfg.k = _coerce_int(raw["k"], "k")
    if cfg.k < 2:
        raise _InputError(f"k must be at least 2, got {cfg.k}")
    if "tau_rule" in raw:
        try:
            cfg.tau_rule = TauRule(raw["tau_rule"])
        except ValueError:
            raise _InputError(
                f"tau_rule must be one of "
                f"{[r.value for r in TauRule]}, got {raw['tau_rule']!r}")
    if "aggregate_mode" in raw:
        try:
            cfg.aggregate_mode = AggregateMode(raw["aggregate_mode"])
        except ValueError:
            raise _InputError(
                f"aggregate_mode must be one of "
                f"{[m.value for m in AggregateMode]}, "
                f"got {raw['aggregate_mode']!r}")
    if "sweep" in raw:
        cfg.sweep = _parse_sweep(raw["sweep"])
    if "out_dir" in raw:
        cfg.out_dir = raw["out_dir"]
    if "label" in raw:
        cfg.label = raw["label"]
    for name in ("manifest", "parses", "embeddings", "episodes", "scores"):
        if name in raw:
            setattr(cfg, name, raw[name])

    # Resolve every path up front so later chdirs cannot shift meaning.
    for name in _PATH_SETTINGS:
        value = getattr(cfg, name)
        if value is not None:
            setattr(cfg, name, os.path.abspath(value))
    return cfg


def _coerce_float(value: str, name: str) -> float:
    try:
        result = float(value)
    except ValueError:
        raise _InputError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(result):
        raise _InputError(f"{name} must be finite, got {value!r}")
    return result


def _coerce_int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise _InputError(f"{name} must be an integer, got {value!r}")


def _parse_sweep(text: str) -> tuple[float, ...]:
    """Decode "start:end:step" into the alpha grid it denotes.

    Both endpoints are included when step divides the range evenly; the
    grid is then generated as start + i*(end-start)/n so the endpoints
    (and exact binary fractions like 0.25 steps) land without drift.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise _InputError(
            f"sweep must look like start:end:step, got {text!r}")
    start, end, step = (_coerce_float(p, "sweep component") for p in parts)
    if not 0.0 <= start <= 1.0 or not 0.0 <= end <= 1.0:
        raise _InputError("sweep endpoints must lie in [0, 1]")
    if end < start:
        raise _InputError("sweep end must not precede start")
    if start == end:
        return (start,)
    if step <= 0:
        raise _InputError("sweep step must be positive")
    count = math.floor((end - start) / step + 1e-9)
    if abs(start + count * step - end) <= 1e-9:
        return tuple(start + i * (end - start) / count
                     for i in range(count + 1))
    return tuple(start + i * step for i in range(count + 1))


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise _InputError(f"missing required input: {flags}")


# ---------------------------------------------------------------------------
# serialization helpers

def _fmt_pct(x: float | None) -> str:
    return "" if x is None else f"{x:.1f}"


def _fmt_dist(x: float | None) -> str:
    return "" if x is None else f"{x:.2f}"


def _write_csv(path: str, rows: Iterable[Sequence[object]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in rows:
            writer.writerow(list(row))


def _grid_rows(grid: CellGrid, value, margins: bool = False):
    """Yield CSV rows for one statistic of the grid.

    value(cell) must return the already formatted cell string; margins
    adds a trailing total column and row (only meaningful for counts).
    """
    header = ["object_var"] + [a.value for a in grid.cols]
    if margins:
        header.append("total")
    yield header
    for obj in grid.rows:
        row = [obj.value] + [value(grid.cell(obj, act))
                             for act in grid.cols]
        if margins:
            row.append(str(grid.row_total(obj)))
        yield row
    if margins:
        bottom = ["total"] + [str(grid.col_total(act))
                              for act in grid.cols]
        bottom.append(str(grid.total()))
        yield bottom


def _ensure_out_dir(cfg: RunConfig) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return cfg.out_dir


# ---------------------------------------------------------------------------
# subcommands

def cmd_score(args: argparse.Namespace, cfg: RunConfig) -> int:
    _require(cfg, "manifest", "parses", "embeddings")
    records = read_manifest(cfg.manifest)
    parses = read_parses(cfg.parses)
    table = read_embeddings(cfg.embeddings)

    rows: list[PairDistance] = []
    for rec in records:
        original = _parse_for(parses, rec.original_text)
        paraphrase = _parse_for(parses, rec.paraphrase_text)
        try:
            s_k = keyword_similarity(original, paraphrase, table)
            s_t = structural_similarity(build_dependency_tree(original),
                                        build_dependency_tree(paraphrase))
            rows.append(PairDistance.from_similarities(
                rec.pair_id, s_k, s_t, cfg.alpha))
        except PrideError as exc:
            raise _InputError(f"pair {rec.pair_id}: {exc}") from exc

    out = os.path.join(_ensure_out_dir(cfg), "scores.csv")
    write_scores(rows, out)
    print(f"wrote {out} ({len(rows)} pairs)")
    return 0


def _parse_for(parses: dict[str, Instruction], text: str) -> Instruction:
    sid = sentence_id(text)
    instr = parses.get(sid)
    if instr is None:
        raise _InputError(f"no parse for sentence {sid} (text: {text!r})")
    return instr


def cmd_classify(args: argparse.Namespace, cfg: RunConfig) -> int:
    _require(cfg, "episodes")
    episodes = read_episodes(cfg.episodes)
    results = classify_failures(episodes, k=cfg.k, tau_rule=cfg.tau_rule)

    out_dir = _ensure_out_dir(cfg)
    detail_path = os.path.join(out_dir, "classification.csv")
    _write_csv(detail_path, _classification_rows(results))

    summary_path = os.path.join(out_dir, "classify_summary.csv")
    _write_csv(summary_path, _classify_summary_rows(episodes, results))

    n_failures = len(results)
    print(f"wrote {detail_path} ({n_failures} failures)")
    print(f"wrote {summary_path}")
    return 0


def _classification_rows(results):
    yield ["episode_id", "task_id", "dtw_distance", "label", "tau",
           "tau_rule"]
    for r in results:
        yield [r.episode_id, r.task_id, _fmt_dist(r.dtw_distance),
               r.label.value, _fmt_dist(r.tau_used), r.tau_rule.value]


def _classify_summary_rows(episodes, results):
    header = ["task_id", "episodes", "successes", "success_rate",
              "failures", "near_gt", "far_gt", "unclassifiable",
              "near_gt_pct", "far_gt_pct"]
    yield header

    by_task: dict[object, dict[str, int]] = {}

    def bucket(task_key):
        return by_task.setdefault(task_key, {
            "episodes": 0, "successes": 0,
            FailureLabel.NEAR_GT.value: 0, FailureLabel.FAR_GT.value: 0,
            FailureLabel.UNCLASSIFIABLE.value: 0})

    for ep in episodes:
        for key in ("all", ep.task_id):
            b = bucket(key)
            b["episodes"] += 1
            b["successes"] += 1 if ep.success else 0
    for r in results:
        for key in ("all", r.task_id):
            bucket(key)[r.label.value] += 1

    keys = ["all"] + sorted(k for k in by_task if k != "all")
    for key in keys:
        b = by_task[key]
        failures = b["episodes"] - b["successes"]
        near = b[FailureLabel.NEAR_GT.value]
        far = b[FailureLabel.FAR_GT.value]
        classified = near + far
        sr = 100.0 * b["successes"] / b["episodes"] if b["episodes"] else None
        yield [key, b["episodes"], b["successes"], _fmt_pct(sr), failures,
               near, far, b[FailureLabel.UNCLASSIFIABLE.value],
               _fmt_pct(100.0 * near / classified if classified else None),
               _fmt_pct(100.0 * far / classified if classified else None)]


def cmd_report(args: argparse.Namespace, cfg: RunConfig) -> int:
    _require(cfg, "manifest", "scores", "episodes")
    records = read_manifest(cfg.manifest)
    score_rows = read_scores(cfg.scores)
    episodes = read_episodes(cfg.episodes)

    manifest_ids = {rec.pair_id for rec in records}
    score_ids = {row.pair_id for row in score_rows}
    _check_orphans("scored pairs missing from the manifest",
                   score_ids - manifest_ids)
    _check_orphans("manifest pairs missing from the scores",
                   manifest_ids - score_ids)
    _check_orphans("episode pairs missing from the scores",
                   {ep.pair_id for ep in episodes} - score_ids)

    pair_vars = {rec.pair_id: (rec.object_var, rec.action_var)
                 for rec in records}
    pd_by_pair = {row.pair_id: row.pd for row in score_rows}
    scored = [EpisodeScore.from_outcome(ep.episode_id, ep.pair_id,
                                        ep.success, pd_by_pair[ep.pair_id])
              for ep in episodes]

    grid = build_grid(scored, pair_vars, mode=cfg.aggregate_mode)
    out_dir = _ensure_out_dir(cfg)
    written = []

    path = os.path.join(out_dir, "grid_counts.csv")
    _write_csv(path, _grid_rows(grid, lambda c: str(c.n), margins=True))
    written.append(path)
    path = os.path.join(out_dir, "grid_sr.csv")
    _write_csv(path, _grid_rows(grid, lambda c: _fmt_pct(c.sr)))
    written.append(path)
    path = os.path.join(out_dir, "grid_mean_pd.csv")
    _write_csv(path, _grid_rows(grid, lambda c: _fmt_dist(c.mean_pd)))
    written.append(path)
    path = os.path.join(out_dir, "grid_pride.csv")
    _write_csv(path, _grid_rows(
        grid, lambda c: _fmt_pct(None if c.pride is None
                                 else 100.0 * c.pride)))
    written.append(path)

    label = cfg.label or os.path.splitext(os.path.basename(cfg.episodes))[0]
    successes = sum(1 for ep in scored if ep.success)
    sr = successes / len(scored) if scored else 0.0
    pride = aggregate_pride(scored, mode=cfg.aggregate_mode)
    try:
        over = overestimation(sr, pride)
    except ZeroSuccessRate:
        over = None
    path = os.path.join(out_dir, "overestimation.csv")
    _write_csv(path, [
        ["model", "success_rate", "pride", "overestimation"],
        [label, _fmt_pct(100.0 * sr), _fmt_pct(100.0 * pride),
         _fmt_pct(over)]])
    written.append(path)

    slope = None
    if cfg.sweep is not None:
        sweep = alpha_sweep(score_rows, scored, cfg.sweep,
                            mode=cfg.aggregate_mode)
        path = os.path.join(out_dir, "sweep.csv")
        _write_csv(path, [["alpha", "pride"]] + [
            [format_float(a), _fmt_pct(100.0 * v)]
            for a, v in sweep.points])
        written.append(path)
        slope = sweep.slope

    pearson_summary = _pearson_summary(grid)
    score_alphas = {row.alpha for row in score_rows}
    summary = {
        "label": label,
        "alpha": score_alphas.pop() if len(score_alphas) == 1 else None,
        "aggregate_mode": cfg.aggregate_mode.value,
        "episodes": len(scored),
        "pairs": len(score_rows),
        "successes": successes,
        "success_rate_pct": round(100.0 * sr, 1),
        "pride_pct": round(100.0 * pride, 1),
        "overestimation_pct": None if over is None else round(over, 1),
        "pearson": pearson_summary,
        "alpha_slope": slope,
    }
    path = os.path.join(out_dir, "summary.json")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(summary, handle, indent=2, sort_keys=True)
        handle.write("\n")
    written.append(path)

    for p in written:
        print(f"wrote {p}")
    return 0


def _check_orphans(what: str, orphans: set[str]) -> None:
    if orphans:
        shown = ", ".join(sorted(orphans)[:10])
        more = len(orphans) - min(len(orphans), 10)
        suffix = f" (+{more} more)" if more else ""
        raise _InputError(f"{what}: {shown}{suffix}")


def _pearson_summary(grid: CellGrid) -> dict:
    """Correlate per-cell mean PD with per-cell SR over non-empty cells."""
    xs, ys = [], []
    for obj in grid.rows:
        for act in grid.cols:
            cell = grid.cell(obj, act)
            if cell.n > 0 and cell.mean_pd is not None and cell.sr is not None:
                xs.append(cell.mean_pd)
                ys.append(cell.sr)
    n = len(xs)
    if n < 2:
        return {"r": None, "p": None, "n": n,
                "reason": "fewer than two populated cells"}
    try:
        r = pearson(xs, ys)
    except ConstantSeries:
        return {"r": None, "p": None, "n": n,
                "reason": "constant series in cell statistics"}
    if abs(r) == 1.0:
        p = 0.0
    elif n == 2:
        return {"r": r, "p": None, "n": n,
                "reason": "p-value undefined with two points"}
    else:
        from scipy import stats as _scipy_stats

        tval = r * math.sqrt((n - 2) / (1.0 - r * r))
        p = 2.0 * float(_scipy_stats.t.sf(abs(tval), n - 2))
    return {"r": r, "p": p, "n": n, "reason": None}


def cmd_validate(args: argparse.Namespace, cfg: RunConfig) -> int:
    _require(cfg, "manifest")
    records = read_manifest(cfg.manifest, strict=False)
    report = validate_dataset(records)
    _print_validation(report)
    return 3 if report.flags else 0


def _print_validation(report: ValidationReport) -> None:
    print("dataset validation report")
    print(f"total: {report.total}")
    print("grid counts (object rows x action columns):")
    header = ["object_var"] + [a.value for a in tuple(ActionVariation)]
    print(",".join(header + ["total"]))
    for obj in tuple(ObjectVariation):
        cells = [str(report.cell_counts.get((obj, act), 0))
                 for act in tuple(ActionVariation)]
        print(",".join([obj.value] + cells + [str(report.row_total(obj))]))
    bottom = [str(report.col_total(act)) for act in tuple(ActionVariation)]
    print(",".join(["total"] + bottom + [str(report.total)]))
    print("per-original counts:")
    ranked = sorted(report.per_original.items(),
                    key=lambda kv: (-kv[1], kv[0]))
    for text, count in ranked:
        print(f"{count},{text}")
    print(f"flags ({len(report.flags)}):")
    for flag in report.flags:
        print(f"{flag.kind}: {flag.detail}")


# ---------------------------------------------------------------------------
# argument parsing and entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pride",
        description="Paraphrase-robustness scoring, trajectory failure "
                    "classification and report generation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON file of default settings")
        p.add_argument("--out-dir", dest="out_dir",
                       help="directory for output files (default .)")

    p_score = sub.add_parser("score", help="compute per-pair distances")
    p_score.add_argument("--manifest")
    p_score.add_argument("--parses")
    p_score.add_argument("--embeddings")
    p_score.add_argument("--alpha",
                         help="keyword/structure weight in [0, 1]")
    add_common(p_score)
    p_score.set_defaults(func=cmd_score)

    p_classify = sub.add_parser("classify",
                                help="label failed episodes near/far")
    p_classify.add_argument("--episodes")
    p_classify.add_argument("--k", help="resampling length (default 50)")
    p_classify.add_argument("--tau-rule", dest="tau_rule",
                            choices=[r.value for r in TauRule])
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_report = sub.add_parser("report", help="emit grids and summaries")
    p_report.add_argument("--manifest")
    p_report.add_argument("--scores")
    p_report.add_argument("--episodes")
    p_report.add_argument("--aggregate-mode", dest="aggregate_mode",
                          choices=[m.value for m in AggregateMode])
    p_report.add_argument("--sweep",
                          help="alpha grid start:end:step, e.g. 0:1:0.25")
    p_report.add_argument("--label",
                          help="model label for the overestimation row")
    add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    p_validate = sub.add_parser("validate",
                                help="check manifest dataset statistics")
    p_validate.add_argument("--manifest")
    add_common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _resolve_config(args)
        return args.func(args, cfg)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for problem in exc.problems[:20]:
            print(f"  - {problem}", file=sys.stderr)
        if len(exc.problems) > 20:
            print(f"  ... and {len(exc.problems) - 20} more",
                  file=sys.stderr)
        return 2
    except (PrideError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


def entry() -> None:
    sys.exit(main(argv=None))


if __name__ == "__main__":
    entry()
