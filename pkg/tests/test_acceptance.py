"""End-to-end acceptance checks for the toolkit's core guarantees.

Each test certifies one externally visible behavior at a fixed
tolerance, enforces its own wall-clock budget, and prints a single PASS
line with the measured numbers. A failure shows up as a normal pytest
failure, so the suite reads as one line per guarantee either way.
"""

import json
import time

import numpy as np
import pytest

from conftest import FIXTURES, build_instruction
from pride.cli import main
from pride.instructions import ActionVariation, ObjectVariation
from pride.keywords import EmbeddingTable, keyword_similarity
from pride.metric import episode_pride, overestimation, paraphrase_distance
from pride.trajectory import (Episode, FailureLabel, TauRule, Trajectory,
                              classify_failures, dtw_distance)
from pride.trees import DependencyTree, structural_similarity, \
    tree_edit_distance
from oracles import dtw_path_bruteforce, enumerate_trees, \
    ted_mapping_bruteforce

# hand-averaged reference rows: keyword distance, structural distance,
# and their combined value at alpha = 0.5
DISTANCE_ROWS = [
    (0.00, 0.07, 0.03),
    (0.27, 0.43, 0.35),
    (0.60, 0.53, 0.56),
    (0.00, 0.11, 0.06),
    (0.34, 0.38, 0.36),
    (0.70, 0.60, 0.65),
    (0.00, 0.05, 0.03),
    (0.00, 0.50, 0.25),
    (0.41, 0.50, 0.46),
]

# reference benchmark rows: success rate, difficulty-weighted score, and
# the overestimation gap between them, all in percentage points
OVERESTIMATION_ROWS = [
    (46.3, 36.1, 22.0),
    (39.1, 32.0, 18.2),
    (62.1, 52.7, 15.1),
    (63.7, 56.3, 11.6),
    (64.7, 58.8, 9.1),
    (76.0, 69.2, 8.9),
    (71.4, 65.4, 8.4),
]


def test_distance_combination_reference_rows():
    started = time.monotonic()
    worst = 0.0
    for d_k, d_t, expected in DISTANCE_ROWS:
        got = paraphrase_distance(1.0 - d_k, 1.0 - d_t, alpha=0.5)
        worst = max(worst, abs(got - expected))
        assert got == pytest.approx(expected, abs=0.01)
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"PASS distance combination: {len(DISTANCE_ROWS)}/9 reference "
          f"rows within 0.01 (worst error {worst:.4f}, {elapsed:.3f}s)")


def test_overestimation_reference_rows():
    started = time.monotonic()
    worst = 0.0
    for sr, score, expected in OVERESTIMATION_ROWS:
        got = overestimation(sr, score)
        worst = max(worst, abs(got - expected))
        assert got == pytest.approx(expected, abs=0.1)
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"PASS overestimation: {len(OVERESTIMATION_ROWS)}/7 reference "
          f"rows within 0.1pp (worst error {worst:.4f}pp, {elapsed:.3f}s)")


def test_tree_distance_exhaustive_oracle():
    started = time.monotonic()
    labels = ("x", "y", "z")
    trees = [t for n in (1, 2, 3, 4) for t in enumerate_trees(n, labels)]
    assert len(trees) == 471
    mismatches = []
    for a in trees:
        for b in trees:
            fast = tree_edit_distance(a, b)
            slow = ted_mapping_bruteforce(a, b)
            if fast != slow:
                mismatches.append((a, b, fast, slow))
    elapsed = time.monotonic() - started
    assert mismatches == []
    assert elapsed < 60.0
    print(f"PASS tree distance: exact oracle agreement on all "
          f"{len(trees) ** 2} ordered pairs of the {len(trees)} trees "
          f"with up to 4 nodes over 3 labels ({elapsed:.1f}s)")


def test_dtw_exhaustive_path_oracle():
    started = time.monotonic()
    rng = np.random.default_rng(170820260)
    checked = 0
    worst = 0.0
    while checked < 600:
        la = int(rng.integers(2, 7))
        lb = int(rng.integers(2, 7))
        width = 3 + int(rng.integers(0, 3))
        if rng.random() < 0.5:
            # small integer coordinates provoke cost ties between paths
            a = rng.integers(0, 3, size=(la, width)).astype(float)
            b = rng.integers(0, 3, size=(lb, width)).astype(float)
        else:
            a = rng.normal(size=(la, width))
            b = rng.normal(size=(lb, width))
        got = dtw_distance(a.tolist(), b.tolist())
        want = dtw_path_bruteforce(a.tolist(), b.tolist())
        worst = max(worst, abs(got - want))
        assert got == pytest.approx(want, abs=1e-9)
        checked += 1
    elapsed = time.monotonic() - started
    assert elapsed < 30.0
    print(f"PASS warping distance: {checked} randomized pairs with "
          f"lengths up to 6 match path enumeration within 1e-9 "
          f"(worst gap {worst:.2e}, {elapsed:.1f}s)")


def _line(n: int, y: float, x_end: float = 1.0) -> list[list[float]]:
    xs = np.linspace(0.0, x_end, n)
    return [[float(x), y, 0.0] for x in xs]


def _ep(eid: str, success: bool, points, task: int = 0) -> Episode:
    return Episode(episode_id=eid, task_id=task, pair_id="p", seed=0,
                   success=success,
                   trajectory=Trajectory(tuple(tuple(p) for p in points)))


def test_failure_classifier_fixture_and_monotonicity():
    started = time.monotonic()
    near = FailureLabel.NEAR_GT
    far = FailureLabel.FAR_GT
    # three successes whose mean path sits at y = 0.25, with per-episode
    # distances 0.25 / 0.25 / 0.5 fixing every threshold rule by hand
    episodes = [
        _ep("s1", True, _line(5, 0.0)),
        _ep("s2", True, _line(4, 0.0)),
        _ep("s3", True, _line(5, 0.75)),
        _ep("f1", False, _line(5, 0.65)),
        _ep("f2", False, _line(4, 0.71)),
        _ep("f3", False, _line(5, 0.75)),
        _ep("f4", False, _line(9, 1.25, x_end=2.0)),
        _ep("g1", False, _line(5, 0.1), task=1),
    ]
    expected = {
        TauRule.MAX: {"f1": near, "f2": near, "f3": near, "f4": far},
        TauRule.P99: {"f1": near, "f2": near, "f3": far, "f4": far},
        TauRule.P95: {"f1": near, "f2": near, "f3": far, "f4": far},
        TauRule.P90: {"f1": near, "f2": far, "f3": far, "f4": far},
    }
    for rule, labels in expected.items():
        got = {r.episode_id: r.label
               for r in classify_failures(episodes, k=50, tau_rule=rule)}
        assert got["g1"] is FailureLabel.UNCLASSIFIABLE
        for eid, label in labels.items():
            assert got[eid] is label, (rule, eid)

    # tightening the threshold must never shrink the far-side count
    order = (TauRule.MAX, TauRule.P99, TauRule.P95, TauRule.P90)
    rng = np.random.default_rng(9090)
    for _ in range(100):
        group = []
        for i in range(int(rng.integers(1, 7))):
            pts = rng.normal(size=(int(rng.integers(3, 10)), 3))
            group.append(_ep(f"s{i}", True, pts.tolist()))
        for i in range(int(rng.integers(1, 7))):
            pts = rng.normal(size=(int(rng.integers(3, 10)), 3))
            group.append(_ep(f"f{i}", False, pts.tolist()))
        counts = [
            sum(r.label is far
                for r in classify_failures(group, k=20, tau_rule=rule))
            for rule in order]
        assert counts == sorted(counts), counts
    elapsed = time.monotonic() - started
    assert elapsed < 30.0
    print(f"PASS failure classifier: hand fixture labeled correctly "
          f"under all 4 threshold rules; far-side counts monotone over "
          f"100 randomized groups ({elapsed:.1f}s)")


def test_metric_identities_exact():
    started = time.monotonic()
    content_pos = ("NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM")
    deprels = ("root", "obj", "det", "amod")
    vocab = [f"word{i}" for i in range(40)]
    empty_table = EmbeddingTable(dimension=6, entries={})
    rng = np.random.default_rng(61)
    rounds = 1000
    for i in range(rounds):
        n = int(rng.integers(1, 7))
        rows = []
        for k in range(n):
            word = vocab[int(rng.integers(0, len(vocab)))]
            pos = content_pos[int(rng.integers(0, len(content_pos)))]
            head, deprel = (0, "root") if k == 0 else (1, "obj")
            rows.append((word, pos, head, deprel))
        instr = build_instruction(f"id{i}", rows, with_embeddings=True)
        assert keyword_similarity(instr, instr, empty_table) == 1.0

        m = int(rng.integers(1, 10))
        labels = [(content_pos[int(rng.integers(0, 6))],
                   deprels[int(rng.integers(0, 4))]) for _ in range(m)]
        parents = [None] + [int(rng.integers(0, j)) for j in range(1, m)]
        tree = DependencyTree.from_parent_links(labels, parents)
        assert structural_similarity(tree, tree) == 1.0

        alpha = float(rng.uniform(0.0, 1.0))
        s_k = float(rng.uniform(-0.5, 1.5))
        s_t = float(rng.uniform(-0.5, 1.5))
        assert paraphrase_distance(1.0, 1.0, alpha) == 0.0
        assert episode_pride(float(rng.uniform(0.0, 1.0)), False) == 0.0
        assert paraphrase_distance(s_k, s_t, 1.0) == \
            min(1.0, max(0.0, 1.0 - s_k))
        assert paraphrase_distance(s_k, s_t, 0.0) == \
            min(1.0, max(0.0, 1.0 - s_t))
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    print(f"PASS metric identities: self-similarity, zero-distance, "
          f"failure-score, and endpoint identities exact over {rounds} "
          f"randomized instances ({elapsed:.1f}s)")


def test_dataset_validation_reference_counts(tmp_path, capsys):
    started = time.monotonic()
    manifest = FIXTURES / "manifest_full.jsonl"
    assert main(["validate", "--manifest", str(manifest)]) == 0
    out = capsys.readouterr().out
    for line in (
        "total: 4092",
        "object_var,none,addition,sp_contextual,sp_habitual,"
        "coordination,subordination,need_statement,embedded_imperative,"
        "permission_directive,question_directive,hint,total",
        "none,0,100,79,74,98,75,93,93,83,87,88,870",
        "addition,98,100,100,100,100,100,100,99,99,99,100,1095",
        "sp_contextual,87,100,100,100,100,99,100,100,100,94,96,1076",
        "sp_habitual,74,100,98,100,97,94,100,95,100,95,98,1051",
        "total,259,400,377,374,395,368,393,387,382,375,382,4092",
        "423,Put the cream cheese in the bowl",
        "386,Stack the right bowl on the left bowl",
        "flags (0):",
    ):
        assert line in out, line

    lines = manifest.read_text(encoding="utf-8").splitlines()
    illegal = json.dumps({
        "pair_id": "p99999", "task_id": 0, "original_text": "t",
        "paraphrase_text": "q", "object_var": "none",
        "action_var": "none"})
    corrupted = tmp_path / "corrupted.jsonl"
    corrupted.write_text("\n".join(lines + [lines[1], illegal]) + "\n",
                         encoding="utf-8")
    assert main(["validate", "--manifest", str(corrupted)]) == 3
    out = capsys.readouterr().out
    assert "duplicate_pair_id" in out
    assert "illegal_combination" in out
    elapsed = time.monotonic() - started
    assert elapsed < 5.0
    print(f"PASS dataset validation: reference composition reported "
          f"exactly, corruption exits 3 ({elapsed:.1f}s)")


def _run_all_commands(paths: dict, out_dir) -> list:
    out_dir.mkdir(parents=True, exist_ok=True)
    scores = out_dir / "scores.csv"
    assert main(["score", "--manifest", paths["manifest"],
                 "--parses", paths["parses"],
                 "--embeddings", paths["embeddings"],
                 "--out-dir", str(out_dir)]) == 0
    assert main(["classify", "--episodes", paths["episodes"],
                 "--out-dir", str(out_dir)]) == 0
    assert main(["report", "--manifest", paths["manifest"],
                 "--scores", str(scores),
                 "--episodes", paths["episodes"],
                 "--sweep", "0:1:0.25",
                 "--out-dir", str(out_dir)]) == 0
    assert main(["validate", "--manifest", paths["manifest_full"]]) == 0
    return sorted(p for p in out_dir.iterdir() if p.is_file())


def test_cli_outputs_byte_identical(tmp_path, capsys):
    started = time.monotonic()
    paths = {
        "manifest": str(FIXTURES / "manifest_small.jsonl"),
        "manifest_full": str(FIXTURES / "manifest_full.jsonl"),
        "parses": str(FIXTURES / "reference.conllu"),
        "embeddings": str(FIXTURES / "reference_embeddings.tsv"),
        "episodes": str(FIXTURES / "episodes_small.jsonl"),
    }
    first = _run_all_commands(paths, tmp_path / "run1")
    stdout_first = capsys.readouterr().out
    second = _run_all_commands(paths, tmp_path / "run2")
    stdout_second = capsys.readouterr().out
    assert [p.name for p in first] == [p.name for p in second]
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name
    # validate writes no files; its report must match on stdout too
    tail_first = stdout_first[stdout_first.index("dataset validation"):]
    tail_second = stdout_second[stdout_second.index("dataset validation"):]
    assert tail_first == tail_second
    elapsed = time.monotonic() - started
    print(f"PASS determinism: all 4 commands byte-identical across two "
          f"runs, {len(first)} artifacts compared ({elapsed:.1f}s)")


def test_report_table_shapes(tmp_path, capsys):
    started = time.monotonic()
    paths = {
        "manifest": str(FIXTURES / "manifest_small.jsonl"),
        "manifest_full": str(FIXTURES / "manifest_full.jsonl"),
        "parses": str(FIXTURES / "reference.conllu"),
        "embeddings": str(FIXTURES / "reference_embeddings.tsv"),
        "episodes": str(FIXTURES / "episodes_small.jsonl"),
    }
    _run_all_commands(paths, tmp_path)
    capsys.readouterr()
    object_tags = [v.value for v in ObjectVariation]
    action_tags = [v.value for v in ActionVariation]

    def rows_of(name: str) -> list[list[str]]:
        text = (tmp_path / name).read_text(encoding="utf-8")
        return [ln.split(",") for ln in text.splitlines()]

    counts = rows_of("grid_counts.csv")
    assert counts[0] == ["object_var"] + action_tags + ["total"]
    assert [r[0] for r in counts[1:]] == object_tags + ["total"]
    for name in ("grid_sr.csv", "grid_mean_pd.csv", "grid_pride.csv"):
        grid = rows_of(name)
        assert grid[0] == ["object_var"] + action_tags, name
        assert [r[0] for r in grid[1:]] == object_tags, name

    over = rows_of("overestimation.csv")
    assert over[0] == ["model", "success_rate", "pride", "overestimation"]
    assert len(over) == 2

    summary = rows_of("classify_summary.csv")
    assert summary[0] == ["task_id", "episodes", "successes",
                          "success_rate", "failures", "near_gt", "far_gt",
                          "unclassifiable", "near_gt_pct", "far_gt_pct"]
    assert summary[1][0] == "all"
    tasks = [r[0] for r in summary[2:]]
    assert tasks == sorted(tasks, key=int)
    elapsed = time.monotonic() - started
    print(f"PASS table shapes: grids keyed by the 4 object and "
          f"{len(action_tags)} action variations with margins, "
          f"per-model and per-task summaries well-formed "
          f"({elapsed:.1f}s)")
