"""Interchange file formats: manifest, parses, embeddings, episodes, scores.

All formats are line-delimited UTF-8 text and carry a ``format_version``
header (current version: 1). Readers are total: any malformed input turns
into a :class:`~pride.errors.FormatError` aggregating typed per-line
problems, never a stray exception, and no partially decoded data is
returned. Readers also never reorder records.

Concrete syntaxes
-----------------
manifest (JSON lines)
    First line ``{"format_version": 1, "kind": "manifest"}``, then one
    object per line with keys pair_id, task_id, original_text,
    paraphrase_text, object_var, action_var.

parses (CoNLL-U column convention)
    ``# format_version = 1`` on the first line. Sentences are separated by
    blank lines, each preceded by ``# sent_id = <id>`` (and optionally
    ``# text = <sentence>``). Token lines have the 10 tab-separated
    CoNLL-U columns; ID, FORM, LEMMA, UPOS, HEAD and DEPREL are consumed,
    the rest pass through opaquely.

embeddings (tab-separated)
    ``# format_version = 1`` first; further ``# key = value`` comments are
    provenance and ignored. Data lines are
    ``<sent_id> TAB <token_index> TAB <v1> <v2> ...`` with vector
    components printed to 9 significant digits; values written that way
    re-read bit for bit.

episodes (JSON lines)
    Header ``{"format_version": 1, "kind": "episodes"}``, then objects
    with episode_id, task_id, pair_id, seed, success, trajectory.

scores (RFC-4180 CSV)
    Output of the scoring command and input to the report command:
    columns pair_id, s_k, s_t, pd, alpha, floats at 9 significant digits.

Sentence ids are opaque strings matched exactly. For manifest-referenced
texts the convention is :func:`sentence_id`, a stable content hash, which
lets parse and embedding files be joined to manifests without carrying the
full text.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (BadColumnCount, DimensionDrift, DuplicateId,
                     DuplicateKey, FormatError, MalformedLine, MissingSentId,
                     NonTreeHeads, PrideError, RaggedRows, ShortTrajectory,
                     UnknownTag, UnknownVariationTag, ZeroVector)
from .instructions import (UPOS_TAGS, ActionVariation, Instruction,
                           ObjectVariation, Token)
from .keywords import EmbeddingTable
from .metric import PairDistance, paraphrase_distance
from .trajectory import Episode, Trajectory

FORMAT_VERSION = 1


def sentence_id(text: str) -> str:
    """Stable opaque id for an instruction text.

    First 16 hex digits of the UTF-8 SHA-256, prefixed with "s". Texts
    must match byte for byte to share an id; no normalization is applied.
    """
    return "s" + hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def format_float(x: float) -> str:
    """Canonical 9-significant-digit decimal used in data files."""
    return f"{x:.9g}"


@dataclass(frozen=True)
class ManifestRecord:
    """One manifest row; variation tags arrive decoded."""

    pair_id: str
    task_id: int
    original_text: str
    paraphrase_text: str
    object_var: ObjectVariation
    action_var: ActionVariation


# ---------------------------------------------------------------------------
# manifest

def read_manifest(path: str, strict: bool = True) -> list[ManifestRecord]:
    """Decode a manifest; with ``strict=False`` duplicate pair_ids pass.

    The lenient mode exists for dataset validation, which must be able to
    observe duplicates (and other taxonomy-level defects) in order to
    report them instead of dying on the first one. Structural problems
    (bad JSON, unknown tags, missing fields) stay fatal in both modes.
    """
    records: list[ManifestRecord] = []
    problems: list[PrideError] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    data_lines = _check_jsonl_header(path, lines, "manifest", problems)
    for line_no, line in data_lines:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            problems.append(MalformedLine(
                f"not valid JSON: {exc.msg}", line_no=line_no, path=path))
            continue
        if not isinstance(obj, dict):
            problems.append(MalformedLine(
                "record is not a JSON object", line_no=line_no, path=path))
            continue
        try:
            pair_id = _req_str(obj, "pair_id")
            task_id = _req_int(obj, "task_id")
            original = _req_str(obj, "original_text")
            paraphrase = _req_str(obj, "paraphrase_text")
            obj_tag = _req_str(obj, "object_var")
            act_tag = _req_str(obj, "action_var")
        except ValueError as exc:
            problems.append(MalformedLine(
                str(exc), line_no=line_no, path=path))
            continue
        if not 0 <= task_id <= 9:
            problems.append(MalformedLine(
                f"task_id must be in 0..9, got {task_id}",
                line_no=line_no, path=path))
            continue
        try:
            object_var = ObjectVariation.from_tag(obj_tag)
            action_var = ActionVariation.from_tag(act_tag)
        except UnknownVariationTag as exc:
            problems.append(UnknownTag(
                exc.message, line_no=line_no, path=path))
            continue
        if pair_id in seen and strict:
            problems.append(DuplicateId(
                f"pair_id {pair_id!r} already seen", line_no=line_no,
                path=path))
            continue
        seen.add(pair_id)
        records.append(ManifestRecord(
            pair_id=pair_id, task_id=task_id, original_text=original,
            paraphrase_text=paraphrase, object_var=object_var,
            action_var=action_var))
    if problems:
        raise FormatError(path, problems)
    return records


def write_manifest(records: Iterable[ManifestRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(
            {"format_version": FORMAT_VERSION, "kind": "manifest"}) + "\n")
        for rec in records:
            handle.write(json.dumps({
                "pair_id": rec.pair_id,
                "task_id": rec.task_id,
                "original_text": rec.original_text,
                "paraphrase_text": rec.paraphrase_text,
                "object_var": rec.object_var.value,
                "action_var": rec.action_var.value,
            }) + "\n")


# ---------------------------------------------------------------------------
# parses (CoNLL-U column convention)

_CONLLU_COLUMNS = 10


def read_parses(path: str) -> dict[str, Instruction]:
    """Parse file to instructions keyed by sentence id, in file order."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()

    problems: list[PrideError] = []
    instructions: dict[str, Instruction] = {}
    if not _header_comment_ok(lines):
        problems.append(MalformedLine(
            "missing '# format_version = 1' header", line_no=1, path=path))

    block: list[tuple[int, str]] = []
    for line_no, line in enumerate(lines, start=1):
        if line.strip() == "":
            _finish_parse_block(block, instructions, problems, path)
            block = []
        else:
            block.append((line_no, line))
    _finish_parse_block(block, instructions, problems, path)

    if problems:
        raise FormatError(path, problems)
    return instructions


def _finish_parse_block(block, instructions, problems, path) -> None:
    comments = [(no, ln) for no, ln in block if ln.startswith("#")]
    token_lines = [(no, ln) for no, ln in block if not ln.startswith("#")]
    if not token_lines:
        return  # comment-only preamble or trailing whitespace
    start_line = block[0][0]

    sent_id = None
    text = None
    for _, ln in comments:
        key, _, value = ln.lstrip("# ").partition("=")
        if key.strip() == "sent_id":
            sent_id = value.strip()
        elif key.strip() == "text":
            text = value.strip()
    if sent_id is None:
        problems.append(MissingSentId(
            "sentence block lacks a '# sent_id =' comment",
            line_no=start_line, path=path))
        return

    rows = []
    for line_no, ln in token_lines:
        cols = ln.split("\t")
        if len(cols) != _CONLLU_COLUMNS:
            problems.append(BadColumnCount(
                f"expected {_CONLLU_COLUMNS} tab-separated columns, "
                f"got {len(cols)}", line_no=line_no, path=path))
            return
        idx, form, lemma, upos, _, _, head, deprel, _, _ = cols
        if "-" in idx or "." in idx:
            problems.append(MalformedLine(
                f"multiword/empty-node id {idx!r} unsupported",
                line_no=line_no, path=path))
            return
        try:
            idx_i = int(idx)
            head_i = int(head)
        except ValueError:
            problems.append(MalformedLine(
                "ID and HEAD must be integers", line_no=line_no, path=path))
            return
        if upos not in UPOS_TAGS:
            problems.append(MalformedLine(
                f"{upos!r} is not a universal POS tag", line_no=line_no,
                path=path))
            return
        rows.append((idx_i, form, lemma, upos, head_i, deprel))

    if [r[0] for r in rows] != list(range(1, len(rows) + 1)):
        problems.append(MalformedLine(
            "token ids must be contiguous 1..n", line_no=start_line,
            path=path, sent_id=sent_id))
        return
    tree_problem = _head_tree_problem(rows)
    if tree_problem is not None:
        problems.append(NonTreeHeads(
            tree_problem, line_no=start_line, path=path, sent_id=sent_id))
        return
    tokens = tuple(Token(index=i, surface=form, lemma=lemma, pos=upos,
                         head=head, deprel=deprel)
                   for i, form, lemma, upos, head, deprel in rows)
    if text is None:
        text = " ".join(t.surface for t in tokens)
    if sent_id in instructions:
        problems.append(DuplicateId(
            f"sent_id {sent_id!r} already seen", line_no=start_line,
            path=path))
        return
    instructions[sent_id] = Instruction(id=sent_id, text=text, tokens=tokens)


def _head_tree_problem(rows) -> str | None:
    n = len(rows)
    roots = [i for (i, _, _, _, head, _) in rows if head == 0]
    if len(roots) != 1:
        return f"expected exactly one root, found {len(roots)}"
    children: dict[int, list[int]] = {}
    for i, _, _, _, head, _ in rows:
        if head < 0 or head > n:
            return f"head {head} out of range for {n} tokens"
        if head == i:
            return f"token {i} names itself as head"
        children.setdefault(head, []).append(i)
    reached = set()
    stack = [roots[0]]
    while stack:
        node = stack.pop()
        if node in reached:
            return "head links contain a cycle"
        reached.add(node)
        stack.extend(children.get(node, []))
    if len(reached) != n:
        return "head links contain a cycle"
    return None


def write_parses(instructions: Iterable[Instruction], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# format_version = {FORMAT_VERSION}\n")
        for instr in instructions:
            for piece in (instr.id, instr.text):
                if "\n" in piece or "\t" in piece:
                    raise ValueError(
                        "sentence ids and texts must not contain tabs "
                        "or newlines")
            handle.write(f"# sent_id = {instr.id}\n")
            handle.write(f"# text = {instr.text}\n")
            for t in instr.tokens:
                if any("\t" in s or "\n" in s
                       for s in (t.surface, t.lemma, t.deprel)):
                    raise ValueError(
                        "token fields must not contain tabs or newlines")
                handle.write("\t".join([
                    str(t.index), t.surface, t.lemma, t.pos, "_", "_",
                    str(t.head), t.deprel, "_", "_"]) + "\n")
            handle.write("\n")


def _header_comment_ok(lines: list[str]) -> bool:
    if not lines:
        return False
    key, _, value = lines[0].lstrip("# ").partition("=")
    return (lines[0].startswith("#") and key.strip() == "format_version"
            and value.strip() == str(FORMAT_VERSION))


# ---------------------------------------------------------------------------
# embeddings

def read_embeddings(path: str) -> EmbeddingTable:
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()

    problems: list[PrideError] = []
    if not _header_comment_ok(lines):
        problems.append(MalformedLine(
            "missing '# format_version = 1' header", line_no=1, path=path))

    entries: dict[tuple[str, int], tuple[float, ...]] = {}
    dimension: int | None = None
    for line_no, line in enumerate(lines, start=1):
        if line.startswith("#") or line.strip() == "":
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            problems.append(MalformedLine(
                f"expected 3 tab-separated fields, got {len(parts)}",
                line_no=line_no, path=path))
            continue
        sent_id, index_s, vector_s = parts
        try:
            token_index = int(index_s)
        except ValueError:
            problems.append(MalformedLine(
                f"token index {index_s!r} is not an integer",
                line_no=line_no, path=path))
            continue
        if token_index < 1:
            problems.append(MalformedLine(
                f"token index must be >= 1, got {token_index}",
                line_no=line_no, path=path))
            continue
        try:
            vector = tuple(float(v) for v in vector_s.split())
        except ValueError:
            problems.append(MalformedLine(
                "vector components must be decimal reals",
                line_no=line_no, path=path))
            continue
        if not vector or not all(math.isfinite(v) for v in vector):
            problems.append(MalformedLine(
                "vector must be non-empty and finite",
                line_no=line_no, path=path))
            continue
        if dimension is None:
            dimension = len(vector)
        elif len(vector) != dimension:
            problems.append(DimensionDrift(
                f"vector of dimension {len(vector)} after the file fixed "
                f"dimension {dimension}", line_no=line_no, path=path))
            continue
        if all(v == 0.0 for v in vector):
            problems.append(ZeroVector(
                "all-zero vector", line_no=line_no, path=path))
            continue
        key = (sent_id, token_index)
        if key in entries:
            problems.append(DuplicateKey(
                f"duplicate key {key}", line_no=line_no, path=path))
            continue
        entries[key] = vector

    if problems:
        raise FormatError(path, problems)
    if dimension is None:
        dimension = 1  # empty table; any lookup will simply miss
    return EmbeddingTable(dimension=dimension, entries=entries)


def write_embeddings(table: EmbeddingTable, path: str,
                     comments: Mapping[str, str] | None = None) -> None:
    """Write a table; values are serialized to 9 significant digits.

    Components that are already 9-significant-digit decimals (anything a
    previous read produced) survive a write/read cycle bit for bit.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# format_version = {FORMAT_VERSION}\n")
        for key, value in (comments or {}).items():
            handle.write(f"# {key} = {value}\n")
        for (sent_id, token_index), vector in table.entries.items():
            if "\t" in sent_id or "\n" in sent_id:
                raise ValueError(
                    "sentence ids must not contain tabs or newlines")
            rendered = " ".join(format_float(v) for v in vector)
            handle.write(f"{sent_id}\t{token_index}\t{rendered}\n")


# ---------------------------------------------------------------------------
# episodes

def read_episodes(path: str) -> list[Episode]:
    episodes: list[Episode] = []
    problems: list[PrideError] = []
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    data_lines = _check_jsonl_header(path, lines, "episodes", problems)
    for line_no, line in data_lines:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            problems.append(MalformedLine(
                f"not valid JSON: {exc.msg}", line_no=line_no, path=path))
            continue
        if not isinstance(obj, dict):
            problems.append(MalformedLine(
                "record is not a JSON object", line_no=line_no, path=path))
            continue
        try:
            episode_id = _req_str(obj, "episode_id")
            task_id = _req_int(obj, "task_id")
            pair_id = _req_str(obj, "pair_id")
            seed = _req_int(obj, "seed")
            success = obj.get("success")
            if not isinstance(success, bool):
                raise ValueError("success must be strictly boolean")
            rows = obj.get("trajectory")
            if not isinstance(rows, list):
                raise ValueError("trajectory must be a list of rows")
        except ValueError as exc:
            problems.append(MalformedLine(
                str(exc), line_no=line_no, path=path))
            continue
        if not 0 <= task_id <= 9:
            problems.append(MalformedLine(
                f"task_id must be in 0..9, got {task_id}",
                line_no=line_no, path=path))
            continue
        traj_problem = _trajectory_problem(rows)
        if traj_problem is not None:
            problems.append(traj_problem.__class__(
                traj_problem.message, line_no=line_no, path=path))
            continue
        episodes.append(Episode(
            episode_id=episode_id, task_id=task_id, pair_id=pair_id,
            seed=seed, success=success,
            trajectory=Trajectory(tuple(tuple(float(v) for v in row)
                                        for row in rows))))
    if problems:
        raise FormatError(path, problems)
    return episodes


def _trajectory_problem(rows) -> PrideError | None:
    if len(rows) < 2:
        return ShortTrajectory(
            f"trajectory needs at least 2 points, got {len(rows)}")
    widths = set()
    for row in rows:
        if not isinstance(row, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool)
                and math.isfinite(v) for v in row):
            return MalformedLine("trajectory rows must hold finite reals")
        widths.add(len(row))
    if len(widths) != 1:
        return RaggedRows("trajectory rows differ in width")
    if widths.pop() < 3:
        return MalformedLine("trajectory state dimension must be >= 3")
    return None


def write_episodes(episodes: Iterable[Episode], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(
            {"format_version": FORMAT_VERSION, "kind": "episodes"}) + "\n")
        for ep in episodes:
            handle.write(json.dumps({
                "episode_id": ep.episode_id,
                "task_id": ep.task_id,
                "pair_id": ep.pair_id,
                "seed": ep.seed,
                "success": ep.success,
                "trajectory": [list(row) for row in ep.trajectory.points],
            }) + "\n")


# ---------------------------------------------------------------------------
# pair-distance scores (CSV)

_SCORE_FIELDS = ["pair_id", "s_k", "s_t", "pd", "alpha"]


def read_scores(path: str) -> list[PairDistance]:
    problems: list[PrideError] = []
    rows: list[PairDistance] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        table = list(reader)
    if not table or table[0] != _SCORE_FIELDS:
        raise FormatError(path, [MalformedLine(
            f"expected header {','.join(_SCORE_FIELDS)}", line_no=1,
            path=path)])
    for line_no, row in enumerate(table[1:], start=2):
        if len(row) != len(_SCORE_FIELDS):
            problems.append(MalformedLine(
                f"expected {len(_SCORE_FIELDS)} columns, got {len(row)}",
                line_no=line_no, path=path))
            continue
        pair_id = row[0]
        try:
            s_k, s_t, pd, alpha = (float(v) for v in row[1:])
        except ValueError:
            problems.append(MalformedLine(
                "numeric columns must be decimal reals", line_no=line_no,
                path=path))
            continue
        if not all(math.isfinite(v) for v in (s_k, s_t, pd, alpha)):
            problems.append(MalformedLine(
                "numeric columns must be finite", line_no=line_no,
                path=path))
            continue
        if not 0.0 <= alpha <= 1.0:
            problems.append(MalformedLine(
                f"alpha must be in [0, 1], got {alpha}", line_no=line_no,
                path=path))
            continue
        if abs(pd - paraphrase_distance(s_k, s_t, alpha)) > 1e-6:
            problems.append(MalformedLine(
                "pd column inconsistent with s_k, s_t and alpha",
                line_no=line_no, path=path))
            continue
        if pair_id in seen:
            problems.append(DuplicateId(
                f"pair_id {pair_id!r} already seen", line_no=line_no,
                path=path))
            continue
        seen.add(pair_id)
        rows.append(PairDistance(pair_id=pair_id, s_k=s_k, s_t=s_t, pd=pd,
                                 alpha=alpha))
    if problems:
        raise FormatError(path, problems)
    return rows


def write_scores(rows: Iterable[PairDistance], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(_SCORE_FIELDS)
        for r in rows:
            writer.writerow([r.pair_id, format_float(r.s_k),
                             format_float(r.s_t), format_float(r.pd),
                             format_float(r.alpha)])


# ---------------------------------------------------------------------------
# shared helpers

def _check_jsonl_header(path, lines, kind, problems):
    """Validate the JSONL header; return (line_no, line) data pairs."""
    data = [(no, ln) for no, ln in enumerate(lines, start=1)
            if ln.strip() != ""]
    if not data:
        problems.append(MalformedLine(
            "empty file: missing format_version header", line_no=1,
            path=path))
        return []
    line_no, first = data[0]
    try:
        header = json.loads(first)
    except json.JSONDecodeError:
        header = None
    if (not isinstance(header, dict)
            or header.get("format_version") != FORMAT_VERSION
            or header.get("kind") != kind):
        problems.append(MalformedLine(
            f'first line must be {{"format_version": {FORMAT_VERSION}, '
            f'"kind": "{kind}"}}', line_no=line_no, path=path))
        return []
    return data[1:]


def _req_str(obj: dict, key: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ValueError(f"{key} must be a string")
    return value


def _req_int(obj: dict, key: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{key} must be an integer")
    return value
