"""Regenerate the checked-in test fixtures under tests/fixtures/.

Deterministic by construction: running it twice produces byte-identical
files. The large manifest reproduces the benchmark's published
composition (cell counts of the variation grid and paraphrase counts per
original instruction); the small manifest, parses, embeddings and
episodes form a complete miniature dataset the CLI tests drive
end to end.
"""

from __future__ import annotations

import hashlib
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pride.instructions import (CONTENT_POS, ActionVariation, Instruction,
                                ObjectVariation, Token,
                                legal_combinations)
from pride.io_formats import (ManifestRecord, sentence_id, write_embeddings,
                              write_episodes, write_manifest, write_parses)
from pride.keywords import EmbeddingTable
from pride.trajectory import Episode, Trajectory

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"

TASK_TEXTS = [
    "Put the cream cheese in the bowl",
    "Open the middle drawer of the cabinet",
    "Turn on the stove",
    "Put the wine bottle on the rack",
    "Push the plate to the front of the table",
    "Put the bowl on top of the cabinet",
    "Pick up the black bowl and place it on the plate",
    "Close the top drawer of the cabinet",
    "Put the ketchup in the basket",
    "Stack the right bowl on the left bowl",
]

# Benchmark composition: paraphrase count per (object, action) cell.
# Row order follows ObjectVariation, column order ActionVariation; the
# (none, none) cell is illegal and holds no pairs.
CELL_COUNTS = {
    "none": [0, 100, 79, 74, 98, 75, 93, 93, 83, 87, 88],
    "addition": [98, 100, 100, 100, 100, 100, 100, 99, 99, 99, 100],
    "sp_contextual": [87, 100, 100, 100, 100, 99, 100, 100, 100, 94, 96],
    "sp_habitual": [74, 100, 98, 100, 97, 94, 100, 95, 100, 95, 98],
}

# Paraphrase count per original instruction, aligned with TASK_TEXTS.
ORIGINAL_TOTALS = [423, 416, 414, 413, 411, 410, 410, 406, 403, 386]

# Hand annotation of each fixture sentence: (surface, pos, head, deprel).
PARSE_ROWS = {
    TASK_TEXTS[0]: [
        ("Put", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("cream", "NOUN", 4, "compound"), ("cheese", "NOUN", 1, "obj"),
        ("in", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("bowl", "NOUN", 1, "obl")],
    TASK_TEXTS[1]: [
        ("Open", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("middle", "ADJ", 4, "amod"), ("drawer", "NOUN", 1, "obj"),
        ("of", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("cabinet", "NOUN", 4, "nmod")],
    TASK_TEXTS[2]: [
        ("Turn", "VERB", 0, "root"), ("on", "ADP", 1, "compound:prt"),
        ("the", "DET", 4, "det"), ("stove", "NOUN", 1, "obj")],
    TASK_TEXTS[3]: [
        ("Put", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("wine", "NOUN", 4, "compound"), ("bottle", "NOUN", 1, "obj"),
        ("on", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("rack", "NOUN", 1, "obl")],
    TASK_TEXTS[4]: [
        ("Push", "VERB", 0, "root"), ("the", "DET", 3, "det"),
        ("plate", "NOUN", 1, "obj"), ("to", "ADP", 6, "case"),
        ("the", "DET", 6, "det"), ("front", "NOUN", 1, "obl"),
        ("of", "ADP", 9, "case"), ("the", "DET", 9, "det"),
        ("table", "NOUN", 6, "nmod")],
    TASK_TEXTS[5]: [
        ("Put", "VERB", 0, "root"), ("the", "DET", 3, "det"),
        ("bowl", "NOUN", 1, "obj"), ("on", "ADP", 5, "case"),
        ("top", "NOUN", 1, "obl"), ("of", "ADP", 8, "case"),
        ("the", "DET", 8, "det"), ("cabinet", "NOUN", 5, "nmod")],
    TASK_TEXTS[6]: [
        ("Pick", "VERB", 0, "root"), ("up", "ADP", 1, "compound:prt"),
        ("the", "DET", 5, "det"), ("black", "ADJ", 5, "amod"),
        ("bowl", "NOUN", 1, "obj"), ("and", "CCONJ", 7, "cc"),
        ("place", "VERB", 1, "conj"), ("it", "PRON", 7, "obj"),
        ("on", "ADP", 11, "case"), ("the", "DET", 11, "det"),
        ("plate", "NOUN", 7, "obl")],
    TASK_TEXTS[7]: [
        ("Close", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("top", "ADJ", 4, "amod"), ("drawer", "NOUN", 1, "obj"),
        ("of", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("cabinet", "NOUN", 4, "nmod")],
    TASK_TEXTS[8]: [
        ("Put", "VERB", 0, "root"), ("the", "DET", 3, "det"),
        ("ketchup", "NOUN", 1, "obj"), ("in", "ADP", 6, "case"),
        ("the", "DET", 6, "det"), ("basket", "NOUN", 1, "obl")],
    TASK_TEXTS[9]: [
        ("Stack", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("right", "ADJ", 4, "amod"), ("bowl", "NOUN", 1, "obj"),
        ("on", "ADP", 8, "case"), ("the", "DET", 8, "det"),
        ("left", "ADJ", 8, "amod"), ("bowl", "NOUN", 1, "obl")],
    "put the cheese spread in the vessel": [
        ("put", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("cheese", "NOUN", 4, "compound"), ("spread", "NOUN", 1, "obj"),
        ("in", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("vessel", "NOUN", 1, "obl")],
    "Put the wine bottle on the wooden rack": [
        ("Put", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("wine", "NOUN", 4, "compound"), ("bottle", "NOUN", 1, "obj"),
        ("on", "ADP", 8, "case"), ("the", "DET", 8, "det"),
        ("wooden", "ADJ", 8, "amod"), ("rack", "NOUN", 1, "obl")],
    "Could you turn on the stove": [
        ("Could", "AUX", 3, "aux"), ("you", "PRON", 3, "nsubj"),
        ("turn", "VERB", 0, "root"), ("on", "ADP", 3, "compound:prt"),
        ("the", "DET", 6, "det"), ("stove", "NOUN", 3, "obj")],
    "Open the center drawer of the cabinet": [
        ("Open", "VERB", 0, "root"), ("the", "DET", 4, "det"),
        ("center", "NOUN", 4, "compound"), ("drawer", "NOUN", 1, "obj"),
        ("of", "ADP", 7, "case"), ("the", "DET", 7, "det"),
        ("cabinet", "NOUN", 4, "nmod")],
}

SMALL_PAIRS = [
    ("p0001", 4, TASK_TEXTS[0], "put the cheese spread in the vessel",
     "sp_contextual", "none"),
    ("p0002", 3, TASK_TEXTS[3], "Put the wine bottle on the wooden rack",
     "addition", "none"),
    ("p0003", 2, TASK_TEXTS[2], "Could you turn on the stove",
     "none", "question_directive"),
    ("p0004", 1, TASK_TEXTS[1], "Open the center drawer of the cabinet",
     "sp_habitual", "none"),
]

EMBED_DIM = 8


def word_vector(word: str, dim: int = EMBED_DIM) -> tuple[float, ...]:
    """Deterministic unit vector seeded by the lowercased word."""
    seed = int.from_bytes(
        hashlib.sha256(word.lower().encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    v = v / np.linalg.norm(v)
    return tuple(float(x) for x in v)


def build_instruction(text: str) -> Instruction:
    tokens = tuple(
        Token(index=i, surface=surface, lemma=surface.lower(), pos=pos,
              head=head, deprel=deprel)
        for i, (surface, pos, head, deprel)
        in enumerate(PARSE_ROWS[text], start=1))
    return Instruction(id=sentence_id(text), text=text, tokens=tokens)


def small_manifest() -> list[ManifestRecord]:
    return [ManifestRecord(pair_id=pid, task_id=task, original_text=orig,
                           paraphrase_text=para,
                           object_var=ObjectVariation.from_tag(obj),
                           action_var=ActionVariation.from_tag(act))
            for pid, task, orig, para, obj, act in SMALL_PAIRS]


def full_manifest() -> list[ManifestRecord]:
    """Northwest-corner fill of the cell x original contingency."""
    supplies = []
    for obj, act in legal_combinations():
        count = CELL_COUNTS[obj.value][list(ActionVariation).index(act)]
        if count:
            supplies.append((obj, act, count))
    demands = list(ORIGINAL_TOTALS)

    records = []
    serial = 0
    origin = 0
    for obj, act, remaining in supplies:
        while remaining:
            take = min(remaining, demands[origin])
            for _ in range(take):
                text = TASK_TEXTS[origin]
                records.append(ManifestRecord(
                    pair_id=f"p{serial:05d}", task_id=origin,
                    original_text=text,
                    paraphrase_text=(f"{text} "
                                     f"({obj.value} {act.value} {serial})"),
                    object_var=obj, action_var=act))
                serial += 1
            remaining -= take
            demands[origin] -= take
            if demands[origin] == 0 and origin + 1 < len(demands):
                origin += 1
    assert serial == sum(ORIGINAL_TOTALS)
    return records


def embedding_table() -> EmbeddingTable:
    entries = {}
    for text in PARSE_ROWS:
        instr = build_instruction(text)
        for token in instr.tokens:
            if token.pos in CONTENT_POS:
                entries[(instr.id, token.index)] = word_vector(token.surface)
    return EmbeddingTable(dimension=EMBED_DIM, entries=entries)


def line(n: int, y: float, width: int = 3, x_end: float = 1.0,
         junk: float = 7.0) -> Trajectory:
    xs = np.linspace(0.0, x_end, n)
    return Trajectory(tuple(
        (float(x), y, 0.0) + (junk,) * (width - 3) for x in xs))


def episodes() -> list[Episode]:
    """Miniature evaluation run with known classification outcomes.

    Task 4 has three successes at heights 0, 0 and 0.75 (pseudo-GT at
    0.25, success distances 0.25/0.25/0.5) plus four failures covering a
    clear Near, a p90-sensitive Near, an exact boundary tie, and a long
    overshoot that proves truncation. Task 1 has no successes, task 3 no
    failures, task 2 a single success.
    """
    xs9 = np.linspace(0.0, 2.0, 9)
    overshoot = Trajectory(tuple((float(x), 1.25, 0.0) for x in xs9))

    def ep(eid, task, pair, seed, success, traj):
        return Episode(episode_id=eid, task_id=task, pair_id=pair,
                       seed=seed, success=success, trajectory=traj)

    return [
        ep("e01", 4, "p0001", 11, True, line(5, 0.0, width=4)),
        ep("e02", 4, "p0001", 12, True, line(4, 0.0)),
        ep("e03", 4, "p0001", 13, True, line(5, 0.75)),
        ep("e04", 4, "p0001", 14, False, line(5, 0.65)),
        ep("e05", 4, "p0001", 15, False, line(4, 0.71)),
        ep("e06", 4, "p0001", 16, False, line(5, 0.75)),
        ep("e07", 4, "p0001", 17, False, overshoot),
        ep("e08", 1, "p0004", 18, False, line(5, 0.4)),
        ep("e09", 1, "p0004", 19, False, line(4, 0.6)),
        ep("e10", 3, "p0002", 20, True, line(5, 0.1)),
        ep("e11", 2, "p0003", 21, True, line(5, 0.0)),
        ep("e12", 2, "p0003", 22, False, line(5, 0.2)),
    ]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    write_manifest(full_manifest(), FIXTURES / "manifest_full.jsonl")
    write_manifest(small_manifest(), FIXTURES / "manifest_small.jsonl")
    write_parses([build_instruction(t) for t in PARSE_ROWS],
                 FIXTURES / "reference.conllu")
    write_embeddings(embedding_table(),
                     FIXTURES / "reference_embeddings.tsv",
                     comments={"source": "seeded unit vectors"})
    write_episodes(episodes(), FIXTURES / "episodes_small.jsonl")

    for name in ("manifest_full.jsonl", "manifest_small.jsonl",
                 "reference.conllu", "reference_embeddings.tsv",
                 "episodes_small.jsonl"):
        path = FIXTURES / name
        print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
