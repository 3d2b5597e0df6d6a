"""Orchestration: manifest texts to parse and embedding files.

Both writers emit the line-oriented interchange formats downstream
tooling reads: a CoNLL-U style parse file and a tab-separated embedding
table, each with a ``# format_version = 1`` first line and the model
identifiers recorded as comments. Sentences are identified by a stable
hash of their text so repeated exports agree without shared state.
"""

import hashlib
from dataclasses import dataclass

from . import embedder, parser
from .errors import AdapterError, ExportFailure, IndexMismatch
from .manifest import read_sentences

FORMAT_VERSION = 1
CONTENT_POS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM"})


@dataclass(frozen=True)
class AdapterConfig:
    manifest_path: str
    parse_path: str
    embedding_path: str
    parser_model: str = parser.PARSER_MODEL
    embed_model: str = embedder.EMBED_MODEL


def sentence_id(text: str) -> str:
    return "s" + hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _format_float(x: float) -> str:
    return f"{x:.9g}"


def export_parses(config: AdapterConfig) -> list[str]:
    """Parse every distinct manifest text; returns the sentence ids."""
    parser.check_parser_model(config.parser_model)
    texts = read_sentences(config.manifest_path)

    parsed: list[tuple[str, str, list[parser.ParsedToken]]] = []
    failures: list[tuple[str, str]] = []
    for text in texts:
        if "\t" in text or "\n" in text:
            failures.append((text, "text contains a tab or newline"))
            continue
        try:
            tokens = parser.parse(text)
        except ValueError as exc:
            failures.append((text, str(exc)))
            continue
        parsed.append((sentence_id(text), text, tokens))
    if failures:
        raise ExportFailure("parsing", failures)

    with open(config.parse_path, "w", encoding="utf-8",
              newline="\n") as handle:
        handle.write(f"# format_version = {FORMAT_VERSION}\n")
        handle.write(f"# parser_model = {config.parser_model}\n")
        handle.write("\n")
        for sid, text, tokens in parsed:
            handle.write(f"# sent_id = {sid}\n")
            handle.write(f"# text = {text}\n")
            for t in tokens:
                handle.write("\t".join([
                    str(t.index), t.surface, t.lemma, t.pos, "_", "_",
                    str(t.head), t.deprel, "_", "_"]) + "\n")
            handle.write("\n")
    return [sid for sid, _, _ in parsed]


def _read_parse_blocks(path: str) -> list[tuple[str, str, list[tuple[int, str, str]]]]:
    """(sent_id, text, [(index, surface, pos)]) per block of a parse file."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise AdapterError(f"cannot read parse file {path!r}: {exc}") from exc

    blocks: list[tuple[str, str, list[tuple[int, str, str]]]] = []
    sent_id = text = None
    rows: list[tuple[int, str, str]] = []

    def finish() -> None:
        nonlocal sent_id, text, rows
        if rows:
            if sent_id is None:
                raise AdapterError(f"{path}: sentence block lacks a sent_id")
            blocks.append((sent_id, text or "", rows))
        sent_id = text = None
        rows = []

    for line_no, line in enumerate(lines, start=1):
        if line.strip() == "":
            finish()
        elif line.startswith("#"):
            key, _, value = line.lstrip("# ").partition("=")
            if key.strip() == "sent_id":
                sent_id = value.strip()
            elif key.strip() == "text":
                text = value.strip()
        else:
            cols = line.split("\t")
            if len(cols) != 10:
                raise AdapterError(
                    f"{path}:{line_no}: expected 10 columns, "
                    f"got {len(cols)}")
            rows.append((int(cols[0]), cols[1], cols[3]))
    finish()
    return blocks


def export_embeddings(config: AdapterConfig) -> int:
    """Embed every content-word token; returns the vector count.

    The parse file must already exist. Token indices are cross-checked
    by re-tokenizing each recorded text; a disagreement means the parse
    file was not produced for these sentences and the export stops.
    """
    embedder.check_embed_model(config.embed_model)
    blocks = _read_parse_blocks(config.parse_path)

    for sid, text, rows in blocks:
        indices = [i for i, _, _ in rows]
        if indices != list(range(1, len(rows) + 1)):
            raise IndexMismatch(
                f"sentence {sid!r}: token ids are not contiguous 1..n")
        if text and len(parser.tokenize(text)) != len(rows):
            raise IndexMismatch(
                f"sentence {sid!r}: recorded text tokenizes to "
                f"{len(parser.tokenize(text))} tokens but the parse "
                f"has {len(rows)} rows")

    count = 0
    with open(config.embedding_path, "w", encoding="utf-8",
              newline="\n") as handle:
        handle.write(f"# format_version = {FORMAT_VERSION}\n")
        handle.write(f"# parser_model = {config.parser_model}\n")
        handle.write(f"# embed_model = {config.embed_model}\n")
        handle.write(f"# dimension = {embedder.DIMENSION}\n")
        for sid, _, rows in blocks:
            for index, surface, pos in rows:
                if pos not in CONTENT_POS:
                    continue
                vector = embedder.embed_word(surface)
                rendered = " ".join(_format_float(v) for v in vector)
                handle.write(f"{sid}\t{index}\t{rendered}\n")
                count += 1
    return count


def run_export(config: AdapterConfig) -> tuple[int, int]:
    """Full export; returns (sentence count, vector count)."""
    sids = export_parses(config)
    vectors = export_embeddings(config)
    return len(sids), vectors
