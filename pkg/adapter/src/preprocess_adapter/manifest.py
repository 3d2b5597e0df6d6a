"""Reader for the instruction-pair manifest consumed by the exporter.

The manifest is JSONL: a header line declaring the format, then one
object per pair. The exporter only needs the sentence texts, so this
reader extracts original_text and paraphrase_text and leaves the rest
of each record alone.
"""

import json

from .errors import ManifestError

FORMAT_VERSION = 1


def read_sentences(path: str) -> list[str]:
    """Distinct sentence texts in first-occurrence order.

    Each record contributes its original before its paraphrase; a text
    that appears in several records is kept once.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path!r}: {exc}") from exc

    if not lines:
        raise ManifestError(f"{path}: empty file, missing header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        header = None
    if (not isinstance(header, dict)
            or header.get("format_version") != FORMAT_VERSION
            or header.get("kind") != "manifest"):
        raise ManifestError(
            f'{path}: first line must be {{"format_version": '
            f'{FORMAT_VERSION}, "kind": "manifest"}}')

    texts: list[str] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestError(
                f"{path}:{line_no}: invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ManifestError(
                f"{path}:{line_no}: expected an object per line")
        for key in ("original_text", "paraphrase_text"):
            value = obj.get(key)
            if not isinstance(value, str) or not value.strip():
                raise ManifestError(
                    f"{path}:{line_no}: missing or empty {key}")
            if value not in seen:
                seen.add(value)
                texts.append(value)
    return texts
