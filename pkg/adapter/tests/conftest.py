import json
import pathlib

import pytest

REPO = pathlib.Path(__file__).resolve().parents[2]
PRIMARY_FIXTURES = REPO / "tests" / "fixtures"

MANIFEST_HEADER = '{"format_version": 1, "kind": "manifest"}'


def write_manifest(path, pairs):
    """pairs: iterable of (pair_id, original_text, paraphrase_text)."""
    lines = [MANIFEST_HEADER]
    for pair_id, original, paraphrase in pairs:
        lines.append(json.dumps({
            "pair_id": pair_id,
            "task_id": "t0",
            "original_text": original,
            "paraphrase_text": paraphrase,
            "object_var": "none",
            "action_var": "none",
        }))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def original_texts():
    """The ten task texts recorded in the checked-in full manifest."""
    lines = (PRIMARY_FIXTURES / "manifest_full.jsonl").read_text(
        encoding="utf-8").splitlines()
    texts = []
    for line in lines[1:]:
        if not line.strip():
            continue
        text = json.loads(line)["original_text"]
        if text not in texts:
            texts.append(text)
    return texts


@pytest.fixture()
def small_manifest():
    return PRIMARY_FIXTURES / "manifest_small.jsonl"


@pytest.fixture()
def exported(tmp_path, small_manifest):
    """Parse and embedding files exported from the small manifest."""
    from preprocess_adapter import AdapterConfig, run_export

    config = AdapterConfig(
        manifest_path=str(small_manifest),
        parse_path=str(tmp_path / "parses.conllu"),
        embedding_path=str(tmp_path / "embeddings.tsv"))
    run_export(config)
    return config
