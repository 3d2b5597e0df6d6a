import hashlib
import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from pride.instructions import CONTENT_POS, Instruction, Token

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


def word_vector(word: str, dim: int = 6) -> tuple[float, ...]:
    """Deterministic unit vector seeded by the lowercased word."""
    seed = int.from_bytes(
        hashlib.sha256(word.lower().encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    v = v / np.linalg.norm(v)
    return tuple(float(x) for x in v)


def build_instruction(sent_id: str, words, with_embeddings: bool = False,
                      dim: int = 6) -> Instruction:
    """Assemble an Instruction from (surface, pos, head, deprel) rows."""
    tokens = []
    for i, (surface, pos, head, deprel) in enumerate(words, start=1):
        emb = None
        if with_embeddings and pos in CONTENT_POS:
            emb = word_vector(surface, dim)
        tokens.append(Token(index=i, surface=surface, lemma=surface.lower(),
                            pos=pos, head=head, deprel=deprel,
                            embedding=emb))
    text = " ".join(w[0] for w in words)
    return Instruction(id=sent_id, text=text, tokens=tuple(tokens))
