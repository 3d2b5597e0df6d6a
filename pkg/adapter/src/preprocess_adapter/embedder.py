"""Deterministic hashed-feature word embeddings.

Each word's vector blends a shared semantic-group direction with a
word-specific hashed direction, then normalizes to unit length. Words
in the same group land at a fixed cosine (the group weight squared,
about 0.46) plus hash noise; unrelated words land near zero. Vectors
depend only on the lowercased word, never on position or sentence, so
repeated exports are byte-identical.
"""

import hashlib
import math
import random

from .errors import EmbedderUnavailable
from .lexicon import GROUP_OF_WORD

EMBED_MODEL = "featlex-256"
DIMENSION = 256

# blend weights: cosine between same-group words ~= _GROUP_WEIGHT ** 2
_GROUP_WEIGHT = math.sqrt(0.46)
_WORD_WEIGHT = math.sqrt(0.54)


def check_embed_model(model: str) -> None:
    if model != EMBED_MODEL:
        raise EmbedderUnavailable(
            f"embedding model {model!r} is not available in this "
            f"environment; the only local model is {EMBED_MODEL!r}")


def _hashed_direction(seed_text: str) -> list[float]:
    seed = int.from_bytes(
        hashlib.sha256(seed_text.encode("utf-8")).digest()[:8], "big")
    rng = random.Random(seed)
    vec = [rng.gauss(0.0, 1.0) for _ in range(DIMENSION)]
    norm = math.sqrt(math.fsum(x * x for x in vec))
    return [x / norm for x in vec]


def embed_word(word: str) -> list[float]:
    low = word.lower()
    word_dir = _hashed_direction("word:" + low)
    group = GROUP_OF_WORD.get(low)
    if group is None:
        return word_dir
    group_dir = _hashed_direction("group:" + group)
    blended = [_GROUP_WEIGHT * g + _WORD_WEIGHT * w
               for g, w in zip(group_dir, word_dir)]
    norm = math.sqrt(math.fsum(x * x for x in blended))
    return [x / norm for x in blended]
