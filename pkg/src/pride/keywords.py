"""Keyword similarity S_K: greedy best-match cosine over content words.

For original content words o_1..o_n and paraphrase content words p_1..p_m,
S_K = (1/n) * sum_i max_j cos(e(o_i), e(p_j)). The direction is fixed:
the original side drives the average and no symmetrization happens here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, MissingEmbedding, ZeroVector
from .instructions import Instruction, Token, extract_content_words

Vector = tuple[float, ...]


@dataclass(frozen=True)
class EmbeddingTable:
    """Read-only vectors keyed by (instruction id, token index).

    Keying per occurrence rather than per word type keeps contextual
    upstream embedding models representable.
    """

    dimension: int
    entries: Mapping[tuple[str, int], Vector]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("embedding dimension must be positive")
        for key, vec in self.entries.items():
            if len(vec) != self.dimension:
                raise DimensionMismatch(
                    f"vector for {key} has length {len(vec)}, "
                    f"table dimension is {self.dimension}")
            if not any(vec):
                raise ZeroVector(f"vector for {key} is all-zero")

    def get(self, instruction_id: str, token_index: int) -> Vector | None:
        return self.entries.get((instruction_id, token_index))


def cosine(u, v) -> float:
    """Cosine similarity of two equal-length nonzero vectors.

    The result is clamped into [-1, 1]; floating-point rounding can push
    the raw ratio a few ulp outside, and downstream identities (S_K of an
    instruction with itself is exactly 1) rely on the bound being hard.
    """
    u = tuple(u)
    v = tuple(v)
    if len(u) != len(v):
        raise DimensionMismatch(
            f"cosine of vectors with lengths {len(u)} and {len(v)}")
    if len(u) == 0:
        raise ZeroVector("cosine of empty vectors")
    dot = math.fsum(a * b for a, b in zip(u, v))
    nu = math.fsum(a * a for a in u)
    nv = math.fsum(b * b for b in v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine with an all-zero vector")
    if u == v:
        return 1.0
    value = dot / math.sqrt(nu * nv)
    return max(-1.0, min(1.0, value))


def _vector_for(instr: Instruction, token: Token,
                table: EmbeddingTable) -> Vector:
    vec = table.get(instr.id, token.index)
    if vec is None:
        vec = token.embedding
    if vec is None:
        raise MissingEmbedding(
            f"no vector for token {token.index} ({token.surface!r}) "
            f"of instruction {instr.id!r}")
    return vec


def keyword_similarity(original: Instruction, paraphrase: Instruction,
                       table: EmbeddingTable) -> float:
    """S_K of a pair under the given embedding table.

    Raises EmptyContentSet if either side has no content words and
    MissingEmbedding if any content word lacks a vector. Not clamped:
    adversarial embeddings may push individual cosines negative, and the
    distance combination clamps later.
    """
    orig_words = extract_content_words(original)
    para_words = extract_content_words(paraphrase)
    orig_vecs = [_vector_for(original, t, table) for t in orig_words]
    para_vecs = [_vector_for(paraphrase, t, table) for t in para_words]
    best = [max(cosine(ov, pv) for pv in para_vecs) for ov in orig_vecs]
    return math.fsum(best) / len(best)
