"""Instructions, tokens, parse-derived trees, and the variation taxonomy.

An instruction is a parsed sentence: ordered tokens carrying universal POS
tags and dependency heads. Paraphrase pairs are tagged along two axes,
how the target object is referenced and how the action is expressed; the
cross product minus the untouched (none, none) cell gives 43 legal
combinations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EmptyContentSet, MalformedParse, UnknownVariationTag
from .trees import DependencyTree

# The 17 universal POS tags (UD v2).
UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

# Open-class tags treated as content words. PART is deliberately outside,
# so phrasal-verb particles ("turn on") never count as content.
CONTENT_POS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM"})


class ObjectVariation(Enum):
    """How the paraphrase refers to the target object."""

    NONE = "none"
    ADDITION = "addition"
    SP_CONTEXTUAL = "sp_contextual"
    SP_HABITUAL = "sp_habitual"

    @classmethod
    def from_tag(cls, tag: str) -> "ObjectVariation":
        try:
            return cls(tag)
        except ValueError:
            raise UnknownVariationTag(
                f"unknown object variation tag {tag!r}") from None


class ActionVariation(Enum):
    """How the paraphrase expresses the action to perform."""

    NONE = "none"
    ADDITION = "addition"
    SP_CONTEXTUAL = "sp_contextual"
    SP_HABITUAL = "sp_habitual"
    COORDINATION = "coordination"
    SUBORDINATION = "subordination"
    NEED_STATEMENT = "need_statement"
    EMBEDDED_IMPERATIVE = "embedded_imperative"
    PERMISSION_DIRECTIVE = "permission_directive"
    QUESTION_DIRECTIVE = "question_directive"
    HINT = "hint"

    @classmethod
    def from_tag(cls, tag: str) -> "ActionVariation":
        try:
            return cls(tag)
        except ValueError:
            raise UnknownVariationTag(
                f"unknown action variation tag {tag!r}") from None


def legal_combinations() -> list[tuple[ObjectVariation, ActionVariation]]:
    """All 43 legal (object, action) combinations, in canonical enum order."""
    return [(o, a)
            for o in ObjectVariation
            for a in ActionVariation
            if not (o is ObjectVariation.NONE and a is ActionVariation.NONE)]


@dataclass(frozen=True)
class Token:
    """One token of a parsed sentence.

    ``index`` is 1-based sentence position; ``head`` points at the governor
    token's index, 0 meaning the root. ``lemma`` is diagnostic only; S_K
    matching operates on surface-form embeddings.
    """

    index: int
    surface: str
    lemma: str
    pos: str
    head: int
    deprel: str
    embedding: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} names itself as head")
        if self.pos not in UPOS_TAGS:
            raise ValueError(f"{self.pos!r} is not a universal POS tag")


@dataclass(frozen=True)
class Instruction:
    """A sentence with its tokens, identified by an opaque id.

    Construction checks index contiguity and head ranges; single-rootedness
    and acyclicity are checked where a tree is actually formed (see
    :func:`build_dependency_tree` and the parse reader), so malformed head
    structures are reportable rather than unconstructible.
    """

    id: str
    text: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError(f"instruction {self.id!r} has no tokens")
        indices = [t.index for t in self.tokens]
        if indices != list(range(1, len(self.tokens) + 1)):
            raise ValueError(
                f"instruction {self.id!r}: token indices must be 1..n in order")
        n = len(self.tokens)
        for t in self.tokens:
            if t.head > n:
                raise ValueError(
                    f"instruction {self.id!r}: head {t.head} beyond last token")


@dataclass(frozen=True)
class ParaphrasePair:
    """Original and paraphrase instructions plus their variation tags."""

    pair_id: str
    task_id: int
    original: Instruction
    paraphrase: Instruction
    object_var: ObjectVariation
    action_var: ActionVariation

    def __post_init__(self):
        if not 0 <= self.task_id <= 9:
            raise ValueError(f"task_id must be in 0..9, got {self.task_id}")
        if (self.object_var is ObjectVariation.NONE
                and self.action_var is ActionVariation.NONE):
            raise ValueError(
                f"pair {self.pair_id!r} varies neither axis; "
                "(none, none) is not a paraphrase")


def extract_content_words(instr: Instruction) -> list[Token]:
    """Content words of an instruction, in sentence order.

    Filters on the open-class POS set; duplicates stay as separate entries
    because keyword matching averages over occurrences, not word types.
    """
    content = [t for t in instr.tokens if t.pos in CONTENT_POS]
    if not content:
        raise EmptyContentSet(
            f"instruction {instr.id!r} has no content words")
    return content


def build_dependency_tree(instr: Instruction) -> DependencyTree:
    """Ordered labeled tree over the instruction's tokens.

    Node i corresponds to token i+1, labeled with the composite
    (pos, deprel); children are ordered by token index. Raises
    MalformedParse when heads are cyclic or not single-rooted.
    """
    labels = [(t.pos, t.deprel) for t in instr.tokens]
    parents: list[int | None] = []
    for t in instr.tokens:
        parents.append(None if t.head == 0 else t.head - 1)
    try:
        return DependencyTree.from_parent_links(labels, parents)
    except ValueError as exc:
        raise MalformedParse(
            f"instruction {instr.id!r}: {exc}", sent_id=instr.id) from None
