"""Typed errors raised across the toolkit.

Every failure mode callers are expected to handle has its own class so that
tests and the CLI can dispatch on type instead of parsing messages. File
readers aggregate per-line problems into a single :class:`FormatError`
whose ``problems`` list holds instances of the line-level classes below.
"""

from __future__ import annotations


class PrideError(Exception):
    """Base class for all toolkit errors.

    ``line_no``, ``sent_id`` and ``path`` are optional diagnostics attached
    by file readers; library-level raises usually leave them unset.
    """

    def __init__(self, message: str = "", *, line_no: int | None = None,
                 sent_id: str | None = None, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.line_no = line_no
        self.sent_id = sent_id
        self.path = path

    def __str__(self) -> str:
        parts = []
        if self.path is not None:
            parts.append(str(self.path))
        if self.line_no is not None:
            parts.append(f"line {self.line_no}")
        if self.sent_id is not None:
            parts.append(f"sentence {self.sent_id!r}")
        prefix = ": ".join(parts)
        return f"{prefix}: {self.message}" if prefix else self.message


# ---------------------------------------------------------------------------
# instruction / embedding errors

class EmptyContentSet(PrideError):
    """No token of an instruction passes the content-word POS filter."""


class MalformedParse(PrideError):
    """Head links of an instruction are cyclic or multi-rooted."""


class ZeroVector(PrideError):
    """An all-zero vector where cosine similarity is required."""


class DimensionMismatch(PrideError):
    """Two vectors or trajectories disagree on dimension."""


class MissingEmbedding(PrideError):
    """A content word has no vector in the embedding table."""


# ---------------------------------------------------------------------------
# metric errors

class AlphaOutOfRange(PrideError):
    """Weighting parameter alpha outside [0, 1]."""


class EmptyInput(PrideError):
    """An aggregate was asked for on an empty collection."""


class ZeroTotalDifficulty(PrideError):
    """Difficulty-weighted aggregation with a zero PD denominator."""


class ZeroSuccessRate(PrideError):
    """Overestimation is undefined for a zero success rate."""


# ---------------------------------------------------------------------------
# trajectory errors

class TooShort(PrideError):
    """Trajectory has fewer than 2 points."""


class BadK(PrideError):
    """Resampling target below 2 points."""


class NoSuccesses(PrideError):
    """A task group has no successful episode to build a pseudo-GT from."""


# ---------------------------------------------------------------------------
# stats errors

class ConstantSeries(PrideError):
    """Pearson correlation is undefined for a zero-variance series."""


class LengthMismatch(PrideError):
    """Paired series differ in length (or are too short to correlate)."""


class DegenerateInput(PrideError):
    """Agreement coefficient denominator vanished (Pe = 1)."""


class UnknownVariationTag(PrideError):
    """A variation tag does not decode to its closed enum."""


# ---------------------------------------------------------------------------
# file format errors (line-level problem classes + the aggregate)

class MalformedLine(PrideError):
    """A line that does not decode as a record of the expected shape."""


class UnknownTag(PrideError):
    """A manifest line carries a variation tag outside the taxonomy."""


class DuplicateId(PrideError):
    """A record id appears more than once in one file."""


class MissingSentId(PrideError):
    """A parse block lacks the ``# sent_id =`` comment."""


class BadColumnCount(PrideError):
    """A parse token line does not have the 10 expected columns."""


class NonTreeHeads(PrideError):
    """Head column of a sentence is multi-rooted, cyclic or out of range."""


class DimensionDrift(PrideError):
    """An embedding record's dimension differs from the file's first record."""


class DuplicateKey(PrideError):
    """An embedding (sentence id, token index) key appears twice."""


class ShortTrajectory(PrideError):
    """An episode trajectory with fewer than 2 points."""


class RaggedRows(PrideError):
    """Trajectory rows of one episode differ in width."""


class FormatError(PrideError):
    """Aggregate raised by readers; carries every per-line problem found.

    Readers scan their whole input before raising, so ``problems`` lists
    all diagnostics, in file order. No partially decoded data escapes.
    """

    def __init__(self, path: str, problems: list[PrideError]):
        self.problems = list(problems)
        first = self.problems[0] if self.problems else None
        summary = f"{len(self.problems)} problem(s) in {path}"
        if first is not None:
            summary += f"; first: {first}"
        super().__init__(summary, path=path)
