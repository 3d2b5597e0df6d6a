"""Paraphrase-robustness evaluation for instruction-following policies.

The package scores how hard a paraphrase is relative to its original
instruction (keyword and dependency-structure similarity combined into a
paraphrase distance), aggregates per-episode outcomes into a
difficulty-aware robustness index, and classifies failed rollouts by how
far their end-effector trajectory strays from the successful ones.
"""

from .errors import (AlphaOutOfRange, BadColumnCount, BadK, ConstantSeries,
                     DegenerateInput, DimensionDrift, DimensionMismatch,
                     DuplicateId, DuplicateKey, EmptyContentSet, EmptyInput,
                     FormatError, LengthMismatch, MalformedLine,
                     MalformedParse, MissingEmbedding, MissingSentId,
                     NonTreeHeads, NoSuccesses, PrideError, RaggedRows,
                     ShortTrajectory, TooShort, UnknownTag,
                     UnknownVariationTag, ZeroSuccessRate,
                     ZeroTotalDifficulty, ZeroVector)
from .instructions import (CONTENT_POS, UPOS_TAGS, ActionVariation,
                           Instruction, ObjectVariation, ParaphrasePair,
                           Token, build_dependency_tree,
                           extract_content_words, legal_combinations)
from .keywords import EmbeddingTable, cosine, keyword_similarity
from .metric import (AggregateMode, EpisodeScore, PairDistance, SweepResult,
                     aggregate_pride, alpha_sweep, episode_pride,
                     overestimation, paraphrase_distance)
from .stats import (CellGrid, CellStats, ValidationFlag, ValidationReport,
                    build_grid, gwet_ac1, pearson, validate_dataset)
from .trajectory import (ClassificationResult, Episode, FailureLabel,
                         TauRule, Trajectory, build_pseudo_gt,
                         classify_failures, dtw_distance, percentile,
                         resample)
from .trees import DependencyTree, structural_similarity, tree_edit_distance

__version__ = "0.1.0"

__all__ = [
    "ActionVariation", "AggregateMode", "AlphaOutOfRange", "BadColumnCount",
    "BadK", "CellGrid", "CellStats", "ClassificationResult",
    "ConstantSeries", "CONTENT_POS", "DegenerateInput", "DependencyTree",
    "DimensionDrift", "DimensionMismatch", "DuplicateId", "DuplicateKey",
    "EmbeddingTable", "EmptyContentSet", "EmptyInput", "Episode",
    "EpisodeScore", "FailureLabel", "FormatError", "Instruction",
    "LengthMismatch", "MalformedLine", "MalformedParse", "MissingEmbedding",
    "MissingSentId", "NonTreeHeads", "NoSuccesses", "ObjectVariation",
    "PairDistance", "ParaphrasePair", "PrideError", "RaggedRows",
    "ShortTrajectory", "SweepResult", "TauRule", "Token", "TooShort",
    "Trajectory", "UnknownTag", "UnknownVariationTag", "UPOS_TAGS",
    "ValidationFlag", "ValidationReport", "ZeroSuccessRate",
    "ZeroTotalDifficulty", "ZeroVector", "aggregate_pride", "alpha_sweep",
    "build_dependency_tree", "build_grid", "build_pseudo_gt",
    "classify_failures", "cosine", "dtw_distance", "episode_pride",
    "extract_content_words", "gwet_ac1", "keyword_similarity",
    "legal_combinations", "overestimation", "paraphrase_distance",
    "pearson", "percentile", "resample", "structural_similarity",
    "tree_edit_distance", "validate_dataset", "__version__",
]
