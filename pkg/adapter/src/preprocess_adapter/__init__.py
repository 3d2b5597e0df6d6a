"""Exporter that turns instruction manifests into parse and embedding files."""

from .embedder import DIMENSION, EMBED_MODEL, embed_word
from .errors import (AdapterError, EmbedderUnavailable, ExportFailure,
                     IndexMismatch, ManifestError, ParserUnavailable)
from .export import (AdapterConfig, export_embeddings, export_parses,
                     run_export, sentence_id)
from .manifest import read_sentences
from .parser import PARSER_MODEL, ParsedToken, parse, tag, tokenize

__all__ = [
    "AdapterConfig",
    "AdapterError",
    "DIMENSION",
    "EMBED_MODEL",
    "EmbedderUnavailable",
    "ExportFailure",
    "IndexMismatch",
    "ManifestError",
    "PARSER_MODEL",
    "ParsedToken",
    "ParserUnavailable",
    "embed_word",
    "export_embeddings",
    "export_parses",
    "parse",
    "read_sentences",
    "run_export",
    "sentence_id",
    "tag",
    "tokenize",
]
