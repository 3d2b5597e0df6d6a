"""Typed failures raised by the exporter."""


class AdapterError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class ManifestError(AdapterError):
    """The input manifest is unreadable or malformed."""


class ParserUnavailable(AdapterError):
    """The requested parser model cannot run in this environment."""


class EmbedderUnavailable(AdapterError):
    """The requested embedding model cannot run in this environment."""


class IndexMismatch(AdapterError):
    """Token indices in the parse file disagree with the sentence text."""


class ExportFailure(AdapterError):
    """One or more sentences could not be processed.

    Carries the per-sentence reasons so the CLI can list every failure
    instead of stopping at the first.
    """

    def __init__(self, stage: str, failures: list[tuple[str, str]]):
        self.stage = stage
        self.failures = failures
        listed = "; ".join(f"{ident}: {reason}"
                           for ident, reason in failures[:10])
        more = "" if len(failures) <= 10 else \
            f" (+{len(failures) - 10} more)"
        super().__init__(
            f"{stage} failed for {len(failures)} sentence(s): "
            f"{listed}{more}")
