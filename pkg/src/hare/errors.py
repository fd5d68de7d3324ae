"""Exception types shared across the package."""


class HareError(Exception):
    """Base class for all package-specific errors."""


class EmptyDocument(HareError):
    """Raised when a text to split contains no sentences."""


class ParseError(HareError):
    """A corpus record could not be parsed; carries the line number."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class EmptyCorpus(HareError):
    """No documents survived loading/filtering."""


class ConfigError(HareError):
    """Invalid configuration or policy specification."""


class DimensionMismatch(HareError):
    """Vectors of different dimensionality were combined."""


class MissingEmbedding(HareError):
    """A (document, sentence) pair had no stored vector."""


class NormalizationError(HareError):
    """A vector with zero norm cannot be normalized."""


class TooFewPoints(HareError):
    """Fewer points than requested clusters."""


class DegenerateImportances(HareError):
    """Importance weights sum to zero or less; coverage is undefined."""


class ContractViolation(HareError):
    """A policy session was driven outside its decide/observe contract."""


class NoShownSentences(HareError):
    """Acceptance rate is undefined for a session that showed nothing."""


class IoError(HareError):
    """A report or log file could not be written."""
