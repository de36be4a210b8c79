"""Exception types shared across the toolkit."""


class DasegError(Exception):
    """Base class for all domain errors raised by daseg."""


class CorpusImportError(DasegError):
    """Raised when a native corpus distribution cannot be parsed."""


class CorpusFormatError(DasegError):
    """Raised when a serialized corpus file violates the documented grammar."""


class PredictionsFormatError(DasegError):
    """Raised when a predictions file violates the documented grammar."""


class EvaluationError(DasegError):
    """Raised when a (reference, hypothesis) pair is not comparable."""


class ModelFormatError(DasegError):
    """Raised when a tagger model file is corrupt or has a bad version."""
