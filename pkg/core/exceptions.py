"""
Domain error hierarchy shared by every SkyFuse app.
"""
from config.constants import ERROR_MESSAGES


class SkyFuseError(Exception):
    """Base class for all simulator errors."""

    default_message = 'SkyFuse error'

    def __init__(self, message=None):
        super().__init__(message or self.default_message)


class InvalidArgumentError(SkyFuseError, ValueError):
    default_message = ERROR_MESSAGES['invalid_argument']


class DegenerateInputError(SkyFuseError, ValueError):
    default_message = ERROR_MESSAGES['degenerate_input']


class UndefinedCorrelationError(SkyFuseError, ValueError):
    default_message = ERROR_MESSAGES['undefined_correlation']


class UndefinedCosineError(SkyFuseError, ValueError):
    default_message = ERROR_MESSAGES['undefined_cosine']


class CorruptStreamError(SkyFuseError):
    default_message = ERROR_MESSAGES['corrupt_stream']


class ConfigurationError(SkyFuseError):
    default_message = ERROR_MESSAGES['invalid_config']


class TrainingFailure(SkyFuseError):
    """Raised when a loss goes non-finite; keeps the history seen so far."""

    default_message = ERROR_MESSAGES['training_failure']

    def __init__(self, message=None, history=None):
        super().__init__(message)
        self.history = list(history or [])
