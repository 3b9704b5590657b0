"""Exception types shared across the toolkit."""


class SnacsError(Exception):
    """Base class for all toolkit errors."""


class UnknownLabel(SnacsError, ValueError):
    def __init__(self, text):
        super().__init__(f"unknown label: {text!r}")
        self.text = text


class MalformedLabel(SnacsError, ValueError):
    pass


class SpecialWithConstrual(MalformedLabel):
    pass


class FormatError(SnacsError):
    """A file could not be read under its declared format."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.message = message
        self.line = line


class ValidationError(SnacsError):
    """Raised by strict corpus loading on the first label violation."""

    def __init__(self, code, message, line=None):
        prefix = "" if line is None else f"line {line}: "
        super().__init__(f"{prefix}{code} {message}")
        self.code = code
        self.message = message
        self.line = line


class InvalidExample(SnacsError):
    pass


class CorpusMismatch(SnacsError):
    pass


class EmptyTrainingData(SnacsError):
    pass
