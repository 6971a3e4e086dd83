"""Exceptions raised by the toolkit. `Unknown` outcomes are values, not errors."""


class KneadingError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(KneadingError):
    pass


class WordParseError(KneadingError, ValueError):
    """A word literal does not match the grammar or names an unknown stream."""


class DepthExhaustedError(KneadingError):
    """A rule-defined stream was queried past its available depth."""

    def __init__(self, name: str, index: int, available: int):
        super().__init__(
            f"stream @{name}: index {index} requested but only {available} symbols are available"
        )
        self.name = name
        self.index = index
        self.available = available


class BranchUndecidableError(KneadingError):
    """A point's side of p cannot be certified at the current precision."""

    def __init__(self, step: int, bits: int):
        super().__init__(f"branch at step {step} undecidable with {bits} bits")
        self.step = step
        self.bits = bits


class PrecisionCeilingError(KneadingError):
    """Adaptive precision hit the configured ceiling."""


class RootNotFoundError(KneadingError):
    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ParameterRangeError(KneadingError, ValueError):
    """Map parameters violate 1 < a <= 2 or 1 - 1/a <= p <= 1/a."""


class BruteforceLimitError(KneadingError, ValueError):
    pass
