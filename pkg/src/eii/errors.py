"""Exceptions shared across the package."""


class Uncorrectable(Exception):
    """A decoder could not resolve every erased or corrupted symbol.

    ``partial`` holds whatever the decoder managed to recover (rows or
    columns it resolved are correct), ``residual`` is the mask of positions
    still unknown.
    """

    def __init__(self, message="uncorrectable pattern", partial=None, residual=None):
        super().__init__(message)
        self.partial = partial
        self.residual = residual


class MiscorrectionDetected(Exception):
    """Decoding produced an array that fails the membership test."""

    def __init__(self, message="decoded array is not a codeword", candidate=None, witness=None):
        super().__init__(message)
        self.candidate = candidate
        self.witness = witness


class CapabilityUnavailable(Exception):
    """No error-decoding strategy is available for this component code."""


class NotSystematic(Exception):
    """The first k coordinates are not an information set."""


class ConstructionError(ValueError):
    """Inconsistent parameters when building a code."""
