"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class Mv2BoolError(Exception):
    """Base class for all errors raised by this package."""


class SpecificationError(Mv2BoolError):
    """The caller violated an operation contract (unbound variable,
    wrong support arity, non-total modality map, malformed mode...)."""


class CapacityError(Mv2BoolError):
    """A state space exceeds the configured enumeration cap."""

    def __init__(self, message: str, size: int, cap: int):
        super().__init__(message)
        self.size = size
        self.cap = cap


class ParseError(Mv2BoolError):
    """Syntax or validation error in an input file, with a source span."""

    def __init__(self, message: str, span=None):
        self.span = span
        self.bare_message = message
        super().__init__(f"{span}: {message}" if span is not None else message)


class ConversionRefused(Mv2BoolError):
    """A conversion hypothesis does not hold for the given network/coding.

    ``hypothesis`` names the failed requirement (``unitary_stepwise``,
    ``neighbourhood_preserving``, ``zero_profile_codes_zero``,
    ``local_to_support_mode``).
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"conversion refused: hypothesis '{hypothesis}' does not hold"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class MarkerCoverageError(Mv2BoolError):
    """Some variable has no sign marker in its support."""

    def __init__(self, uncovered, markers):
        self.uncovered = tuple(uncovered)
        self.markers = frozenset(markers)
        super().__init__(
            "no sign marker for variable(s): " + ", ".join(self.uncovered)
        )


class SignRecoveryError(Mv2BoolError):
    """A signed arc cannot be recovered from marker pairs, or marker
    pairs disagree on the sign."""
