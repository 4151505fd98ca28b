"""Exception hierarchy shared by every solver and reduction."""

from __future__ import annotations


class PcpError(ValueError):
    """Base class for all errors raised by partcolor."""


class InvalidInstance(PcpError):
    """An instance violates a structural invariant.

    ``entity`` names the first offending vertex, edge or part.
    """

    def __init__(self, entity, message: str | None = None):
        self.entity = entity
        super().__init__(message or f"{type(self).__name__}({entity!r})")


class VertexInNoParts(InvalidInstance):
    pass


class VertexInTwoParts(InvalidInstance):
    pass


class SelfLoop(InvalidInstance):
    pass


class DuplicateEdge(InvalidInstance):
    pass


class EmptyPart(InvalidInstance):
    pass


class BadId(InvalidInstance):
    pass


class BadBudget(InvalidInstance):
    pass


class CapExceeded(PcpError):
    pass


class NotApplicable(PcpError):
    """The instance is outside the parameter regime a fast path handles."""


class DigitOutOfRange(PcpError):
    pass


class ShapeMismatch(PcpError):
    pass


class FieldMismatch(PcpError):
    pass


class MemoryBudgetExceeded(PcpError):
    pass


class CertificateExtractionFailed(PcpError):
    """A nonzero count was reported for a selection that is not k-colorable.

    This indicates an arithmetic bug and must never happen.
    """


class ClauseTooWide(PcpError):
    pass


class BadTarget(PcpError):
    pass


class TooManyVariables(PcpError):
    pass


class InfeasibleShape(PcpError):
    pass


class InstanceSyntaxError(PcpError):
    """Malformed line in an instance, CNF or edge-list file."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
