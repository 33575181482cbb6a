"""Exception hierarchy of the quantum trace library.

Every error raised on purpose by the library derives from `QuantumTraceError`. Input errors
optionally carry the file and line they were detected on so the CLI can report them as
``path:line: message``.
"""

from typing import Optional


class QuantumTraceError(Exception):
    """Base class of all library errors.

    Attributes:
        message (str): Human readable description.
        path (Optional[str]): Input file the error refers to, if any.
        line (Optional[int]): 1-based line number inside `path`, if any.
    """

    def __init__(
        self, message: str, path: Optional[str] = None, line: Optional[int] = None
    ) -> None:
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def __str__(self) -> str:
        if self.path is not None and self.line is not None:
            return f"{self.path}:{self.line}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        if self.path is not None:
            return f"{self.path}: {self.message}"
        return self.message

    def with_path(self, path: str) -> "QuantumTraceError":
        """Attach a file path to the error and return it."""
        self.path = path
        return self


class InputError(QuantumTraceError):
    """Malformed or inconsistent input data."""


class ParseError(InputError):
    """Syntax error in a `.surf` or `.tng` file."""


class GluingError(InputError):
    """An edge label occupies more than two side slots."""


class ConnectivityError(InputError):
    """The triangles do not glue into a single connected surface."""


class UnknownEdge(InputError):
    """Reference to an edge, edge copy or triangle that does not exist."""


class JunctureMismatch(InputError):
    """Triangle-side junctures and biangle word endpoints disagree."""


class OrientationError(JunctureMismatch):
    """Strand orientations cannot be assigned consistently."""


class CompositionError(JunctureMismatch):
    """Adjacent slices of a biangle word do not compose."""


class ElevationClash(InputError):
    """Two segments of one triangle share an elevation."""


class StateDomainError(InputError):
    """A boundary state is missing or given on a juncture that is not on a boundary arc."""


class NotSimple(InputError):
    """A corner-turn word cannot be laid out without crossings."""


class AlgebraError(QuantumTraceError):
    """Misuse of one of the algebraic structures."""


class ExponentOverflow(AlgebraError):
    """An ω-exponent left the supported range."""


class MismatchedAlgebra(AlgebraError):
    """Elements of two different quantum tori were combined."""


class DegenerateCorner(AlgebraError):
    """A corner was requested with equal sides."""


class NotEdgeMonomial(AlgebraError):
    """A half-edge exponent is not a combination of edge generator exponents."""


class ArityMismatch(AlgebraError):
    """Operators with incompatible arities were composed."""


class StateArityMismatch(AlgebraError):
    """A boundary state does not match the arity of an operator."""


class NoCrossing(AlgebraError):
    """A skein check was requested on a word without crossings."""


class BadConfig(AlgebraError):
    """A pair configuration is not one of the four admissible cases."""


class ZeroFactor(AlgebraError):
    """A corner factor vanishes for the requested states."""


class UnbalancedJuncture(AlgebraError):
    """The two sides of a biangle carry different sign sums."""


class ParityError(AlgebraError):
    """An X-normalized exponent is not integral."""


class NoUniqueMax(AlgebraError):
    """An element has no unique highest term."""


class StateLimitExceeded(QuantumTraceError):
    """State enumeration exceeded the configured limit."""
