"""Error types raised by the engine.

Every error is a ``GridHomologyError`` so the CLI can report the owning
error type by class name. None of them subclass ``ValueError``: pydantic
would otherwise fold them into a ``ValidationError``.
"""


class GridHomologyError(Exception):
    """Base class for all engine errors."""


# grid
class NotAPermutation(GridHomologyError):
    pass


class MarkingCollision(GridHomologyError):
    pass


class SizeMismatch(GridHomologyError):
    pass


class InternalGradingNonIntegral(GridHomologyError):
    """A grading came out non-integral where it must be integral (a bug)."""


class IllegalMove(GridHomologyError):
    pass


class BadLocation(GridHomologyError):
    pass


class NotACrossing(GridHomologyError):
    pass


# signs
class NotARectangle(GridHomologyError):
    pass


class MissingSign(GridHomologyError):
    """A sign table has no entry for a rectangle."""


# complex
class VariantMismatch(GridHomologyError):
    pass


class BadMarkingIndex(GridHomologyError):
    pass


# homology
class WindowTooSmall(GridHomologyError):
    pass


class WindowNotStabilized(GridHomologyError):
    pass


class InconsistentInducedMap(GridHomologyError):
    """Two basis choices produced different matrices for an induced map."""


# maps
class BigonConditionViolated(GridHomologyError):
    pass


class NotAStabilizationPair(GridHomologyError):
    pass


class QuadrupleGeometryInvalid(GridHomologyError):
    pass


class ExactnessFailure(GridHomologyError):
    """Exactness of a long exact sequence fails at a node."""

    def __init__(self, node: str, bigrading: tuple, detail: str = ""):
        self.node = node
        self.bigrading = bigrading
        super().__init__(f"not exact at {node} in bigrading {bigrading}" + (f": {detail}" if detail else ""))


# cli / library
class LibraryError(GridHomologyError):
    pass


class MalformedDiagram(GridHomologyError):
    """Diagram text or document could not be read."""
