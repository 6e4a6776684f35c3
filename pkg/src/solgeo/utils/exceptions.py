"""Custom exceptions for the application."""

from collections.abc import Iterable


class SolGeoError(Exception):
    """Base exception for all application errors."""

    pass


class ConfigurationError(SolGeoError):
    """Invalid job configuration or config file."""

    pass


# ============================================================================
# Ambient geometry
# ============================================================================


class GeometryError(SolGeoError):
    """Errors raised by the ambient and hypersurface geometry."""

    pass


class IndexOutOfRangeError(GeometryError, IndexError):
    """Frame index outside 1..4."""

    pass


class BasePointMismatchError(GeometryError):
    """Tangent vectors attached to different points were combined."""

    pass


class DegeneratePlaneError(GeometryError):
    """Two vectors do not span a plane."""

    pass


class NonFiniteError(GeometryError):
    """A vector field or immersion evaluated to inf or nan."""

    pass


class ImmersionError(GeometryError):
    """Immersion-related errors."""

    pass


class RankDeficiencyError(ImmersionError):
    """Coordinate tangents are (numerically) linearly dependent."""

    pass


class BoundaryProximityError(ImmersionError):
    """A sample or finite-difference stencil leaves the parameter box."""

    pass


# ============================================================================
# Curves and profiles
# ============================================================================


class CurveError(SolGeoError):
    """Plane and profile curve errors."""

    pass


class IrregularCurveError(CurveError):
    """The curve velocity vanishes."""

    pass


class ProfileError(CurveError):
    """Parameter outside the sampled profile interval."""

    pass


class SingularityGuardError(ProfileError):
    """The profile angle entered the |cos beta| guard band."""

    pass


# ============================================================================
# Curve expressions
# ============================================================================


class ExpressionError(SolGeoError):
    """Curve expression errors."""

    pass


class CurveSyntaxError(ExpressionError):
    """Expression text could not be parsed."""

    def __init__(self, offset: int, expected: Iterable[str], found: str = ""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(self.expected))
        where = f" but found {found!r}" if found else ""
        super().__init__(f"syntax error at offset {offset}: expected one of {{{wanted}}}{where}")


class EvaluationError(ExpressionError):
    """Division by zero, log of a non-positive value or overflow."""

    pass
