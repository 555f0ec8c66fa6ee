"""Exception types shared across the package."""


class RefoldError(Exception):
    """Base class for all library errors."""


class DegenerateInput(RefoldError):
    """Geometric input collapsed below tolerance (zero area, repeated points)."""


class InvalidTriangle(RefoldError):
    """Side lengths violate the triangle inequality or the acuteness requirement."""


class GluingLengthError(RefoldError):
    """Two identified edges differ in length beyond tolerance."""


class TopologyError(RefoldError):
    """Glued complex is not a topological sphere (or disk where required)."""


class ConvexityError(RefoldError):
    """A vertex accumulates more than a full angle of incident face corners."""


class VertexCollision(RefoldError):
    """A traced geodesic ran into a cone vertex in its interior."""


class CutGraphError(RefoldError):
    """Cut segments cross each other or close a cycle."""


class SchemeError(RefoldError):
    """A gluing scheme is structurally malformed (distinct from a failing report)."""


class AreaMismatch(RefoldError):
    """Two shapes that must have equal area do not."""


class NotSpinePolygon(RefoldError):
    """Polygon violates one of the spine-polygon clauses; message names it."""


class ConstructionError(RefoldError):
    """An angle- or length-constrained point placement has no solution."""


class UnsupportedInput(RefoldError):
    """Input is outside the documented scope of the operation."""


class InvalidInput(RefoldError):
    """Parameter outside the allowed range."""
