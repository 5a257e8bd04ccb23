"""Exception hierarchy for surfcurve.

Errors are grouped by the CLI exit code they map to: input problems
(exit 2), infeasible goals (exit 3), and internal invariant violations
(exit 4).
"""


class SurfcurveError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class InputError(SurfcurveError):
    """Malformed or semantically invalid input."""

    exit_code = 2


class ParseError(InputError):
    """A line of a surface/curve file does not parse."""


class GluingError(InputError):
    """An edge id does not appear exactly twice across face lines."""


class DisconnectedError(InputError):
    """The glued complex is not connected."""


class NonPositiveWeight(InputError):
    """An edge weight is zero or negative."""


class NonTransversalCrossing(InputError):
    """A curve description crosses an edge non-transversally."""


class ChordEndpointMismatch(InputError):
    """A chord of a curve description does not match the face boundary."""


class NotAClosedCurve(InputError):
    """The referenced overlay curve is not a single closed curve."""


class NotSimple(InputError):
    """The curve has a transversal self-intersection."""


class NoSuchBoundary(InputError):
    """The named boundary component does not exist."""


class SurfaceMismatch(InputError):
    """Objects from two different surfaces were combined."""


class DimensionMismatch(InputError):
    """Bit-vector or bit-matrix dimensions do not agree."""


class OddVertexDegree(InputError):
    """A crossing-multiplicity map has odd total degree at some vertex."""


class DisconnectedSupport(InputError):
    """The support of a crossing-multiplicity map is empty or disconnected."""


class SurfaceOrientable(InputError):
    """An operation that requires a non-orientable surface got an orientable one."""


class NotOrientable(InputError):
    """An operation that requires an orientable surface got a non-orientable one."""


class KirchhoffViolation(InputError):
    """An edge labeling does not sum to zero around some face."""


class BudgetTooLarge(InputError):
    """A brute-force enumeration budget exceeds the hard guard."""


class EpsilonTooLarge(InputError):
    """The hardness-instance epsilon is not below 1/(12 n)."""


class DisconnectedGrid(InputError):
    """The grid point set induces a disconnected graph."""


class InfeasibleGoal(SurfcurveError):
    """No curve of the requested topological type exists (or none found)."""

    exit_code = 3


class InternalInvariantError(SurfcurveError):
    """A construction produced an object violating its own contract."""

    exit_code = 4
