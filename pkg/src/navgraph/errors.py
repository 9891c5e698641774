"""Exception types raised across the package."""


class NavGraphError(Exception):
    pass


class DuplicatePoints(NavGraphError, ValueError):
    """Two rows of a point set are identical."""


class NonFiniteDistance(NavGraphError, ValueError):
    """A distance evaluation returned NaN or infinity."""


class InvalidDistance(NavGraphError, ValueError):
    """D(x, x) != 0, a negative distance, or D(x_i, x_j) = 0 for distinct points."""


class OutOfRange(NavGraphError, ValueError):
    pass


class SizeMismatch(NavGraphError, ValueError):
    pass


class WrongKind(NavGraphError, ValueError):
    """An operation that needs a sign point set got something else."""


class WrongInstance(NavGraphError, ValueError):
    pass


class DegenerateHoods(NavGraphError, ValueError):
    """Neighborhoods require edges but no two of them overlap."""


class RouteCycle(NavGraphError, RuntimeError):
    """Greedy routing exceeded n visited nodes, which a correct tie rule makes impossible."""
