"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands disagree on variable count, truncation degree, or shape."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


class InconsistentSystemError(ArithmeticError):
    """A linear system has no solution.

    ``row`` is the index of the first equation that cannot be satisfied
    together with all equations before it.
    """

    def __init__(self, row):
        super().__init__(f"inconsistent linear system at row {row}")
        self.row = row


class NotCompositeError(ArithmeticError):
    """The supplied jets are not the pullback of a single jet.

    ``beta`` is the source multi-index and ``point_index`` the (0-based)
    fiber point of the equation certifying the failure; ``row`` is its index
    in the stacked system.
    """

    def __init__(self, beta, point_index, row):
        super().__init__(
            f"not formally composite: equation beta={beta} at fiber point "
            f"{point_index + 1} is inconsistent"
        )
        self.beta = beta
        self.point_index = point_index
        self.row = row
