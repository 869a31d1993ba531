class AdjointError(Exception):
    pass


class DegenerateInputError(AdjointError):
    def __init__(self):
        super().__init__("the zero element spans no one-dimensional subalgebra")


class ToleranceFailure(AdjointError):
    """The moves of a case did not reach its class pattern."""

    def __init__(self, element, case, offPattern):
        super().__init__(
            "case {} left off-pattern coefficients {} for input {}".format(
                case, offPattern, list(element)
            )
        )
        self.element = list(element)
        self.case = case
        self.offPattern = offPattern
