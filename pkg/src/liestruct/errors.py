class LieStructureError(Exception):
    pass


class NotClosedError(LieStructureError):
    """A bracket of basis elements left the span of the basis."""

    def __init__(self, pair, residual):
        super().__init__(
            "[{}, {}] is not in the span of the basis: {}".format(pair[0], pair[1], residual)
        )
        self.pair = pair
        self.residual = residual


class DimensionMismatchError(LieStructureError):
    def __init__(self, expected, got):
        super().__init__("expected a vector of length {}, got {}".format(expected, got))
        self.expected = expected
        self.got = got
