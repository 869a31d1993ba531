class JetError(Exception):
    pass


class OrderOverflowError(JetError):
    def __init__(self, symbol, direction):
        super().__init__(
            "total derivative of {} in direction {} leaves the second-order jet".format(
                symbol, direction
            )
        )
        self.symbol = symbol
        self.direction = direction


class NotAffineError(JetError):
    def __init__(self, leading):
        super().__init__("equation is not affine in {}".format(leading))
        self.leading = leading
