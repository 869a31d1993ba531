class NumericError(Exception):
    pass


class UnboundSymbolError(NumericError):
    def __init__(self, names):
        super().__init__("unbound symbols: {}".format(", ".join(names)))
        self.names = tuple(names)


class DomainError(NumericError):
    pass


class SingularityApproachError(NumericError):
    def __init__(self, s, r):
        super().__init__("trajectory reached r = {:.3g} at s = {:.6g}".format(r, s))
        self.s = s
        self.r = r


class FormulaDomainError(NumericError):
    """A printed closed form is not real-valued at the requested point."""
