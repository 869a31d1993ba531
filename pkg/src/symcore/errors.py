class SymcoreError(Exception):
    pass


class ParseError(SymcoreError):
    """Malformed expression text; `offset` is the position of the
    offending token (len(text) when input ended too early)."""

    def __init__(self, message, offset):
        super().__init__("{} at offset {}".format(message, offset))
        self.offset = offset


class UnknownIdentifierError(ParseError):
    def __init__(self, name, offset, table):
        message = "unknown identifier '{}' (declared: {})".format(
            name, ", ".join(table)
        )
        super().__init__(message, offset)
        self.name = name
        self.table = tuple(table)


class UndeclaredSymbolError(SymcoreError):
    def __init__(self, name):
        super().__init__("undeclared symbol '{}'".format(name))
        self.name = name
