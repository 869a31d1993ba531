"""Text grammar for expressions and the matching printer.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?        exponent must be rational
    primary := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

Identifiers: r, q (or theta), z, u, k, c1..c13, pi, jet coordinates
u_r .. u_zz in any letter order, unknown functions xi1, xi2, xi3, eta with an
optional derivative suffix over r, q, z, u (xi1_ru), and the functions of
FUNCTIONS.
"""
import re

import sympy as sp
from sympy.printing.str import StrPrinter

from src.symcore.errors import ParseError, UnknownIdentifierError
from src.symcore.expr import (
    BASE_LETTERS,
    DIRECTION_LETTERS,
    UNKNOWN_NAMES,
    UnknownFn,
    declaredSymbols,
    jetSymbol,
    lettersToIndex,
    q,
)

FUNCTIONS = {
    "sin": (sp.sin, 1),
    "cos": (sp.cos, 1),
    "tan": (sp.tan, 1),
    "exp": (sp.exp, 1),
    "ln": (sp.log, 1),
    "log": (sp.log, 1),
    "sqrt": (sp.sqrt, 1),
    "arctan": (sp.atan, 1),
    "atan": (sp.atan, 1),
    "cosh": (sp.cosh, 1),
    "sinh": (sp.sinh, 1),
    "atanh": (sp.atanh, 1),
    "BesselJ": (sp.besselj, 2),
    "besselj": (sp.besselj, 2),
    "BesselY": (sp.bessely, 2),
    "bessely": (sp.bessely, 2),
}

PRINTED_NAMES = {
    "log": "ln",
    "atan": "arctan",
    "besselj": "BesselJ",
    "bessely": "BesselY",
}

TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d*|\.\d+|\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)
JET_RE = re.compile(r"u_([rqz]{1,2})$")
UNKNOWN_RE = re.compile(r"(xi1|xi2|xi3|eta)(?:_([rqzu]+))?$")


def tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_RE.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ParseError("unexpected character %r" % text[offset], offset)
        kind = match.lastgroup
        value = match.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, match.start(kind)))
        position = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class ExpressionParser:
    def __init__(self, text, extra=None):
        self.text = text
        self.tokens = tokenize(text)
        self.position = 0
        self.table = declaredSymbols()
        self.table["theta"] = q
        self.table["pi"] = sp.pi
        if extra:
            self.table.update({name: sp.sympify(value) for name, value in extra.items()})

    def peek(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        self.position += 1
        return token

    def expect(self, value):
        kind, found, offset = self.advance()
        if found != value:
            raise ParseError(
                "expected '%s' but found %s" % (value, describe(kind, found)), offset
            )

    def parse(self):
        e = self.expression()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ParseError("unexpected %s" % describe(kind, value), offset)
        return e

    def expression(self):
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            right = self.term()
            e = e + right if op == "+" else e - right
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.advance()[1]
            right = self.unary()
            e = e * right if op == "*" else e / right
        return e

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value in ("-", "+"):
            self.advance()
            operand = self.unary()
            return -operand if value == "-" else operand
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[1] != "^":
            return base
        offset = self.advance()[2]
        exponent = self.unary()
        if not exponent.is_Rational:
            raise ParseError("exponent must be an integer or a rational", offset)
        return base ** exponent

    def primary(self):
        kind, value, offset = self.advance()
        if kind == "number":
            return sp.Rational(value)
        if kind == "ident":
            if self.peek()[1] == "(":
                return self.application(value, offset)
            return self.identifier(value, offset)
        if value == "(":
            e = self.expression()
            self.expect(")")
            return e
        raise ParseError("unexpected %s" % describe(kind, value), offset)

    def application(self, name, offset):
        if name not in FUNCTIONS:
            raise UnknownIdentifierError(name, offset, sorted(FUNCTIONS))
        function, arity = FUNCTIONS[name]
        self.expect("(")
        args = [self.expression()]
        while self.peek()[1] == ",":
            self.advance()
            args.append(self.expression())
        self.expect(")")
        if len(args) != arity:
            raise ParseError(
                "%s takes %d argument(s), got %d" % (name, arity, len(args)), offset
            )
        return function(*args)

    def identifier(self, name, offset):
        if name in self.table:
            return self.table[name]
        jet = JET_RE.match(name)
        if jet:
            return jetSymbol(lettersToIndex(jet.group(1), DIRECTION_LETTERS))
        unknown = UNKNOWN_RE.match(name)
        if unknown:
            index = lettersToIndex(unknown.group(2) or "", BASE_LETTERS)
            return UnknownFn(unknown.group(1), index).toExpr()
        raise UnknownIdentifierError(name, offset, sorted(self.table) + ["u_*"] + list(UNKNOWN_NAMES))


def describe(kind, value):
    if kind == "end":
        return "end of input"
    return "'%s'" % value


def parse(text, extra=None):
    """Parse `text`; `extra` maps additional names to expressions."""
    return ExpressionParser(text, extra).parse()


class ExpressionPrinter(StrPrinter):
    _default_settings = dict(StrPrinter._default_settings, theta=False)

    def _print_Symbol(self, expr):
        if expr == q and self._settings["theta"]:
            return "theta"
        return expr.name

    def _print_Function(self, expr):
        fn = UnknownFn.fromExpr(expr)
        if fn is not None:
            return fn.label
        name = expr.func.__name__
        return "%s(%s)" % (PRINTED_NAMES.get(name, name), self.stringify(expr.args, ", "))

    _print_AppliedUndef = _print_Function

    def _print_Derivative(self, expr):
        fn = UnknownFn.fromExpr(expr)
        if fn is not None:
            return fn.label
        return StrPrinter._print_Derivative(self, expr)

    def _print_Pi(self, expr):
        return "pi"

    def _print_Exp1(self, expr):
        return "exp(1)"


def printExpr(e, theta=False):
    return ExpressionPrinter({"theta": theta}).doprint(sp.sympify(e)).replace("**", "^")
