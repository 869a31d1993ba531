"""Symbols, jet coordinates and unknown functions of the cylindrical jet space.

Expressions are plain sympy trees. sympy keeps them immutable and hashable,
folds rational constants and orders the arguments of sums and products, so
structural equality (`==`) is equality of canonical forms. This module fixes
the names the rest of the project relies on:

- base space (r, q, z, u), where q is the polar angle theta; r is declared
  positive so 1/r and sqrt(r**2) behave like the r > 0 domain they model
- jet coordinates u_r, u_q, ..., u_zz, one symbol per symmetric multi-index
  over (r, q, z) written in r < q < z order
- the unknown coefficient functions xi1, xi2, xi3, eta of (r, q, z, u) and
  their derivatives
- the constants k and c1..c13
"""
from dataclasses import dataclass
from functools import lru_cache

import sympy as sp
from sympy.core.function import AppliedUndef

from src.symcore.errors import UndeclaredSymbolError

r = sp.Symbol("r", positive=True)
q = sp.Symbol("q", real=True)
z = sp.Symbol("z", real=True)
u = sp.Symbol("u", real=True)
k = sp.Symbol("k", real=True)

INDEPENDENT = (r, q, z)
BASE = (r, q, z, u)
DIRECTION_LETTERS = "rqz"
BASE_LETTERS = "rqzu"

CONSTANTS = {"k": k}
CONSTANTS.update({"c%d" % i: sp.Symbol("c%d" % i, real=True) for i in range(1, 14)})

JET_ORDER = 2
UNKNOWN_NAMES = ("xi1", "xi2", "xi3", "eta")


def jetName(index):
    if sum(index) == 0:
        return "u"
    return "u_" + "".join(
        letter * count for letter, count in zip(DIRECTION_LETTERS, index)
    )


def jetSymbol(index):
    index = tuple(index)
    if len(index) != 3 or min(index) < 0:
        raise ValueError("jet multi-index must be three counts, got %r" % (index,))
    if sum(index) == 0:
        return u
    return sp.Symbol(jetName(index), real=True)


def jetIndices(order=JET_ORDER, minimum=0):
    """All multi-indices over (r, q, z) with minimum <= |J| <= order, sorted
    by order and then lexicographically (r before q before z)."""
    found = []
    for total in range(minimum, order + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                found.append((a, b, total - a - b))
    return found


JET_SYMBOLS = {index: jetSymbol(index) for index in jetIndices()}
JET_INDEX = {symbol: index for index, symbol in JET_SYMBOLS.items()}
DERIVATIVE_JETS = tuple(JET_SYMBOLS[index] for index in jetIndices(minimum=1))


def lettersToIndex(letters, alphabet):
    counts = [0] * len(alphabet)
    for letter in letters:
        counts[alphabet.index(letter)] += 1
    return tuple(counts)


@dataclass(frozen=True)
class UnknownFn:
    """Derivative of one of xi1, xi2, xi3, eta; `index` counts derivatives in
    (r, q, z, u), so xi1_ru and xi1_ur are the same object."""

    name: str
    index: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        if self.name not in UNKNOWN_NAMES:
            raise ValueError("unknown function must be one of %s" % (UNKNOWN_NAMES,))
        if len(self.index) != 4 or min(self.index) < 0:
            raise ValueError("derivative index must be four counts")

    @property
    def label(self):
        if sum(self.index) == 0:
            return self.name
        return self.name + "_" + "".join(
            letter * count for letter, count in zip(BASE_LETTERS, self.index)
        )

    def toExpr(self):
        applied = unknownFunction(self.name)(*BASE)
        pairs = [(var, n) for var, n in zip(BASE, self.index) if n]
        if not pairs:
            return applied
        return sp.Derivative(applied, *pairs)

    def differentiate(self, position):
        index = list(self.index)
        index[position] += 1
        return UnknownFn(self.name, tuple(index))

    @classmethod
    def fromExpr(cls, e):
        """Inverse of toExpr; None when `e` is not an unknown-function node."""
        if isinstance(e, AppliedUndef):
            if e.func.__name__ in UNKNOWN_NAMES and e.args == BASE:
                return cls(e.func.__name__)
            return None
        if isinstance(e, sp.Derivative) and isinstance(e.expr, AppliedUndef):
            base = cls.fromExpr(e.expr)
            if base is None:
                return None
            index = [0, 0, 0, 0]
            for var, count in e.variable_count:
                index[BASE.index(var)] += int(count)
            return cls(base.name, tuple(index))
        return None


@lru_cache(maxsize=None)
def unknownFunction(name):
    return sp.Function(name)


def unknownAtoms(e):
    """Unknown-function nodes of `e`, outermost only (the xi1 inside
    Derivative(xi1, r) is not reported unless it also occurs bare)."""
    derivatives = {d for d in e.atoms(sp.Derivative) if UnknownFn.fromExpr(d)}
    stripped = e.xreplace({d: sp.Dummy() for d in derivatives})
    bare = {a for a in stripped.atoms(AppliedUndef) if UnknownFn.fromExpr(a)}
    return derivatives | bare


def canonicalUnknowns(e):
    """Rebuild every unknown-function derivative from its multi-index."""
    mapping = {}
    for node in e.atoms(sp.Derivative):
        fn = UnknownFn.fromExpr(node)
        if fn is not None:
            rebuilt = fn.toExpr()
            if rebuilt != node:
                mapping[node] = rebuilt
    return e.xreplace(mapping) if mapping else e


def declaredSymbols():
    table = {symbol.name: symbol for symbol in BASE}
    table.update(CONSTANTS)
    table.update({symbol.name: symbol for symbol in DERIVATIVE_JETS})
    return table


def resolveSymbol(v):
    """Map a name or symbol to the declared sympy Symbol."""
    table = declaredSymbols()
    if isinstance(v, str):
        name = "q" if v in ("theta", "θ") else v
        if name not in table:
            raise UndeclaredSymbolError(v)
        return table[name]
    if isinstance(v, sp.Symbol) and table.get(v.name) == v:
        return v
    raise UndeclaredSymbolError(str(v))


def differentiate(e, v):
    """Formal partial derivative. Jet coordinates are independent symbols and
    derivatives of the unknown functions increment their multi-index."""
    symbol = resolveSymbol(v)
    return canonicalUnknowns(sp.diff(sp.sympify(e), symbol))


def substitute(e, bindings):
    """Simultaneous substitution; keys are names or declared symbols."""
    mapping = {resolveSymbol(key): sp.sympify(value) for key, value in bindings.items()}
    if not mapping:
        return sp.sympify(e)
    return canonicalUnknowns(sp.sympify(e).subs(mapping, simultaneous=True))


MAX_PASSES = 8


def simplify(e):
    """Fixed point of the rewrite pipeline: tan -> sin/cos, ln(exp(x)) -> x,
    common denominator with cancellation, sin(x)**2 -> 1 - cos(x)**2 in
    numerator and denominator. Zero is returned exactly for the invariance
    residuals of polynomial-in-trig rational expressions."""
    e = canonicalUnknowns(sp.sympify(e))
    for _ in range(MAX_PASSES):
        rewritten = _rewritePass(e)
        if rewritten == e:
            break
        e = rewritten
    return e


def _rewritePass(e):
    e = e.replace(sp.tan, lambda x: sp.sin(x) / sp.cos(x))
    e = e.replace(
        lambda x: isinstance(x, sp.log) and isinstance(x.args[0], sp.exp),
        lambda x: x.args[0].args[0],
    )
    num, den = sp.fraction(sp.cancel(sp.together(e)))
    num = reducePythagorean(num)
    den = reducePythagorean(den)
    if num == 0:
        return sp.S.Zero
    return num / den


def reducePythagorean(e):
    """Expand and rewrite every sin(x)**n, n >= 2, with at most one sine."""

    def fold(power):
        arg = power.base.args[0]
        n = int(power.exp)
        return sp.sin(arg) ** (n % 2) * (1 - sp.cos(arg) ** 2) ** (n // 2)

    e = sp.expand(e)
    e = e.replace(
        lambda x: x.is_Pow
        and isinstance(x.base, sp.sin)
        and x.exp.is_Integer
        and x.exp >= 2,
        fold,
    )
    return sp.expand(e)
