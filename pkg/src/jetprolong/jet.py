import logging
from dataclasses import dataclass, field

import sympy as sp

from src.jetprolong.errors import NotAffineError, OrderOverflowError
from src.symcore.expr import (
    BASE,
    DERIVATIVE_JETS,
    DIRECTION_LETTERS,
    INDEPENDENT,
    JET_INDEX,
    JET_ORDER,
    JET_SYMBOLS,
    canonicalUnknowns,
    jetIndices,
    jetSymbol,
    resolveSymbol,
    simplify,
    substitute,
    u,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorField:
    """xi1 d/dr + xi2 d/dq + xi3 d/dz + eta d/du on the base space."""

    xi1: sp.Expr
    xi2: sp.Expr
    xi3: sp.Expr
    eta: sp.Expr
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for attr in ("xi1", "xi2", "xi3", "eta"):
            value = sp.sympify(getattr(self, attr))
            if value.free_symbols & set(DERIVATIVE_JETS):
                raise ValueError(
                    "coefficient %s of a point vector field contains jet coordinates" % attr
                )
            object.__setattr__(self, attr, value)

    @property
    def components(self):
        return (self.xi1, self.xi2, self.xi3, self.eta)

    @classmethod
    def fromComponents(cls, components, name=""):
        return cls(*components, name=name)

    def apply(self, f):
        """First-order action v(f) on a function of (r, q, z, u)."""
        f = sp.sympify(f)
        return sum(
            (c * sp.diff(f, var) for c, var in zip(self.components, BASE) if c != 0),
            sp.S.Zero,
        )

    def __add__(self, other):
        return VectorField.fromComponents(
            [a + b for a, b in zip(self.components, other.components)]
        )

    def __rmul__(self, scalar):
        scalar = sp.sympify(scalar)
        return VectorField.fromComponents([scalar * c for c in self.components])

    def isZero(self):
        return all(simplify(c) == 0 for c in self.components)


def directionIndex(direction):
    if isinstance(direction, int):
        if not 0 <= direction < 3:
            raise ValueError("direction index must be 0, 1 or 2")
        return direction
    symbol = resolveSymbol(direction)
    if symbol not in INDEPENDENT:
        raise ValueError("%s is not an independent variable" % direction)
    return INDEPENDENT.index(symbol)


def shiftIndex(index, position):
    shifted = list(index)
    shifted[position] += 1
    return tuple(shifted)


def totalDerivative(e, direction):
    """D_i e = d_i e + sum over jet coordinates u_J of u_{J+i} de/du_J."""
    i = directionIndex(direction)
    e = sp.sympify(e)
    result = sp.diff(e, INDEPENDENT[i])
    present = e.free_symbols
    for symbol, index in JET_INDEX.items():
        if symbol not in present:
            continue
        partial = sp.diff(e, symbol)
        if partial == 0:
            continue
        higher = shiftIndex(index, i)
        if sum(higher) > JET_ORDER:
            raise OrderOverflowError(symbol, DIRECTION_LETTERS[i])
        result += jetSymbol(higher) * partial
    return canonicalUnknowns(sp.expand(result))


def characteristic(v):
    return sp.expand(
        v.eta
        - v.xi1 * JET_SYMBOLS[(1, 0, 0)]
        - v.xi2 * JET_SYMBOLS[(0, 1, 0)]
        - v.xi3 * JET_SYMBOLS[(0, 0, 1)]
    )


@dataclass(frozen=True)
class ProlongedField:
    base: VectorField
    coeffs: dict

    def __post_init__(self):
        missing = set(jetIndices(minimum=1)) - set(self.coeffs)
        if missing:
            raise ValueError("prolongation is missing multi-indices %s" % sorted(missing))

    def apply(self, f):
        """The second prolongation acting as a derivation on a jet function."""
        f = sp.sympify(f)
        result = self.base.apply(f)
        for index, coeff in self.coeffs.items():
            symbol = JET_SYMBOLS[index]
            if symbol in f.free_symbols and coeff != 0:
                result += coeff * sp.diff(f, symbol)
        return result


def prolong2(v):
    """Second prolongation by the recursive formula

        eta^{J,i} = D_i eta^J - sum_l (D_i xi^l) u_{J,l},

    which agrees with eta^J = D_J Q + sum_l xi^l u_{J,l} for the characteristic
    Q of v."""
    xis = (v.xi1, v.xi2, v.xi3)
    dxi = [[totalDerivative(xi, i) for xi in xis] for i in range(3)]
    coeffs = {(0, 0, 0): v.eta}
    for index in jetIndices(minimum=1):
        # extend from the parent obtained by removing the last nonzero direction
        i = max(position for position, count in enumerate(index) if count)
        parent = list(index)
        parent[i] -= 1
        parent = tuple(parent)
        value = totalDerivative(coeffs[parent], i)
        for l in range(3):
            if dxi[i][l] != 0:
                value -= dxi[i][l] * jetSymbol(shiftIndex(parent, l))
        coeffs[index] = canonicalUnknowns(sp.expand(value))
    del coeffs[(0, 0, 0)]
    return ProlongedField(v, coeffs)


@dataclass(frozen=True)
class Pde:
    lhs: sp.Expr
    leading: sp.Symbol
    solvedRhs: sp.Expr
    name: str = field(default="", compare=False)

    @classmethod
    def fromLhs(cls, lhs, leading="u_rr", name=""):
        leading = resolveSymbol(leading)
        if leading not in DERIVATIVE_JETS:
            raise ValueError("leading term must be a jet coordinate, got %s" % leading)
        lhs = sp.sympify(lhs)
        a = sp.diff(lhs, leading)
        if a == 0 or sp.diff(a, leading) != 0:
            raise NotAffineError(leading)
        rest = sp.expand(lhs - a * leading)
        solved = simplify(-rest / a)
        pde = cls(lhs, leading, solved, name=name)
        residual = simplify(substitute(lhs, {leading: solved}))
        if residual != 0:
            raise NotAffineError(leading)
        return pde

    def bind(self, bindings):
        """Same equation with constants replaced (e.g. k = 0)."""
        return Pde.fromLhs(substitute(self.lhs, bindings), self.leading, name=self.name)


def onShell(e, pde):
    return substitute(e, {pde.leading: pde.solvedRhs})


def invarianceResidual(v, pde):
    pr = prolong2(v)
    residual = simplify(onShell(pr.apply(pde.lhs), pde))
    logger.debug("residual of %s on %s: %s", v.name or v, pde.name, residual)
    return residual
