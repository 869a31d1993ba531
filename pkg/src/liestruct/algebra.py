import itertools
import logging
from dataclasses import dataclass, field

import sympy as sp

from src.jetprolong.jet import VectorField
from src.liestruct.errors import DimensionMismatchError, NotClosedError
from src.liestruct.subspace import Subspace, solveRational
from src.symcore.expr import simplify

logger = logging.getLogger(__name__)


def commutatorVF(v, w):
    """[v, w]^k = v(w^k) - w(v^k)."""
    return VectorField.fromComponents(
        [simplify(v.apply(b) - w.apply(a)) for a, b in zip(v.components, w.components)]
    )


def fieldMonomials(v):
    """Vectorize a field as {(component, monomial): rational coefficient}."""
    table = {}
    for position, component in enumerate(v.components):
        for term in sp.Add.make_args(sp.expand(simplify(component))):
            if term == 0:
                continue
            coeff, monomial = term.as_coeff_Mul()
            key = (position, monomial)
            table[key] = table.get(key, sp.S.Zero) + coeff
    return {key: value for key, value in table.items() if value != 0}


def fieldCoordinates(v, basis):
    """Rational coordinates of `v` in `basis`, or None outside the span."""
    target = fieldMonomials(v)
    columns = [fieldMonomials(b) for b in basis]
    keys = sorted(set(target).union(*columns), key=sp.default_sort_key)
    if not keys:
        return [sp.S.Zero] * len(basis)
    A = sp.Matrix([[column.get(key, 0) for column in columns] for key in keys])
    b = sp.Matrix([target.get(key, 0) for key in keys])
    return solveRational(A, b)


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    constants: tuple
    labels: tuple = ()
    basis: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple("X%d" % (i + 1) for i in range(len(self.constants)))
            )

    @property
    def dim(self):
        return len(self.constants)

    def check(self, vector):
        if len(vector) != self.dim:
            raise DimensionMismatchError(self.dim, len(vector))
        return [sp.sympify(x) for x in vector]

    def bracket(self, x, y):
        x, y = self.check(x), self.check(y)
        result = [sp.S.Zero] * self.dim
        for i, j in itertools.product(range(self.dim), repeat=2):
            if x[i] == 0 or y[j] == 0:
                continue
            for k, c in enumerate(self.constants[i][j]):
                if c != 0:
                    result[k] += x[i] * y[j] * c
        return result

    def adMatrix(self, i):
        """Matrix of ad(e_i), zero-based; column j is [e_i, e_j]."""
        if not 0 <= i < self.dim:
            raise IndexError("basis index %d out of range 0..%d" % (i, self.dim - 1))
        return sp.Matrix(self.dim, self.dim, lambda k, j: self.constants[i][j][k])

    def adOf(self, x):
        x = self.check(x)
        return sum(
            (x[i] * self.adMatrix(i) for i in range(self.dim) if x[i] != 0),
            sp.zeros(self.dim, self.dim),
        )

    def unit(self, i):
        return [sp.S.One if j == i else sp.S.Zero for j in range(self.dim)]

    def isAntisymmetric(self):
        return all(
            self.constants[i][j][k] == -self.constants[j][i][k]
            for i, j, k in itertools.product(range(self.dim), repeat=3)
        )

    def jacobiDefects(self):
        """Index quadruples (i, j, k, l) where the Jacobi identity fails."""
        c = self.constants
        n = self.dim
        defects = []
        for i, j, kk, l in itertools.product(range(n), repeat=4):
            total = sum(
                c[i][j][m] * c[m][kk][l] + c[j][kk][m] * c[m][i][l] + c[kk][i][m] * c[m][j][l]
                for m in range(n)
            )
            if total != 0:
                defects.append((i, j, kk, l))
        return defects

    def formatElement(self, vector):
        text = ""
        for coeff, label in zip(vector, self.labels):
            coeff = sp.sympify(coeff)
            if coeff == 0:
                continue
            term = label if abs(coeff) == 1 else "%s*%s" % (abs(coeff), label)
            if not text:
                text = "-" + term if coeff < 0 else term
            else:
                text += " %s %s" % ("-" if coeff < 0 else "+", term)
        return text or "0"

    def commutatorTable(self):
        """Grid of formatted brackets [row, column]."""
        return [
            [self.formatElement(self.bracket(self.unit(i), self.unit(j))) for j in range(self.dim)]
            for i in range(self.dim)
        ]


def structureConstants(basis, labels=None):
    """Exact structure constants of the span of `basis`; NotClosedError when a
    bracket falls outside it."""
    n = len(basis)
    labels = tuple(labels or [b.name or "X%d" % (i + 1) for i, b in enumerate(basis)])
    constants = [[[sp.S.Zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bracket = commutatorVF(basis[i], basis[j])
            coords = fieldCoordinates(bracket, basis)
            if coords is None:
                raise NotClosedError((labels[i], labels[j]), bracket)
            for k, value in enumerate(coords):
                constants[i][j][k] = value
                constants[j][i][k] = -value
    logger.debug("structure constants computed for %s", ", ".join(labels))
    return LieAlgebra(
        tuple(tuple(tuple(row) for row in plane) for plane in constants),
        labels,
        tuple(basis),
    )


def killingForm(g, v, w):
    if len(v) != g.dim or len(w) != g.dim:
        raise DimensionMismatchError(g.dim, len(v) if len(v) != g.dim else len(w))
    return (g.adOf(v) * g.adOf(w)).trace()


def killingMatrix(g):
    ads = [g.adMatrix(i) for i in range(g.dim)]
    return sp.Matrix(g.dim, g.dim, lambda i, j: (ads[i] * ads[j]).trace())


def isSemisimple(g):
    return killingMatrix(g).det() != 0


def derivedSubalgebra(g, subspace):
    vectors = subspace.vectors
    brackets = [g.bracket(a, b) for a, b in itertools.combinations(vectors, 2)]
    return Subspace(brackets, g.dim)


def derivedSeries(g, start=None):
    """g, [g, g], [[g, g], [g, g]], ... ending at 0 or at the first term equal
    to its predecessor."""
    current = start or Subspace.full(g.dim)
    series = [current]
    while current.dim > 0:
        following = derivedSubalgebra(g, current)
        series.append(following)
        if following.dim == current.dim:
            break
        current = following
    return series


def isSolvable(g):
    return derivedSeries(g)[-1].dim == 0


def subalgebra(g, subspace, labels=None):
    """Structure constants of `subspace` in its own basis."""
    vectors = subspace.vectors
    m = len(vectors)
    constants = [[[sp.S.Zero] * m for _ in range(m)] for _ in range(m)]
    names = labels or [g.formatElement(v) for v in vectors]
    for i, j in itertools.combinations(range(m), 2):
        bracket = g.bracket(vectors[i], vectors[j])
        coords = subspace.coordinates(bracket)
        if coords is None:
            raise NotClosedError((names[i], names[j]), g.formatElement(bracket))
        for k, value in enumerate(coords):
            constants[i][j][k] = value
            constants[j][i][k] = -value
    return LieAlgebra(
        tuple(tuple(tuple(row) for row in plane) for plane in constants), tuple(names)
    )
