"""Determining equations of the point symmetries of a scalar second-order PDE,
and an implication test for individual equations against a generated system.
"""
import logging
from fractions import Fraction

import numpy as np
import sympy as sp

from src.jetprolong.jet import VectorField, onShell, prolong2
from src.symcore.expr import (
    BASE,
    DERIVATIVE_JETS,
    UNKNOWN_NAMES,
    UnknownFn,
    differentiate,
    q,
    r,
    simplify,
    unknownAtoms,
)

logger = logging.getLogger(__name__)


def generalField():
    return VectorField(
        *[UnknownFn(name).toExpr() for name in UNKNOWN_NAMES], name="general"
    )


def clearRadialDenominators(e):
    """Multiply by the smallest power of r that leaves no negative r powers,
    then take the numerator of anything still rational."""
    e = sp.expand(e)
    if e == 0:
        return e
    lowest = min(term.as_coeff_exponent(r)[1] for term in sp.Add.make_args(e))
    if lowest < 0:
        e = sp.expand(e * r ** (-lowest))
    num, den = sp.fraction(sp.together(e))
    if den.free_symbols:
        e = sp.expand(num)
    return e


def normalizeEquation(e):
    """Primitive form with a fixed sign, so equal equations compare equal."""
    e = sp.expand(e)
    if e == 0:
        return e
    _, primitive = e.as_content_primitive()
    if primitive.could_extract_minus_sign():
        primitive = -primitive
    return sp.expand(primitive)


def collectByJetMonomial(e, jets):
    groups = {}
    for term in sp.Add.make_args(sp.expand(e)):
        coeff, monomial = term.as_independent(*jets, as_Add=False)
        groups[monomial] = groups.get(monomial, sp.S.Zero) + coeff
    return groups


def determiningSystem(pde):
    """Coefficients of every jet monomial in the on-shell invariance residual of
    the general field, cleared of r denominators and deduplicated."""
    pr = prolong2(generalField())
    residual = sp.expand(onShell(pr.apply(pde.lhs), pde))
    jets = [symbol for symbol in DERIVATIVE_JETS if symbol != pde.leading]
    groups = collectByJetMonomial(residual, jets)
    equations = []
    seen = set()
    for monomial in sorted(groups, key=sp.default_sort_key):
        equation = normalizeEquation(clearRadialDenominators(groups[monomial]))
        if equation == 0 or equation in seen:
            continue
        seen.add(equation)
        equations.append(equation)
    logger.info(
        "%d jet monomials, %d distinct determining equations", len(groups), len(equations)
    )
    return equations


def substituteField(e, v):
    """Replace the unknown functions of `e` by the coefficients of `v`."""
    components = dict(zip(UNKNOWN_NAMES, v.components))
    mapping = {}
    for atom in unknownAtoms(e):
        fn = UnknownFn.fromExpr(atom)
        value = components[fn.name]
        for var, count in zip(BASE, fn.index):
            if count:
                value = sp.diff(value, var, count)
        mapping[atom] = value
    return sp.sympify(e).xreplace(mapping)


def satisfiesSystem(v, system):
    return all(simplify(substituteField(e, v)) == 0 for e in system)


def _zeroAtoms(rows):
    """Atoms forced to vanish by single-term rows, closed under
    differentiation (xi_u = 0 gives xi_ru = 0, xi_uu = 0, ...)."""
    roots = []
    for row in rows:
        atoms = unknownAtoms(row)
        if len(atoms) == 1 and len(sp.Add.make_args(sp.expand(row))) == 1:
            roots.append(UnknownFn.fromExpr(next(iter(atoms))))
    return roots


def _isDescendant(fn, roots):
    return any(
        fn.name == root.name and all(a >= b for a, b in zip(fn.index, root.index))
        for root in roots
    )


def _reduceByZeros(exprs, roots):
    atoms = set()
    for e in exprs:
        atoms |= unknownAtoms(e)
    mapping = {a: 0 for a in atoms if _isDescendant(UnknownFn.fromExpr(a), roots)}
    return [sp.expand(e.xreplace(mapping)) for e in exprs]


def _samplePoint(rng):
    """Random rational point; q is placed where sine and cosine are rational."""
    values = {}
    for var in BASE + tuple(sp.Symbol("c%d" % i, real=True) for i in range(1, 14)):
        values[var] = sp.Rational(Fraction(int(rng.integers(3, 98)), int(rng.integers(5, 42))))
    a, b = (int(n) for n in rng.integers(1, 13, 2))
    values[q] = sp.acos(sp.Rational(a * a - b * b, a * a + b * b))
    k = sp.Symbol("k", real=True)
    values[k] = sp.Rational(int(rng.integers(1, 10)), int(rng.integers(1, 8)))
    return values


def impliedBy(equation, system, depth=1, trials=3, seed=0):
    """True when `equation` follows from `system` and its derivatives up to
    `depth`: zero atoms are propagated first, then membership in the span of
    the remaining linear rows is tested by exact rank at random rational
    points of the coefficient field."""
    rows = list(system)
    frontier = list(system)
    for _ in range(depth):
        frontier = [differentiate(e, var) for e in frontier for var in BASE]
        rows.extend(e for e in frontier if e != 0)
    target = sp.expand(equation)
    roots = []
    while True:
        found = [fn for fn in _zeroAtoms(rows) if not _isDescendant(fn, roots)]
        if not found:
            break
        roots.extend(found)
        reduced = _reduceByZeros(rows + [target], roots)
        rows, target = [e for e in reduced[:-1] if e != 0], reduced[-1]
    if target == 0:
        return True
    atoms = sorted(unknownAtoms(target), key=sp.default_sort_key)
    touched = set(atoms)
    selected = []
    remaining = list(rows)
    grew = True
    while grew:
        grew = False
        kept = []
        for row in remaining:
            rowAtoms = unknownAtoms(row)
            if rowAtoms & touched:
                selected.append(row)
                touched |= rowAtoms
                grew = True
            else:
                kept.append(row)
        remaining = kept
    columns = sorted(touched, key=sp.default_sort_key)
    symbols = sp.symbols("w0:%d" % len(columns))
    linear = [
        sp.expand(e.xreplace(dict(zip(columns, symbols)))) for e in selected + [target]
    ]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        point = _samplePoint(rng)
        matrix = sp.Matrix(
            [[sp.diff(e, s).xreplace(point) for s in symbols] for e in linear]
        )
        if matrix[:-1, :].rank() != matrix.rank():
            return False
    return True
