"""Floating-point evaluation of expressions, Bessel functions via scipy."""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.special
import sympy as sp

from src.data_loading.data_loader import SampleBoxLoader
from src.jetprolong.jet import onShell, prolong2
from src.numverify.errors import DomainError, UnboundSymbolError
from src.symcore.expr import BASE, DERIVATIVE_JETS, resolveSymbol

MODULES = [{"besselj": scipy.special.jv, "bessely": scipy.special.yv}, "scipy", "numpy"]
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class Point:
    r: float
    theta: float
    z: float
    u: float = 0.0

    def __post_init__(self):
        values = (self.r, self.theta, self.z, self.u)
        if not all(math.isfinite(v) for v in values):
            raise DomainError("point has non-finite coordinates: %s" % (values,))
        if self.r <= 0:
            raise DomainError("point must have r > 0, got r = %g" % self.r)

    def asArray(self):
        return np.array([self.r, self.theta, self.z, self.u])

    @classmethod
    def fromArray(cls, values):
        return cls(*[float(v) for v in values])


def bindConstants(e, bindings):
    """Substitute numeric constants; unbound non-coordinate symbols raise."""
    e = sp.sympify(e)
    mapping = {resolveSymbol(name): sp.Float(value) if isinstance(value, float)
               else sp.sympify(value) for name, value in (bindings or {}).items()}
    e = e.xreplace(mapping)
    free = e.free_symbols - set(BASE) - set(DERIVATIVE_JETS)
    if free:
        raise UnboundSymbolError(sorted(symbol.name for symbol in free))
    return e


@lru_cache(maxsize=256)
def compiled(e, variables):
    return sp.lambdify(variables, e, modules=MODULES)


def evaluateArray(e, columns, bindings=None, variables=BASE):
    """Evaluate `e` on arrays, one per variable; returns a real array."""
    e = bindConstants(e, bindings)
    missing = e.free_symbols - set(variables)
    if missing:
        raise UnboundSymbolError(sorted(symbol.name for symbol in missing))
    function = compiled(e, tuple(variables))
    shape = np.broadcast(*columns).shape if columns else ()
    with np.errstate(all="ignore"):
        values = np.asarray(function(*columns))
    values = np.broadcast_to(values, shape) if values.shape != shape else values
    return realPart(values)


def realPart(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        imag = np.abs(values.imag)
        if np.any(imag > IMAG_TOL * (1.0 + np.abs(values.real))):
            raise DomainError("expression is complex-valued on the sample")
        values = values.real
    values = values.astype(float)
    if not np.all(np.isfinite(values)):
        raise DomainError("expression is not finite on the sample")
    return values


def evalExpr(e, p, bindings=None):
    """Value of `e` at the point p (a Point or an (r, theta, z, u) tuple)."""
    if not isinstance(p, Point):
        p = Point(*p)
    columns = [np.array(v) for v in (p.r, p.theta, p.z, p.u)]
    return float(evaluateArray(e, columns, bindings))


def evalJetExpr(e, points, jets, bindings=None):
    """Evaluate a jet-space expression; `points` has shape (N, 4) and `jets`
    maps each derivative coordinate to an array of N values."""
    variables = BASE + DERIVATIVE_JETS
    columns = [points[:, i] for i in range(4)]
    columns += [np.asarray(jets.get(symbol, np.zeros(len(points)))) for symbol in DERIVATIVE_JETS]
    return evaluateArray(e, columns, bindings, variables)


def randomJetValues(count, rng, scale=1.0):
    return {symbol: rng.uniform(-scale, scale, count) for symbol in DERIVATIVE_JETS}


def onShellResidual(v, pde, samples=200, seed=0, bindings=None, box=None):
    """max |pr2 v (lhs)| over seeded on-shell points: jets drawn at random,
    the leading derivative taken from the solved equation."""
    rng = np.random.default_rng(seed)
    points = SampleBoxLoader(samples, seed, box).asArray()
    jets = randomJetValues(samples, rng)
    jets[pde.leading] = evalJetExpr(pde.solvedRhs, points, jets, bindings)
    residual = onShell(prolong2(v).apply(pde.lhs), pde)
    return float(np.max(np.abs(evalJetExpr(residual, points, jets, bindings))))
