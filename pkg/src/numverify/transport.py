"""Transport of CHE solutions along symmetry flows.

A solution f(r, theta, z) is carried to f(g_i(s)(r, theta, z)); for the
vertical generator X3 the flow scales the dependent variable, giving
e^s f. The transported function is differenced on a central stencil whose
points are all pushed through one batched RK4 integration.
"""
import logging

import numpy as np
import sympy as sp

from src.data_loading.che_builtin import SOLUTIONS, chePde, cheGenerators
from src.numverify.evaluate import evaluateArray
from src.numverify.flows import integrateBatch
from src.symcore.expr import BASE, JET_SYMBOLS, q, r, z
from src.symcore.parser import parse

logger = logging.getLogger(__name__)

FD_STEP = 1e-4
TRANSPORT_STEPS_PER_UNIT = 10 ** 3


class SolutionSampler:
    """A named solution u = f(r, theta, z) evaluated on arrays."""

    def __init__(self, name, expression, bindings):
        self.name = name
        self.expression = sp.sympify(expression)
        self.bindings = dict(bindings)

    @classmethod
    def builtin(cls, name, bindings):
        if name not in SOLUTIONS:
            raise KeyError("no builtin solution %r (have %s)" % (name, ", ".join(SOLUTIONS)))
        return cls(name, parse(SOLUTIONS[name]), bindings)

    def __call__(self, points):
        columns = [points[:, i] for i in range(3)] + [np.zeros(len(points))]
        return evaluateArray(self.expression, columns, self.bindings)


def cheResidualExact(sampler, points):
    """CHE residual of the sampler from exact symbolic derivatives."""
    f = sampler.expression
    pde = chePde()
    jets = {symbol: sp.diff(f, *[(var, n) for var, n in zip((r, q, z), index) if n])
            for index, symbol in JET_SYMBOLS.items() if sum(index) > 0}
    jets[BASE[3]] = f
    residual = pde.lhs.xreplace(jets)
    columns = [points[:, i] for i in range(4)]
    return np.abs(evaluateArray(residual, columns, sampler.bindings))


def stencil(points, h):
    """Center plus +-h in r, theta and z for every point: shape (N, 7, 4)."""
    offsets = np.zeros((7, 4))
    for axis in range(3):
        offsets[1 + 2 * axis, axis] = h
        offsets[2 + 2 * axis, axis] = -h
    return points[:, None, :] + offsets[None, :, :]


def cheResidualFD(values, points, h, k):
    """CHE residual from stencil values of shape (N, 7)."""
    center = values[:, 0]
    second = [(values[:, 1 + 2 * a] - 2 * center + values[:, 2 + 2 * a]) / h ** 2
              for a in range(3)]
    first_r = (values[:, 1] - values[:, 2]) / (2 * h)
    radius = points[:, 0]
    return (second[0] + first_r / radius + second[1] / radius ** 2 + second[2]
            + k ** 2 * center)


def transportedValues(sampler, i, s, points, steps=None):
    """Values of g_i(s) . f at the given (N, 4) points."""
    flat = points.reshape(-1, 4).copy()
    flat[:, 3] = 0.0
    if i == 3:
        return (np.exp(s) * sampler(flat)).reshape(points.shape[:-1])
    steps = steps or max(1, int(np.ceil(TRANSPORT_STEPS_PER_UNIT * abs(s))))
    moved = integrateBatch(cheGenerators()[i - 1], flat, s, steps, sampler.bindings)
    return sampler(moved).reshape(points.shape[:-1])


def transportSolution(sampler, i, s, grid, h=FD_STEP, steps=None):
    """Max |CHE residual| of g_i(s) . f over the grid points."""
    points = np.asarray(grid, dtype=float)
    k = float(sampler.bindings.get("k", 1.0))
    nodes = stencil(points, h)
    values = transportedValues(sampler, i, s, nodes, steps)
    residual = cheResidualFD(values, points, h, k)
    worst = float(np.max(np.abs(residual)))
    logger.debug("%s under g%d(%g): max residual %.3g", sampler.name, i, s, worst)
    return worst
