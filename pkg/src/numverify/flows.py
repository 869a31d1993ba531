"""One-parameter groups of vector fields by classical RK4.

States are arrays of shape (N, 4) holding (r, theta, z, u); all N
trajectories are advanced together.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.numverify.errors import SingularityApproachError
from src.numverify.evaluate import Point, bindConstants, compiled, realPart
from src.symcore.expr import BASE

logger = logging.getLogger(__name__)

STEPS_PER_UNIT = 10 ** 4
R_MIN = 1e-6


@dataclass(frozen=True)
class FlowResult:
    endpoint: Point
    steps: int
    stepSize: float
    localErrorEstimate: float


class FieldFlow:
    """Right-hand side (xi1, xi2, xi3, eta) of dX/ds = v(X), vectorized."""

    def __init__(self, v, bindings=None):
        self.v = v
        components = [bindConstants(c, bindings) for c in v.components]
        self.functions = [compiled(c, BASE) for c in components]

    def __call__(self, X):
        columns = [X[:, i] for i in range(4)]
        out = np.empty_like(X)
        for i, function in enumerate(self.functions):
            with np.errstate(all="ignore"):
                value = realPart(function(*columns))
            out[:, i] = np.broadcast_to(value, (X.shape[0],))
        return out


def defaultSteps(s):
    return max(1, int(math.ceil(STEPS_PER_UNIT * abs(s))))


def rk4(rhs, X, s, steps):
    """Integrate from parameter 0 to s in `steps` equal steps."""
    X = np.array(X, dtype=float)
    h = s / steps
    for n in range(steps):
        k1 = rhs(_guard(X, n * h))
        k2 = rhs(_guard(X + 0.5 * h * k1, (n + 0.5) * h))
        k3 = rhs(_guard(X + 0.5 * h * k2, (n + 0.5) * h))
        k4 = rhs(_guard(X + h * k3, (n + 1) * h))
        X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    _guard(X, s)
    return X


def _guard(X, s):
    low = float(np.min(X[:, 0]))
    if low < R_MIN:
        raise SingularityApproachError(s, low)
    return X


def integrateBatch(v, points, s, steps=None, bindings=None, flow=None):
    flow = flow or FieldFlow(v, bindings)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return rk4(flow, points, s, steps or defaultSteps(s))


def integrateFlow(v, p0, s, steps=None, bindings=None):
    """RK4 endpoint with a step-doubling estimate of its error."""
    steps = steps or defaultSteps(s)
    if steps < 1:
        raise ValueError("steps must be at least 1")
    flow = FieldFlow(v, bindings)
    start = np.atleast_2d(_asArray(p0))
    coarse = rk4(flow, start, s, steps)
    fine = rk4(flow, start, s, 2 * steps)
    estimate = float(np.max(np.abs(fine - coarse))) / 15.0
    return FlowResult(Point.fromArray(coarse[0]), steps, s / steps, estimate)


def _asArray(p):
    if isinstance(p, Point):
        return p.asArray()
    return np.asarray(p, dtype=float)


def stateDistance(a, b):
    """Max-norm distance with the angle compared modulo 2 pi."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    diff = np.abs(a - b)
    diff[:, 1] = np.abs(np.remainder(a[:, 1] - b[:, 1] + math.pi, 2 * math.pi) - math.pi)
    return np.max(diff, axis=1)


def checkGroupLaw(v, p0, s, t, stepsPerUnit=STEPS_PER_UNIT, bindings=None):
    """max |flow(s)(flow(t)(p0)) - flow(s + t)(p0)| over the given starts."""
    flow = FieldFlow(v, bindings)
    start = np.atleast_2d(_asArray(p0))

    def steps(x):
        return max(1, int(math.ceil(stepsPerUnit * abs(x))))

    composed = rk4(flow, rk4(flow, start, t, steps(t)), s, steps(s))
    direct = rk4(flow, start, s + t, steps(s + t))
    return float(np.max(stateDistance(composed, direct)))


def cartesianOracle(i, points, s):
    """Exact flows of the seven CHE generators through Cartesian
    coordinates (x, y, z) = (r cos theta, r sin theta, z)."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    r, theta, z, u = P[:, 0], P[:, 1], P[:, 2], P[:, 3]
    if i == 1:
        return np.stack([r, theta + s, z, u], axis=1)
    if i == 2:
        return np.stack([r, theta, z + s, u], axis=1)
    if i == 3:
        return np.stack([r, theta, z, u * math.exp(s)], axis=1)
    x, y = r * np.cos(theta), r * np.sin(theta)
    c, sn = math.cos(s), math.sin(s)
    if i == 4:
        y = y + s
    elif i == 5:
        x = x - s
    elif i == 6:
        x, z = x * c - z * sn, x * sn + z * c
    elif i == 7:
        y, z = y * c + z * sn, -y * sn + z * c
    else:
        raise IndexError("generator index %d out of range 1..7" % i)
    return np.stack([np.hypot(x, y), np.arctan2(y, x), z, u], axis=1)
