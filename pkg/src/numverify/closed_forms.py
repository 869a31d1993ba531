"""The published closed-form flows g1..g7, evaluated as printed.

g6 and g7 use a symbol t that is never defined; it is read as the initial
angle theta. Every formula is evaluated in complex arithmetic so that a
non-real value is detected instead of silently producing NaN.
"""
import logging
import math

import numpy as np

from src.data_loading.che_builtin import cheGenerators
from src.helper_functions.reporting import (
    PASS,
    UNVERIFIED,
    UNVERIFIED_DOMAIN,
)
from src.numverify.errors import FormulaDomainError
from src.numverify.evaluate import Point
from src.numverify.flows import cartesianOracle, integrateFlow

logger = logging.getLogger(__name__)

CLOSED_FORM_TOL = 1e-7
IMAG_TOL = 1e-10


def _g1(r, t, z, u, s):
    return r, t + s, z, u


def _g2(r, t, z, u, s):
    return r, t, z + s, u


def _g3(r, t, z, u, s):
    return r, t, z, u + s


def _g4(r, t, z, u, s):
    rad = np.sqrt(np.cos(t) ** 2 + (2 * s - r * np.sin(2 * t)) ** 2 / (4 * r ** 2))
    sec = np.sqrt(1 + np.tan(t) ** 2)
    return r * rad, np.arctan(s / r * sec - np.tan(t)), z, u


def _g5(r, t, z, u, s):
    sec = np.sqrt(1 + np.tan(t) ** 2)
    radius = (s - r / sec) * np.sqrt(1 + (r * np.tan(t) / (s * sec - r)) ** 2)
    return radius, np.arctan(r * np.tan(t) / (s * sec + r)), z, u


def _rotationForm(r, t, z, u, s, shift, d, dAtanh, sign):
    c1 = r ** 2 + z ** 2

    def term(angle):
        return (np.sqrt((c1 - d ** 2) * np.cos(angle) ** 2)
                * np.arctanh((d ** 2 - c1) / dAtanh * np.cos(angle))
                / (np.sqrt(d ** 2 - c1) * np.cos(angle)))

    radius = np.sqrt(c1 * np.cos(s + shift) ** 2 + d ** 2 * np.sin(s + shift) ** 2)
    angle = t + sign * (term(s + shift) - term(shift))
    height = math.sqrt(2) / 2 * np.sqrt((c1 - d ** 2) * np.sin(2 * s + 2 * shift))
    return radius, angle, height, u


def _g6(r, t, z, u, s):
    shift = np.arctan(z * (r ** 2 * np.cos(t) ** 2) ** -0.5)
    d1 = r * np.sin(t)
    return _rotationForm(r, t, z, u, s, shift, d1, d1, -1)


def _g7(r, t, z, u, s):
    shift = -s - np.arctan(z * (r ** 2 * np.sin(t) ** 2) ** -0.5)
    d1 = r * np.sin(t)
    d2 = r * np.cos(t)
    return _rotationForm(r, t, z, u, s, shift, d2, d1, 1)


PRINTED_FLOWS = {1: _g1, 2: _g2, 3: _g3, 4: _g4, 5: _g5, 6: _g6, 7: _g7}
# arctan-based angles are only determined modulo pi
ANGLE_PERIOD = {1: 2 * math.pi, 2: 2 * math.pi, 3: 2 * math.pi, 4: math.pi,
                5: math.pi, 6: 2 * math.pi, 7: 2 * math.pi}


def printedFlow(i, p, s):
    """(r, theta, z, u) of the printed g_i(s) at p; FormulaDomainError when
    any component is not real."""
    if i not in PRINTED_FLOWS:
        raise IndexError("generator index %d out of range 1..7" % i)
    args = [complex(v) for v in (p.r, p.theta, p.z, p.u)] + [complex(s)]
    with np.errstate(all="ignore"):
        values = [complex(v) for v in PRINTED_FLOWS[i](*args)]
    for name, value in zip(("r", "theta", "z", "u"), values):
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise FormulaDomainError("g%d: %s is not finite" % (i, name))
        if abs(value.imag) > IMAG_TOL * (1 + abs(value.real)):
            raise FormulaDomainError("g%d: %s = %s is not real" % (i, name, value))
    return np.array([v.real for v in values])


def flowDeviation(a, b, period):
    diff = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    delta = (a[1] - b[1]) % period
    diff[1] = min(delta, period - delta)
    return float(np.max(diff))


def verifyClosedFormFlow(i, p0, s, steps=None, tol=CLOSED_FORM_TOL):
    if not isinstance(p0, Point):
        p0 = Point(*p0)
    result = integrateFlow(cheGenerators()[i - 1], p0, s, steps)
    integrated = result.endpoint.asArray()
    oracle = cartesianOracle(i, p0.asArray(), s)[0]
    printed = printedFlow(i, p0, s)
    deviation = flowDeviation(printed, integrated, ANGLE_PERIOD[i])
    status = PASS if deviation <= tol else UNVERIFIED
    if status != PASS:
        logger.warning("g%d disagrees with the integrated flow by %.3g", i, deviation)
    return {
        "name": "g%d" % i,
        "point": [p0.r, p0.theta, p0.z, p0.u],
        "s": s,
        "status": status,
        "value": deviation,
        "tolerance": tol,
        "printed": printed.tolist(),
        "integrated": integrated.tolist(),
        "oracle_deviation": flowDeviation(integrated, oracle, 2 * math.pi),
        "local_error_estimate": result.localErrorEstimate,
    }


def closedFormReport(i, p0, s, steps=None, tol=CLOSED_FORM_TOL):
    """verifyClosedFormFlow with a non-real printed value turned into a
    status instead of an exception."""
    try:
        return verifyClosedFormFlow(i, p0, s, steps, tol)
    except FormulaDomainError as error:
        logger.warning("%s", error)
        return {"name": "g%d" % i, "s": s, "status": UNVERIFIED_DOMAIN,
                "note": str(error), "tolerance": tol}
