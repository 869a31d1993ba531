import logging
from dataclasses import dataclass, field

import numpy as np
import sympy as sp

from src.data_loading.che_builtin import (
    I1_CONSTANTS,
    I2_BOX,
    I2_CONSTANTS,
    I3_CONSTANTS,
    INVARIANT_I1,
    INVARIANT_I2_PRINTED,
    INVARIANT_I2_RADIAL,
    generalSymmetry,
    invariantI3,
)
from src.data_loading.data_loader import SampleBoxLoader
from src.helper_functions.reporting import PASS, UNVERIFIED, UNVERIFIED_DOMAIN, checkEntry
from src.numverify.errors import DomainError
from src.numverify.evaluate import evaluateArray
from src.symcore.parser import parse

logger = logging.getLogger(__name__)

FD_FIRST = 1e-5
INVARIANT_TOL = {"I1": 1e-6, "I2": 1e-5, "I3": 1e-6}


@dataclass(frozen=True)
class InvariantSpec:
    name: str
    expression: sp.Expr
    constants: dict = field(default_factory=dict)
    box: dict = None

    def bindings(self, k=1.0):
        values = {"c%d" % i: 0 for i in range(1, 14)}
        values.update(self.constants)
        values["k"] = k
        return values


def _columns(points):
    return [points[:, i] for i in range(4)]


def directionalDerivative(v, spec, points, h=FD_FIRST, k=1.0):
    """v[I] at each point by central differences in r, theta, z and u."""
    bindings = spec.bindings(k)
    total = np.zeros(len(points))
    for axis, component in enumerate(v.components):
        coefficient = evaluateArray(component, _columns(points), bindings)
        if not np.any(coefficient):
            continue
        up = points.copy()
        down = points.copy()
        up[:, axis] += h
        down[:, axis] -= h
        slope = (evaluateArray(spec.expression, _columns(up), bindings)
                 - evaluateArray(spec.expression, _columns(down), bindings)) / (2 * h)
        total += coefficient * slope
    return total


def checkInvariant(v, spec, samples=200, seed=0, h=FD_FIRST, k=1.0, box=None):
    """max |v[I]| over seeded points of the sample box."""
    points = SampleBoxLoader(samples, seed, box if box is not None else spec.box).asArray()
    return float(np.max(np.abs(directionalDerivative(v, spec, points, h, k))))


def publishedInvariants():
    return [
        InvariantSpec("I1", parse(INVARIANT_I1), I1_CONSTANTS),
        InvariantSpec("I2", parse(INVARIANT_I2_PRINTED), I2_CONSTANTS, I2_BOX),
        InvariantSpec("I2 (r in Bessel argument)", parse(INVARIANT_I2_RADIAL), I2_CONSTANTS,
                      I2_BOX),
        InvariantSpec("I3", invariantI3(), I3_CONSTANTS),
    ]


def invariantReport(spec, samples=200, seed=0, k=1.0, tol=None):
    """Status entry for one invariant, checked against the general symmetry
    with the same constants."""
    tol = tol if tol is not None else INVARIANT_TOL[spec.name.split()[0]]
    constants = dict(spec.constants)
    constants["k"] = k
    v = generalSymmetry(constants)
    try:
        value = checkInvariant(v, spec, samples, seed, k=k)
    except DomainError as error:
        logger.warning("%s: %s", spec.name, error)
        return {"name": spec.name, "status": UNVERIFIED_DOMAIN, "note": str(error),
                "tolerance": tol}
    return checkEntry(spec.name, value, tol, onFailure=UNVERIFIED,
                      constants={name: float(c) for name, c in sorted(spec.constants.items())},
                      box=spec.box)


def besselArgumentComparison(reports):
    """Printed I2 against the variant with r in the Bessel argument, from
    their two reports; the variant with the smaller max |v[I2]| is named."""
    byName = {entry["name"]: entry for entry in reports}
    names = ("I2", "I2 (r in Bessel argument)")
    values = [byName[name].get("value") for name in names]
    entry = {"name": "I2 Bessel argument comparison", "printed": values[0],
             "radial": values[1], "tolerance": byName["I2"]["tolerance"]}
    if any(value is None for value in values):
        entry["status"] = UNVERIFIED_DOMAIN
        return entry
    entry["closer"] = names[int(values[1] < values[0])]
    entry["value"] = min(values)
    entry["status"] = PASS if entry["value"] <= entry["tolerance"] else UNVERIFIED
    return entry
