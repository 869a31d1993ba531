"""Normal forms of one-dimensional subalgebras of the CHE algebra under the
adjoint action.

Each case of the table fixes a zero pattern of the input coefficients and a
list of moves (generator, coefficient to cancel). A move solves for the
parameter s of Ad(exp(s X_g)) that zeroes the chosen coefficient and applies
it; moves whose target is already zero, or that cannot reach it, are skipped.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy as sp
from tqdm import tqdm

from src.adjointsys.adjoint import adjointApply, adjointMatrices
from src.adjointsys.errors import DegenerateInputError, ToleranceFailure

logger = logging.getLogger(__name__)

BRANCH_TOL = 1e-12
PATTERN_TOL = 1e-9

# class -> (label, coefficient indices allowed to be nonzero, parameter indices)
CLASSES = {
    1: ("X1", {1}, ()),
    2: ("X2", {2}, ()),
    3: ("X6", {6}, ()),
    4: ("X7", {7}, ()),
    5: ("X3 + a*X1", {3, 1}, (1,)),
    6: ("X3 + a*X4", {3, 4}, (4,)),
    7: ("X3 + a*X6", {3, 6}, (6,)),
    8: ("X3 + a*X7", {3, 7}, (7,)),
    9: ("a*X1 + b*X2", {1, 2}, (1, 2)),
    10: ("a*X4 + b*X6", {4, 6}, (4, 6)),
    11: ("a*X5 + b*X7", {5, 7}, (5, 7)),
    12: ("X3 + a*X1 + b*X2", {3, 1, 2}, (1, 2)),
    13: ("X3 + a*X4 + b*X6", {3, 4, 6}, (4, 6)),
    14: ("a*X1 + b*X2 + c*X5", {1, 2, 5}, (1, 2, 5)),
    15: ("a*X2 + b*X5 + c*X7", {2, 5, 7}, (2, 5, 7)),
    16: ("a*X4 + b*X5 + c*X6", {4, 5, 6}, (4, 5, 6)),
    17: ("X3 + a*X1 + b*X2 + c*X5", {3, 1, 2, 5}, (1, 2, 5)),
}


def rotationPart(c):
    return (c[1], -c[6], c[7])


def killingQuadratic(c):
    """a1^2 + a6^2 + a7^2, proportional to the Killing form."""
    return c[1] * c[1] + c[6] * c[6] + c[7] * c[7]


def pitch(c):
    """a1 a2 - a4 a6 + a5 a7, invariant under the adjoint action."""
    return c[1] * c[2] - c[4] * c[6] + c[5] * c[7]


def primedA5(c):
    return c[1] * c[2] + c[5] * c[7]


def primedA2(c):
    return -c[2] * c[7] + c[1] * c[5]


@dataclass(frozen=True)
class Case:
    name: str
    central: bool
    condition: object
    classId: int
    moves: tuple
    printedClass: int = 0
    note: str = ""


ROTATE_TO_X1 = ((7, 6), (6, 7))
CENTRAL_GENERIC = ROTATE_TO_X1 + ((5, 4), (1, 4))
CENTRAL_TRANSLATION = ROTATE_TO_X1 + ((5, 4), (4, 5))
ALIGN_X7 = ((6, 1), (1, 6), (2, 4))


def _cases():
    # conditions receive the 1-based coefficients c and a zero test z(.)
    return (
        Case("1", True, lambda c, z: not z(c[5]) and not z(c[2]), 17, CENTRAL_GENERIC),
        Case("2", True, lambda c, z: not z(c[5]) and z(c[2]), 17, CENTRAL_GENERIC,
             printedClass=11,
             note="printed class 11 has no X3 term although a3 is invariant"),
        Case("3", True, lambda c, z: z(c[5]) and not z(c[2]) and not z(c[4])
             and all(z(w) for w in rotationPart(c)), 6, ((7, 2),)),
        Case("3*", True, lambda c, z: z(c[5]) and not z(c[2]) and not z(c[4]), 12,
             CENTRAL_TRANSLATION, printedClass=6,
             note="rotation part nonzero, so the X1 direction survives"),
        Case("4", True, lambda c, z: z(c[5]) and not z(c[2]) and z(c[4]), 12,
             CENTRAL_TRANSLATION),
        Case("5", True, lambda c, z: z(c[2]) and z(c[5]) and not z(c[4]) and not z(c[7]),
             13, ((1, 7), (7, 1), (5, 2), (2, 5))),
        Case("6", True, lambda c, z: z(c[2]) and z(c[4]) and z(c[5]) and not z(c[7])
             and not z(c[6]), 7, ((1, 7), (7, 1))),
        Case("7", True, lambda c, z: z(c[2]) and z(c[4]) and z(c[5]) and z(c[6])
             and not z(c[7]), 8, ((6, 1),)),
        Case("8", True, lambda c, z: z(c[2]) and z(c[5]) and z(c[7]) and not z(c[4]),
             13, ((7, 1), (5, 2))),
        Case("9", True, lambda c, z: z(c[2]) and z(c[4]) and z(c[5]) and z(c[7])
             and not z(c[6]), 7, ((7, 1),)),
        Case("10", True, lambda c, z: all(z(c[i]) for i in (2, 4, 5, 6, 7)), 5, ()),
        Case("11", False, lambda c, z: not z(c[4]) and not z(c[5]), 16,
             ((1, 7), (7, 1), (5, 2), (7, 2))),
        Case("12", False, lambda c, z: not z(c[4]) and z(c[5]), 10,
             ((1, 7), (7, 1), (5, 2), (2, 5), (7, 2))),
        Case("13", False, lambda c, z: z(c[4]) and not z(c[7]) and not z(primedA5(c)),
             15, ALIGN_X7),
        Case("14", False, lambda c, z: z(c[4]) and not z(c[7]) and not z(primedA2(c)),
             4, ALIGN_X7 + ((4, 2),), printedClass=2,
             note="pitch vanishes here, so the X2 direction cannot survive"),
        Case("15", False, lambda c, z: z(c[4]) and not z(c[7]), 4, ALIGN_X7 + ((4, 2),)),
        Case("16", False, lambda c, z: z(c[4]) and z(c[7]) and z(primedA5(c))
             and z(primedA2(c)) and not z(c[6]) and not (z(c[2]) and z(c[5])), 3,
             ((7, 1), (5, 2), (2, 5)), note="printed b7 read as a7"),
        Case("17", False, lambda c, z: z(c[4]) and z(c[7]) and not z(c[5]), 14,
             ((7, 6), (5, 4))),
        Case("18", False, lambda c, z: z(c[4]) and z(c[5]) and z(c[7]) and not z(c[2]),
             9, ((7, 6), (5, 4))),
        Case("19", False, lambda c, z: all(z(c[i]) for i in (2, 4, 5, 7)) and not z(c[6]),
             3, ((7, 1),)),
        Case("20", False, lambda c, z: all(z(c[i]) for i in (2, 4, 5, 6, 7)), 1, (),
             note="second printed case 18"),
    )


CASES = _cases()


@dataclass
class NormalFormResult:
    classId: int
    case: str
    parameters: dict
    transformedElement: np.ndarray
    transcript: list
    scale: float = 1.0
    audit: dict = field(default_factory=dict)
    inputElement: tuple = ()

    @property
    def label(self):
        return CLASSES[self.classId][0]

    def replay(self, g):
        scaled = np.array(self.inputElement, dtype=float) * self.scale
        return adjointApply(g, self.transcript, scaled)

    def toDict(self):
        return {
            "input": [float(x) for x in self.inputElement],
            "class": self.classId,
            "label": self.label,
            "case": self.case,
            "scale": self.scale,
            "parameters": self.parameters,
            "element": [float(x) for x in self.transformedElement],
            "transcript": [{"generator": i, "s": s} for i, s in self.transcript],
            "audit": self.audit,
        }


def _isExact(values):
    return all(isinstance(v, (int, Fraction, sp.Rational)) for v in values)


def selectCase(x):
    """The first case whose conditions hold for the coefficient vector x."""
    exact = _isExact(x)
    if exact:
        values = [Fraction(int(v.p), int(v.q)) if isinstance(v, sp.Rational) else Fraction(v)
                  for v in x]

        def isZero(v):
            return v == 0
    else:
        values = [float(v) for v in x]

        def isZero(v):
            return abs(v) <= BRANCH_TOL
    c = [0] + values
    central = not isZero(c[3])
    if central:
        c = [0] + [v / c[3] for v in values]
    for case in CASES:
        if case.central == central and case.condition(c, isZero):
            return case, c
    raise AssertionError("case table is not exhaustive for %s" % (x,))


class Normalizer:
    """Normal forms over a fixed algebra (the CHE algebra, 7-dimensional)."""

    def __init__(self, g):
        if g.dim != 7:
            raise ValueError("the case table is written for the 7-dimensional CHE algebra")
        self.g = g
        self.matrices = adjointMatrices(g)

    def solveMove(self, a, generator, target):
        """Parameter s with (exp(-s ad X_g) a)[target] = 0, or None."""
        adj = self.matrices[generator]
        B = adj.B
        k = target - 1
        f0 = a[k]
        scale = max(1.0, float(np.max(np.abs(a))))
        if abs(f0) <= BRANCH_TOL * scale:
            return None
        Ba = B @ a
        q = Ba[k]
        if adj.kind == "nilpotent":
            if abs(q) <= BRANCH_TOL * scale:
                return None
            return -f0 / q
        if adj.kind == "rotation":
            w = (B @ Ba)[k]
            if abs(f0 + w) > 1e-9 * scale:
                return None
            return math.atan2(-f0, q)
        return None

    def normalize(self, x):
        x = tuple(x)
        if len(x) != self.g.dim:
            raise ValueError("expected %d coefficients" % self.g.dim)
        if all(float(v) == 0 for v in x):
            raise DegenerateInputError()
        case, c = selectCase(x)
        a3 = float(x[2])
        scale = 1.0 / a3 if a3 != 0 and case.central else 1.0
        a = np.array([float(v) for v in x]) * scale
        transcript = []
        for generator, target in case.moves:
            s = self.solveMove(a, generator, target)
            if s is None:
                continue
            a = self.matrices[generator].exponential(s) @ a
            transcript.append((generator, float(s)))
        label, pattern, params = CLASSES[case.classId]
        offPattern = {i + 1: float(v) for i, v in enumerate(a)
                      if i + 1 not in pattern and abs(v) > PATTERN_TOL}
        if offPattern:
            logger.error("case %s missed class %d: %s", case.name, case.classId, offPattern)
            raise ToleranceFailure(x, case.name, offPattern)
        logger.debug("case %s -> class %d (%s)", case.name, case.classId, label)
        cf = [0.0] + [float(v) for v in c]
        return NormalFormResult(
            classId=case.classId,
            case=case.name,
            parameters={letter: float(a[i - 1]) for letter, i in zip("abc", params)},
            transformedElement=a,
            transcript=transcript,
            scale=scale,
            audit={
                "a2_prime": primedA2(cf),
                "a5_prime": primedA5(cf),
                "killing_quadratic": killingQuadratic(cf),
                "pitch": pitch(cf),
            },
            inputElement=x,
        )


def randomElements(n, seed, sparsity=0.4):
    """Seeded coefficient vectors with random zero patterns."""
    rng = np.random.default_rng(seed)
    elements = []
    while len(elements) < n:
        values = rng.uniform(-1.0, 1.0, 7)
        values[rng.random(7) < sparsity] = 0.0
        if np.any(values != 0):
            elements.append(tuple(float(v) for v in values))
    return elements


def sweep(normalizer, elements, progress=True):
    """Normalize every element; returns (results, failures)."""
    results = []
    failures = []
    for x in tqdm(elements, disable=not progress, desc="normalize"):
        try:
            results.append(normalizer.normalize(x))
        except ToleranceFailure as error:
            failures.append(error)
    return results, failures


def classHistogram(results):
    histogram = {classId: 0 for classId in CLASSES}
    for result in results:
        histogram[result.classId] += 1
    return histogram
