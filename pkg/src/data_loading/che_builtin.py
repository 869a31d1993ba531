"""Built-in workload: the cylindrical Helmholtz equation, its seven point
symmetries, the general symmetry with constants c1..c13, the published
determining equations and invariants, all as parseable text."""
from functools import lru_cache

from src.jetprolong.jet import Pde, VectorField
from src.liestruct.algebra import structureConstants
from src.symcore.expr import resolveSymbol
from src.symcore.parser import parse

CHE_LHS = "u_rr + (1/r)*u_r + (1/r^2)*u_qq + u_zz + k^2*u"
CHE_LEADING = "u_rr"

GENERATORS = {
    "X1": ("0", "1", "0", "0"),
    "X2": ("0", "0", "1", "0"),
    "X3": ("0", "0", "0", "u"),
    "X4": ("sin(q)", "cos(q)/r", "0", "0"),
    "X5": ("-cos(q)", "sin(q)/r", "0", "0"),
    "X6": ("-z*cos(q)", "z*sin(q)/r", "r*cos(q)", "0"),
    "X7": ("z*sin(q)", "z*cos(q)/r", "-r*sin(q)", "0"),
}
GENERATOR_LABELS = tuple(GENERATORS)

EXTRA_FIELDS = {
    "radial_scaling": ("r", "0", "0", "0"),
    "u_translation": ("0", "0", "0", "1"),
}

GENERAL_FIELD = (
    "(c1*z + c3)*sin(q) + (c2*z + c4)*cos(q)",
    "-(1/r)*(c2*z + c4)*sin(q) + (1/r)*(c1*z + c3)*cos(q) + c5",
    "-r*(c1*sin(q) + c2*cos(q)) + c6",
    "exp(-sqrt(c3)*z - sqrt(c2)*q)*(c7*exp(2*sqrt(c2)*q) + c8)"
    "*(c9*exp(2*sqrt(c3)*z) + c10)"
    "*(c11*BesselY(sqrt(-c2), sqrt(c3 + k^2)*r)"
    " + c12*BesselJ(sqrt(-c2), sqrt(c3 + k^2)*r)) + c13*u",
)

# Published determining equations, one entry per printed item, duplicates
# kept; eta_{z,z} is read as eta_zz.
PRINTED_DETERMINING = (
    "xi1_uu",
    "xi2_uu",
    "xi2_uu",
    "xi2_u",
    "xi1_uu",
    "xi3_uu",
    "xi1_u",
    "xi1_u",
    "xi2_u",
    "xi1_u",
    "xi3_u",
    "xi3_u",
    "r^2*xi2_z + xi3_q",
    "xi1_u",
    "xi3_uu",
    "xi1_z + xi3_r",
    "2*xi1_u + r*eta_uu - 2*r*xi1_ru",
    "r*xi1_r - r*xi2_q - xi1",
    "xi1_r - xi3_z",
    "2*xi3_zu - eta_uu",
    "r^2*xi2_r + xi1_q",
    "xi3_ru + xi1_zu",
    "xi3_qu + r^2*xi2_zu",
    "eta_uu - 2*xi2_qu",
    "r^2*xi2_ru + xi1_qu",
    "r^2*k^2*u*xi2_u + 2*eta_qu - r*xi2_r - xi2_qq - r^2*xi2_rr - r^2*xi2_zz",
    "3*r^2*k^2*u*xi1_u + r*xi1_r + 2*r^2*eta_ru - r^2*xi1_zz - xi1 - xi1_qq"
    " - r^2*xi1_rr",
    "r^2*k^2*u*xi3_u + 2*r^2*eta_zu - r*xi3_r - r^2*xi3_zz - xi3_qq - r^2*xi3_rr",
    "r^2*eta_zz + 2*r^2*k^2*u*(xi1_r - eta_u) + r^2*eta_rr + r*eta_r + eta_qq"
    " + r^2*eta*k^2",
)

INVARIANT_I1 = (
    "2*z + ((c1*sin(q) + c2*cos(q))*r^2 + c6*r)"
    "/((c1*z + c3)*sin(q) + (c2*z + c4)*cos(q))"
)

_I2_TEMPLATE = (
    "z - (1/c13)*(c1*sin(q) + c2*cos(q))*ln((c11*BesselY(sqrt(-c2), {arg})"
    " + c12*BesselJ(sqrt(-c2), {arg}))"
    "*(c7*c9*exp(sqrt(c2)*q + sqrt(c3)*z) + c7*c10*exp(sqrt(c2)*q - sqrt(c3)*z)"
    " + c8*c9*exp(-sqrt(c2)*q + sqrt(c3)*z) + c8*c10*exp(-sqrt(c2)*q - sqrt(c3)*z))"
    " + c13*u)"
)
INVARIANT_I2_PRINTED = _I2_TEMPLATE.format(arg="sqrt(c3 + k^2)")
INVARIANT_I2_RADIAL = _I2_TEMPLATE.format(arg="sqrt(c3 + k^2)*r")

I3_PARTS = {
    "A": "c2^2*z^2 + 2*c2*c4*z + c4^2 + c1^2*z^2 + 2*c1*c3*z + c3^2",
    "B": "(-2*c1*c3*z - c3^2 - c1^2*z^2 + c5^2*r^2 - c2^2*z^2 - 2*c2*c4*z - c4^2)^(1/2)",
    "C": "(1/(cos(q) + 1))*(c1*z*cos(q) + c3*cos(q) - c4*sin(q) - c2*z*sin(q) + c5*r)",
    "alpha": "(1/(B*sin(q)))*(c1*z - c1*z*cos(q) + c3 - c3*cos(q) - c5*r"
    " + c5*r*cos(q) + c2*z*sin(q) + c4*sin(q))",
}
INVARIANT_I3 = (
    "-(1/B)*arctan(alpha)*(2*c5*A^(-1)*(c2*c3 - c1*c4)*r^3 + 2*c6*r)"
    " + r^2*A^(-1)*(ln(C) - ln(1/(cos(q) + 1)))*(c2^2*z + c1*c3 + c2*c4 + c1^2*z)"
    " + 2*r^2*A^(-1)*arctan((cos(q) - 1)/sin(q))*(c2*c3 - c1*c4)"
)

# Real-valued constant choices for the invariant checks.
I1_CONSTANTS = {"c1": 1, "c2": 0, "c3": 1, "c4": 0, "c5": 0, "c6": 1}
I2_CONSTANTS = {
    "c1": 0, "c2": -1, "c3": 1, "c4": 0, "c5": 0, "c6": 0,
    "c7": 1, "c8": 1, "c9": 1, "c10": 1, "c11": 0, "c12": 1, "c13": 1,
}
# ln argument of I2 stays positive here: J1 has no zero below r = 2.7
I2_BOX = {"r": (0.5, 2.5), "u": (0.5, 1.0)}
I3_CONSTANTS = {"c1": 0, "c2": 0, "c3": 0.1, "c4": 0.1, "c5": 1, "c6": 1}

SOLUTIONS = {
    "cos_kz": "cos(k*z)",
    "besselj0_kr": "BesselJ(0, k*r)",
}


def fieldFromText(components, name=""):
    return VectorField(*[parse(text) for text in components], name=name)


@lru_cache(maxsize=None)
def chePde():
    return Pde.fromLhs(parse(CHE_LHS), CHE_LEADING, name="CHE")


@lru_cache(maxsize=None)
def cheGenerators():
    return tuple(fieldFromText(GENERATORS[label], label) for label in GENERATOR_LABELS)


def builtinField(name):
    if name in GENERATORS:
        return fieldFromText(GENERATORS[name], name)
    if name in EXTRA_FIELDS:
        return fieldFromText(EXTRA_FIELDS[name], name)
    if name == "general":
        return fieldFromText(GENERAL_FIELD, name)
    raise KeyError(
        "no builtin field %r (have %s, general)"
        % (name, ", ".join(list(GENERATORS) + list(EXTRA_FIELDS)))
    )


def generalSymmetry(constants):
    """The general symmetry with every ci not given set to 0."""
    bindings = {"c%d" % i: 0 for i in range(1, 14)}
    bindings.update(constants)
    return VectorField(
        *[parse(text).subs(_symbolBindings(bindings)) for text in GENERAL_FIELD],
        name="general",
    )


def _symbolBindings(bindings):
    return {resolveSymbol(name): value for name, value in bindings.items()}


def printedDeterminingEquations():
    return [parse(text) for text in PRINTED_DETERMINING]


def invariantI3():
    parts = {}
    for name in ("A", "B", "C"):
        parts[name] = parse(I3_PARTS[name])
    parts["alpha"] = parse(I3_PARTS["alpha"], extra={"B": parts["B"]})
    return parse(INVARIANT_I3, extra=parts)


@lru_cache(maxsize=None)
def cheAlgebra():
    """Structure constants of X1..X7."""
    return structureConstants(cheGenerators(), GENERATOR_LABELS)
