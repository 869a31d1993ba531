import math

import numpy as np
import pytest
import scipy.special
import sympy as sp

from src.data_loading.che_builtin import builtinField
from src.data_loading.data_loader import SampleBoxLoader
from src.helper_functions.reporting import PASS, UNVERIFIED, UNVERIFIED_DOMAIN
from src.numverify.closed_forms import closedFormReport, printedFlow, verifyClosedFormFlow
from src.numverify.errors import DomainError, SingularityApproachError, UnboundSymbolError
from src.numverify.evaluate import Point, evalExpr, evaluateArray, onShellResidual
from src.numverify.flows import (
    cartesianOracle,
    checkGroupLaw,
    integrateBatch,
    integrateFlow,
    stateDistance,
)
from src.numverify.invariants import (
    InvariantSpec,
    besselArgumentComparison,
    checkInvariant,
    invariantReport,
    publishedInvariants,
)
from src.numverify.transport import (
    SolutionSampler,
    cheResidualExact,
    transportSolution,
)
from src.jetprolong.jet import VectorField
from src.symcore.expr import r
from src.symcore.parser import parse

K1 = {"k": 1.0}


@pytest.fixture(scope="module")
def starts():
    return SampleBoxLoader(20, seed=5).asArray()


def test_point_domain():
    with pytest.raises(DomainError):
        Point(0.0, 0.1, 0.0)
    with pytest.raises(DomainError):
        Point(1.0, float("nan"), 0.0)


def test_unbound_constant():
    with pytest.raises(UnboundSymbolError) as info:
        evalExpr(parse("k*r"), (1.0, 0.0, 0.0, 0.0))
    assert info.value.names == ("k",)


def test_eval_bessel_matches_scipy():
    value = evalExpr(parse("BesselJ(0, k*r)"), (2.5, 0.3, 0.0, 0.0), {"k": 1.3})
    assert value == pytest.approx(scipy.special.jv(0, 3.25), abs=1e-15)


def test_complex_value_is_a_domain_error():
    with pytest.raises(DomainError):
        evalExpr(parse("sqrt(z)"), (1.0, 0.0, -1.0, 0.0))


def test_bessel_equation_residual():
    x = np.linspace(0.5, 20.0, 200)
    f = sp.besselj(0, r)
    residual = sp.diff(f, r, 2) + sp.diff(f, r) / r + f
    values = evaluateArray(residual, [x, x * 0, x * 0, x * 0])
    assert np.max(np.abs(values)) <= 1e-8


def test_rotation_flow_is_exact():
    result = integrateFlow(builtinField("X1"), Point(1.0, 0.2, 0.0, 0.0), 0.5)
    assert result.endpoint.theta == pytest.approx(0.7, abs=1e-12)
    assert result.localErrorEstimate <= 1e-12


def test_group_law_x6(starts):
    assert checkGroupLaw(builtinField("X6"), starts, 0.3, 0.4, bindings=K1) <= 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("name", ["X1", "X2", "X3", "X4", "X5", "X6", "X7"])
def test_group_law(starts, name):
    assert checkGroupLaw(builtinField(name), starts, 0.3, 0.4, bindings=K1) <= 1e-8


@pytest.mark.parametrize("i", [4, 5])
def test_translations_match_cartesian_oracle(starts, i):
    moved = integrateBatch(builtinField("X%d" % i), starts, 0.3)
    assert np.max(stateDistance(moved, cartesianOracle(i, starts, 0.3))) <= 1e-8


def test_flow_towards_axis_raises():
    with pytest.raises(SingularityApproachError):
        integrateBatch(builtinField("X5"), [[0.5, 0.0, 0.0, 0.0]], 1.0)


def test_printed_translation_flows_pass():
    for i in (1, 2):
        report = verifyClosedFormFlow(i, Point(1.2, 0.6, 0.3, 0.5), 0.3)
        assert report["status"] == PASS


def test_printed_u_flow_is_flagged():
    report = verifyClosedFormFlow(3, Point(1.2, 0.6, 0.3, 0.5), 0.3)
    assert report["status"] == UNVERIFIED
    assert report["value"] == pytest.approx(0.8 - 0.5 * math.exp(0.3), abs=1e-9)


@pytest.mark.parametrize("i", [6, 7])
def test_rotation_reports_are_deterministic(i):
    first = closedFormReport(i, (1.2, 0.6, 0.3, 0.0), 0.3)
    second = closedFormReport(i, (1.2, 0.6, 0.3, 0.0), 0.3)
    assert first == second
    assert first["status"] in (PASS, UNVERIFIED, UNVERIFIED_DOMAIN)


def test_printed_flow_index():
    with pytest.raises(IndexError):
        printedFlow(8, Point(1.0, 0.0, 0.0), 0.1)


def test_invariant_of_rotation():
    spec = InvariantSpec("xz radius", parse("r^2*cos(q)^2 + z^2"))
    assert checkInvariant(builtinField("X6"), spec, samples=50) <= 1e-6


def test_non_invariant_is_detected():
    spec = InvariantSpec("angle", parse("q"))
    assert checkInvariant(builtinField("X1"), spec, samples=20) == pytest.approx(1.0)


def test_invariant_reports_are_deterministic():
    for spec in publishedInvariants():
        first = invariantReport(spec, samples=50, seed=1)
        assert first == invariantReport(spec, samples=50, seed=1)
        assert first["status"] in (PASS, UNVERIFIED, UNVERIFIED_DOMAIN)


@pytest.mark.parametrize("name", ["cos_kz", "besselj0_kr"])
def test_solutions_before_transport(starts, name):
    sampler = SolutionSampler.builtin(name, K1)
    assert np.max(cheResidualExact(sampler, starts)) <= 1e-8


@pytest.mark.parametrize("s", [0.3, 0.7])
@pytest.mark.parametrize("i", range(1, 8))
@pytest.mark.parametrize("name", ["cos_kz", "besselj0_kr"])
def test_transported_solution(name, i, s):
    grid = SampleBoxLoader(5, seed=2).asArray()
    sampler = SolutionSampler.builtin(name, K1)
    assert transportSolution(sampler, i, s, grid) <= 1e-5


def test_z_shift_of_radial_solution():
    grid = SampleBoxLoader(5, seed=2).asArray()
    sampler = SolutionSampler.builtin("besselj0_kr", K1)
    assert transportSolution(sampler, 2, 1.0, grid) <= 1e-6


def test_unknown_solution():
    with pytest.raises(KeyError):
        SolutionSampler.builtin("sin_kq", K1)


def test_numeric_symmetry_fallback(che):
    assert onShellResidual(builtinField("X7"), che, samples=50, bindings=K1) <= 1e-8
    assert onShellResidual(builtinField("radial_scaling"), che, samples=50, bindings=K1) > 1e-3


def test_complex_field_stops_the_flow():
    v = VectorField(parse("sqrt(z)"), 0, 0, 0)
    with pytest.raises(DomainError):
        integrateBatch(v, [[1.0, 0.2, -0.5, 0.0]], 0.1)


def test_rk4_is_fourth_order():
    v = builtinField("X4")
    start = [[1.0, 0.8, 0.0, 0.0]]
    exact = cartesianOracle(4, start, 1.0)
    errors = [float(stateDistance(integrateBatch(v, start, 1.0, steps=n), exact)[0])
              for n in (8, 16)]
    assert math.log2(errors[0] / errors[1]) >= 3.7


@pytest.mark.parametrize("i", range(1, 8))
def test_flows_keep_u_except_scaling(starts, i):
    moved = integrateBatch(builtinField("X%d" % i), starts, 0.3)
    expected = starts[:, 3] * (math.exp(0.3) if i == 3 else 1.0)
    assert np.max(np.abs(moved[:, 3] - expected)) <= 1e-8


def test_both_bessel_arguments_of_i2_are_real():
    reports = [invariantReport(spec, samples=50, seed=1) for spec in publishedInvariants()]
    byName = {entry["name"]: entry for entry in reports}
    for name in ("I2", "I2 (r in Bessel argument)"):
        assert byName[name]["status"] != UNVERIFIED_DOMAIN
        assert math.isfinite(byName[name]["value"])
    comparison = besselArgumentComparison(reports)
    assert math.isfinite(comparison["printed"])
    assert math.isfinite(comparison["radial"])
    assert comparison["value"] == min(comparison["printed"], comparison["radial"])
    assert comparison["closer"] in ("I2", "I2 (r in Bessel argument)")
    assert comparison["status"] in (PASS, UNVERIFIED)


def test_bessel_argument_comparison_needs_both_values():
    reports = [
        {"name": "I2", "status": UNVERIFIED_DOMAIN, "tolerance": 1e-5},
        {"name": "I2 (r in Bessel argument)", "value": 0.5, "status": UNVERIFIED,
         "tolerance": 1e-5},
    ]
    comparison = besselArgumentComparison(reports)
    assert comparison["status"] == UNVERIFIED_DOMAIN
    assert "closer" not in comparison
