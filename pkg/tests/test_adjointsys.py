import math

import numpy as np
import pytest
import sympy as sp

from src.adjointsys.adjoint import (
    adMatrix,
    adjointApply,
    adjointMatrices,
    adjointMatrix,
    comparePrinted,
)
from src.adjointsys.errors import DegenerateInputError
from src.adjointsys.optimal import (
    CASES,
    CLASSES,
    Normalizer,
    classHistogram,
    killingQuadratic,
    pitch,
    randomElements,
    selectCase,
    sweep,
)
from src.adjointsys.printed import S
from src.liestruct.algebra import killingMatrix

KINDS = {1: "rotation", 2: "nilpotent", 3: "identity", 4: "nilpotent",
         5: "nilpotent", 6: "rotation", 7: "rotation"}


@pytest.fixture(scope="module")
def normalizer(algebra):
    return Normalizer(algebra)


def unit(i):
    e = [0] * 7
    e[i - 1] = 1
    return e


def test_ad_x3_is_zero(algebra):
    assert adMatrix(algebra, 3).is_zero_matrix


def test_ad_x1(algebra):
    A = adMatrix(algebra, 1)
    images = {j: list(A[:, j - 1]) for j in range(1, 8)}
    assert images[4] == [-c for c in unit(5)]
    assert images[5] == unit(4)
    assert images[6] == unit(7)
    assert images[7] == [-c for c in unit(6)]
    assert all(images[j] == [0] * 7 for j in (1, 2, 3))


def test_ad_index_range(algebra):
    with pytest.raises(IndexError):
        adMatrix(algebra, 8)


@pytest.mark.parametrize("i", range(1, 8))
def test_generator_kinds(algebra, i):
    assert adjointMatrix(algebra, i).kind == KINDS[i]


def test_m3_is_identity(algebra):
    assert adjointMatrix(algebra, 3).closedForm == sp.eye(7)


@pytest.mark.parametrize("i", range(1, 8))
def test_printed_matrices(algebra, i):
    comparison = comparePrinted(algebra, i)
    assert comparison["matches"], comparison["mismatches"]
    assert bool(comparison["misprints"]) == (i == 6)


def test_m6_misprint_position(algebra):
    misprint = comparePrinted(algebra, 6)["misprints"][0]
    assert (misprint["row"], misprint["column"]) == (1, 7)
    assert misprint["read_as"] == "sin(s)"


@pytest.mark.parametrize("i", range(1, 8))
def test_series_matches_closed_form(algebra, i):
    matrix = adjointMatrices(algebra)[i]
    for s in np.linspace(-5.0, 5.0, 41):
        assert matrix.crossCheck(s) <= 1e-12
        assert matrix.expmCheck(s) <= 1e-12


def test_closed_form_numeric_agrees_with_symbolic(algebra):
    matrix = adjointMatrix(algebra, 7)
    s = 0.83
    symbolic = np.array(matrix.closedForm.subs(S, s).evalf().tolist(), dtype=float)
    assert np.allclose(symbolic, matrix(s), atol=1e-14)


def test_rotation_example(algebra):
    moved = adjointApply(algebra, [(1, math.pi / 2)], unit(4))
    assert np.allclose(moved, unit(5), atol=1e-15)


def test_apply_rejects_bad_generator(algebra):
    with pytest.raises(IndexError):
        adjointApply(algebra, [(9, 0.1)], unit(1))


def test_class_one(normalizer):
    result = normalizer.normalize((1, 0, 0, 0, 0, 0, 0))
    assert result.classId == 1
    assert result.transcript == []


def test_central_class_with_zero_parameter(normalizer):
    result = normalizer.normalize((0, 0, 1, 0, 0, 0, 0))
    assert result.classId == 5
    assert result.parameters == {"a": 0.0}


def test_generic_central_class(normalizer, algebra):
    result = normalizer.normalize((1, 1, 1, 0, 1, 0, 0))
    assert result.classId == 17
    assert np.allclose(result.replay(algebra), result.transformedElement, atol=1e-9)


def test_central_input_is_scaled(normalizer):
    result = normalizer.normalize((0, 0, 2, 0, 0, 0, 4))
    assert result.scale == 0.5
    assert result.transformedElement[2] == pytest.approx(1.0)


def test_zero_element(normalizer):
    with pytest.raises(DegenerateInputError):
        normalizer.normalize((0, 0, 0, 0, 0, 0, 0))


def test_wrong_length(normalizer):
    with pytest.raises(ValueError):
        normalizer.normalize((1, 0, 0))


def test_exact_branching_uses_fractions():
    case, _ = selectCase((0, 0, 1, 0, 0, 0, 0))
    assert case.name == "10"


def test_every_case_routes_to_a_class():
    assert all(case.classId in CLASSES for case in CASES)


def test_sweep(normalizer, algebra):
    results, failures = sweep(normalizer, randomElements(1000, 7), progress=False)
    assert failures == []
    assert len(results) == 1000
    histogram = classHistogram(results)
    assert sum(histogram.values()) == 1000
    for result in results:
        replayed = result.replay(algebra)
        assert np.max(np.abs(replayed - result.transformedElement)) <= 1e-9


def test_adjoint_invariants_survive_normalization(normalizer):
    for x in randomElements(200, 3, sparsity=0.2):
        result = normalizer.normalize(x)
        before = [0.0] + [v * result.scale for v in x]
        after = [0.0] + list(result.transformedElement)
        assert pitch(after) == pytest.approx(pitch(before), abs=1e-9)
        assert killingQuadratic(after) == pytest.approx(killingQuadratic(before), abs=1e-9)
        assert after[3] == pytest.approx(before[3], abs=1e-12)


def floatBracket(g, x, y):
    return np.array([float(c) for c in g.bracket(list(x), list(y))])


def randomTranscript(rng, length=4):
    generators = rng.integers(1, 8, length)
    parameters = rng.uniform(-2.0, 2.0, length)
    return [(int(i), float(s)) for i, s in zip(generators, parameters)]


@pytest.mark.parametrize("i", range(1, 8))
def test_adjoint_matrices_form_one_parameter_groups(algebra, i):
    matrix = adjointMatrices(algebra)[i]
    assert np.array_equal(matrix(0.0), np.eye(7))
    assert matrix.closedForm.subs(S, 0) == sp.eye(7)
    for s, t in [(0.3, 0.4), (-1.2, 2.5), (3.0, -0.7)]:
        assert np.allclose(matrix(s) @ matrix(t), matrix(s + t), atol=1e-12)
        assert np.linalg.det(matrix(s)) == pytest.approx(1.0, abs=1e-12)


def test_adjoint_action_preserves_brackets(algebra):
    rng = np.random.default_rng(21)
    for _ in range(20):
        transcript = randomTranscript(rng)
        v, w = rng.uniform(-1.0, 1.0, 7), rng.uniform(-1.0, 1.0, 7)
        moved = adjointApply(algebra, transcript, floatBracket(algebra, v, w))
        bracketOfMoved = floatBracket(algebra, adjointApply(algebra, transcript, v),
                                      adjointApply(algebra, transcript, w))
        assert np.allclose(moved, bracketOfMoved, atol=1e-9)


def test_adjoint_action_preserves_killing_form(algebra):
    K = np.array(killingMatrix(algebra).tolist(), dtype=float)
    rng = np.random.default_rng(22)
    for _ in range(20):
        transcript = randomTranscript(rng)
        v, w = rng.uniform(-1.0, 1.0, 7), rng.uniform(-1.0, 1.0, 7)
        a, b = adjointApply(algebra, transcript, v), adjointApply(algebra, transcript, w)
        assert a @ K @ b == pytest.approx(v @ K @ w, abs=1e-9)


def test_worked_central_example(normalizer, algebra):
    result = normalizer.normalize((0.3, 1.0, 1.0, 0.7, 0.5, 0.2, 0.9))
    assert result.classId == 17
    assert result.case == "1"
    assert result.transformedElement[2] == pytest.approx(1.0)
    for index in (3, 5, 6):
        assert abs(result.transformedElement[index]) <= 1e-9
    assert np.allclose(result.replay(algebra), result.transformedElement, atol=1e-9)


def test_class_is_stable_under_small_perturbation(normalizer):
    rng = np.random.default_rng(13)
    for x in randomElements(100, 17, sparsity=0.3):
        nudged = tuple(v * (1.0 + 1e-7 * rng.uniform(-1.0, 1.0)) for v in x)
        assert normalizer.normalize(nudged).classId == normalizer.normalize(x).classId
