import numpy as np
import pytest
import sympy as sp

from src.data_loading.che_builtin import GENERATOR_LABELS
from src.liestruct.algebra import (
    LieAlgebra,
    commutatorVF,
    derivedSeries,
    isSemisimple,
    isSolvable,
    killingForm,
    killingMatrix,
    structureConstants,
    subalgebra,
)
from src.liestruct.errors import DimensionMismatchError, NotClosedError
from src.liestruct.levi import cheRadicalAndLevi, so3Pattern, verifyLevi
from src.liestruct.subspace import Subspace

# [X_i, X_j] for the seven generators, (i, j) -> {k: coefficient of X_k}
TABLE = {
    (1, 4): {5: -1}, (1, 5): {4: 1}, (1, 6): {7: 1}, (1, 7): {6: -1},
    (2, 6): {5: 1}, (2, 7): {4: 1},
    (4, 7): {2: -1},
    (5, 6): {2: -1},
    (6, 7): {1: 1},
}


def expected(i, j):
    if (i, j) in TABLE:
        return TABLE[(i, j)]
    if (j, i) in TABLE:
        return {k: -c for k, c in TABLE[(j, i)].items()}
    return {}


@pytest.mark.parametrize("i", range(1, 8))
@pytest.mark.parametrize("j", range(1, 8))
def test_commutator_table(algebra, i, j):
    result = algebra.bracket(algebra.unit(i - 1), algebra.unit(j - 1))
    want = expected(i, j)
    assert result == [sp.Integer(want.get(k, 0)) for k in range(1, 8)]


def test_table_entries_formatted(algebra):
    table = algebra.commutatorTable()
    assert table[0][3] == "-X5"
    assert table[2] == ["0"] * 7
    assert table[5][6] == "X1"


def test_labels(algebra):
    assert algebra.labels == GENERATOR_LABELS


def test_antisymmetry_and_jacobi(algebra):
    assert algebra.isAntisymmetric()
    assert algebra.jacobiDefects() == []


def test_commutator_of_fields(generators):
    bracket = commutatorVF(generators[5], generators[6])
    assert bracket == generators[0]


def test_abelian_pair(generators):
    g = structureConstants([generators[1], generators[2]])
    assert all(c == 0 for plane in g.constants for row in plane for c in row)


def test_not_closed(generators):
    with pytest.raises(NotClosedError) as info:
        structureConstants([generators[0], generators[3]])
    assert info.value.pair == ("X1", "X4")


def randomRational(rng):
    numerators, denominators = rng.integers(-9, 10, 7), rng.integers(1, 6, 7)
    return [sp.Rational(int(p), int(d)) for p, d in zip(numerators, denominators)]


def test_killing_matrix(algebra):
    assert killingMatrix(algebra) == sp.diag(-4, 0, 0, 0, 0, -4, -4)


def test_killing_form_formula(algebra):
    v = [1, 2, 3, 4, 5, 6, 7]
    w = [7, 6, 5, 4, 3, 2, 1]
    assert killingForm(algebra, v, w) == -4 * (1 * 7 + 6 * 2 + 7 * 1)


def test_killing_form_on_random_pairs(algebra):
    rng = np.random.default_rng(8)
    for _ in range(50):
        v, w = randomRational(rng), randomRational(rng)
        assert killingForm(algebra, v, w) == -4 * (v[0] * w[0] + v[5] * w[5] + v[6] * w[6])


def test_killing_form_dimension(algebra):
    with pytest.raises(DimensionMismatchError):
        killingForm(algebra, [1, 0], [0, 1])


def test_killing_ad_invariance(algebra):
    rng = np.random.default_rng(11)
    for _ in range(100):
        x, y, w = randomRational(rng), randomRational(rng), randomRational(rng)
        left = killingForm(algebra, algebra.bracket(x, y), w)
        right = killingForm(algebra, y, algebra.bracket(x, w))
        assert left + right == 0


def test_derived_series(algebra):
    series = derivedSeries(algebra)
    assert [term.dim for term in series] == [7, 6, 6]
    assert not series[1].contains(algebra.unit(2))
    assert series[2] == series[1]
    assert not isSolvable(algebra)
    assert not isSemisimple(algebra)


def test_derived_series_of_abelian_algebra():
    g = LieAlgebra((((0, 0), (0, 0)), ((0, 0), (0, 0))))
    assert [term.dim for term in derivedSeries(g)] == [2, 0]
    assert isSolvable(g)


def test_levi_decomposition(algebra):
    radical, levi = cheRadicalAndLevi()
    report = verifyLevi(algebra, radical, levi)
    assert report.passed, report.failures()
    assert [a.name for a in report.assertions][-1] == "levi factor is not an ideal"
    assert report.assertions[-1].witness
    assert report.so3["matches"]
    assert report.so3["rational"]


def test_levi_rejects_non_ideal(algebra):
    radical = Subspace.ofIndices([0, 1], 7)
    levi = Subspace.ofIndices([2, 3, 4, 5, 6], 7)
    report = verifyLevi(algebra, radical, levi)
    first = report.assertions[0]
    assert first.name == "radical is an ideal"
    assert not first.passed
    assert first.witness == "[X1,X4] = -X5"


def test_so3_pattern(algebra):
    s = subalgebra(algebra, Subspace.ofIndices([0, 5, 6], 7))
    pattern = so3Pattern(s)
    assert pattern["matches"]
    assert pattern["scaling"] == ["1", "1", "1"]


def test_so3_pattern_rejects_wrong_dimension(algebra):
    s = subalgebra(algebra, Subspace.ofIndices([1, 2], 7))
    assert not so3Pattern(s)["matches"]


def test_subspace_coordinates():
    space = Subspace([[1, 1, 0], [0, 1, 1]], 3)
    assert space.dim == 2
    assert space.contains([1, 2, 1])
    assert space.coordinates([0, 0, 1]) is None
