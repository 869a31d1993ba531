import numpy as np
import pytest
import sympy as sp

from src.data_loading.che_builtin import builtinField, generalSymmetry
from src.data_loading.data_loader import SampleBoxLoader
from src.symcore.expr import q, r, z
from src.txt_loading.txt_loader import (
    InputFileError,
    parseConstantArgs,
    readConstants,
    readFieldFile,
    readPdeFile,
    readSampleBox,
    readSolutionFixtures,
)


def test_field_file(data_path):
    v = readFieldFile(data_path("x6.field"))
    assert v == builtinField("X6")
    assert v.name == "X6"


def test_builtin_field_prefix():
    assert readFieldFile("builtin:X2").components == (0, 0, 1, 0)


def test_unknown_builtin_field():
    with pytest.raises(KeyError):
        readFieldFile("builtin:X9")


def test_malformed_field_reports_position(data_path):
    with pytest.raises(InputFileError) as info:
        readFieldFile(data_path("malformed.field"))
    assert info.value.line == 2
    assert info.value.offset == 14


def test_missing_component(tmp_path):
    path = tmp_path / "short.field"
    path.write_text("xi1 = r\nxi2 = 0\n")
    with pytest.raises(InputFileError, match="missing xi3, eta"):
        readFieldFile(str(path))


def test_line_without_equals(tmp_path):
    path = tmp_path / "bad.field"
    path.write_text("xi1 r\n")
    with pytest.raises(InputFileError):
        readFieldFile(str(path))


def test_pde_file(che, data_path):
    assert readPdeFile(data_path("che.pde")) == che
    toy = readPdeFile(data_path("toy.pde"))
    assert toy.name == "toy"
    assert str(toy.leading) == "u_rr"


def test_constants_file(data_path):
    assert readConstants(data_path("invariants.const")) == {"k": 1.0, "c1": 1.0, "c3": 1.0,
                                                            "c6": 1.0}


def test_sample_box_file(data_path):
    box = readSampleBox(data_path("sample.box"))
    assert box["r"] == (0.5, 3.0)
    assert box["z"] == (-1.0, 1.0)


def test_solution_fixtures(data_path):
    solutions = readSolutionFixtures(data_path("solutions.txt"))
    assert set(solutions) == {"cos_kz", "besselj0_kr"}
    assert solutions["cos_kz"].has(sp.cos)


def test_constant_arguments():
    assert parseConstantArgs(["k=2", "c1 = 0.5"]) == {"k": 2.0, "c1": 0.5}
    with pytest.raises(ValueError):
        parseConstantArgs(["k"])


def test_general_symmetry_defaults_to_zero():
    v = generalSymmetry({"c5": 1})
    assert v.components == (0, 1, 0, 0)


def test_general_symmetry_rotation_part():
    v = generalSymmetry({"c1": 1})
    assert sp.simplify(v.xi1 - z * sp.sin(q)) == 0
    assert sp.simplify(v.xi3 + r * sp.sin(q)) == 0


def test_sample_loader_is_seeded():
    a = SampleBoxLoader(10, seed=4)
    b = SampleBoxLoader(10, seed=4)
    assert len(a) == 10
    assert np.array_equal(a.asArray(), b.asArray())
    assert np.array_equal(a[3], b[3])
    assert np.all((a.asArray()[:, 0] >= 0.5) & (a.asArray()[:, 0] <= 3.0))


def test_sample_loader_rejects_axis():
    with pytest.raises(ValueError):
        SampleBoxLoader(3, box={"r": (0.0, 1.0)})
    with pytest.raises(ValueError):
        SampleBoxLoader(3, box={"z": (1.0, -1.0)})
