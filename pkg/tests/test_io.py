import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reeslab.io import SpecError, dump_report, infer_degrees, make_report, module_spec_dict, parse_module_spec
from reeslab.modules import invariant_tuple
from reeslab.theorems import random_linear_matrix
from reeslab.poly import PolyRing


def spec(**kw):
    doc = {"ring": {"char": 32003, "vars": ["x", "y"]}}
    doc.update(kw)
    return json.dumps(doc)


def test_documented_example():
    s = parse_module_spec(spec(presentation=[["y"], ["-x"]]))
    E = s.module
    assert E.ambient_rank == 2 and E.nrels == 1
    assert E.is_graded


def test_free_module_from_empty_presentation():
    E = parse_module_spec(spec(presentation=[], ambient_rank=2)).module
    assert E.is_free() and E.mu == 2


def test_ideal_block():
    s = parse_module_spec(spec(ideal=["x^2", "x*y", "y^2"]))
    assert s.ideal is not None
    assert s.module.mu == 3 and s.module.degrees == (2, 2, 2)


@pytest.mark.parametrize("doc, fragment", [
    (spec(presentation=[["y", "x"], ["-x"]]), "ragged"),
    (json.dumps({"ring": {"char": 32004, "vars": ["x"]}, "presentation": [["x"]]}), "prime"),
    (json.dumps({"ring": {"char": 9, "vars": ["x"]}, "presentation": [["x"]]}), "prime"),
    (spec(presentation=[["y"], ["-x"]], degrees=[0]), "degrees"),
    (spec(presentation=[["x + y^2"]], degrees=[0]), "homogeneous"),
    (spec(presentation=[["q"]]), "unknown variable"),
    (spec(presentation=[["y"]], extra=1), "unknown keys"),
    (spec(presentation=[["y"]], ideal=["x"]), "either"),
    (json.dumps({"presentation": [["x"]]}), "ring"),
    ("[1, 2]", "object"),
])
def test_rejections(doc, fragment):
    with pytest.raises(SpecError) as info:
        parse_module_spec(doc)
    assert fragment in str(info.value)


def test_json_syntax_error_has_location():
    with pytest.raises(SpecError) as info:
        parse_module_spec('{"ring": {"vars": ["x"]},\n "presentation": [["x"],]}')
    assert info.value.line == 2 and info.value.column is not None


def test_polynomial_error_location():
    text = '{"ring": {"vars": ["x", "y"]},\n "presentation": [["y"], ["-x + * y"]]}'
    with pytest.raises(SpecError) as info:
        parse_module_spec(text)
    assert info.value.line == 2
    assert text.splitlines()[1][info.value.column - 1] == "*"


def test_field_override():
    E = parse_module_spec(spec(presentation=[["y"], ["-x"]]), field=101).module
    assert E.ring.char == 101


def test_degree_inference():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    assert infer_degrees(3, [(y, -x, R.zero()), (R.zero(), y, -x)]) == [0, 0, 0]
    assert infer_degrees(2, [(x * x, -y)]) == [0, 1]
    assert infer_degrees(1, [(x + y * y,)]) == [0]


@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 2), (4, 2)]))
def test_round_trip(seed, shape):
    R = PolyRing(["x", "y", "z"])
    rows, cols = shape
    from reeslab.modules import PModule
    E = PModule(R, rows, tuple(random_linear_matrix(R, rows, cols, seed)), (0,) * rows, "m")
    again = parse_module_spec(json.dumps(module_spec_dict(E))).module
    assert again.relations == E.relations and again.degrees == E.degrees
    assert invariant_tuple(again) == invariant_tuple(E)


def test_report_is_deterministic():
    s = parse_module_spec(spec(presentation=[["y"], ["-x"]]))
    a = dump_report(make_report("rees", 0, {"b": [1, 2], "a": float("inf")}, s))
    b = dump_report(make_report("rees", 0, {"a": float("inf"), "b": [1, 2]}, s))
    assert a == b
    assert json.loads(a)["results"]["a"] == "inf"
