import pytest

from cobar_hga import examples
from cobar_hga.errors import SpecParseError
from cobar_hga.specfile import digest, load, parse, serialize

ACYCLIC = """\
name: acyclic34
generators:
  - {name: x, degree: 3}
  - {name: y, degree: 4}
  - {name: xy, degree: 7}
differential:
  y: [x]
product:
  x * y: [xy]
  y * x: [xy]
coproduct:
  xy: [xy|1, x|y, y|x, 1|xy]
"""


def same_structure(a, b):
    assert a.names == b.names and a.degrees == b.degrees
    assert a.has_product == b.has_product
    for k in a.basis:
        assert a.d_basis(k) == b.d_basis(k)
        assert a.coproduct_basis(k) == b.coproduct_basis(k)
        if a.has_product:
            for j in a.basis:
                assert a.mul_basis(k, j) == b.mul_basis(k, j)


def test_parse_matches_the_builtin():
    same_structure(parse(ACYCLIC), examples.acyclic34())
    assert parse(ACYCLIC).name == "acyclic34"


@pytest.mark.parametrize("name", [n for n in examples.names() if n != "exterior3-mutant-connected"])
def test_round_trip(name):
    b = examples.get(name)
    text = serialize(b)
    again = parse(text)
    same_structure(again, b)
    assert serialize(again) == text


def test_degree_zero_generators_are_rejected():
    with pytest.raises(SpecParseError) as info:
        serialize_and_parse("exterior3-mutant-connected")
    assert "positive degree" in info.value.message


def serialize_and_parse(name):
    return parse(serialize(examples.get(name)))


def test_load_reads_files(tmp_path):
    path = tmp_path / "acyclic.yaml"
    path.write_text(ACYCLIC)
    same_structure(load(path), examples.acyclic34())


def test_coalgebra_kind():
    c = parse("kind: coalgebra\ngenerators:\n  - {name: x, degree: 3}\n")
    assert not c.has_product
    with pytest.raises(SpecParseError):
        parse("kind: coalgebra\ngenerators:\n  - {name: x, degree: 3}\nproduct:\n  x * x: []\n")


def test_unit_name_can_be_changed():
    b = parse('unit: e\ngenerators:\n  - {name: x, degree: 3}\n')
    assert b.name_of(b.unit) == "e"


@pytest.mark.parametrize("text, line, column, fragment", [
    ("generators:\n  - {name: x, degree: 3}\ndifferential:\n  x: [z]\n", 4, 7, "undeclared basis element 'z'"),
    ("generators:\n  - {name: x, degree: three}\n", 2, 23, "integer"),
    ("generators:\n  - {name: x, degree: 3}\n  - {name: x, degree: 4}\n", 3, 12, "declared twice"),
    ("generators:\n  - {name: x, degree: 3}\ncoproduct:\n  x: [x-1]\n", 4, 7, "a|b"),
    ("generators:\n  - {name: x, degree: 3}\nproducts: {}\n", 3, 1, "unknown section"),
    ("generators: [\n", 2, 1, "malformed"),
    ("name: x\n", 1, 1, "missing section"),
    ("", 1, 1, "empty"),
])
def test_errors_carry_line_and_column(text, line, column, fragment):
    with pytest.raises(SpecParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert fragment in err.message
    assert str(err).startswith(f"line {line}, column {column}: ")


def test_digest_is_stable():
    assert digest(ACYCLIC) == digest(ACYCLIC)
    assert digest(ACYCLIC).startswith("sha256:")
    assert digest(ACYCLIC) != digest(ACYCLIC + "\n")
