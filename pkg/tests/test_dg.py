import time
from math import comb

import pytest

from cobar_hga import examples
from cobar_hga.dg import (DgBialgebra, axiom_names, iterated_diagonal, reduced_diagonal,
                          reduced_iterated_diagonal, right_iterated_diagonal, validate)
from cobar_hga.errors import UnknownBasisId
from cobar_hga.gf2 import Gf2Vector


@pytest.mark.parametrize("name", list(examples.EXAMPLES))
def test_builtins_are_dg_bialgebras(name):
    start = time.perf_counter()
    report = validate(examples.get(name))
    assert report.passed, report.summary()
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("name", list(examples.MUTANTS))
def test_mutants_fail_the_named_axiom_with_witness(name):
    _, axiom, witness = examples.MUTANTS[name]
    start = time.perf_counter()
    report = validate(examples.get(name))
    assert time.perf_counter() - start < 1.0
    failed = report[axiom]
    assert not failed.passed
    assert failed.counterexample == witness


def test_mutants_cover_six_axiom_classes():
    axioms = {axiom for _, axiom, _ in examples.MUTANTS.values()}
    assert len(axioms) >= 6


def test_divided_powers_structure_constants():
    b = examples.dividedpow3()
    x = [b.index(f"x{i}") if i else 0 for i in range(8)]
    for i in range(8):
        assert b.degree(x[i]) == 3 * i
        assert b.coproduct_basis(x[i]) == Gf2Vector((x[j], x[i - j]) for j in range(i + 1))
        for j in range(8):
            want = {x[i + j]} if i + j < 8 and comb(i + j, i) % 2 else set()
            assert set(b.mul_basis(x[i], x[j])) == want


def test_exterior_algebra_products():
    b = examples.acyclic34()
    x, y, xy = b.index("x"), b.index("y"), b.index("xy")
    assert b.mul_basis(x, y) == b.mul_basis(y, x) == Gf2Vector.basis(xy)
    assert not b.mul_basis(x, x)
    assert b.d_basis(y) == Gf2Vector.basis(x)
    assert not b.d_basis(xy)
    assert b.coproduct_basis(xy) == Gf2Vector({(xy, 0), (x, y), (y, x), (0, xy)})


def test_reduced_diagonal():
    b = examples.dividedpow3()
    x1, x2, x3 = (b.index(f"x{i}") for i in (1, 2, 3))
    assert reduced_diagonal(b, x1) == 0
    assert reduced_diagonal(b, x3) == Gf2Vector({(x1, x2), (x2, x1)})
    with pytest.raises(ValueError):
        reduced_diagonal(b, 0)


def test_iterated_diagonals_agree_and_reduce():
    b = examples.dividedpow3()
    x3 = b.index("x3")
    for n in range(1, 5):
        assert iterated_diagonal(b, n, x3) == right_iterated_diagonal(b, n, x3)
    x1 = b.index("x1")
    assert reduced_iterated_diagonal(b, 3, x3) == Gf2Vector.basis((x1, x1, x1))
    assert reduced_iterated_diagonal(b, 4, x3) == 0


def test_connectivity_and_reducedness():
    assert examples.exterior3().is_reduced(2)
    assert not examples.exterior3().is_reduced(3)
    assert examples.trivial().connectivity == float("inf")
    assert not examples.get("exterior3-mutant-connected").is_connected()


def test_coalgebra_only_checks_coalgebra_axioms():
    c = DgBialgebra.from_tables([("x", 3)], has_product=False)
    assert not c.has_product
    assert "associativity" not in axiom_names(c)
    assert validate(c).passed


def test_unknown_names_are_rejected():
    with pytest.raises(UnknownBasisId):
        DgBialgebra.from_tables([("x", 3)], differential={"x": ["y"]})
    with pytest.raises(UnknownBasisId):
        examples.exterior3().index("nope")
