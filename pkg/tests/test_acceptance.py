"""Acceptance criteria 1-10.  Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""

import json
import time

import pytest

import mutants
import test_barbialg
import test_hga
import test_homology
from cobar_hga import examples
from cobar_hga.barbialg import (BAR_CHECKS, BarOfCobar, check_E_twisting, check_mu_assoc, check_unit_laws,
                                dg_bialgebra_verdict, g_A_check)
from cobar_hga.barcobar import CobarAlgebra, TruncationBounds, check_d_squared, check_derivation
from cobar_hga.cli import main
from cobar_hga.dg import axiom_names, validate
from cobar_hga.gf2 import Gf2Vector, ZERO
from cobar_hga.hga import HGA_CHECKS, HgaContext
from cobar_hga.homology import ChainComplexSlice, gerstenhaber_check, homology_basis, homology_dims
from cobar_hga.report import PASS
from cobar_hga.twisting import check_brown, universal_cobar

BUILTINS = list(examples.EXAMPLES)
HGA_BOUNDS = TruncationBounds(14, 6)
V = Gf2Vector.basis


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# 1. structure validation

@pytest.mark.criterion(1, "validate passes on the built-ins and names axiom and witness on each mutant")
@pytest.mark.parametrize("name", BUILTINS)
def test_c1_builtins_validate(name):
    report, seconds = timed(lambda: validate(examples.get(name)))
    assert report.passed, report.summary()
    assert seconds < 1.0


@pytest.mark.criterion(1, "validate passes on the built-ins and names axiom and witness on each mutant")
@pytest.mark.parametrize("name", list(examples.MUTANTS))
def test_c1_mutants_fail(name):
    _, axiom, witness = examples.MUTANTS[name]
    report, seconds = timed(lambda: validate(examples.get(name)))
    assert seconds < 1.0
    assert not report[axiom].passed
    assert report[axiom].counterexample == witness


@pytest.mark.criterion(1, "validate passes on the built-ins and names axiom and witness on each mutant")
def test_c1_axiom_classes():
    assert len({axiom for _, axiom, _ in examples.MUTANTS.values()}) >= 6


# 2. cobar soundness

@pytest.mark.criterion(2, "cobar d^2 = 0, derivation law and Brown condition at degree 10, length 5")
@pytest.mark.parametrize("name", BUILTINS)
def test_c2_cobar_soundness(name):
    bounds = TruncationBounds(10, 5)

    def run():
        b = examples.get(name)
        cobar = CobarAlgebra(b)
        return [check_d_squared(cobar, bounds), check_derivation(cobar, bounds),
                check_brown(universal_cobar(b, TruncationBounds(11, 5)))]

    results, seconds = timed(run)
    for res in results:
        assert res.status == PASS, (res.name, res.counterexample)
    assert seconds < 30.0


# 3-6. hGa identities on the cobar

def hga_result(name, check):
    return HGA_CHECKS[check](HgaContext(examples.get(name), HGA_BOUNDS))


@pytest.mark.criterion(3, "Steenrod condition on all word pairs of combined length <= 6")
@pytest.mark.parametrize("name", BUILTINS)
def test_c3_steenrod(name):
    res = hga_result(name, "steenrod")
    assert res.status == PASS, res.counterexample
    assert HGA_BOUNDS.max_length == 6


@pytest.mark.criterion(4, "Hirsch formula holds exactly on all enumerated triples")
@pytest.mark.parametrize("name", BUILTINS)
def test_c4_hirsch(name):
    res = hga_result(name, "hirsch")
    assert res.status == PASS, res.counterexample


@pytest.mark.criterion(5, "E1n and E2n (k <= 3), E1assoc (m, n <= 2), cup1ass and pre-Jacobi")
@pytest.mark.parametrize("check", ["e1n", "e2n", "e1assoc", "cup1ass", "pre_jacobi"])
@pytest.mark.parametrize("name", BUILTINS)
def test_c5_hga_identities(name, check):
    res = hga_result(name, check)
    assert res.status == PASS, res.counterexample


@pytest.mark.criterion(5, "E1n and E2n (k <= 3), E1assoc (m, n <= 2), cup1ass and pre-Jacobi")
def test_c5_ranges():
    res = hga_result("acyclic34", "e1n")
    assert {b.split(",")[0] for b in res.blocks} == {"1", "2", "3"}
    res = hga_result("acyclic34", "e1assoc")
    assert set(res.blocks) == {"1,1", "1,2", "2,1", "2,2"}


@pytest.mark.criterion(6, "closed-form E1k equals the recursive construction on every tuple")
@pytest.mark.parametrize("name", BUILTINS)
def test_c6_oracle(name):
    res = hga_result(name, "e1k_oracle")
    assert res.status == PASS, res.counterexample


# 7. BΩA is a DG-bialgebra

@pytest.mark.criterion(7, "BΩA is a DG-bialgebra up to degree 8 for exterior3 and acyclic34")
@pytest.mark.parametrize("name", ["exterior3", "acyclic34"])
def test_c7_bar_of_cobar(name):
    bounds = TruncationBounds(8, 8)

    def run():
        B = BarOfCobar(HgaContext(examples.get(name), bounds))
        return dg_bialgebra_verdict(B, bounds)

    report, seconds = timed(run)
    assert report.names() == ["E_twisting", "mu_assoc", "unit_laws", "dg_bialgebra"]
    for res in report:
        assert res.status == PASS, (res.name, res.counterexample)
        assert res.checked > 0
    assert "bar degree 8" in report["dg_bialgebra"].detail
    assert seconds < 300.0


# 8. g_A is multiplicative

@pytest.mark.criterion(8, "g_A(a·b) = μ_E(g_A a, g_A b) on all basis pairs of exterior3 and dividedpow3")
@pytest.mark.parametrize("name", ["exterior3", "dividedpow3"])
def test_c8_g_A(name):
    bounds = TruncationBounds(42, 8)
    B = BarOfCobar(HgaContext(examples.get(name), bounds))
    res = g_A_check(B, bounds)
    assert res.status == PASS, (res.counterexample, res.warnings)
    n = len(B.A.basis)
    assert res.blocks["mult"] == n * n


# 9. homology counts and Gerstenhaber relations

@pytest.mark.criterion(9, "H(ΩΛ(x3)) counts, [x] vanishes in acyclic34, Gerstenhaber relations")
def test_c9_exterior_counts():
    sl = ChainComplexSlice.from_complex(CobarAlgebra(examples.exterior3()), TruncationBounds(10, 5))
    dims = homology_dims(sl)
    assert set(dims) == set(range(10))
    for n, d in dims.items():
        assert d == (1 if n % 2 == 0 and n // 2 <= 4 else 0), n


@pytest.mark.criterion(9, "H(ΩΛ(x3)) counts, [x] vanishes in acyclic34, Gerstenhaber relations")
def test_c9_acyclic_class_vanishes():
    A = examples.acyclic34()
    sl = ChainComplexSlice.from_complex(CobarAlgebra(A), TruncationBounds(10, 5))
    assert sl.boundary_preimage(2, V((A.index("x"),))) == V((A.index("y"),))
    assert homology_basis(sl, 2).dim == 0


@pytest.mark.criterion(9, "H(ΩΛ(x3)) counts, [x] vanishes in acyclic34, Gerstenhaber relations")
@pytest.mark.parametrize("bialgebra", [examples.exterior3, examples.dividedpow3, examples.acyclic34,
                                       mutants.exterior35])
def test_c9_gerstenhaber(bialgebra):
    report = gerstenhaber_check(HgaContext(bialgebra(), TruncationBounds(14, 7)))
    for res in report:
        assert res.status == PASS, (res.name, res.counterexample)


# 10. determinism and mutation sensitivity

RUNS = [
    ["validate", "--example", "dividedpow3"],
    ["cobar-check", "--example", "acyclic34"],
    ["hga-check", "--example", "exterior3", "--max-degree", "8", "--max-length", "4"],
    ["bar-bialgebra-check", "--example", "acyclic34", "--max-degree", "8", "--max-length", "4"],
    ["homology", "--example", "dividedpow3", "--max-degree", "12", "--max-length", "6"],
]


def machine_report(argv, capsys, jobs):
    main(argv + ["--report", "machine", "--omit-timing", "--jobs", str(jobs)])
    return capsys.readouterr().out


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
@pytest.mark.parametrize("argv", RUNS, ids=[r[0] for r in RUNS])
def test_c10_determinism(argv, capsys):
    first = machine_report(argv, capsys, 1)
    assert first == machine_report(argv, capsys, 1)
    assert first == machine_report(argv, capsys, 3)
    assert json.loads(first.splitlines()[-1])["status"] == "pass"


def failing_axioms():
    out = {}
    for name, (_, axiom, witness) in examples.MUTANTS.items():
        out[axiom] = (examples.get(name), witness)
    for axiom, (make, witness) in mutants.EXTRA_AXIOM_MUTANTS.items():
        out[axiom] = (make(), witness)
    return out


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
def test_c10_every_axiom_checker_fails_somewhere():
    table = failing_axioms()
    assert set(table) == set(axiom_names(examples.exterior3()))
    for axiom, (b, witness) in table.items():
        res = validate(b, [axiom]).results[0]
        assert not res.passed and res.counterexample == witness, axiom


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
def test_c10_cobar_checkers_fail_somewhere():
    bounds = TruncationBounds(10, 4)
    broken = examples.get("dividedpow3-mutant-coassoc")
    assert not check_d_squared(CobarAlgebra(broken), bounds).passed

    class FirstLetterOnly(CobarAlgebra):
        def d_basis(self, word):
            if not word:
                return ZERO
            return Gf2Vector(t + word[1:] for t in self.letter_differential(word[0]))

    assert not check_derivation(FirstLetterOnly(examples.dividedpow3()), bounds).passed
    gamma = examples.dividedpow3()
    phi = universal_cobar(gamma, TruncationBounds(12, 4))
    assert not check_brown(phi.with_values({gamma.index("x2"): ZERO})).passed


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
@pytest.mark.parametrize("check", list(HGA_CHECKS))
def test_c10_hga_checkers_fail_somewhere(check):
    cls, name = test_hga.MUTATIONS[check]
    assert not HGA_CHECKS[check](cls(examples.get(name), test_hga.BOUNDS, validate=False)).passed


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
@pytest.mark.parametrize("check", list(BAR_CHECKS) + ["dg_bialgebra"])
def test_c10_bar_checkers_fail_somewhere(check):
    bounds = test_barbialg.BOUNDS
    if check == "dg_bialgebra":
        B = test_barbialg.MUTATIONS["E_twisting"]()
        assert not dg_bialgebra_verdict(B, bounds)["dg_bialgebra"].passed
    else:
        assert not BAR_CHECKS[check](test_barbialg.MUTATIONS[check](), bounds).passed


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
@pytest.mark.parametrize("check", list(test_homology.MUTATIONS))
def test_c10_gerstenhaber_checkers_fail_somewhere(check):
    cls, bialgebra, _ = test_homology.MUTATIONS[check]
    bounds = test_homology.GERSTENHABER
    assert not gerstenhaber_check(cls(bialgebra(), bounds, validate=False))[check].passed


@pytest.mark.criterion(10, "byte-identical reports across runs and --jobs; every checker has a failing fixture")
def test_c10_verdict_parts_fail_somewhere():
    bounds = test_barbialg.BOUNDS
    assert not check_E_twisting(test_barbialg.MUTATIONS["E_twisting"](), bounds).passed
    assert not check_mu_assoc(test_barbialg.MUTATIONS["mu_assoc"](), bounds).passed
    assert not check_unit_laws(test_barbialg.MUTATIONS["unit_laws"](), bounds).passed
