"""Built-in example bialgebras and the mutation fixtures used to show that
each axiom checker can fail."""

from __future__ import annotations

from itertools import combinations
from math import comb

from .dg import DgBialgebra


def divided_powers(top: int, degree: int = 3, has_product: bool = True, name: str = "") -> DgBialgebra:
    """Γ[x] mod 2 on x₁…x_top with |xᵢ| = degree·i.

    Products xᵢ·xⱼ = C(i+j, i)·xᵢ₊ⱼ are dropped when i + j > top, which is
    exact when top + 1 is a power of two.
    """
    gens = [(f"x{i}", degree * i) for i in range(1, top + 1)]

    def nm(i):
        return "1" if i == 0 else f"x{i}"

    coproduct = {nm(n): [(nm(i), nm(n - i)) for i in range(n + 1)] for n in range(1, top + 1)}
    product = {}
    if has_product:
        for i in range(1, top + 1):
            for j in range(1, top + 1):
                if i + j <= top and comb(i + j, i) % 2:
                    product[(nm(i), nm(j))] = [nm(i + j)]
    return DgBialgebra.from_tables(gens, coproduct=coproduct, product=product,
                                   has_product=has_product, name=name)


def exterior(generators: dict[str, int], d: dict[str, list[tuple[str, ...]]] | None = None,
             name: str = "") -> DgBialgebra:
    """Exterior algebra on primitive generators, d extended as a derivation.

    ``d`` sends a generator to a list of monomials (tuples of generators).
    Basis elements are the monomials, named by concatenating generators.
    """
    order = list(generators)
    d = d or {}
    monomials = [m for r in range(1, len(order) + 1) for m in combinations(order, r)]

    def nm(m):
        return "".join(m) if m else "1"

    def deg(m):
        return sum(generators[g] for g in m)

    def mul(a, b):
        if set(a) & set(b):
            return None
        return tuple(g for g in order if g in a or g in b)

    product = {}
    for a in monomials:
        for b in monomials:
            m = mul(a, b)
            if m is not None:
                product[(nm(a), nm(b))] = [nm(m)]
    coproduct = {}
    for m in monomials:
        terms = []
        for r in range(len(m) + 1):
            for left in combinations(m, r):
                right = tuple(g for g in m if g not in left)
                terms.append((nm(left), nm(right)))
        coproduct[nm(m)] = terms
    differential = {}
    for m in monomials:
        terms = []
        for g in m:
            rest = tuple(h for h in m if h != g)
            for image in d.get(g, []):
                prod_ = mul(tuple(image), rest)
                if prod_ is not None:
                    terms.append(nm(prod_))
        differential[nm(m)] = terms
    gens = [(nm(m), deg(m)) for m in monomials]
    return DgBialgebra.from_tables(gens, differential=differential, product=product,
                                   coproduct=coproduct, name=name)


def trivial() -> DgBialgebra:
    return DgBialgebra.from_tables([], name="trivial")


def exterior3() -> DgBialgebra:
    return exterior({"x": 3}, name="exterior3")


def dividedpow3() -> DgBialgebra:
    return divided_powers(7, name="dividedpow3")


def acyclic34() -> DgBialgebra:
    return exterior({"x": 3, "y": 4}, d={"y": [("x",)]}, name="acyclic34")


def _with(base: DgBialgebra, name: str, *, product=None, coproduct=None, differential=None,
          extra_generators=()) -> DgBialgebra:
    """Copy ``base`` with some structure constants overwritten (by name)."""
    gens = [(base.name_of(k), base.degree(k)) for k in base.positive_basis] + list(extra_generators)
    diff = {base.name_of(k): [base.name_of(t) for t in base.d_basis(k)] for k in base.basis}
    delta = {base.name_of(k): [(base.name_of(a), base.name_of(b)) for a, b in base.coproduct_basis(k)]
             for k in base.basis}
    prod_ = {(base.name_of(a), base.name_of(b)): [base.name_of(t) for t in base.mul_basis(a, b)]
             for a in base.basis for b in base.basis}
    diff.update(differential or {})
    delta.update(coproduct or {})
    prod_.update(product or {})
    return DgBialgebra.from_tables(gens, base.name_of(0), differential=diff, product=prod_,
                                   coproduct=delta, name=name)


EXAMPLES = {
    "trivial": trivial,
    "exterior3": exterior3,
    "dividedpow3": dividedpow3,
    "acyclic34": acyclic34,
}

# mutant name -> (factory, axiom expected to fail, witness)
MUTANTS = {
    "exterior3-mutant-delta": (
        lambda: _with(exterior3(), "exterior3-mutant-delta", coproduct={"x": [("x", "1")]}),
        "counit", "x"),
    "exterior3-mutant-unit": (
        lambda: _with(exterior3(), "exterior3-mutant-unit", product={("1", "x"): []}),
        "unit", "x"),
    "dividedpow3-mutant-coassoc": (
        lambda: _with(dividedpow3(), "dividedpow3-mutant-coassoc",
                      coproduct={"x3": [("x3", "1"), ("x1", "x2"), ("1", "x3")]}),
        "coassociativity", "x3"),
    "dividedpow3-mutant-assoc": (
        lambda: _with(dividedpow3(), "dividedpow3-mutant-assoc", product={("x1", "x6"): []}),
        "associativity", "('x1', 'x2', 'x4')"),
    "dividedpow3-mutant-grading": (
        lambda: _with(dividedpow3(), "dividedpow3-mutant-grading", product={("x1", "x1"): ["x3"]}),
        "grading", "('x1', 'x1')"),
    "chain345-mutant-dsquared": (
        lambda: exterior({"x": 3, "y": 4, "z": 5}, d={"y": [("x",)], "z": [("y",)]},
                         name="chain345-mutant-dsquared"),
        "d_squared", "z"),
    "exterior348-mutant-coleibniz": (
        lambda: exterior({"x": 3, "y": 4, "z": 8}, d={"z": [("x", "y")]},
                         name="exterior348-mutant-coleibniz"),
        "co_leibniz", "z"),
    "acyclic34-mutant-leibniz": (
        lambda: _with(acyclic34(), "acyclic34-mutant-leibniz", product={("y", "x"): []}),
        "leibniz", "('y', 'y')"),
    "acyclic34-mutant-bialgebra": (
        lambda: _with(acyclic34(), "acyclic34-mutant-bialgebra", product={("y", "x"): [], ("x", "y"): []}),
        "bialgebra_compatibility", "('x', 'y')"),
    "exterior3-mutant-connected": (
        lambda: _with(exterior3(), "exterior3-mutant-connected", extra_generators=[("e", 0)]),
        "connected", "e"),
}


def names() -> list[str]:
    return list(EXAMPLES) + list(MUTANTS)


def get(name: str) -> DgBialgebra:
    if name in EXAMPLES:
        return EXAMPLES[name]()
    if name in MUTANTS:
        return MUTANTS[name][0]()
    raise KeyError(f"unknown example {name!r}; choose from {', '.join(names())}")
