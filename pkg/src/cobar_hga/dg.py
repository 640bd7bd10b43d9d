"""Finitely based DG-bialgebras over GF(2) and their axiom checkers.

Conventions: all differentials lower degree by one, the basis is
counit-adapted (the counit is the indicator of the unit ``1``), and the
unit always has index 0.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from itertools import product

from .errors import NotHomogeneous, UnknownBasisId
from .gf2 import Gf2Vector, LinearMap, ZERO, bilinear_extend, linear_extend, toggle
from .report import CheckResult, ValidationReport, timed

UNIT = 0


class DgBialgebra:
    """A DG-bialgebra (or, with ``mu=None``, a DG-coalgebra) on basis indices.

    ``d`` maps index -> indices, ``delta`` index -> index pairs and ``mu``
    index pairs -> indices.  Basis element 0 is the unit.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], d: LinearMap,
                 delta: LinearMap, mu: LinearMap | None, name: str = ""):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.d_map = d
        self.delta_map = delta
        self.mu_map = mu
        self.name = name
        self._index = {n: i for i, n in enumerate(self.names)}
        self._diag_cache: dict = {}

    @classmethod
    def from_tables(cls, generators: Sequence[tuple[str, int]], unit: str = "1", *,
                    differential: Mapping[str, Iterable[str]] | None = None,
                    product: Mapping[tuple[str, str], Iterable[str]] | None = None,
                    coproduct: Mapping[str, Iterable[tuple[str, str]]] | None = None,
                    has_product: bool = True, name: str = "") -> DgBialgebra:
        """Build from named structure constants.

        Omitted entries take defaults: ``d`` is zero, products with the unit
        are the other factor and all other products are zero, the unit is
        grouplike and every other generator is primitive.  Repeated targets
        cancel in pairs.
        """
        names = [unit] + [g for g, _ in generators]
        degrees = [0] + [int(deg) for _, deg in generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        index = {n: i for i, n in enumerate(names)}

        def idx(n):
            try:
                return index[n]
            except KeyError:
                raise UnknownBasisId(n) from None

        basis = range(len(names))
        d_rows = {}
        for src, tgts in (differential or {}).items():
            d_rows[idx(src)] = Gf2Vector.from_terms(idx(t) for t in tgts)
        d = LinearMap(d_rows, -1, basis)

        delta_rows = {}
        for i in basis:
            if i == UNIT:
                delta_rows[i] = Gf2Vector.basis((UNIT, UNIT))
            else:
                delta_rows[i] = Gf2Vector([(i, UNIT), (UNIT, i)])
        for src, tgts in (coproduct or {}).items():
            delta_rows[idx(src)] = Gf2Vector.from_terms((idx(a), idx(b)) for a, b in tgts)
        delta = LinearMap(delta_rows, 0)

        mu = None
        if has_product:
            mu_rows = {}
            for i in basis:
                mu_rows[(UNIT, i)] = Gf2Vector.basis(i)
                mu_rows[(i, UNIT)] = Gf2Vector.basis(i)
            for (a, b), tgts in (product or {}).items():
                mu_rows[(idx(a), idx(b))] = Gf2Vector.from_terms(idx(t) for t in tgts)
            mu = LinearMap(mu_rows, 0, [(a, b) for a in basis for b in basis])
        return cls(names, degrees, d, delta, mu, name=name)

    # basis bookkeeping

    @property
    def unit(self) -> int:
        return UNIT

    @property
    def basis(self) -> range:
        return range(len(self.names))

    @property
    def positive_basis(self) -> range:
        return range(1, len(self.names))

    @property
    def has_product(self) -> bool:
        return self.mu_map is not None

    def degree(self, k: int) -> int:
        return self.degrees[k]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownBasisId(name) from None

    def name_of(self, k: int) -> str:
        return self.names[k]

    def vector(self, *names: str) -> Gf2Vector:
        return Gf2Vector.from_terms(self.index(n) for n in names)

    @property
    def connectivity(self) -> float:
        """Smallest degree of a non-unit basis element (inf if there is none)."""
        return min((self.degrees[k] for k in self.positive_basis), default=float("inf"))

    def is_connected(self) -> bool:
        return all(self.degrees[k] > 0 for k in self.positive_basis) and self.degrees[UNIT] == 0

    def is_reduced(self, n: int) -> bool:
        """True if connected and zero in degrees 1..n."""
        return self.is_connected() and self.connectivity > n

    def basis_keys(self, bounds=None) -> list[int]:
        if bounds is None:
            return list(self.basis)
        return [k for k in self.basis if self.degrees[k] <= bounds.max_degree]

    # structure maps

    def d_basis(self, k: int) -> Gf2Vector:
        return self.d_map.row(k)

    def d(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.d_map.row, x)

    def coproduct_basis(self, k: int) -> Gf2Vector:
        return self.delta_map.row(k)

    def coproduct(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.delta_map.row, x)

    def mul_basis(self, a: int, b: int) -> Gf2Vector:
        return self.mu_map.row((a, b))

    def mul(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        return bilinear_extend(self.mul_basis, x, y)

    def counit(self, k: int) -> int:
        return 1 if k == UNIT else 0

    def reduced_iterated(self, n: int, k: int) -> Gf2Vector:
        return reduced_iterated_diagonal(self, n, k)

    # display

    def format_key(self, key) -> str:
        if isinstance(key, int):
            return self.names[key]
        return "⊗".join(self.format_key(k) for k in key)

    def format(self, v: Gf2Vector) -> str:
        if not v:
            return "0"
        return " + ".join(self.format_key(k) for k in v.terms())

    def __repr__(self) -> str:
        return f"DgBialgebra({self.name or '?'}: {', '.join(self.names)})"


def _as_vector(x) -> Gf2Vector:
    return x if isinstance(x, Gf2Vector) else Gf2Vector.basis(x)


def reduced_diagonal(b: DgBialgebra, c) -> Gf2Vector:
    """Δ'(c) = Δ(c) + c⊗1 + 1⊗c for a homogeneous non-unit element."""
    c = _as_vector(c)
    if UNIT in c:
        raise ValueError("the reduced diagonal is not defined on the unit")
    c.degree(b.degree)
    acc: set = set()
    for k in c:
        acc ^= b.coproduct_basis(k).support
        toggle(acc, (k, UNIT))
        toggle(acc, (UNIT, k))
    return Gf2Vector(acc)


def iterated_diagonal(b: DgBialgebra, n: int, c) -> Gf2Vector:
    """Δⁿ(c) over n-tuples: Δ¹ = id and Δⁿ = (Δⁿ⁻¹ ⊗ id)Δ."""
    if n < 1:
        raise ValueError("iterated diagonal needs n >= 1")
    acc: set = set()
    for k in _as_vector(c):
        acc ^= _iterated_basis(b, n, k).support
    return Gf2Vector(acc)


def _iterated_basis(b: DgBialgebra, n: int, k: int) -> Gf2Vector:
    key = ("full", n, k)
    hit = b._diag_cache.get(key)
    if hit is not None:
        return hit
    if n == 1:
        out = Gf2Vector.basis((k,))
    else:
        acc: set = set()
        for left, right in b.coproduct_basis(k):
            for head in _iterated_basis(b, n - 1, left):
                toggle(acc, head + (right,))
        out = Gf2Vector(acc)
    b._diag_cache[key] = out
    return out


def right_iterated_diagonal(b: DgBialgebra, n: int, c) -> Gf2Vector:
    """(id ⊗ Δⁿ⁻¹)Δ, which agrees with the left iteration by coassociativity."""
    acc: set = set()
    for k in _as_vector(c):
        if n == 1:
            toggle(acc, (k,))
            continue
        for left, right in b.coproduct_basis(k):
            for tail in right_iterated_diagonal(b, n - 1, right):
                toggle(acc, (left,) + tail)
    return Gf2Vector(acc)


def reduced_iterated_diagonal(b: DgBialgebra, n: int, k: int) -> Gf2Vector:
    """Component of Δⁿ(k) with no unit factor."""
    key = ("reduced", n, k)
    hit = b._diag_cache.get(key)
    if hit is not None:
        return hit
    if k == UNIT:
        out = ZERO
    elif n == 1:
        out = Gf2Vector.basis((k,))
    else:
        acc: set = set()
        for left, right in b.coproduct_basis(k):
            if left == UNIT or right == UNIT:
                continue
            for head in reduced_iterated_diagonal(b, n - 1, left):
                toggle(acc, head + (right,))
        out = Gf2Vector(acc)
    b._diag_cache[key] = out
    return out


# axiom checks

def _grading(b: DgBialgebra, res: CheckResult) -> None:
    deg = b.degree
    for k in b.basis:
        res.record(all(deg(t) == deg(k) - 1 for t in b.d_basis(k)), b.name_of(k), "d must lower degree by 1")
        res.record(all(deg(x) + deg(y) == deg(k) for x, y in b.coproduct_basis(k)), b.name_of(k),
                   "coproduct must preserve degree")
    if b.has_product:
        for x, y in product(b.basis, repeat=2):
            ok = all(deg(t) == deg(x) + deg(y) for t in b.mul_basis(x, y))
            res.record(ok, (b.name_of(x), b.name_of(y)), "product must preserve degree")


def _connected(b: DgBialgebra, res: CheckResult) -> None:
    res.record(b.degree(UNIT) == 0, b.name_of(UNIT), "unit must have degree 0")
    for k in b.positive_basis:
        res.record(b.degree(k) > 0, b.name_of(k), "only the unit may have degree <= 0")


def _d_squared(b: DgBialgebra, res: CheckResult) -> None:
    for k in b.basis:
        dd = b.d(b.d_basis(k))
        res.record(not dd, b.name_of(k), f"d(d({b.name_of(k)})) = {b.format(dd)}")


def _coassociativity(b: DgBialgebra, res: CheckResult) -> None:
    for k in b.basis:
        left: set = set()
        right: set = set()
        for x, y in b.coproduct_basis(k):
            for x1, x2 in b.coproduct_basis(x):
                toggle(left, (x1, x2, y))
            for y1, y2 in b.coproduct_basis(y):
                toggle(right, (x, y1, y2))
        res.record(left == right, b.name_of(k))


def _counit(b: DgBialgebra, res: CheckResult) -> None:
    for k in b.basis:
        left: set = set()
        right: set = set()
        for x, y in b.coproduct_basis(k):
            if x == UNIT:
                toggle(left, y)
            if y == UNIT:
                toggle(right, x)
        ok_left = left == {k}
        ok_right = right == {k}
        side = "(ε⊗id)Δ" if not ok_left else "(id⊗ε)Δ"
        res.record(ok_left and ok_right, b.name_of(k), f"{side} differs from id")


def _co_leibniz(b: DgBialgebra, res: CheckResult) -> None:
    for k in b.basis:
        lhs = b.coproduct(b.d_basis(k))
        acc: set = set()
        for x, y in b.coproduct_basis(k):
            for t in b.d_basis(x):
                toggle(acc, (t, y))
            for t in b.d_basis(y):
                toggle(acc, (x, t))
        res.record(lhs.support == acc, b.name_of(k))


def _associativity(b: DgBialgebra, res: CheckResult) -> None:
    for x, y, z in product(b.basis, repeat=3):
        lhs = b.mul(b.mul_basis(x, y), Gf2Vector.basis(z))
        rhs = b.mul(Gf2Vector.basis(x), b.mul_basis(y, z))
        res.record(lhs == rhs, tuple(b.name_of(i) for i in (x, y, z)))


def _unit_law(b: DgBialgebra, res: CheckResult) -> None:
    for k in b.basis:
        one = Gf2Vector.basis(k)
        res.record(b.mul_basis(UNIT, k) == one and b.mul_basis(k, UNIT) == one, b.name_of(k))


def _leibniz(b: DgBialgebra, res: CheckResult) -> None:
    for x, y in product(b.basis, repeat=2):
        lhs = b.d(b.mul_basis(x, y))
        rhs = b.mul(b.d_basis(x), Gf2Vector.basis(y)) + b.mul(Gf2Vector.basis(x), b.d_basis(y))
        res.record(lhs == rhs, (b.name_of(x), b.name_of(y)))


def _bialgebra_compat(b: DgBialgebra, res: CheckResult) -> None:
    for x, y in product(b.basis, repeat=2):
        lhs = b.coproduct(b.mul_basis(x, y))
        acc: set = set()
        for x1, x2 in b.coproduct_basis(x):
            for y1, y2 in b.coproduct_basis(y):
                for t in product(b.mul_basis(x1, y1), b.mul_basis(x2, y2)):
                    toggle(acc, t)
        res.record(lhs.support == acc, (b.name_of(x), b.name_of(y)))


def _counit_multiplicative(b: DgBialgebra, res: CheckResult) -> None:
    for x, y in product(b.basis, repeat=2):
        eps = sum(b.counit(t) for t in b.mul_basis(x, y)) % 2
        res.record(eps == b.counit(x) * b.counit(y), (b.name_of(x), b.name_of(y)))


def _unit_grouplike(b: DgBialgebra, res: CheckResult) -> None:
    res.record(b.coproduct_basis(UNIT) == Gf2Vector.basis((UNIT, UNIT)), b.name_of(UNIT))


COALGEBRA_AXIOMS = {
    "grading": _grading,
    "connected": _connected,
    "d_squared": _d_squared,
    "coassociativity": _coassociativity,
    "counit": _counit,
    "co_leibniz": _co_leibniz,
}

ALGEBRA_AXIOMS = {
    "associativity": _associativity,
    "unit": _unit_law,
    "leibniz": _leibniz,
}

BIALGEBRA_AXIOMS = {
    "bialgebra_compatibility": _bialgebra_compat,
    "counit_multiplicative": _counit_multiplicative,
    "unit_grouplike": _unit_grouplike,
}


def axiom_names(b: DgBialgebra) -> list[str]:
    """The axioms that apply to ``b`` (coalgebra axioms only without a product)."""
    names = list(COALGEBRA_AXIOMS)
    if b.has_product:
        names += list(ALGEBRA_AXIOMS) + list(BIALGEBRA_AXIOMS)
    return names


def validate(b: DgBialgebra, names: Iterable[str] | None = None) -> ValidationReport:
    """Check every axiom (or the named ones) exactly on all basis elements,
    pairs and triples."""
    axioms = {**COALGEBRA_AXIOMS, **ALGEBRA_AXIOMS, **BIALGEBRA_AXIOMS}
    report = ValidationReport()
    for name in axiom_names(b) if names is None else names:
        check = axioms[name]
        res = CheckResult(name, region=f"all basis elements of {b.name or 'input'}")
        with timed(res):
            try:
                check(b, res)
            except (UnknownBasisId, NotHomogeneous) as exc:
                res.record(False, str(exc), type(exc).__name__)
        report.results.append(res)
    return report
