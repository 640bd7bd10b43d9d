"""Twisting cochains τ: C → A, the Brown condition dτ + τd = τ⌣τ, and the
algebra and coalgebra maps a twisting cochain induces on ΩC and BA.

A cochain is stored only on the finitely many source basis elements of its
region; evaluating it anywhere else raises OutOfTruncatedRegion rather than
returning a silent zero.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Mapping
from dataclasses import dataclass, field

from .barcobar import (BarCoalgebra, CobarAlgebra, TruncationBounds, comultiplicative_extension,
                       multiplicative_extension)
from .errors import BrownViolated, OutOfTruncatedRegion, TruncationOverflow
from .gf2 import Gf2Vector, LinearMap, ZERO, linear_extend, toggle
from .report import CheckResult, ValidationReport, timed


def _fmt(structure, key) -> str:
    fmt = getattr(structure, "format_key", None)
    return fmt(key) if fmt else repr(key)


class TwistingCochain:
    """A degree -1 map from a DG-coalgebra to a DG-algebra on a truncated region.

    ``values`` maps source basis keys to target vectors; keys of the region
    without a value are sent to zero.
    """

    def __init__(self, source, target, values: Mapping[Hashable, Gf2Vector], region: TruncationBounds,
                 name: str = "tau"):
        self.source = source
        self.target = target
        self.region = region
        self.name = name
        self.keys = list(source.basis_keys(region))
        known = set(self.keys)
        stray = [k for k in values if k not in known]
        if stray:
            raise OutOfTruncatedRegion(f"{name} has values outside its region: {stray[:3]!r}")
        self.values = {k: v for k, v in values.items() if v}
        if source.unit in self.values:
            raise ValueError(f"{name} must vanish on the source unit")
        self._known = known

    def row(self, key) -> Gf2Vector:
        hit = self.values.get(key)
        if hit is not None:
            return hit
        if key in self._known:
            return ZERO
        raise OutOfTruncatedRegion(
            f"{self.name} evaluated at {_fmt(self.source, key)}, outside {self.region.describe()}")

    def __call__(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.row, x)

    def as_linear_map(self) -> LinearMap:
        return LinearMap(self.values, degree_shift=-1, source=self.keys)

    def with_values(self, overrides: Mapping[Hashable, Gf2Vector], name: str | None = None) -> TwistingCochain:
        """A copy with some values replaced, used to build mutants."""
        values = dict(self.values)
        values.update(overrides)
        return TwistingCochain(self.source, self.target, values, self.region, name or self.name + "'")

    def degree_violations(self) -> list:
        deg_s, deg_t = self.source.degree, self.target.degree
        return [k for k in self.keys if any(deg_t(t) != deg_s(k) - 1 for t in self.row(k))]

    def __repr__(self) -> str:
        return f"TwistingCochain({self.name}, {len(self.values)} nonzero values; {self.region.describe()})"


def from_function(source, target, f: Callable[[Hashable], Gf2Vector], region: TruncationBounds,
                  name: str = "tau") -> TwistingCochain:
    keys = source.basis_keys(region)
    return TwistingCochain(source, target, {k: f(k) for k in keys if k != source.unit}, region, name)


def zero_cochain(source, target, region: TruncationBounds) -> TwistingCochain:
    return TwistingCochain(source, target, {}, region, "0")


def universal_cobar(coalgebra, region: TruncationBounds) -> TwistingCochain:
    """φ_C: C → ΩC, c ↦ [c]."""
    return from_function(coalgebra, CobarAlgebra(coalgebra), lambda c: Gf2Vector.basis((c,)), region, "phi_C")


def universal_bar(algebra, region: TruncationBounds) -> TwistingCochain:
    """BA → A, the projection onto bar words of length one."""
    bar = BarCoalgebra(algebra)

    def proj(word):
        return Gf2Vector.basis(word[0]) if len(word) == 1 else ZERO

    return from_function(bar, algebra, proj, region, "pi_A")


def cup(tau: TwistingCochain, sigma: TwistingCochain) -> LinearMap:
    """τ⌣σ = μ(τ⊗σ)Δ on the common region."""
    if tau.source is not sigma.source or tau.target is not sigma.target:
        raise ValueError("cup needs cochains with the same source and target")
    if tau.region != sigma.region:
        raise ValueError("cup needs cochains on the same region")
    source, target = tau.source, tau.target
    rows = {}
    for c in tau.keys:
        acc: set = set()
        for left, right in source.coproduct_basis(c):
            a, b = tau.row(left), sigma.row(right)
            if a and b:
                acc ^= target.mul(a, b).support
        if acc:
            rows[c] = Gf2Vector(acc)
    return LinearMap(rows, degree_shift=-2, source=tau.keys)


def check_brown(tau: TwistingCochain, name: str = "brown") -> CheckResult:
    """dτ + τd = τ⌣τ on every source basis element of the region."""
    res = CheckResult(name, region=f"source basis; {tau.region.describe()}")
    with timed(res):
        square = cup(tau, tau)
        for c in tau.keys:
            lhs = tau.target.d(tau.row(c)) + tau(tau.source.d_basis(c))
            res.record(lhs == square.row(c), _fmt(tau.source, c),
                       detail=f"lhs {_fmt_vec(tau.target, lhs)} vs {_fmt_vec(tau.target, square.row(c))}"
                       if lhs != square.row(c) else None)
    return res


def _fmt_vec(structure, v: Gf2Vector) -> str:
    fmt = getattr(structure, "format", None)
    return fmt(v) if fmt else repr(v)


@dataclass
class InducedMap:
    """A map induced by a twisting cochain, with the checks run on it."""

    apply: Callable[[Gf2Vector], Gf2Vector]
    source: object
    target: object
    report: ValidationReport = field(default_factory=ValidationReport)

    def __call__(self, x: Gf2Vector) -> Gf2Vector:
        return self.apply(x)

    @property
    def passed(self) -> bool:
        return self.report.passed


def _precondition(tau: TwistingCochain, check: bool) -> CheckResult:
    res = check_brown(tau)
    if check and not res.passed:
        raise BrownViolated(f"{tau.name} violates the Brown condition at {res.counterexample}",
                            ValidationReport([res]))
    return res


def lift_to_algebra_map(tau: TwistingCochain, bounds: TruncationBounds | None = None,
                        check_precondition: bool = True) -> InducedMap:
    """f_τ: ΩC → A, the multiplicative extension of τ, checked on cobar words.

    ``bounds`` limits the cobar words checked; by default one less than the
    cochain's degree region, so that every letter lies in the region.
    """
    brown = _precondition(tau, check_precondition)
    if bounds is None:
        bounds = TruncationBounds(max(tau.region.max_degree - 1, 0), tau.region.max_length)
    cobar = CobarAlgebra(tau.source)
    target = tau.target
    f = multiplicative_extension(lambda c: tau.row(c), target)
    words = cobar.words(bounds)
    out = InducedMap(f, cobar, target)
    out.report.results.append(brown)

    chain = CheckResult("chain_map", region=f"cobar words; {bounds.describe()}")
    with timed(chain):
        for w in words:
            x = Gf2Vector.basis(w)
            chain.record(f(cobar.d(x)) == target.d(f(x)), cobar.format_key(w))
    mult = CheckResult("multiplicative", region=f"cobar word pairs; {bounds.describe()}")
    with timed(mult):
        deg = cobar.degree
        for u in words:
            for v in words:
                if deg(u) + deg(v) > bounds.max_degree or len(u) + len(v) > bounds.max_length:
                    continue
                lhs = f(Gf2Vector.basis(u + v))
                rhs = target.mul(f(Gf2Vector.basis(u)), f(Gf2Vector.basis(v)))
                mult.record(lhs == rhs, f"({cobar.format_key(u)}, {cobar.format_key(v)})")
    restrict = CheckResult("restriction", region="length-one words")
    with timed(restrict):
        for w in words:
            if len(w) == 1:
                restrict.record(f(Gf2Vector.basis(w)) == tau.row(w[0]), cobar.format_key(w))
    out.report.results.extend([chain, mult, restrict])
    return out


def lift_to_coalgebra_map(tau: TwistingCochain, check_precondition: bool = True) -> InducedMap:
    """g_τ: C → BA, the comultiplicative extension of τ, checked on the region.

    Bar words longer than the region's ``max_length`` raise TruncationOverflow
    from the extension; the coalgebra-map check reports such elements as
    warnings instead of dropping them.
    """
    brown = _precondition(tau, check_precondition)
    source, bar = tau.source, BarCoalgebra(tau.target)
    raw = comultiplicative_extension(tau.row, source, tau.region.max_length)
    unit = tau.target.unit

    def g(x: Gf2Vector) -> Gf2Vector:
        return Gf2Vector(w for w in raw(x) if unit not in w)

    out = InducedMap(g, source, bar)
    out.report.results.append(brown)
    comap = CheckResult("coalgebra_map", region=f"source basis; {tau.region.describe()}")
    chain = CheckResult("chain_map", region=f"source basis; {tau.region.describe()}")
    restrict = CheckResult("restriction", region="projection to length one")
    with timed(comap):
        for c in tau.keys:
            label = _fmt(source, c)
            try:
                gc = g(Gf2Vector.basis(c))
                split: set = set()
                for left, right in source.coproduct_basis(c):
                    for u in g(Gf2Vector.basis(left)):
                        for v in g(Gf2Vector.basis(right)):
                            toggle(split, (u, v))
                comap.record(bar.coproduct(gc) == Gf2Vector(split), label)
                chain.record(bar.d(gc) == g(source.d_basis(c)), label)
                proj = Gf2Vector(w[0] for w in gc if len(w) == 1)
                restrict.record(proj == tau.row(c), label)
            except TruncationOverflow as exc:
                comap.warn(f"{label}: {exc} ({exc.region})")
    out.report.results.extend([comap, chain, restrict])
    return out
