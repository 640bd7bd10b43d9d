"""The multiplication μ_E on BΩA coextended from the twisting cochain
E: BΩA ⊗ BΩA → ΩA, and checkers for the conditions that make BΩA a
DG-bialgebra.

Bar words of BΩA are tuples of nonempty cobar words.  E is kept as a table
of components indexed by the bar lengths (p, q) of its two arguments:
E₀,₁ = E₁,₀ = id, E₁,ₖ comes from the cobar operations, every other entry
is zero.
"""

from __future__ import annotations

from collections.abc import Callable
from itertools import combinations

from .barcobar import BarCoalgebra, TruncationBounds, comultiplicative_extension
from .errors import NotReduced, TruncationOverflow
from .gf2 import Gf2Vector, ZERO, toggle
from .hga import HgaContext
from .report import FAIL, CheckResult, ValidationReport, timed


class EComponents:
    """The components E_{p,q} of E, looked up by argument bar lengths."""

    def __init__(self, ctx: HgaContext):
        self.ctx = ctx

    def has(self, p: int, q: int) -> bool:
        """Whether E_{p,q} can be nonzero."""
        return (p, q) in ((0, 1), (1, 0)) or (p == 1 and q >= 1)

    def __call__(self, u: tuple, v: tuple) -> Gf2Vector:
        p, q = len(u), len(v)
        if (p, q) == (0, 1):
            return Gf2Vector.basis(v[0])
        if (p, q) == (1, 0):
            return Gf2Vector.basis(u[0])
        if p == 1 and q >= 1:
            return self.ctx.e1k_basis(u[0], v)
        return ZERO


class BarOfCobar:
    """BΩA with the product μ_E, for a 2-reduced DG-bialgebra A.

    ``ctx`` supplies the cobar operations; pass a subclass of HgaContext to
    study how broken operations break the bialgebra structure.
    """

    def __init__(self, ctx: HgaContext):
        if ctx.A.connectivity < 3:
            raise NotReduced("the bar construction of the cobar needs a 2-reduced bialgebra")
        self.ctx = ctx
        self.A = ctx.A
        self.cobar = ctx.cobar
        self.bar = BarCoalgebra(self.cobar)
        self.E = EComponents(ctx)
        self._mu: dict = {}

    # structure

    def degree(self, word: tuple) -> int:
        return self.bar.degree(word)

    def words(self, bounds: TruncationBounds) -> list[tuple]:
        return self.bar.words(bounds)

    def format_key(self, word: tuple) -> str:
        return self.bar.format_key(word)

    def format(self, x: Gf2Vector) -> str:
        return self.bar.format(x)

    def eval_E(self, u: Gf2Vector, v: Gf2Vector) -> Gf2Vector:
        acc: set = set()
        for a in u:
            for b in v:
                acc ^= self.E(a, b).support
        return Gf2Vector(acc)

    def mu_basis(self, u: tuple, v: tuple) -> Gf2Vector:
        """Σₖ (E ⊗ … ⊗ E)∇ᵏ(u ⊗ v).

        The sum runs over simultaneous cuts of u and v into k consecutive
        pieces; a piece pair with both parts empty contributes E₀,₀ = 0, so
        k never exceeds len(u) + len(v) and no cutoff is needed.
        """
        key = (u, v)
        hit = self._mu.get(key)
        if hit is not None:
            return hit
        E = self.E
        n, m = len(u), len(v)
        memo: dict = {}

        def tail(i, j):
            # words from the cuts of u[i:], v[j:]
            if (i, j) in memo:
                return memo[(i, j)]
            if i == n and j == m:
                out = {()}
            else:
                out = set()
                for i2 in range(i, min(i + 1, n) + 1):
                    for j2 in range(j, m + 1):
                        if (i2, j2) == (i, j) or not E.has(i2 - i, j2 - j):
                            continue
                        head = E(u[i:i2], v[j:j2])
                        if not head:
                            continue
                        rest = tail(i2, j2)
                        for letter in head:
                            for r in rest:
                                toggle(out, (letter,) + r)
            memo[(i, j)] = out
            return out

        result = Gf2Vector(tail(0, 0))
        self._mu[key] = result
        return result

    def mu(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        acc: set = set()
        for u in x:
            for v in y:
                acc ^= self.mu_basis(u, v).support
        return Gf2Vector(acc)

    def d(self, x: Gf2Vector) -> Gf2Vector:
        return self.bar.d(x)

    def coproduct(self, x: Gf2Vector) -> Gf2Vector:
        return self.bar.coproduct(x)

    # argument sweeps

    def pairs(self, bounds: TruncationBounds, extra: int = 0):
        """Bar word pairs with total degree + extra and total length in bounds."""
        return self.tuples(2, bounds, extra)

    def tuples(self, arity: int, bounds: TruncationBounds, extra: int = 0):
        words = self.words(bounds)
        deg = [self.degree(w) for w in words]

        def rec(prefix, budget, length):
            if len(prefix) == arity:
                yield tuple(prefix)
                return
            for w, dw in zip(words, deg):
                if dw > budget:
                    break
                if len(w) + length > bounds.max_length:
                    continue
                prefix.append(w)
                yield from rec(prefix, budget - dw, length + len(w))
                prefix.pop()

        if bounds.max_degree - extra >= 0:
            yield from rec([], bounds.max_degree - extra, 0)

    def fmt(self, *words) -> str:
        return "(" + "; ".join(self.format_key(w) for w in words) + ")"


def _v(w) -> Gf2Vector:
    return Gf2Vector.basis(w)


def _cuts2(u: tuple, v: tuple):
    for i in range(len(u) + 1):
        for j in range(len(v) + 1):
            yield (u[:i], v[:j]), (u[i:], v[j:])


def mu_brute_force(E: Callable[[tuple, tuple], Gf2Vector], u: tuple, v: tuple) -> Gf2Vector:
    """μ_E by listing every k and every simultaneous cut, zero pieces included.

    Independent of the memoised evaluation in BarOfCobar.mu_basis; used as
    a test oracle.
    """
    n, m = len(u), len(v)
    acc: set = set()
    if n == 0 and m == 0:
        acc.add(())
    for k in range(1, n + m + 1):
        for cu in _weak_cuts(n, k):
            for cv in _weak_cuts(m, k):
                letters = [E(u[cu[t]:cu[t + 1]], v[cv[t]:cv[t + 1]]).support for t in range(k)]
                words = [()]
                for options in letters:
                    words = [w + (x,) for w in words for x in options]
                for w in words:
                    toggle(acc, w)
    return Gf2Vector(acc)


def _weak_cuts(n: int, k: int):
    """Boundaries 0 = c₀ ≤ c₁ ≤ … ≤ cₖ = n."""
    for inner in combinations(range(n + k - 1), k - 1):
        bounds = [0]
        for t, pos in enumerate(inner):
            bounds.append(pos - t)
        bounds.append(n)
        yield bounds


def _region(bounds: TruncationBounds, note: str) -> str:
    return f"{note}; bar {bounds.describe()}"


def check_E_twisting(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """d_Ω E + E d_{B⊗B} = E⌣E on bar word pairs, reported per (p, q) block."""
    res = CheckResult("E_twisting", region=_region(bounds, "bar word pairs"))
    d_cobar, d_bar, E = B.cobar.d, B.bar.d, B.eval_E
    with timed(res):
        for u, v in B.pairs(bounds):
            if not u and not v:
                continue
            U, V = _v(u), _v(v)
            lhs = d_cobar(E(U, V)) + E(d_bar(U), V) + E(U, d_bar(V))
            rhs = ZERO
            for (u1, v1), (u2, v2) in _cuts2(u, v):
                left = B.E(u1, v1)
                if left:
                    rhs += B.cobar.mul(left, B.E(u2, v2))
            res.record(lhs == rhs, B.fmt(u, v), block=(len(u), len(v)))
    return res


def check_mu_assoc(B: BarOfCobar, bounds: TruncationBounds, direct: TruncationBounds | None = None) -> CheckResult:
    """E(μ_E ⊗ id) = E(id ⊗ μ_E) on triples, and μ_E associativity itself
    on the (smaller) ``direct`` region."""
    res = CheckResult("mu_assoc", region=_region(bounds, "bar word triples"))
    direct = direct or TruncationBounds(bounds.max_degree, min(bounds.max_length, 3))
    with timed(res):
        for u, v, w in B.tuples(3, bounds):
            U, V, W = _v(u), _v(v), _v(w)
            lhs = B.eval_E(B.mu(U, V), W)
            rhs = B.eval_E(U, B.mu(V, W))
            res.record(lhs == rhs, B.fmt(u, v, w), detail="projected", block=(len(u), len(v), len(w)))
        for u, v, w in B.tuples(3, direct):
            U, V, W = _v(u), _v(v), _v(w)
            ok = B.mu(B.mu(U, V), W) == B.mu(U, B.mu(V, W))
            res.record(ok, B.fmt(u, v, w), detail="direct", block="direct")
    return res


def check_unit_laws(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """μ_E(1, w) = w = μ_E(w, 1), with 1 the empty bar word."""
    res = CheckResult("unit_laws", region=_region(bounds, "bar words"))
    with timed(res):
        for w in B.words(bounds):
            ok = B.mu_basis((), w) == _v(w) and B.mu_basis(w, ()) == _v(w)
            res.record(ok, B.format_key(w), block=len(w))
    return res


def check_mu_coalgebra_map(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """∇μ_E = (μ_E ⊗ μ_E)∇_{B⊗B} on bar word pairs."""
    res = CheckResult("mu_coalgebra_map", region=_region(bounds, "bar word pairs"))
    with timed(res):
        for u, v in B.pairs(bounds):
            lhs = B.coproduct(B.mu_basis(u, v))
            acc: set = set()
            for (u1, v1), (u2, v2) in _cuts2(u, v):
                for a in B.mu_basis(u1, v1):
                    for b in B.mu_basis(u2, v2):
                        toggle(acc, (a, b))
            res.record(lhs == Gf2Vector(acc), B.fmt(u, v), block=(len(u), len(v)))
    return res


def check_mu_chain_map(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """d μ_E(u, v) = μ_E(du, v) + μ_E(u, dv)."""
    res = CheckResult("mu_chain_map", region=_region(bounds, "bar word pairs"))
    with timed(res):
        for u, v in B.pairs(bounds):
            U, V = _v(u), _v(v)
            lhs = B.d(B.mu(U, V))
            rhs = B.mu(B.d(U), V) + B.mu(U, B.d(V))
            res.record(lhs == rhs, B.fmt(u, v), block=(len(u), len(v)))
    return res


def check_projection(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """The length-one part of μ_E(u, v) is E(u, v)."""
    res = CheckResult("projection", region=_region(bounds, "bar word pairs"))
    with timed(res):
        for u, v in B.pairs(bounds):
            if not u and not v:
                continue
            proj = Gf2Vector(w[0] for w in B.mu_basis(u, v) if len(w) == 1)
            res.record(proj == B.E(u, v), B.fmt(u, v), block=(len(u), len(v)))
    return res


VERDICT_PARTS = ("E_twisting", "mu_assoc", "unit_laws")


def dg_bialgebra_verdict(B: BarOfCobar, bounds: TruncationBounds,
                         parts: ValidationReport | None = None) -> ValidationReport:
    """Runs (or reuses) the twisting, associativity and unit checks and adds a
    single verdict naming the verified region or the first violated condition."""
    report = ValidationReport()
    have = {r.name: r for r in parts} if parts is not None else {}
    runners = {"E_twisting": check_E_twisting, "mu_assoc": check_mu_assoc, "unit_laws": check_unit_laws}
    for name in VERDICT_PARTS:
        report.results.append(have.get(name) or runners[name](B, bounds))
    verdict = CheckResult("dg_bialgebra", region=_region(bounds, "aggregate"))
    verdict.checked = sum(r.checked for r in report.results)
    failed = [r for r in report.results if r.status == FAIL]
    if failed:
        first = failed[0]
        verdict.status = FAIL
        verdict.counterexample = first.counterexample
        verdict.detail = f"{first.name} violated" + (f" ({first.detail})" if first.detail else "")
    else:
        verdict.detail = (f"BΩA is a DG-bialgebra up to bar degree {bounds.max_degree}"
                          f" and bar length {bounds.max_length}")
    verdict.wall_time = sum(r.wall_time for r in report.results)
    report.results.append(verdict)
    return report


def g_A(B: BarOfCobar, max_length: int) -> Callable[[Gf2Vector], Gf2Vector]:
    """g_A: A → BΩA, the comultiplicative extension of a ↦ [a]."""
    A = B.A

    def phi(a):
        return ZERO if a == A.unit else Gf2Vector.basis((a,))

    return comultiplicative_extension(phi, A, max_length)


def g_A_check(B: BarOfCobar, bounds: TruncationBounds) -> CheckResult:
    """g_A is a DG-coalgebra map and g_A(a·b) = μ_E(g_A a, g_A b).

    Basis elements and pairs are taken with degree at most
    ``bounds.max_degree``; an element whose image needs bar words longer
    than ``bounds.max_length`` is reported as a warning.
    """
    A = B.A
    res = CheckResult("g_A", region=f"basis elements and pairs of A; {bounds.describe()}")
    g = g_A(B, bounds.max_length)
    basis = [a for a in A.basis if A.degree(a) <= bounds.max_degree]
    with timed(res):
        for a in basis:
            try:
                ga = g(_v(a))
                split: set = set()
                for left, right in A.coproduct_basis(a):
                    for x in g(_v(left)):
                        for y in g(_v(right)):
                            toggle(split, (x, y))
                res.record(B.coproduct(ga) == Gf2Vector(split), A.name_of(a), detail="coalgebra map", block="comap")
                res.record(B.d(ga) == g(A.d_basis(a)), A.name_of(a), detail="chain map", block="chain")
            except TruncationOverflow as exc:
                res.warn(f"{A.name_of(a)}: {exc} ({exc.region})")
        for a in basis:
            for b in basis:
                if A.degree(a) + A.degree(b) > bounds.max_degree:
                    continue
                label = f"({A.name_of(a)}, {A.name_of(b)})"
                try:
                    lhs = g(A.mul_basis(a, b))
                    rhs = B.mu(g(_v(a)), g(_v(b)))
                except TruncationOverflow as exc:
                    res.warn(f"{label}: {exc} ({exc.region})")
                    continue
                res.record(lhs == rhs, label, detail="multiplicative", block="mult")
    return res


BAR_CHECKS = {
    "E_twisting": check_E_twisting,
    "mu_assoc": check_mu_assoc,
    "unit_laws": check_unit_laws,
    "mu_coalgebra_map": check_mu_coalgebra_map,
    "mu_chain_map": check_mu_chain_map,
    "projection": check_projection,
    "g_A": g_A_check,
}


def run_bar_checks(B: BarOfCobar, bounds: TruncationBounds, names=None) -> ValidationReport:
    """Selected checks followed by the aggregate verdict (when its parts ran)."""
    names = list(names or list(BAR_CHECKS) + ["dg_bialgebra"])
    report = ValidationReport()
    for name in names:
        if name in BAR_CHECKS:
            report.results.append(BAR_CHECKS[name](B, bounds))
    if "dg_bialgebra" in names:
        verdict = dg_bialgebra_verdict(B, bounds, report)
        report.results.append(verdict["dg_bialgebra"])
    return report
