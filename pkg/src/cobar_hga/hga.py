"""The ⌣₁ product and the operations E₁,ₖ on the cobar construction of a
DG-bialgebra, with exhaustive checkers for the homotopy G-algebra identities.

Cobar elements are Gf2Vectors over words (tuples of basis indices).  All
checkers sweep argument tuples drawn from the enumerated words, keeping the
total output degree within ``max_degree`` and the combined argument length
within ``max_length``.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations, product

from .barcobar import CobarAlgebra, TruncationBounds
from .dg import DgBialgebra, iterated_diagonal, validate as validate_bialgebra
from .gf2 import Gf2Vector, ZERO, toggle, vsum
from .report import CheckResult, ValidationReport, timed


class HgaContext:
    """Operations on ΩA for a fixed bialgebra A and truncation region.

    Pass ``validate=False`` only to study deliberately broken inputs.
    """

    def __init__(self, bialgebra: DgBialgebra, bounds: TruncationBounds, validate: bool = True):
        if not bialgebra.has_product:
            raise ValueError("hGa operations need a bialgebra, got a coalgebra")
        if validate:
            report = validate_bialgebra(bialgebra)
            if not report.passed:
                names = ", ".join(r.name for r in report.failures())
                raise ValueError(f"{bialgebra.name or 'input'} is not a DG-bialgebra: {names}")
        self.A = bialgebra
        self.bounds = bounds
        self.cobar = CobarAlgebra(bialgebra)
        self._diamond: dict = {}
        self._e1k: dict = {}
        self._words = None

    # region

    @property
    def words(self) -> list[tuple]:
        if self._words is None:
            self._words = self.cobar.words(self.bounds)
        return self._words

    def tuples(self, arity: int, extra: int = 0):
        """Word tuples whose degrees plus ``extra`` fit the bounds."""
        words = self.words
        deg = [self.cobar.degree(w) for w in words]
        max_deg = self.bounds.max_degree - extra
        max_len = self.bounds.max_length

        def rec(prefix, budget, length):
            if len(prefix) == arity:
                yield tuple(prefix)
                return
            for w, dw in zip(words, deg):
                if dw > budget:
                    break
                if len(w) + length > max_len:
                    continue
                prefix.append(w)
                yield from rec(prefix, budget - dw, length + len(w))
                prefix.pop()

        if max_deg >= 0:
            yield from rec([], max_deg, 0)

    def fmt(self, *words) -> str:
        return "(" + "; ".join(self.cobar.format_key(w) for w in words) + ")"

    # operations

    def diamond_basis(self, a: int, word: tuple) -> Gf2Vector:
        """a⋄(b₁,…,bₛ) = Σ (a⁽¹⁾·b₁,…,a⁽ˢ⁾·bₛ) as a vector of s-letter segments."""
        key = (a, word)
        hit = self._diamond.get(key)
        if hit is not None:
            return hit
        A = self.A
        acc: set = set()
        if not word:
            if a == A.unit:
                acc.add(())
        else:
            for parts in iterated_diagonal(A, len(word), a):
                factors = []
                for p, b in zip(parts, word):
                    prod_ = A.mul_basis(p, b)
                    if not prod_:
                        break
                    factors.append(prod_.support)
                else:
                    for seg in product(*factors):
                        if A.unit not in seg:
                            toggle(acc, seg)
        out = Gf2Vector(acc)
        self._diamond[key] = out
        return out

    def diamond(self, a: int, word: Sequence[int]) -> Gf2Vector:
        return self.diamond_basis(a, tuple(word))

    def cup1_basis(self, u: tuple, v: tuple) -> Gf2Vector:
        if not u or not v:
            return ZERO
        acc: set = set()
        for k, a in enumerate(u):
            head, tail = u[:k], u[k + 1:]
            for seg in self.diamond_basis(a, v):
                toggle(acc, head + seg + tail)
        return Gf2Vector(acc)

    def cup1(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        acc: set = set()
        for u in x:
            for v in y:
                acc ^= self.cup1_basis(u, v).support
        return Gf2Vector(acc)

    def e1k_basis(self, u: tuple, ws: tuple) -> Gf2Vector:
        """Closed form: replace k letters of u, in order, by their ⋄-segments."""
        k = len(ws)
        if k == 0:
            return Gf2Vector.basis(u)
        key = (u, ws)
        hit = self._e1k.get(key)
        if hit is not None:
            return hit
        acc: set = set()
        if k <= len(u):
            for positions in combinations(range(len(u)), k):
                segs = [self.diamond_basis(u[i], w).support for i, w in zip(positions, ws)]
                if not all(segs):
                    continue
                for choice in product(*segs):
                    word = []
                    last = 0
                    for i, seg in zip(positions, choice):
                        word.extend(u[last:i])
                        word.extend(seg)
                        last = i + 1
                    word.extend(u[last:])
                    toggle(acc, tuple(word))
        out = Gf2Vector(acc)
        self._e1k[key] = out
        return out

    def e1k(self, k: int, x: Gf2Vector, ys: Sequence[Gf2Vector]) -> Gf2Vector:
        if len(ys) != k:
            raise ValueError(f"E_1,{k} takes {k} arguments after x, got {len(ys)}")
        acc: set = set()
        for u in x:
            for ws in product(*(y.support for y in ys)):
                acc ^= self.e1k_basis(u, ws).support
        return Gf2Vector(acc)

    def e1k_recursive(self, k: int, x: Gf2Vector, ys: Sequence[Gf2Vector]) -> Gf2Vector:
        """E₁,ₖ built by peeling letters off x with the distributivity rule.

        Seed on one letter: E₁,₀ = id, E₁,₁([a]; y) = [a⋄y], E₁,ₖ = 0 for k > 1.
        """
        memo: dict = {}

        def rec(u, ws):
            key = (u, ws)
            if key in memo:
                return memo[key]
            if not ws:
                out = {u}
            elif not u:
                out = set()
            else:
                a, rest = u[0], u[1:]
                out = set()
                for t in rec(rest, ws):
                    toggle(out, (a,) + t)
                seeds = self.diamond_basis(a, ws[0]) if ws[0] else ()
                for seg in seeds:
                    for t in rec(rest, ws[1:]):
                        toggle(out, seg + t)
            memo[key] = out
            return out

        if len(ys) != k:
            raise ValueError(f"E_1,{k} takes {k} arguments after x, got {len(ys)}")
        acc: set = set()
        for u in x:
            for ws in product(*(y.support for y in ys)):
                acc ^= rec(u, ws)
        return Gf2Vector(acc)

    def e(self, x: Gf2Vector, ys: Sequence[Gf2Vector]) -> Gf2Vector:
        return self.e1k(len(ys), x, ys)

    def bracket(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        return self.cup1(x, y) + self.cup1(y, x)

    def mul(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        return self.cobar.mul(x, y)

    def d(self, x: Gf2Vector) -> Gf2Vector:
        return self.cobar.d(x)

    def brace_insertions(self, x: Gf2Vector, ys: Sequence[Gf2Vector], zs: Sequence[Gf2Vector]) -> Gf2Vector:
        """Σ x{…, z, y₁{z…}, z, …, yₘ{z…}, z, …} over order-preserving insertions."""
        m, n = len(ys), len(zs)
        total: set = set()

        def rec(i, j, args):
            if i == m:
                full = args + list(zs[j:])
                total.symmetric_difference_update(self.e(x, full).support)
                return
            if j < n:
                rec(i, j + 1, args + [zs[j]])
            for length in range(0, n - j + 1):
                inner = self.e(ys[i], zs[j:j + length])
                if inner:
                    rec(i + 1, j + length, args + [inner])

        rec(0, 0, [])
        return Gf2Vector(total)


def _v(w) -> Gf2Vector:
    return Gf2Vector.basis(w)


def _region(ctx: HgaContext, note: str) -> str:
    return f"{note}; {ctx.bounds.describe()}"


def check_steen(ctx: HgaContext) -> CheckResult:
    """d(x⌣₁y) = dx⌣₁y + x⌣₁dy + x·y + y·x."""
    res = CheckResult("steenrod", region=_region(ctx, "word pairs, output degree"))
    with timed(res):
        for x, y in ctx.tuples(2, extra=1):
            X, Y = _v(x), _v(y)
            lhs = ctx.d(ctx.cup1(X, Y))
            rhs = ctx.cup1(ctx.d(X), Y) + ctx.cup1(X, ctx.d(Y)) + ctx.mul(X, Y) + ctx.mul(Y, X)
            res.record(lhs == rhs, ctx.fmt(x, y), block=(len(x), len(y)))
    return res


def check_hirsch(ctx: HgaContext) -> CheckResult:
    """(a·b)⌣₁c + a·(b⌣₁c) + (a⌣₁c)·b = 0 on the nose."""
    res = CheckResult("hirsch", region=_region(ctx, "word triples"))
    with timed(res):
        for a, b, c in ctx.tuples(3, extra=1):
            A, B, C = _v(a), _v(b), _v(c)
            total = ctx.cup1(ctx.mul(A, B), C) + ctx.mul(A, ctx.cup1(B, C)) + ctx.mul(ctx.cup1(A, C), B)
            res.record(not total, ctx.fmt(a, b, c), block=(len(a), len(b), len(c)))
    return res


def check_e1n(ctx: HgaContext, max_k: int = 3) -> CheckResult:
    """Boundary of E₁,ₖ equals the edge products plus adjacent merges."""
    res = CheckResult("e1n", region=_region(ctx, f"k <= {max_k}"))
    with timed(res):
        for k in range(1, max_k + 1):
            for args in ctx.tuples(k + 1, extra=k):
                x, ys = _v(args[0]), [_v(w) for w in args[1:]]
                lhs = ctx.d(ctx.e(x, ys)) + ctx.e(ctx.d(x), ys)
                for i in range(k):
                    lhs += ctx.e(x, ys[:i] + [ctx.d(ys[i])] + ys[i + 1:])
                rhs = ctx.mul(ys[0], ctx.e(x, ys[1:])) + ctx.mul(ctx.e(x, ys[:-1]), ys[-1])
                for i in range(k - 1):
                    rhs += ctx.e(x, ys[:i] + [ctx.mul(ys[i], ys[i + 1])] + ys[i + 2:])
                res.record(lhs == rhs, ctx.fmt(*args), block=(k, len(args[0])))
    return res


def check_e2n(ctx: HgaContext, max_k: int = 3) -> CheckResult:
    """E₁,ₖ(x₁·x₂; y) = Σₚ E₁,ₚ(x₁; y₁…yₚ)·E₁,ₖ₋ₚ(x₂; yₚ₊₁…yₖ).

    Also closes the recursion on three factors, where the expansion runs
    over all splittings of the y's into three consecutive blocks.
    """
    res = CheckResult("e2n", region=_region(ctx, f"k <= {max_k}"))
    with timed(res):
        for k in range(1, max_k + 1):
            for args in ctx.tuples(k + 2, extra=k):
                a1, a2 = _v(args[0]), _v(args[1])
                ys = [_v(w) for w in args[2:]]
                lhs = ctx.e(ctx.mul(a1, a2), ys)
                rhs = vsum(ctx.mul(ctx.e(a1, ys[:p]), ctx.e(a2, ys[p:])) for p in range(k + 1))
                res.record(lhs == rhs, ctx.fmt(*args), block=(k, 2))
            for args in ctx.tuples(k + 3, extra=k):
                a1, a2, a3 = (_v(w) for w in args[:3])
                ys = [_v(w) for w in args[3:]]
                lhs = ctx.e(ctx.mul(ctx.mul(a1, a2), a3), ys)
                rhs = ZERO
                for p in range(k + 1):
                    for q in range(p, k + 1):
                        rhs += ctx.mul(ctx.mul(ctx.e(a1, ys[:p]), ctx.e(a2, ys[p:q])), ctx.e(a3, ys[q:]))
                res.record(lhs == rhs, ctx.fmt(*args), block=(k, 3))
    return res


def check_e1assoc(ctx: HgaContext, max_m: int = 2, max_n: int = 2) -> CheckResult:
    """E₁,ₙ(E₁,ₘ(x; y); z) equals the sum over brace insertions."""
    res = CheckResult("e1assoc", region=_region(ctx, f"m <= {max_m}, n <= {max_n}"))
    with timed(res):
        for m in range(1, max_m + 1):
            for n in range(1, max_n + 1):
                for args in ctx.tuples(1 + m + n, extra=m + n):
                    x = _v(args[0])
                    ys = [_v(w) for w in args[1:1 + m]]
                    zs = [_v(w) for w in args[1 + m:]]
                    lhs = ctx.e(ctx.e(x, ys), zs)
                    rhs = ctx.brace_insertions(x, ys, zs)
                    res.record(lhs == rhs, ctx.fmt(*args), block=(m, n))
    return res


def check_cup1ass(ctx: HgaContext) -> CheckResult:
    """(a⌣₁b)⌣₁c + a⌣₁(b⌣₁c) = E₁,₂(a; b, c) + E₁,₂(a; c, b)."""
    res = CheckResult("cup1ass", region=_region(ctx, "word triples"))
    with timed(res):
        for a, b, c in ctx.tuples(3, extra=2):
            A, B, C = _v(a), _v(b), _v(c)
            lhs = ctx.cup1(ctx.cup1(A, B), C) + ctx.cup1(A, ctx.cup1(B, C))
            rhs = ctx.e1k(2, A, [B, C]) + ctx.e1k(2, A, [C, B])
            res.record(lhs == rhs, ctx.fmt(a, b, c), block=(len(a), len(b), len(c)))
    return res


def check_pre_jacobi(ctx: HgaContext) -> CheckResult:
    res = CheckResult("pre_jacobi", region=_region(ctx, "word triples"))
    with timed(res):
        for a, b, c in ctx.tuples(3, extra=2):
            A, B, C = _v(a), _v(b), _v(c)
            lhs = ctx.cup1(A, ctx.cup1(B, C)) + ctx.cup1(ctx.cup1(A, B), C)
            rhs = ctx.cup1(A, ctx.cup1(C, B)) + ctx.cup1(ctx.cup1(A, C), B)
            res.record(lhs == rhs, ctx.fmt(a, b, c), block=(len(a), len(b), len(c)))
    return res


def check_jacobi(ctx: HgaContext) -> CheckResult:
    res = CheckResult("jacobi", region=_region(ctx, "word triples"))
    with timed(res):
        br = ctx.bracket
        for a, b, c in ctx.tuples(3, extra=2):
            A, B, C = _v(a), _v(b), _v(c)
            total = br(br(A, B), C) + br(br(B, C), A) + br(br(C, A), B)
            res.record(not total, ctx.fmt(a, b, c), block=(len(a), len(b), len(c)))
    return res


def check_bracket_chain_map(ctx: HgaContext) -> CheckResult:
    res = CheckResult("bracket_chain_map", region=_region(ctx, "word pairs"))
    with timed(res):
        for a, b in ctx.tuples(2, extra=1):
            A, B = _v(a), _v(b)
            lhs = ctx.d(ctx.bracket(A, B))
            rhs = ctx.bracket(ctx.d(A), B) + ctx.bracket(A, ctx.d(B))
            res.record(lhs == rhs, ctx.fmt(a, b), block=(len(a), len(b)))
    return res


def check_e1k_oracle(ctx: HgaContext, max_k: int = 3) -> CheckResult:
    """Closed-form E₁,ₖ against the recursive construction, plus the
    specialisation k = 1 against ⌣₁ and the degree law."""
    res = CheckResult("e1k_oracle", region=_region(ctx, f"k <= {max_k}"))
    deg = ctx.cobar.degree
    with timed(res):
        for k in range(0, max_k + 1):
            for args in ctx.tuples(k + 1, extra=k):
                x, ys = _v(args[0]), [_v(w) for w in args[1:]]
                closed = ctx.e1k(k, x, ys)
                ok = closed == ctx.e1k_recursive(k, x, ys)
                if k == 1:
                    ok = ok and closed == ctx.cup1(x, ys[0])
                want = sum(deg(w) for w in args) + k
                ok = ok and all(deg(w) == want for w in closed)
                res.record(ok, ctx.fmt(*args), block=(k, len(args[0])))
    return res


HGA_CHECKS = {
    "steenrod": check_steen,
    "hirsch": check_hirsch,
    "e1n": check_e1n,
    "e2n": check_e2n,
    "e1assoc": check_e1assoc,
    "cup1ass": check_cup1ass,
    "pre_jacobi": check_pre_jacobi,
    "jacobi": check_jacobi,
    "bracket_chain_map": check_bracket_chain_map,
    "e1k_oracle": check_e1k_oracle,
}


def run_hga_checks(ctx: HgaContext, names: Sequence[str] | None = None) -> ValidationReport:
    report = ValidationReport()
    for name in names or HGA_CHECKS:
        report.results.append(HGA_CHECKS[name](ctx))
    return report
