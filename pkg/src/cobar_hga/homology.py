"""GF(2) homology of truncated cobar and bar complexes by exact elimination,
and the Gerstenhaber relations on the homology of the cobar construction.

A degree is *fully enumerated* when no word of that degree is cut off by
the length bound.  Homology in degree n is reported only when degrees n and
n + 1 are fully enumerated, so both adjacent boundary matrices are exact.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .barcobar import TruncationBounds
from .errors import OutOfTruncatedRegion
from .gf2 import Echelon, Gf2Vector, bits, kernel
from .report import CheckResult, ValidationReport, timed


def full_through(letters: Sequence[tuple[object, int]], bounds: TruncationBounds) -> int:
    """Largest degree m such that every degree <= m is fully enumerated."""
    weights = [w for _, w in letters]
    if not weights:
        return bounds.max_degree
    return min(bounds.max_degree, (bounds.max_length + 1) * min(weights) - 1)


class ChainComplexSlice:
    """Per-degree bases and boundary matrices of a truncated chain complex."""

    def __init__(self, words: Sequence, degree_of: Callable, d_basis: Callable[[object], Gf2Vector],
                 full_degree: int, format_key: Callable = repr, seed: int | None = None):
        self.degree_of = degree_of
        self.d_basis = d_basis
        self.full_degree = full_degree
        self.format_key = format_key
        self.basis: dict[int, list] = {}
        for w in words:
            self.basis.setdefault(degree_of(w), []).append(w)
        if seed is not None:
            rng = random.Random(seed)
            for ws in self.basis.values():
                rng.shuffle(ws)
        self.index = {n: {w: i for i, w in enumerate(ws)} for n, ws in self.basis.items()}
        self._columns: dict[int, list[int]] = {}
        self._echelons: dict[int, Echelon] = {}

    @classmethod
    def from_complex(cls, structure, bounds: TruncationBounds, seed: int | None = None) -> ChainComplexSlice:
        """Slice of a CobarAlgebra, BarCoalgebra or anything with the same hooks."""
        letters = structure.letters(bounds)
        return cls(structure.words(bounds), structure.degree, structure.d_basis,
                   full_through(letters, bounds), structure.format_key, seed)

    def degrees(self) -> list[int]:
        return sorted(n for n in self.basis if n <= self.full_degree)

    def complete(self, n: int) -> bool:
        return n + 1 <= self.full_degree

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def to_mask(self, n: int, x: Gf2Vector) -> int:
        idx = self.index.get(n, {})
        mask = 0
        for w in x:
            i = idx.get(w)
            if i is None:
                raise OutOfTruncatedRegion(f"{self.format_key(w)} is not in the enumerated degree-{n} basis")
            mask ^= 1 << i
        return mask

    def from_mask(self, n: int, mask: int) -> Gf2Vector:
        ws = self.basis.get(n, [])
        return Gf2Vector(ws[i] for i in bits(mask))

    def columns(self, n: int) -> list[int]:
        """Boundary C_n → C_{n-1} as bitsets over the degree n-1 basis."""
        if n > self.full_degree:
            raise OutOfTruncatedRegion(f"degree {n} is not fully enumerated (limit {self.full_degree})")
        hit = self._columns.get(n)
        if hit is None:
            hit = [self.to_mask(n - 1, self.d_basis(w)) for w in self.basis.get(n, [])]
            self._columns[n] = hit
        return hit

    def boundary_squared_violations(self) -> list:
        """Words w (up to the full degree) with d(dw) != 0 at the matrix level."""
        bad = []
        for n in range(2, self.full_degree + 1):
            prev = self.columns(n - 1)
            for j, col in enumerate(self.columns(n)):
                acc = 0
                for i in bits(col):
                    acc ^= prev[i]
                if acc:
                    bad.append(self.basis[n][j])
        return bad

    def boundary_preimage(self, n: int, x: Gf2Vector) -> Gf2Vector | None:
        """Some c with dc = x, or None if x is not a boundary."""
        if not self.complete(n):
            raise OutOfTruncatedRegion(f"boundaries into degree {n} need degree {n + 1} fully enumerated")
        ech = self._boundary_echelon(n)
        combo = ech.solve(self.to_mask(n, x))
        if combo is None:
            return None
        return self.from_mask(n + 1, combo)

    def _boundary_echelon(self, n: int) -> Echelon:
        ech = self._echelons.get(n)
        if ech is None:
            ech = Echelon()
            for col in self.columns(n + 1):
                ech.add(col)
            self._echelons[n] = ech
        return ech


@dataclass
class HomologyGroup:
    degree: int
    dim: int
    chains: int
    cycles: int
    boundaries: int
    representatives: list[Gf2Vector] = field(default_factory=list)


def homology_basis(slice_: ChainComplexSlice, n: int) -> HomologyGroup:
    """Cycle representatives of a basis of H_n, chosen by elimination order."""
    if n < 0:
        return HomologyGroup(n, 0, 0, 0, 0)
    if not slice_.complete(n):
        raise OutOfTruncatedRegion(
            f"H_{n} needs degrees {n} and {n + 1} fully enumerated (limit {slice_.full_degree})")
    cols = slice_.columns(n) if n >= 1 else [0] * slice_.dim(n)
    cycles = kernel(cols)
    ech = Echelon()
    for b in slice_.columns(n + 1):
        ech.add(b)
    boundary_rank = ech.rank
    reps = []
    for z in cycles:
        if ech.add(z):
            reps.append(slice_.from_mask(n, z))
    return HomologyGroup(n, len(reps), slice_.dim(n), len(cycles), boundary_rank, reps)


def homology_dims(slice_: ChainComplexSlice) -> dict[int, int]:
    """dim H_n for every degree n where it is determined by the truncation."""
    out = {}
    for n in range(0, slice_.full_degree):
        out[n] = homology_basis(slice_, n).dim
    return out


# Gerstenhaber relations on H(ΩA)

def gerstenhaber_check(ctx, bounds: TruncationBounds | None = None) -> ValidationReport:
    """Verifies on homology representatives that the product is commutative,
    the bracket is well defined, satisfies Jacobi, is a biderivation, and
    kills the unit class.

    Each relation is checked as "the difference is d of an explicit chain";
    when the degree is fully enumerated the difference is also located in
    the boundary space by elimination.
    """
    bounds = bounds or ctx.bounds
    slice_ = ChainComplexSlice.from_complex(ctx.cobar, bounds)
    top = bounds.max_degree
    reps: list[tuple[int, Gf2Vector]] = []
    for n in range(0, slice_.full_degree):
        for r in homology_basis(slice_, n).representatives:
            reps.append((n, r))
    d, mul, cup1, bracket = ctx.d, ctx.mul, ctx.cup1, ctx.bracket
    fmt = ctx.cobar.format
    region = f"homology representatives through degree {slice_.full_degree - 1}; {bounds.describe()}"

    def zero_in_homology(res, diff, witness, n, label):
        if any(ctx.cobar.degree(w) != n for w in diff):
            res.record(False, label, detail=f"difference {fmt(diff)} is not of degree {n}")
            return
        ok = d(witness) == diff
        if ok and diff and slice_.complete(n):
            ok = slice_.boundary_preimage(n, diff) is not None
        res.record(ok, label, detail=None if ok else f"difference {fmt(diff)}")

    commutative = CheckResult("gerstenhaber_commutative", region=region)
    with timed(commutative):
        for p, x in reps:
            for q, y in reps:
                if p + q + 1 > top:
                    continue
                zero_in_homology(commutative, mul(x, y) + mul(y, x), cup1(x, y), p + q,
                                 f"({fmt(x)}, {fmt(y)})")

    well_defined = CheckResult("gerstenhaber_bracket", region=region)
    with timed(well_defined):
        for p, x in reps:
            for q, y in reps:
                if p + q + 1 <= top:
                    well_defined.record(not d(bracket(x, y)), f"({fmt(x)}, {fmt(y)})", detail="cycle")
        for p in range(0, slice_.full_degree):
            for c in slice_.basis.get(p + 1, []):
                C = Gf2Vector.basis(c)
                b = d(C)
                if not b:
                    continue
                for q, y in reps:
                    if p + q + 2 > top:
                        continue
                    zero_in_homology(well_defined, bracket(b, y), bracket(C, y), p + q + 1,
                                     f"(d{ctx.cobar.format_key(c)}, {fmt(y)})")

    jacobi = CheckResult("gerstenhaber_jacobi", region=region)
    biderivation = CheckResult("gerstenhaber_biderivation", region=region)
    with timed(jacobi):
        for p, a in reps:
            for q, b in reps:
                for r, c in reps:
                    if p + q + r + 2 > top:
                        continue
                    total = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
                    zero_in_homology(jacobi, total, Gf2Vector(), p + q + r + 2,
                                     f"({fmt(a)}, {fmt(b)}, {fmt(c)})")
    with timed(biderivation):
        for p, a in reps:
            for q, b in reps:
                for r, c in reps:
                    if p + q + r + 2 > top:
                        continue
                    total = bracket(a, mul(b, c)) + mul(bracket(a, b), c) + mul(b, bracket(a, c))
                    zero_in_homology(biderivation, total, ctx.e1k(2, a, [b, c]), p + q + r + 1,
                                     f"({fmt(a)}, {fmt(b)}, {fmt(c)})")

    unit = CheckResult("gerstenhaber_unit", region=region)
    with timed(unit):
        one = Gf2Vector.basis(())
        for q, y in reps:
            unit.record(not bracket(one, y) and not bracket(y, one), fmt(y))

    return ValidationReport([commutative, well_defined, jacobi, biderivation, unit])
