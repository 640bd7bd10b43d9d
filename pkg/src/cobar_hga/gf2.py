"""Sparse linear and multilinear algebra over GF(2).

A vector is its support: the set of basis keys carrying coefficient 1.
Basis keys are any hashable, mutually comparable values (ints for the
structure basis, tuples for tensor and word bases).
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from itertools import product

from .errors import ArityMismatch, NotHomogeneous, UnknownBasisId


class Gf2Vector:
    """Immutable finite formal sum of basis keys with mod-2 coefficients."""

    __slots__ = ("_support",)

    def __init__(self, support: Iterable[Hashable] = ()):
        self._support = frozenset(support)

    @classmethod
    def from_terms(cls, terms: Iterable[Hashable]) -> Gf2Vector:
        """Build a vector from a list of terms, cancelling repeated pairs."""
        acc: set = set()
        for t in terms:
            toggle(acc, t)
        return cls(acc)

    @classmethod
    def basis(cls, key: Hashable) -> Gf2Vector:
        return cls((key,))

    @property
    def support(self) -> frozenset:
        return self._support

    def terms(self) -> list:
        return sorted(self._support)

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return Gf2Vector(self._support ^ other._support)

    __radd__ = __add__
    __sub__ = __add__

    def __iter__(self):
        return iter(self._support)

    def __len__(self) -> int:
        return len(self._support)

    def __bool__(self) -> bool:
        return bool(self._support)

    def __contains__(self, key) -> bool:
        return key in self._support

    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Vector):
            return self._support == other._support
        if isinstance(other, int) and other == 0:
            return not self._support
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._support)

    def __repr__(self) -> str:
        if not self._support:
            return "Gf2Vector(0)"
        return "Gf2Vector(" + " + ".join(repr(t) for t in self.terms()) + ")"

    def degree(self, degree_of: Callable[[Hashable], int]) -> int | None:
        """Common degree of the support; None for zero, NotHomogeneous if mixed."""
        degs = {degree_of(t) for t in self._support}
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degs)} in {self!r}")
        return degs.pop() if degs else None

    def is_homogeneous(self, degree_of: Callable[[Hashable], int]) -> bool:
        return len({degree_of(t) for t in self._support}) <= 1


ZERO = Gf2Vector()


def toggle(acc: set, key) -> None:
    """Add ``key`` to the mod-2 accumulator ``acc`` in place."""
    if key in acc:
        acc.remove(key)
    else:
        acc.add(key)


def add(u: Gf2Vector, v: Gf2Vector) -> Gf2Vector:
    return u + v


def vsum(vectors: Iterable[Gf2Vector]) -> Gf2Vector:
    acc: set = set()
    for v in vectors:
        acc ^= v.support
    return Gf2Vector(acc)


def linear_extend(f: Callable[[Hashable], Gf2Vector], v: Iterable[Hashable]) -> Gf2Vector:
    acc: set = set()
    for key in v:
        acc ^= f(key).support
    return Gf2Vector(acc)


def bilinear_extend(f: Callable[[Hashable, Hashable], Gf2Vector],
                    u: Iterable[Hashable], v: Iterable[Hashable]) -> Gf2Vector:
    acc: set = set()
    v = list(v)
    for a in u:
        for b in v:
            acc ^= f(a, b).support
    return Gf2Vector(acc)


def tensor(*vectors: Gf2Vector) -> Gf2Vector:
    """Tensor product of vectors; the product basis is tuples of keys."""
    return Gf2Vector(product(*(v.support for v in vectors)))


def concat_product(*vectors: Gf2Vector) -> Gf2Vector:
    """Multilinear concatenation of vectors over tuple (word) bases."""
    acc: set = set()
    for parts in product(*(v.support for v in vectors)):
        toggle(acc, sum(parts, ()))
    return Gf2Vector(acc)


class LinearMap:
    """A GF(2)-linear map given by its rows on a declared source basis.

    Keys in ``source`` without a row are mapped to zero; keys outside
    ``source`` raise UnknownBasisId.  When ``source`` is omitted it is the
    set of keys that have rows.
    """

    __slots__ = ("rows", "degree_shift", "source")

    def __init__(self, rows: Mapping[Hashable, Gf2Vector], degree_shift: int = 0,
                 source: Iterable[Hashable] | None = None):
        self.rows = {k: v if isinstance(v, Gf2Vector) else Gf2Vector.from_terms(v)
                     for k, v in rows.items()}
        self.degree_shift = degree_shift
        self.source = frozenset(self.rows) if source is None else frozenset(source) | frozenset(self.rows)

    def row(self, key) -> Gf2Vector:
        r = self.rows.get(key)
        if r is not None:
            return r
        if key in self.source:
            return ZERO
        raise UnknownBasisId(key)

    def __call__(self, v: Gf2Vector) -> Gf2Vector:
        return apply(self, v)

    def compose(self, other: LinearMap) -> LinearMap:
        """``self`` after ``other``."""
        rows = {k: apply(self, other.row(k)) for k in other.source}
        return LinearMap(rows, self.degree_shift + other.degree_shift, other.source)

    def degree_violations(self, source_degree: Callable, target_degree: Callable | None = None) -> list:
        """Source keys whose image has a term of the wrong degree."""
        target_degree = target_degree or source_degree
        bad = []
        for k in sorted(self.source):
            want = source_degree(k) + self.degree_shift
            if any(target_degree(t) != want for t in self.row(k)):
                bad.append(k)
        return bad

    def __repr__(self) -> str:
        return f"LinearMap({len(self.rows)} rows, shift {self.degree_shift})"


def identity(keys: Iterable[Hashable]) -> LinearMap:
    keys = list(keys)
    return LinearMap({k: Gf2Vector.basis(k) for k in keys})


def zero_map(keys: Iterable[Hashable], degree_shift: int = 0) -> LinearMap:
    return LinearMap({}, degree_shift, keys)


def apply(f: LinearMap, v: Gf2Vector) -> Gf2Vector:
    return linear_extend(f.row, v)


def tensor_apply(fs: Sequence[LinearMap | Callable[[Hashable], Gf2Vector]], v: Gf2Vector) -> Gf2Vector:
    """Apply ``fs[0] ⊗ ... ⊗ fs[n-1]`` to a vector over the n-fold product basis."""
    n = len(fs)
    rows = [f.row if isinstance(f, LinearMap) else f for f in fs]
    acc: set = set()
    for key in v:
        if len(key) != n:
            raise ArityMismatch(f"expected {n}-fold tensor, got {key!r}")
        images = [rows[i](key[i]).support for i in range(n)]
        for t in product(*images):
            toggle(acc, t)
    return Gf2Vector(acc)


# Dense elimination on int bitsets, used by the homology module.

class Echelon:
    """Incremental row echelon form over GF(2) on int bitsets.

    Each stored row remembers which inserted vectors it combines, so that
    membership queries can return an explicit preimage.
    """

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int) -> tuple[int, int]:
        """Return (residual, combination) with vec = residual + span(combination)."""
        combo = 0
        while vec:
            top = vec.bit_length() - 1
            hit = self._rows.get(top)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        return vec, combo

    def add(self, vec: int) -> bool:
        """Insert the next vector; returns False if it was dependent."""
        tag = 1 << self._count
        self._count += 1
        residual, combo = self.reduce(vec)
        if not residual:
            return False
        self._rows[residual.bit_length() - 1] = (residual, combo ^ tag)
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def solve(self, vec: int) -> int | None:
        """Bitset of inserted vectors summing to ``vec``, or None."""
        residual, combo = self.reduce(vec)
        return None if residual else combo


def rank(columns: Iterable[int]) -> int:
    ech = Echelon()
    for c in columns:
        ech.add(c)
    return ech.rank


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the null space of the matrix with the given column bitsets.

    Kernel vectors are bitsets over column indices.
    """
    ech = Echelon()
    out = []
    for j, col in enumerate(columns):
        residual, combo = ech.reduce(col)
        if residual:
            ech._rows[residual.bit_length() - 1] = (residual, combo ^ (1 << j))
        else:
            out.append(combo ^ (1 << j))
        ech._count += 1
    return out


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
