"""Truncated cobar and bar constructions.

A cobar word is a tuple of non-unit letters from a coalgebra; its degree
is the sum of the letter degrees minus its length.  A bar word is a tuple
of non-unit letters from an algebra, of degree sum(|a| + 1).  Elements of
either are Gf2Vectors over words.  Both constructions are reduced: a letter
that becomes the unit annihilates its word.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import NotReduced, TruncationOverflow
from .gf2 import Gf2Vector, ZERO, bilinear_extend, linear_extend, tensor, toggle
from .report import CheckResult, timed


@dataclass(frozen=True)
class TruncationBounds:
    max_degree: int
    max_length: int

    def __post_init__(self):
        if self.max_degree < 0 or self.max_length < 0:
            raise ValueError("truncation bounds must be non-negative")

    def describe(self) -> str:
        return f"degree <= {self.max_degree}, length <= {self.max_length}"


def word_sort_key(degree_of: Callable) -> Callable:
    return lambda w: (degree_of(w), len(w), w)


def enumerate_words(letters: Sequence[tuple[Hashable, int]], bounds: TruncationBounds) -> list[tuple]:
    """All words with total weight <= max_degree and length <= max_length.

    ``letters`` pairs each letter with its (positive) degree contribution.
    Output is ordered by (degree, length, letters).
    """
    for letter, weight in letters:
        if weight <= 0:
            raise NotReduced(f"letter {letter!r} has weight {weight}; words are not finite per degree")
    usable = sorted((w, l) for l, w in letters if w <= bounds.max_degree)
    found: list[tuple[int, tuple]] = [(0, ())]

    def extend(word, weight):
        if len(word) == bounds.max_length:
            return
        for w, l in usable:
            if weight + w > bounds.max_degree:
                break
            nxt = word + (l,)
            found.append((weight + w, nxt))
            extend(nxt, weight + w)

    extend((), 0)
    found.sort(key=lambda p: (p[0], len(p[1]), p[1]))
    return [w for _, w in found]


def words_by_degree(words: Sequence[tuple], degree_of: Callable) -> dict[int, list[tuple]]:
    out: dict[int, list[tuple]] = {}
    for w in words:
        out.setdefault(degree_of(w), []).append(w)
    return out


class CobarAlgebra:
    """The reduced cobar construction ΩC of a connected DG-coalgebra."""

    unit = ()

    def __init__(self, coalgebra):
        self.coalgebra = coalgebra
        self._letter_d: dict = {}
        self._word_d: dict = {}

    @property
    def connectivity(self):
        return self.coalgebra.connectivity - 1

    def degree(self, word: tuple) -> int:
        deg = self.coalgebra.degree
        return sum(deg(c) for c in word) - len(word)

    def letter_differential(self, c) -> Gf2Vector:
        """d[c] as a vector of words of length 1 and 2."""
        hit = self._letter_d.get(c)
        if hit is not None:
            return hit
        C = self.coalgebra
        acc: set = set()
        for t in C.d_basis(c):
            if t != C.unit:
                toggle(acc, (t,))
        for left, right in C.coproduct_basis(c):
            if left == C.unit or right == C.unit:
                continue
            toggle(acc, (left, right))
        out = Gf2Vector(acc)
        self._letter_d[c] = out
        return out

    def d_basis(self, word: tuple) -> Gf2Vector:
        hit = self._word_d.get(word)
        if hit is not None:
            return hit
        acc: set = set()
        for i, c in enumerate(word):
            head, tail = word[:i], word[i + 1:]
            for rep in self.letter_differential(c):
                toggle(acc, head + rep + tail)
        out = Gf2Vector(acc)
        self._word_d[word] = out
        return out

    def d(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.d_basis, x)

    def mul_basis(self, u: tuple, v: tuple) -> Gf2Vector:
        return Gf2Vector.basis(u + v)

    def mul(self, x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
        return bilinear_extend(self.mul_basis, x, y)

    def letters(self, bounds: TruncationBounds | None = None) -> list[tuple]:
        C = self.coalgebra
        return [(c, C.degree(c) - 1) for c in C.basis if c != C.unit]

    def words(self, bounds: TruncationBounds) -> list[tuple]:
        return enumerate_words(self.letters(), bounds)

    basis_keys = words

    def format_key(self, word: tuple) -> str:
        return "[" + ",".join(self.coalgebra.name_of(c) for c in word) + "]"

    def format(self, x: Gf2Vector) -> str:
        if not x:
            return "0"
        return " + ".join(self.format_key(w) for w in sorted(x, key=word_sort_key(self.degree)))


class BarCoalgebra:
    """The reduced bar construction BA of a 1-reduced DG-algebra."""

    unit = ()

    def __init__(self, algebra):
        if algebra.connectivity < 2:
            raise NotReduced("the bar construction needs a 1-reduced algebra")
        self.algebra = algebra
        self._word_d: dict = {}

    @property
    def connectivity(self):
        return self.algebra.connectivity + 1

    def degree(self, word: tuple) -> int:
        deg = self.algebra.degree
        return sum(deg(a) + 1 for a in word)

    def d_basis(self, word: tuple) -> Gf2Vector:
        hit = self._word_d.get(word)
        if hit is not None:
            return hit
        A = self.algebra
        acc: set = set()
        for i, a in enumerate(word):
            head, tail = word[:i], word[i + 1:]
            for t in A.d_basis(a):
                if t != A.unit:
                    toggle(acc, head + (t,) + tail)
        for i in range(len(word) - 1):
            head, tail = word[:i], word[i + 2:]
            for t in A.mul_basis(word[i], word[i + 1]):
                if t != A.unit:
                    toggle(acc, head + (t,) + tail)
        out = Gf2Vector(acc)
        self._word_d[word] = out
        return out

    def d(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.d_basis, x)

    def coproduct_basis(self, word: tuple) -> Gf2Vector:
        return Gf2Vector((word[:k], word[k:]) for k in range(len(word) + 1))

    def coproduct(self, x: Gf2Vector) -> Gf2Vector:
        return linear_extend(self.coproduct_basis, x)

    def counit(self, word: tuple) -> int:
        return 1 if word == () else 0

    def reduced_iterated(self, n: int, word: tuple) -> Gf2Vector:
        """Cuts of ``word`` into n nonempty consecutive pieces."""
        if not word or n < 1 or n > len(word):
            return ZERO
        out = []
        for cuts in combinations(range(1, len(word)), n - 1):
            bounds = (0,) + cuts + (len(word),)
            out.append(tuple(word[bounds[i]:bounds[i + 1]] for i in range(n)))
        return Gf2Vector(out)

    def letters(self, bounds: TruncationBounds) -> list[tuple]:
        A = self.algebra
        letter_bounds = TruncationBounds(max(bounds.max_degree - 1, 0), max(bounds.max_degree, 0))
        keys = A.basis_keys(letter_bounds)
        return [(a, A.degree(a) + 1) for a in keys if a != A.unit]

    def words(self, bounds: TruncationBounds) -> list[tuple]:
        return enumerate_words(self.letters(bounds), bounds)

    basis_keys = words

    def format_key(self, word: tuple) -> str:
        fmt = getattr(self.algebra, "format_key", repr)
        return "⟦" + " | ".join(fmt(a) for a in word) + "⟧"

    def format(self, x: Gf2Vector) -> str:
        if not x:
            return "0"
        return " + ".join(self.format_key(w) for w in sorted(x, key=word_sort_key(self.degree)))


def bar_d(bar: BarCoalgebra, w: Gf2Vector) -> Gf2Vector:
    return bar.d(w)


def bar_coproduct(w: Gf2Vector) -> Gf2Vector:
    """Deconcatenation ∇ on a vector of bar words."""
    acc: set = set()
    for word in w:
        for k in range(len(word) + 1):
            toggle(acc, (word[:k], word[k:]))
    return Gf2Vector(acc)


def cobar_mul(x: Gf2Vector, y: Gf2Vector) -> Gf2Vector:
    return bilinear_extend(lambda u, v: Gf2Vector.basis(u + v), x, y)


def reduced_iterated(coalgebra, n: int, key) -> Gf2Vector:
    """Component of Δⁿ(key) with no unit factor, for any coalgebra handle."""
    own = getattr(coalgebra, "reduced_iterated", None)
    if own is not None:
        return own(n, key)
    unit = coalgebra.unit
    if key == unit:
        return ZERO
    if n == 1:
        return Gf2Vector.basis((key,))
    acc: set = set()
    for left, right in coalgebra.coproduct_basis(key):
        if left == unit or right == unit:
            continue
        for head in reduced_iterated(coalgebra, n - 1, left):
            toggle(acc, head + (right,))
    return Gf2Vector(acc)


def multiplicative_extension(alpha: Callable, algebra) -> Callable[[Gf2Vector], Gf2Vector]:
    """f_α on words: f(a₁…aₙ) = α(a₁)·…·α(aₙ), f of the empty word is the unit."""
    unit = Gf2Vector.basis(algebra.unit)

    def f_word(word):
        out = unit
        for a in word:
            out = algebra.mul(out, alpha(a))
            if not out:
                break
        return out

    def f(x: Gf2Vector) -> Gf2Vector:
        return linear_extend(f_word, x)

    return f


def comultiplicative_extension(beta: Callable, coalgebra, max_length: int) -> Callable[[Gf2Vector], Gf2Vector]:
    """g_β(c) = Σₙ β(c⁽¹⁾)⊗…⊗β(c⁽ⁿ⁾), a vector of words in the generators.

    β must vanish on the unit, so only unit-free diagonal terms contribute;
    raises TruncationOverflow when a nonzero term is longer than max_length.
    """
    cache: dict = {}
    fmt = getattr(coalgebra, "format_key", repr)

    def g_basis(c):
        hit = cache.get(c)
        if hit is not None:
            return hit
        acc: set = set()
        if coalgebra.counit(c):
            toggle(acc, ())
        n = 1
        while True:
            terms = reduced_iterated(coalgebra, n, c)
            if not terms:
                break
            image: set = set()
            for t in terms:
                image ^= tensor(*(beta(x) for x in t)).support
            if image and n > max_length:
                raise TruncationOverflow(
                    f"g({fmt(c)}) has a nonzero term of length {n} > {max_length}",
                    region=f"length {n}")
            acc ^= image
            n += 1
        out = Gf2Vector(acc)
        cache[c] = out
        return out

    def g(x: Gf2Vector) -> Gf2Vector:
        return linear_extend(g_basis, x)

    return g


# Soundness checks shared by the cobar and bar constructions.

def check_d_squared(structure, bounds: TruncationBounds, name: str = "d_squared"):
    """d∘d = 0 and d lowers degree by one, on every enumerated word."""
    res = CheckResult(name, region=f"words; {bounds.describe()}")
    deg = structure.degree
    with timed(res):
        for w in structure.words(bounds):
            dw = structure.d_basis(w)
            ok = all(deg(t) == deg(w) - 1 for t in dw) and not structure.d(dw)
            res.record(ok, structure.format_key(w), block=len(w))
    return res


def check_derivation(structure, bounds: TruncationBounds, name: str = "derivation"):
    """d(u·v) = du·v + u·dv on word pairs with combined length and degree in bounds."""
    res = CheckResult(name, region=f"word pairs; {bounds.describe()}")
    deg = structure.degree
    words = structure.words(bounds)
    with timed(res):
        for u in words:
            for v in words:
                if deg(u) + deg(v) > bounds.max_degree:
                    break
                if len(u) + len(v) > bounds.max_length:
                    continue
                U, V = Gf2Vector.basis(u), Gf2Vector.basis(v)
                lhs = structure.d(structure.mul(U, V))
                rhs = structure.mul(structure.d(U), V) + structure.mul(U, structure.d(V))
                res.record(lhs == rhs, f"({structure.format_key(u)}, {structure.format_key(v)})",
                           block=(len(u), len(v)))
    return res
