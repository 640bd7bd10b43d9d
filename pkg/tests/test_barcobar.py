from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cobar_hga import examples
from cobar_hga.barcobar import (BarCoalgebra, CobarAlgebra, TruncationBounds, bar_coproduct, check_d_squared,
                                check_derivation, cobar_mul, comultiplicative_extension, enumerate_words,
                                multiplicative_extension)
from cobar_hga.errors import NotReduced, TruncationOverflow
from cobar_hga.gf2 import Gf2Vector, ZERO

V = Gf2Vector.basis


def brute_force_words(letters, bounds):
    out = []
    for n in range(bounds.max_length + 1):
        for word in product(letters, repeat=n):
            if sum(w for _, w in word) <= bounds.max_degree:
                out.append(tuple(l for l, _ in word))
    return out


@pytest.mark.parametrize("name", list(examples.EXAMPLES))
@pytest.mark.parametrize("bounds", [TruncationBounds(6, 3), TruncationBounds(10, 5), TruncationBounds(13, 4)])
def test_word_enumeration_matches_brute_force(name, bounds):
    cobar = CobarAlgebra(examples.get(name))
    words = cobar.words(bounds)
    assert len(words) == len(set(words))
    assert sorted(words) == sorted(brute_force_words(cobar.letters(), bounds))
    degrees = [cobar.degree(w) for w in words]
    assert degrees == sorted(degrees)


def test_enumeration_examples():
    ext = examples.exterior3()
    x = ext.index("x")
    assert CobarAlgebra(ext).words(TruncationBounds(4, 2)) == [(), (x,), (x, x)]
    assert CobarAlgebra(examples.trivial()).words(TruncationBounds(10, 5)) == [()]
    gamma = examples.divided_powers(2)
    x1, x2 = gamma.index("x1"), gamma.index("x2")
    cobar = CobarAlgebra(gamma)
    words = cobar.words(TruncationBounds(5, 5))
    assert set(words) == {(), (x1,), (x2,), (x1, x1)}
    assert [cobar.degree(w) for w in words] == [0, 2, 4, 5]


def test_enumeration_rejects_weightless_letters():
    with pytest.raises(NotReduced):
        enumerate_words([("a", 0)], TruncationBounds(3, 3))


def test_cobar_differential_examples():
    ext = examples.exterior3()
    assert CobarAlgebra(ext).d(V((ext.index("x"),))) == 0
    gamma = examples.dividedpow3()
    x1, x2 = gamma.index("x1"), gamma.index("x2")
    assert CobarAlgebra(gamma).d(V((x2,))) == V((x1, x1))
    acyc = examples.acyclic34()
    assert CobarAlgebra(acyc).d(V((acyc.index("y"),))) == V((acyc.index("x"),))


def test_cobar_product():
    a, b, c = (1,), (2,), (3,)
    assert cobar_mul(V(a), V(())) == V(a)
    assert cobar_mul(V(a), V(b)) == V((1, 2))
    assert cobar_mul(V(a) + V(b), V(c)) == V((1, 3)) + V((2, 3))


def test_bar_differential_examples():
    ext = examples.exterior3()
    omega = CobarAlgebra(ext)
    x = ext.index("x")
    bar = BarCoalgebra(omega)
    assert bar.d(V(((x,),))) == 0
    assert bar.d(V(((x,), (x,)))) == V(((x, x),))
    gamma = examples.dividedpow3()
    x1, x2 = gamma.index("x1"), gamma.index("x2")
    assert BarCoalgebra(CobarAlgebra(gamma)).d(V(((x2,),))) == V(((x1, x1),))


def test_bar_of_a_product_free_word():
    A = examples.acyclic34()
    x, y, xy = A.index("x"), A.index("y"), A.index("xy")
    bar = BarCoalgebra(A)
    assert bar.d(V((y,))) == V((x,))
    assert bar.d(V((x, y))) == V((x, x)) + V((xy,))
    assert bar.degree((x, y)) == 9


def test_bar_needs_a_reduced_algebra():
    with pytest.raises(NotReduced):
        BarCoalgebra(examples.get("exterior3-mutant-connected"))


def test_bar_coproduct_is_deconcatenation():
    a, b = (1,), (2,)
    assert bar_coproduct(V(())) == V(((), ()))
    assert bar_coproduct(V((a,))) == Gf2Vector({((), (a,)), ((a,), ())})
    assert bar_coproduct(V((a, b))) == Gf2Vector({((), (a, b)), ((a,), (b,)), ((a, b), ())})


def test_multiplicative_extension():
    A = examples.acyclic34()
    x, y, xy = A.index("x"), A.index("y"), A.index("xy")
    f = multiplicative_extension(V, A)
    assert f(V(())) == V(A.unit)
    assert f(V((x,))) == V(x)
    assert f(V((x, y))) == V(xy)
    assert f(V((x, x))) == 0


def test_comultiplicative_extension():
    gamma = examples.dividedpow3()
    x1, x2 = gamma.index("x1"), gamma.index("x2")
    beta = lambda c: ZERO if c == gamma.unit else V(c)
    g = comultiplicative_extension(beta, gamma, 4)
    assert g(V(gamma.unit)) == V(())
    assert g(V(x1)) == V((x1,))
    assert g(V(x2)) == V((x2,)) + V((x1, x1))
    with pytest.raises(TruncationOverflow):
        comultiplicative_extension(beta, gamma, 2)(V(gamma.index("x3")))


@pytest.mark.parametrize("name", list(examples.EXAMPLES))
def test_cobar_d_squared_and_derivation(name):
    cobar = CobarAlgebra(examples.get(name))
    bounds = TruncationBounds(10, 5)
    assert check_d_squared(cobar, bounds).passed
    assert check_derivation(cobar, bounds).passed


@pytest.mark.parametrize("name", ["exterior3", "dividedpow3", "acyclic34"])
def test_bar_d_squared(name):
    bar = BarCoalgebra(examples.get(name))
    assert check_d_squared(bar, TruncationBounds(24, 4)).passed


def test_d_squared_detects_a_broken_coalgebra():
    cobar = CobarAlgebra(examples.get("dividedpow3-mutant-coassoc"))
    res = check_d_squared(cobar, TruncationBounds(10, 4))
    assert not res.passed
    assert res.counterexample == "[x3]"


def test_derivation_detects_a_differential_that_skips_letters():
    class FirstLetterOnly(CobarAlgebra):
        def d_basis(self, word):
            if not word:
                return ZERO
            return Gf2Vector(t + word[1:] for t in self.letter_differential(word[0]))

    res = check_derivation(FirstLetterOnly(examples.dividedpow3()), TruncationBounds(10, 4))
    assert not res.passed
    assert res.counterexample == "([x1], [x2])"


@settings(max_examples=60)
@given(st.data())
def test_cobar_d_is_a_derivation_on_random_sums(data):
    cobar = CobarAlgebra(examples.dividedpow3())
    words = cobar.words(TruncationBounds(12, 3))
    pick = st.lists(st.sampled_from(words), max_size=4).map(Gf2Vector.from_terms)
    x, y = data.draw(pick), data.draw(pick)
    assert cobar.d(cobar.mul(x, y)) == cobar.mul(cobar.d(x), y) + cobar.mul(x, cobar.d(y))
    assert cobar.d(cobar.d(x)) == 0
