import random

import pytest

from foxcalc.fox_calculus import (
    Derivation,
    Side,
    coboundary_derivation,
    extend_derivation,
    extend_recursive,
    is_derivation,
    left_fox,
    left_fox_derivative,
    right_fox,
    right_fox_derivative,
)
from foxcalc.group_ring import CoeffRing, RingElem
from foxcalc.words import Alphabet, parse_key, random_key
from oracles import fox_by_recursion

AB = Alphabet.letters(2)
Q, F2 = CoeffRing.Q, CoeffRing.F2


def P(text, K=Q):
    return RingElem.parse(text, AB, K)


def dl(w, i):
    return left_fox_derivative(parse_key(w, AB), i, AB)


def dr(w, j):
    return right_fox_derivative(parse_key(w, AB), j, AB)


def test_left_examples():
    assert dl("a*b", 1) == P("1")
    assert dl("A", 1) == P("-A")
    assert dl("a*b*A*B", 1) == P("1 - a*b*A")
    assert dl("a*b*A*B", 2) == P("a - a*b*A*B")


def test_right_examples():
    assert dr("b^2", 2) == P("b + 1")
    assert dr("B", 2) == P("-B")
    assert dr("a*b", 1) == P("b")


def test_left_matches_letter_recursion():
    rng = random.Random(1)
    for _ in range(200):
        w = random_key(rng, AB, 9)
        for i in (1, 2):
            assert left_fox_derivative(w, i, AB).terms == fox_by_recursion(w, i)


def test_fundamental_formulas():
    rng = random.Random(2)
    one = RingElem.one(AB)
    for _ in range(100):
        w = RingElem.from_key(random_key(rng, AB, 9), AB)
        left = sum((left_fox(w, i) * (RingElem.generator(i, AB) - one) for i in (1, 2)), RingElem.zero(AB))
        right = sum(((RingElem.generator(j, AB) - one) * right_fox(w, j) for j in (1, 2)), RingElem.zero(AB))
        assert left == w - one
        assert right == w - one


def test_extension_examples():
    d = Derivation.from_strings(Side.LEFT, ["1", "0"], AB)
    assert d(parse_key("a*b", AB)) == 1
    assert d(()) == 0
    shift = Derivation.from_strings(Side.LEFT, ["a - 1", "b - 1"], AB)
    rng = random.Random(3)
    for _ in range(100):
        w = random_key(rng, AB, 8)
        assert shift(w) == RingElem.from_key(w, AB) - 1


def test_coboundary_derivations():
    left = coboundary_derivation(RingElem.one(AB), Side.LEFT)
    assert left(parse_key("a*b", AB)) == P("1 - a*b")
    right = coboundary_derivation(RingElem.one(AB), Side.RIGHT)
    assert right(parse_key("a*b", AB)) == P("1 - a*b")
    zero = coboundary_derivation(RingElem.zero(AB), Side.LEFT)
    assert all(not v for v in zero.gen_values)
    rng = random.Random(4)
    for side in Side:
        c = RingElem.random(rng, AB)
        d = coboundary_derivation(c, side)
        assert is_derivation(d, 100, seed=5)
        g = RingElem.from_key(random_key(rng, AB, 6), AB)
        closed = (1 - g) * c if side is Side.LEFT else c * (1 - g)
        assert d(g) == closed


@pytest.mark.parametrize("side", list(Side))
@pytest.mark.parametrize("K", [Q, F2])
def test_random_tables_pass(side, K):
    d = Derivation.random(random.Random(6), side, AB, K)
    assert is_derivation(d, 200, seed=0)


@pytest.mark.parametrize("side", list(Side))
def test_two_extension_engines_agree(side):
    rng = random.Random(7)
    d = Derivation.random(rng, side, AB)
    for _ in range(100):
        x = RingElem.random(rng, AB, max_len=7)
        assert extend_derivation(d, x) == extend_recursive(d, x)


def test_corrupted_engine_fails():
    def broken(d, x):
        return RingElem.generator(1, AB) * extend_derivation(d, x)

    d = Derivation.from_strings(Side.LEFT, ["1", "b"], AB)
    rep = is_derivation(d, 200, seed=0, extend=broken)
    assert not rep
    assert rep.line().startswith("FAIL left-derivation samples=200 seed=0 counterexample=u=")


def test_abelian_rejected():
    with pytest.raises(TypeError):
        left_fox_derivative((1, 0), 1, Alphabet.laurent(2))
