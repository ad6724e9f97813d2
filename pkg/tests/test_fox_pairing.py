import random
from fractions import Fraction

import pytest

from foxcalc.fox_calculus import Derivation, Side
from foxcalc.fox_pairing import (
    BilinearEvaluator,
    FoxPairing,
    PairingFormatError,
    check_aug_intersection,
    check_axioms,
    check_boundary_condition,
    check_skew_identity,
    deserialize_pairing,
    evaluate,
    inner_pairing,
    intersection_number,
    pairing_from_derivations,
    serialize_pairing,
    transpose,
    transpose_evaluator,
)
from foxcalc.group_ring import CoeffRing, RingElem
from foxcalc.words import Alphabet, invert_key, parse_key, random_key
from oracles import pairing_by_laws

AB = Alphabet.letters(2)
Q, F2 = CoeffRing.Q, CoeffRing.F2
HALF = Fraction(1, 2)


def P(text, K=Q):
    return RingElem.parse(text, AB, K)


def unit(K=Q):
    return FoxPairing.from_entries(AB, K, {(1, 2): "1"})


def literal_transpose(p):
    """The variant (g, h) -> g bar(eta(h^-1, g^-1)) h, kept as a negative control."""
    A, K = p.alphabet, p.coeff_ring

    def fn(u, v):
        mid = p.on_keys(invert_key(v), invert_key(u)).involute()
        return RingElem.from_key(u, A, K) * mid * RingElem.from_key(v, A, K)

    return BilinearEvaluator(A, K, fn, "literal-transpose")


def test_evaluate_examples():
    p = unit()
    assert evaluate(p, "a^2", "b") == P("1 + a")
    assert evaluate(p, "a", "b^2") == P("b + 1")
    assert evaluate(p, "b", "a") == 0
    assert p("a", "b") == 1


@pytest.mark.parametrize("K", [Q, F2])
def test_matches_law_recursion_oracle(K):
    rng = random.Random(11)
    p = FoxPairing.random(rng, AB, K)
    mat = {(i, j): p.entry(i, j).terms for i in (1, 2) for j in (1, 2)}
    mod = 2 if K is F2 else 0
    for _ in range(150):
        a, b = random_key(rng, AB, 6), random_key(rng, AB, 6)
        assert p.on_keys(a, b).terms == pairing_by_laws(mat, a, b, mod)


@pytest.mark.parametrize("K", [Q, F2])
def test_axioms_hold_for_random_matrices(K):
    p = FoxPairing.random(random.Random(3), Alphabet.letters(3), K)
    assert check_axioms(p, 200, seed=1)


def test_corrupted_evaluator_fails_axioms():
    p = unit()
    bad = BilinearEvaluator(AB, Q, lambda u, v: p.on_keys(u, v) + RingElem.one(AB), "bad")
    rep = check_axioms(bad, 50, seed=0)
    assert not rep and rep.counterexample


def test_transpose_example_and_involution():
    p = unit()
    pt = transpose(p)
    assert pt("B", "A") == 1
    assert transpose_evaluator(p)("B", "A") == 1
    assert transpose(pt).same_matrix(p)
    assert check_axioms(pt, 200, seed=2)
    rng = random.Random(4)
    q = FoxPairing.random(rng, AB)
    direct = transpose_evaluator(q)
    mat = transpose(q)
    for _ in range(50):
        g, h = random_key(rng, AB, 5), random_key(rng, AB, 5)
        assert direct.on_keys(g, h) == mat.on_keys(g, h)


def test_literal_transpose_is_not_a_pairing():
    lit = literal_transpose(unit())
    assert lit("B", "A") == P("B*A")
    assert not check_axioms(lit, 100, seed=0)


def test_inner_pairing():
    p = inner_pairing(RingElem.one(AB))
    assert p("a", "b") == P("1 - a - b + a*b")
    assert p("a*b", "A") == P("1 - a*b - A + a*b*A")
    assert check_axioms(p, 200, seed=0)
    assert check_boundary_condition(p, "a", containment=True, samples=10)
    assert not check_aug_intersection(p, 1)


def test_boundary_condition_modes():
    p = inner_pairing(RingElem.one(AB))
    assert check_boundary_condition(p, "a", P("1 - a"), samples=20)
    assert not check_boundary_condition(p, "a", normalized=True, samples=20)
    with pytest.raises(ValueError):
        check_boundary_condition(p, "a")
    with pytest.raises(ValueError):
        check_boundary_condition(p, "a + b", normalized=True)


def test_skew_identity_checker():
    half = inner_pairing(RingElem.one(AB)).scale(HALF)
    assert check_skew_identity(half)
    assert not check_skew_identity(FoxPairing.zero(AB))
    q = FoxPairing.random(random.Random(9), AB)
    inner = inner_pairing(RingElem.one(AB))
    sym = q - (q + transpose(q) - inner).scale(HALF)
    assert check_skew_identity(sym)
    assert not check_skew_identity(q)


def test_derivation_product():
    dl = Derivation.from_strings(Side.LEFT, ["1", "0"], AB)
    dr = Derivation.from_strings(Side.RIGHT, ["0", "1"], AB)
    p = pairing_from_derivations(dl, dr)
    assert p.same_matrix(unit())
    with pytest.raises(ValueError):
        pairing_from_derivations(dr, dl)


def test_intersection_number():
    a, b = parse_key("a", AB), parse_key("b", AB)
    assert intersection_number(a, b, 1) == 1
    assert intersection_number(b, a, 1) == -1
    assert intersection_number(parse_key("a^2*b*A", AB), b, 1) == 1
    assert not check_aug_intersection(unit(), 1)
    u = unit()
    sym = u - (u + transpose(u) - inner_pairing(RingElem.one(AB))).scale(HALF)
    rep = check_aug_intersection(sym, 1)
    assert rep and rep.details["lambda"] == HALF


def test_file_roundtrip():
    p = FoxPairing.random(random.Random(1), AB).with_metadata("note one")
    text = serialize_pairing(p)
    q = deserialize_pairing(text)
    assert q.same_matrix(p) and q.metadata == "note one"
    assert serialize_pairing(q) == text
    f = deserialize_pairing(serialize_pairing(unit(F2)))
    assert f.coeff_ring is F2


@pytest.mark.parametrize(
    "text, line",
    [
        ("nope\n", 1),
        ("foxpairing v1\nalphabet x\ncoeff Q\n", 2),
        ("foxpairing v1\nalphabet 2 a b\ncoeff R\n", 3),
        ("foxpairing v1\nalphabet 2 a b\ncoeff Q\neta a a = 1\neta a c = 1\n", 5),
        ("foxpairing v1\nalphabet 2 a b\ncoeff Q\neta a a = 1\neta a a = 2\n", 5),
        ("foxpairing v1\nalphabet 2 a b\ncoeff Q\neta a b = a**b\n", 4),
        ("foxpairing v1\nalphabet 2 a b\ncoeff Q\nbogus\n", 4),
    ],
)
def test_malformed_files(text, line):
    with pytest.raises(PairingFormatError) as ei:
        deserialize_pairing(text)
    assert ei.value.line == line


def test_zero_pairing_cases():
    z = FoxPairing.zero(AB)
    assert transpose(z).is_zero()
    assert inner_pairing(RingElem.zero(AB)).is_zero()
    assert check_boundary_condition(z, "a*b*A*B", RingElem.zero(AB), samples=20)
    assert not check_boundary_condition(z, "a*b*A*B", normalized=True, samples=20)
    dl = Derivation.from_strings(Side.LEFT, ["0", "0"], AB)
    dr = Derivation.from_strings(Side.RIGHT, ["a", "1 - b"], AB)
    assert pairing_from_derivations(dl, dr).is_zero()


def test_derivation_product_matches_both_paths():
    rng = random.Random(12)
    dl = Derivation.random(rng, Side.LEFT, AB)
    dr = Derivation.random(rng, Side.RIGHT, AB)
    p = pairing_from_derivations(dl, dr)
    for _ in range(50):
        a, b = random_key(rng, AB, 6), random_key(rng, AB, 6)
        assert p.on_keys(a, b) == dl(a) * dr(b)


def test_transpose_double_on_samples():
    rng = random.Random(13)
    p = FoxPairing.random(rng, AB)
    tt = transpose_evaluator(transpose_evaluator(p))
    for _ in range(100):
        g, h = random_key(rng, AB, 6), random_key(rng, AB, 6)
        assert tt.on_keys(g, h) == p.on_keys(g, h)
