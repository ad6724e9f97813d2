"""Higher Fox pairing of Z^n with values in the Laurent ring K[t1^+-1, ..., tn^+-1].

Monomials are exponent vectors.  ``D_i`` is the 1-cocycle of Z^n with
``D_i(t_j) = delta_ij`` for the action through the i-th coordinate:
``D_i(ab) = D_i(a) + t_i^{a_i} D_i(b)``.  (For n >= 2 no map with these
values obeys ``D(ab) = D(a) + a D(b)``: commutativity would force
``(1 - t_2) D(t_1) = 0``.)

The type-(n, n) pairing is the cross product of the 1-cocycles ``D_k``
pulled back along the coordinate projections, computed by the
Alexander-Whitney formula in each slot:

    left  slot:  prod_k D_k(t_k^{e_kk}) t_k^{sum_{l<k} e_lk}
    right slot:  prod_k D_k(t_k^{f_kk}) t_k^{sum_{l>k} f_lk}

where ``e_pq`` is the exponent of ``t_q`` in the p-th entry of the first tuple
and ``f_pq`` likewise for the second.  Left evaluations are n-cocycles for
the left action, right evaluations for the right action.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .cohomology import Cochain, Group, Module, coboundary
from .group_ring import CoeffRing, RingElem
from .reports import CheckReport
from .words import Alphabet, AlphabetMismatch, format_key, parse_key, random_key

__all__ = [
    "HigherPairing",
    "check_higher_cocycle",
    "d_power",
    "higher_eta_Zn",
    "higher_pairing_Zn",
    "laurent_derivation",
    "parse_monomial_tuple",
    "printed_formula_Zn",
]

MAX_CHECK_DIM = 3


def d_power(i: int, ell: int, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> RingElem:
    """``D_i(t_i^ell)``: ``sum_{k=0}^{ell-1} t_i^k`` for ell >= 0, ``-sum_{k=1}^{-ell} t_i^-k`` otherwise."""
    n = alphabet.rank
    terms = {}
    if ell >= 0:
        ks, sign = range(0, ell), 1
    else:
        ks, sign = range(-1, ell - 1, -1), -1
    for k in ks:
        key = tuple(k if j == i - 1 else 0 for j in range(n))
        terms[key] = sign
    return RingElem(alphabet, coeff_ring, terms)


def laurent_derivation(i: int, x: RingElem) -> RingElem:
    """``D_i`` extended linearly over monomials: ``t^m -> D_i(t_i^{m_i})``."""
    A, K = x.alphabet, x.coeff_ring
    if not A.abelian:
        raise TypeError("laurent_derivation needs an abelian (Laurent) alphabet")
    if not 1 <= i <= A.rank:
        raise IndexError(i)
    total = RingElem.zero(A, K)
    for m, c in x.terms.items():
        total = total + d_power(i, m[i - 1], A, K).scale(c)
    return total


def _check_tuple(n: int, tup, name: str):
    if len(tup) != n:
        raise ValueError(f"{name} must have {n} entries, got {len(tup)}")
    for m in tup:
        if len(m) != n:
            raise ValueError(f"dimension mismatch: monomial {m} in {name} is not in Z^{n}")


def _slot_factor(n: int, tup, A: Alphabet, K: CoeffRing, side: str) -> RingElem:
    out = RingElem.one(A, K)
    for k in range(n):
        if side == "left":
            shift = sum(tup[l][k] for l in range(k))
        else:
            shift = sum(tup[l][k] for l in range(k + 1, n))
        key = tuple(shift if j == k else 0 for j in range(n))
        out = out * d_power(k + 1, tup[k][k], A, K).mul_key_left(key)
        if not out:
            break
    return out


def higher_eta_Zn(n: int, a: Sequence[tuple], b: Sequence[tuple], coeff: CoeffRing = CoeffRing.Q) -> RingElem:
    """Value on a pair of n-tuples of monomials (exponent vectors)."""
    _check_tuple(n, a, "a")
    _check_tuple(n, b, "b")
    A = Alphabet.laurent(n)
    return _slot_factor(n, a, A, coeff, "left") * _slot_factor(n, b, A, coeff, "right")


def printed_formula_Zn(n: int, a: Sequence[tuple], b: Sequence[tuple], coeff: CoeffRing = CoeffRing.Q) -> RingElem:
    """``prod_k D_k(t_k^{e_kk}) t_k^{-sum_{l>k} e_ll}`` times the same in f.

    Kept for comparison only: it uses diagonal exponents alone and its
    evaluations are not n-cocycles for n >= 2.
    """
    _check_tuple(n, a, "a")
    _check_tuple(n, b, "b")
    A = Alphabet.laurent(n)
    out = RingElem.one(A, coeff)
    for tup in (a, b):
        for k in range(n):
            shift = -sum(tup[l][l] for l in range(k + 1, n))
            key = tuple(shift if j == k else 0 for j in range(n))
            out = out * d_power(k + 1, tup[k][k], A, coeff).mul_key_left(key)
    return out


@dataclass(frozen=True)
class HigherPairing:
    n: int
    coeff_ring: CoeffRing
    on_keys: Callable
    name: str = "higher"

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.laurent(self.n)

    def __call__(self, xs: Sequence[RingElem], ys: Sequence[RingElem]) -> RingElem:
        """Multilinear extension to tuples of Laurent polynomials."""
        A, K = self.alphabet, self.coeff_ring
        for x in list(xs) + list(ys):
            if x.alphabet != A:
                raise AlphabetMismatch(f"entries must be Laurent polynomials in {self.n} variables")
        if len(xs) != self.n or len(ys) != self.n:
            raise ValueError(f"need two {self.n}-tuples")
        total = RingElem.zero(A, K)
        for mono_a, ca in _expand(xs):
            for mono_b, cb in _expand(ys):
                total = total + self.on_keys(mono_a, mono_b).scale(ca * cb)
        return total


def _expand(xs):
    combos = [((), 1)]
    for x in xs:
        combos = [(ms + (m,), c * k) for ms, c in combos for m, k in x.terms.items()]
    return combos


def higher_pairing_Zn(n: int, coeff: CoeffRing = CoeffRing.Q, printed: bool = False) -> HigherPairing:
    fn = printed_formula_Zn if printed else higher_eta_Zn
    return HigherPairing(n, coeff, lambda a, b: fn(n, a, b, coeff), "printed" if printed else "cross")


def check_higher_cocycle(hp: HigherPairing, samples: int = 50, seed: int = 0, max_len: int = 4) -> CheckReport:
    """Both slot evaluations are n-cocycles on sampled tuples.

    Each sample draws the fixed tuple of the other slot and an (n+1)-tuple;
    the left evaluation gets the left coboundary and the right evaluation
    the right coboundary.
    """
    n = hp.n
    if not 1 <= n <= MAX_CHECK_DIM:
        raise ValueError(f"cocycle checks support n <= {MAX_CHECK_DIM}")
    A, K = hp.alphabet, hp.coeff_ring
    G = Group.of(A)
    rng = random.Random(seed)
    name = f"higher-cocycle-n{n}"

    def fmt(tup):
        return ";".join(format_key(m, A) for m in tup)

    for _ in range(samples):
        other = tuple(random_key(rng, A, max_len) for _ in range(n))
        gs = tuple(random_key(rng, A, max_len) for _ in range(n + 1))
        left = coboundary(Cochain(n, G, Module("left", A, K), lambda *xs: hp.on_keys(xs, other)))
        if left(*gs):
            return CheckReport(name, False, samples, seed, f"left:b={fmt(other)},g={fmt(gs)}")
        right = coboundary(Cochain(n, G, Module("right", A, K), lambda *xs: hp.on_keys(other, xs)))
        if right(*gs):
            return CheckReport(name, False, samples, seed, f"right:a={fmt(other)},g={fmt(gs)}")
    return CheckReport(name, True, samples, seed)


def parse_monomial_tuple(text: str, n: int) -> tuple:
    """``"t1^3*t2^-1 ; t2^2"`` -> tuple of exponent vectors."""
    A = Alphabet.laurent(n)
    parts = [p.strip() for p in text.split(";")]
    return tuple(parse_key(p, A) for p in parts)
