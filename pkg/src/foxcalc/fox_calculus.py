"""Left and right Fox derivatives and derivations of free group rings.

Conventions (``aug(g) = 1`` on group elements):

* left derivation:  ``D(uv) = D(u) + u D(v)``
* right derivation: ``D(uv) = D(u) v + D(v)``

A left derivation is determined by its generator values through
``D(w) = sum_i (dw/dx_i) D(x_i)``, a right one through
``D(w) = sum_j D(x_j) (d^r w/dx_j)``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .group_ring import CoeffRing, RingElem, RingMismatch
from .kernels import fox_left, fox_right
from .reports import CheckReport
from .words import Alphabet, AlphabetMismatch, Word, format_key, random_key

__all__ = [
    "Derivation",
    "Side",
    "coboundary_derivation",
    "extend_derivation",
    "extend_recursive",
    "is_derivation",
    "left_fox_derivative",
    "right_fox_derivative",
]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _require_free(alphabet: Alphabet):
    if alphabet.abelian:
        raise TypeError("Fox derivatives need a free alphabet; use higher.laurent_derivation for Z^n")


def _key_of(w) -> tuple:
    return w.key if isinstance(w, Word) else tuple(w)


def left_fox_derivative(w, i: int, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> RingElem:
    """``dw/dx_i`` in prefix form; ``w`` is a Word or a key."""
    _require_free(alphabet)
    return RingElem(alphabet, coeff_ring, fox_left(_key_of(w), i))


def right_fox_derivative(w, j: int, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> RingElem:
    """Suffix-form derivative: any right derivation R has R(w) = sum_j R(x_j) (d^r w/dx_j)."""
    _require_free(alphabet)
    return RingElem(alphabet, coeff_ring, fox_right(_key_of(w), j))


def _linear_fox(x: RingElem, i: int, kernel) -> RingElem:
    out: dict = {}
    norm = x.coeff_ring.normalize
    for w, c in x.terms.items():
        for k, s in kernel(w, i).items():
            v = norm(out.get(k, 0) + c * s)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return RingElem(x.alphabet, x.coeff_ring, out, trusted=True)


def left_fox(x: RingElem, i: int) -> RingElem:
    """Linear extension of :func:`left_fox_derivative` to ring elements."""
    _require_free(x.alphabet)
    return _linear_fox(x, i, fox_left)


def right_fox(x: RingElem, j: int) -> RingElem:
    """Linear extension of :func:`right_fox_derivative` to ring elements."""
    _require_free(x.alphabet)
    return _linear_fox(x, j, fox_right)


@dataclass(frozen=True)
class Derivation:
    """A derivation of K[F] given by its values on the generators."""

    side: Side
    alphabet: Alphabet
    gen_values: tuple[RingElem, ...]
    coeff_ring: CoeffRing = CoeffRing.Q

    def __post_init__(self):
        object.__setattr__(self, "gen_values", tuple(self.gen_values))
        if len(self.gen_values) != self.alphabet.rank:
            raise ValueError(f"need {self.alphabet.rank} generator values, got {len(self.gen_values)}")
        for v in self.gen_values:
            if v.alphabet != self.alphabet:
                raise AlphabetMismatch("generator value over a different alphabet")
            if v.coeff_ring is not self.coeff_ring:
                raise RingMismatch("generator value over a different coefficient ring")

    @classmethod
    def from_strings(cls, side: Side, values: Sequence[str], alphabet: Alphabet, coeff_ring=CoeffRing.Q):
        return cls(side, alphabet, tuple(RingElem.parse(v, alphabet, coeff_ring) for v in values), coeff_ring)

    @classmethod
    def random(cls, rng: random.Random, side: Side, alphabet: Alphabet, coeff_ring=CoeffRing.Q,
               max_terms: int = 3, max_len: int = 3) -> "Derivation":
        vals = tuple(RingElem.random(rng, alphabet, coeff_ring, max_terms, max_len) for _ in range(alphabet.rank))
        return cls(side, alphabet, vals, coeff_ring)

    def __call__(self, x) -> RingElem:
        return extend_derivation(self, x)

    def __str__(self) -> str:
        vals = ", ".join(f"{nm} -> {v}" for nm, v in zip(self.alphabet.names, self.gen_values))
        return f"{self.side.value} derivation [{vals}]"


def _as_elem(x, alphabet: Alphabet, coeff_ring: CoeffRing) -> RingElem:
    if isinstance(x, RingElem):
        if x.alphabet != alphabet:
            raise AlphabetMismatch("argument over a different alphabet")
        if x.coeff_ring is not coeff_ring:
            raise RingMismatch("argument over a different coefficient ring")
        return x
    if isinstance(x, Word):
        return RingElem.from_word(x, coeff_ring)
    return RingElem.from_key(tuple(x), alphabet, coeff_ring)


def extend_derivation(d: Derivation, x) -> RingElem:
    """Value of ``d`` on a ring element (or Word/key) via the Fox-derivative formula."""
    _require_free(d.alphabet)
    x = _as_elem(x, d.alphabet, d.coeff_ring)
    total = RingElem.zero(d.alphabet, d.coeff_ring)
    for i, val in enumerate(d.gen_values, start=1):
        if not val:
            continue
        if d.side is Side.LEFT:
            total = total + left_fox(x, i) * val
        else:
            total = total + val * right_fox(x, i)
    return total


def extend_recursive(d: Derivation, x) -> RingElem:
    """Same value as :func:`extend_derivation`, computed letter by letter from the law.

    Kept as an independent oracle for the Fox-derivative path.
    """
    _require_free(d.alphabet)
    x = _as_elem(x, d.alphabet, d.coeff_ring)
    A, K = d.alphabet, d.coeff_ring
    inv_vals = {}
    for i, v in enumerate(d.gen_values, start=1):
        # 0 = D(x x^-1) forces the value on x^-1
        inv_vals[i] = -v.mul_key_left((-i,)) if d.side is Side.LEFT else -v.mul_key_right((-i,))
    total = RingElem.zero(A, K)
    for w, c in x.terms.items():
        acc = RingElem.zero(A, K)
        prefix: tuple = ()
        for letter in w:
            val = d.gen_values[letter - 1] if letter > 0 else inv_vals[-letter]
            if d.side is Side.LEFT:
                # D(p y) = D(p) + p D(y)
                acc = acc + val.mul_key_left(prefix)
            else:
                # D(p y) = D(p) y + D(y)
                acc = acc.mul_key_right((letter,)) + val
            prefix = A.mul(prefix, (letter,))
        total = total + acc.scale(c)
    return total


def coboundary_derivation(c: RingElem, side: Side) -> Derivation:
    """Inner derivation: ``g -> (1-g) c`` (left) or ``g -> c (1-g)`` (right)."""
    A, K = c.alphabet, c.coeff_ring
    one = RingElem.one(A, K)
    vals = []
    for i in range(1, A.rank + 1):
        t = one - RingElem.generator(i, A, K)
        vals.append(t * c if side is Side.LEFT else c * t)
    return Derivation(side, A, tuple(vals), K)


def is_derivation(
    d: Derivation,
    samples: int = 200,
    seed: int = 0,
    max_len: int = 6,
    extend: Callable[[Derivation, RingElem], RingElem] | None = None,
) -> CheckReport:
    """Check the side law of ``d`` on seeded random word pairs.

    ``extend`` swaps in another extension engine (used for negative controls).
    """
    ext = extend or extend_derivation
    A, K = d.alphabet, d.coeff_ring
    rng = random.Random(seed)
    name = f"{d.side.value}-derivation"
    for _ in range(samples):
        u = random_key(rng, A, max_len)
        v = random_key(rng, A, max_len)
        U = RingElem.from_key(u, A, K)
        V = RingElem.from_key(v, A, K)
        lhs = ext(d, RingElem.from_key(A.mul(u, v), A, K))
        if d.side is Side.LEFT:
            rhs = ext(d, U) + U * ext(d, V)
        else:
            rhs = ext(d, U) * V + ext(d, V)
        if lhs != rhs:
            ce = f"u={format_key(u, A)},v={format_key(v, A)}"
            return CheckReport(name, False, samples, seed, ce)
    return CheckReport(name, True, samples, seed)
