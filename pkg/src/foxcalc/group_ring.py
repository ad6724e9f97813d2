"""Exact sparse arithmetic in K[G] for K in {Q, Z, Z/2}.

G is either a free group or Z^n, as described by an :class:`Alphabet`.
"""

from __future__ import annotations

import enum
import random
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .kernels import convolve
from .words import (
    Alphabet,
    AlphabetMismatch,
    Word,
    format_key,
    invert_key,
    parse_key,
    random_key,
    shortlex_key,
)

__all__ = [
    "CoeffRing",
    "RingElem",
    "RingMismatch",
    "add",
    "augment",
    "involute",
    "multiply",
    "scale",
]

Coefficient = Union[int, Fraction]


class RingMismatch(ValueError):
    pass


class CoeffRing(enum.Enum):
    Q = "Q"
    Z = "Z"
    F2 = "F2"

    @classmethod
    def parse(cls, tag: str) -> "CoeffRing":
        try:
            return {"Q": cls.Q, "Z": cls.Z, "F2": cls.F2, "Z2": cls.F2}[tag.strip()]
        except KeyError:
            raise ValueError(f"unknown coefficient ring {tag!r} (use Q, Z or F2)") from None

    @property
    def is_field(self) -> bool:
        return self is not CoeffRing.Z

    @property
    def modulus(self) -> int:
        return 2 if self is CoeffRing.F2 else 0

    def coerce(self, c) -> Coefficient:
        if isinstance(c, str):
            c = Fraction(c)
        if self is CoeffRing.F2:
            c = Fraction(c)
            if c.denominator % 2 == 0:
                raise ValueError(f"{c} has no image in Z/2")
            return (c.numerator * pow(c.denominator, -1, 2)) % 2
        if self is CoeffRing.Z:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            if int(c) != c:
                raise ValueError(f"{c} is not an integer")
            return int(c)
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c

    def normalize(self, c) -> Coefficient:
        """Canonical form of an already-valid coefficient."""
        if self is CoeffRing.F2:
            return c % 2
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inverse(self, c) -> Coefficient:
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self is CoeffRing.F2:
            return 1
        if self is CoeffRing.Z:
            if c in (1, -1):
                return c
            raise ValueError(f"{c} is not a unit in Z")
        return self.normalize(Fraction(1) / c)


def _check(x: "RingElem", y: "RingElem"):
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch("ring elements over different alphabets")
    if x.coeff_ring is not y.coeff_ring:
        raise RingMismatch(f"coefficient rings differ: {x.coeff_ring.value} vs {y.coeff_ring.value}")


class RingElem:
    """Finitely supported sum of group elements with exact coefficients.

    ``terms`` maps keys (see :mod:`foxcalc.words`) to nonzero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("alphabet", "coeff_ring", "terms", "_hash")

    def __init__(
        self,
        alphabet: Alphabet,
        coeff_ring: CoeffRing = CoeffRing.Q,
        terms: Mapping[tuple, Coefficient] | None = None,
        *,
        trusted: bool = False,
    ):
        self.alphabet = alphabet
        self.coeff_ring = coeff_ring
        if trusted or not terms:
            self.terms = dict(terms) if terms else {}
        else:
            norm = {}
            for k, c in terms.items():
                c = coeff_ring.coerce(c)
                if c:
                    norm[k] = c
            self.terms = norm
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> "RingElem":
        return cls(alphabet, coeff_ring, trusted=True)

    @classmethod
    def one(cls, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> "RingElem":
        return cls(alphabet, coeff_ring, {alphabet.identity: 1}, trusted=True)

    @classmethod
    def from_key(cls, key: tuple, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q, coeff=1):
        return cls(alphabet, coeff_ring, {key: coeff})

    @classmethod
    def from_word(cls, w: Word, coeff_ring: CoeffRing = CoeffRing.Q, coeff=1) -> "RingElem":
        return cls(w.alphabet, coeff_ring, {w.key: coeff})

    @classmethod
    def generator(cls, i: int, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q):
        return cls(alphabet, coeff_ring, {alphabet.generator(i): 1}, trusted=True)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> "RingElem":
        return parse_ring_elem(text, alphabet, coeff_ring)

    @classmethod
    def random(
        cls,
        rng: random.Random,
        alphabet: Alphabet,
        coeff_ring: CoeffRing = CoeffRing.Q,
        max_terms: int = 4,
        max_len: int = 6,
    ) -> "RingElem":
        terms: dict[tuple, Coefficient] = {}
        for _ in range(rng.randint(1, max_terms)):
            k = random_key(rng, alphabet, max_len)
            if coeff_ring is CoeffRing.Q and rng.random() < 0.3:
                c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            else:
                c = rng.randint(-5, 5)
            terms[k] = terms.get(k, 0) + c
        return cls(alphabet, coeff_ring, terms)

    def _new(self, terms) -> "RingElem":
        return RingElem(self.alphabet, self.coeff_ring, terms, trusted=True)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RingElem):
            other = self._lift(other)
        _check(self, other)
        out = dict(self.terms)
        norm = self.coeff_ring.normalize
        for k, c in other.terms.items():
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.coeff_ring.normalize
        return self._new({k: norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, RingElem):
            other = self._lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, RingElem):
            _check(self, other)
            if not self.terms or not other.terms:
                return self._new({})
            return self._new(
                convolve(self.terms, other.terms, self.alphabet.abelian, self.coeff_ring.modulus)
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, k) -> "RingElem":
        k = self.coeff_ring.coerce(k)
        if not k:
            return self._new({})
        norm = self.coeff_ring.normalize
        out = {}
        for w, c in self.terms.items():
            v = norm(k * c)
            if v:
                out[w] = v
        return self._new(out)

    def _lift(self, c) -> "RingElem":
        return RingElem(self.alphabet, self.coeff_ring, {self.alphabet.identity: c})

    def mul_key_left(self, key: tuple) -> "RingElem":
        """``g * self`` for a group element key ``g``."""
        mul = self.alphabet.mul
        return self._new({mul(key, w): c for w, c in self.terms.items()})

    def mul_key_right(self, key: tuple) -> "RingElem":
        """``self * g`` for a group element key ``g``."""
        mul = self.alphabet.mul
        return self._new({mul(w, key): c for w, c in self.terms.items()})

    def augment(self) -> Coefficient:
        return self.coeff_ring.normalize(sum(self.terms.values(), 0))

    def involute(self) -> "RingElem":
        ab = self.alphabet.abelian
        return self._new({invert_key(w, ab): c for w, c in self.terms.items()})

    def map_keys(self, key_map) -> "RingElem":
        """Push forward along a map of group elements ``key_map(key) -> key``."""
        out: dict[tuple, Coefficient] = {}
        norm = self.coeff_ring.normalize
        for w, c in self.terms.items():
            k = key_map(w)
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[tuple, Coefficient]]:
        ab = self.alphabet.abelian
        return sorted(self.terms.items(), key=lambda kv: shortlex_key(kv[0], ab))

    def coefficient(self, key: tuple) -> Coefficient:
        return self.terms.get(key, 0)

    def support_length(self) -> int:
        if not self.terms:
            return 0
        if self.alphabet.abelian:
            return max(sum(abs(e) for e in k) for k in self.terms)
        return max(len(k) for k in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElem):
            return (
                self.alphabet == other.alphabet
                and self.coeff_ring is other.coeff_ring
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, self.coeff_ring, frozenset(self.terms.items())))
        return self._hash

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return format_ring_elem(self)

    def __repr__(self) -> str:
        return f"RingElem({str(self)!r}, {self.coeff_ring.value})"


def add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def scale(k, x: RingElem) -> RingElem:
    return x.scale(k)


def multiply(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def augment(x: RingElem) -> Coefficient:
    return x.augment()


def involute(x: RingElem) -> RingElem:
    return x.involute()


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_ring_elem(x: RingElem) -> str:
    """Canonical print: shortlex order, unit coefficients omitted, e.g. ``1 - a*b^-1 + 3/2 b``."""
    if not x.terms:
        return "0"
    parts = []
    for i, (k, c) in enumerate(x.sorted_terms()):
        neg = c < 0
        mag = -c if neg else c
        word = format_key(k, x.alphabet)
        if k == x.alphabet.identity:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = word
        else:
            body = f"{_fmt_coeff(mag)} {word}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


_COEFF_RE = re.compile(r"([0-9]+(?:/[0-9]+)?)(?:\s*\*\s*|\s+|$)")
_CARET_RE = re.compile(r"\s*\^\s*")
_SIGN_RE = re.compile(r"(?<!\^)\s*([+-])\s*")


def parse_ring_elem(text: str, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> RingElem:
    """Inverse of :func:`format_ring_elem`; also accepts ``2*a`` and a bare ``0``."""
    s = _CARET_RE.sub("^", text.strip())
    if s == "0":
        return RingElem.zero(alphabet, coeff_ring)
    pieces = _SIGN_RE.split(s)
    # pieces alternate: term, sign, term, sign, term ...
    if pieces[0].strip() == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ValueError(f"dangling sign in ring element {text!r}")
    terms: dict[tuple, Coefficient] = {}
    for sign, chunk in zip(pieces[0::2], pieces[1::2]):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in ring element {text!r}")
        coeff: Coefficient = 1
        m = _COEFF_RE.match(chunk)
        if m:
            coeff = Fraction(m.group(1))
            chunk = chunk[m.end():].strip()
        key = parse_key(chunk, alphabet) if chunk else alphabet.identity
        c = coeff_ring.coerce(-coeff if sign == "-" else coeff)
        terms[key] = terms.get(key, 0) + c
    return RingElem(alphabet, coeff_ring, terms)
