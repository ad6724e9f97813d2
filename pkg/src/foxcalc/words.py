"""Reduced words in free groups and exponent vectors for Z^n.

A free word is stored as a tuple of nonzero ints: ``k`` stands for the
generator ``x_k`` (1-based) and ``-k`` for its inverse.  An abelian word is
its exponent vector.  Both forms are called *keys* and are what ring
elements index by; :class:`Word` wraps a key together with its alphabet.
"""

from __future__ import annotations

import random
import re
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .kernels import mul_abelian, mul_words, reduce_word

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "Word",
    "WordSyntaxError",
    "format_key",
    "invert_key",
    "invert_word",
    "parse_key",
    "parse_word",
    "random_key",
    "reduce",
    "shortlex_compare",
    "shortlex_key",
]

MAX_EXPONENT = 2**31 - 1
# free words are expanded letter by letter
MAX_FREE_EXPONENT = 2**16
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?[0-9]+")


class WordSyntaxError(ValueError):
    """Raised on malformed word text; ``offset`` is a byte offset into it."""

    def __init__(self, message: str, text: str = "", offset: int = 0):
        super().__init__(f"{message} at offset {offset}: {text!r}")
        self.text = text
        self.offset = offset


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Generator set of a free group F_r (or of Z^r when ``abelian``)."""

    rank: int
    names: tuple[str, ...] = ()
    abelian: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("alphabet rank must be >= 1")
        if not self.names:
            prefix = "t" if self.abelian else "x"
            object.__setattr__(
                self, "names", tuple(f"{prefix}{i}" for i in range(1, self.rank + 1))
            )
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) != self.rank:
            raise ValueError(f"expected {self.rank} names, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"generator names not distinct: {names}")
        for nm in names:
            if not _NAME_RE.fullmatch(nm):
                raise ValueError(f"invalid generator name {nm!r}")
            if len(nm) == 1 and nm.isupper():
                raise ValueError(f"single uppercase names are reserved for inverses: {nm!r}")

    @classmethod
    def free(cls, rank: int, names: Sequence[str] | None = None) -> "Alphabet":
        return cls(rank, tuple(names or ()), False)

    @classmethod
    def letters(cls, rank: int) -> "Alphabet":
        """Free alphabet named a, b, c, ..."""
        if rank > 26:
            raise ValueError("letter alphabet limited to 26 generators")
        return cls(rank, tuple(string.ascii_lowercase[:rank]), False)

    @classmethod
    def laurent(cls, n: int) -> "Alphabet":
        return cls(n, (), True)

    @cached_property
    def _lookup(self) -> dict[str, int]:
        # explicit names win over the a..z / x1..xr aliases
        table: dict[str, int] = {}
        if self.rank <= 26:
            for i in range(self.rank):
                table[string.ascii_lowercase[i]] = i + 1
                if not self.abelian:
                    table[string.ascii_uppercase[i]] = -(i + 1)
        prefix = "t" if self.abelian else "x"
        for i in range(self.rank):
            table[f"{prefix}{i + 1}"] = i + 1
        for i, nm in enumerate(self.names):
            table[nm] = i + 1
            if not self.abelian and len(nm) == 1 and nm.islower():
                table[nm.upper()] = -(i + 1)
        return table

    def index_of(self, name: str) -> int:
        """Signed 1-based index of a generator name (negative for inverse aliases)."""
        try:
            return self._lookup[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    @property
    def identity(self) -> tuple:
        return (0,) * self.rank if self.abelian else ()

    def generator(self, i: int) -> tuple:
        """Key of the i-th generator (1-based)."""
        if not 1 <= i <= self.rank:
            raise IndexError(i)
        if self.abelian:
            return tuple(1 if k == i - 1 else 0 for k in range(self.rank))
        return (i,)

    def mul(self, u: tuple, v: tuple) -> tuple:
        return mul_abelian(u, v) if self.abelian else mul_words(u, v)

    def header(self) -> str:
        return f"alphabet {self.rank} " + " ".join(self.names)


def reduce(letters: Iterable) -> tuple:
    """Freely reduce a raw letter sequence.

    Letters may be signed ints or ``(index, sign)`` pairs with sign ``+1/-1``
    or ``'+'/'-'``.
    """
    seq = []
    for c in letters:
        if isinstance(c, tuple):
            i, s = c
            s = -1 if s in (-1, "-") else 1
            c = s * i
        if c == 0:
            raise ValueError("letter index 0 is not a generator")
        seq.append(c)
    return reduce_word(seq)


def invert_key(key: tuple, abelian: bool = False) -> tuple:
    if abelian:
        return tuple(-e for e in key)
    return tuple(-c for c in reversed(key))


def shortlex_key(key: tuple, abelian: bool = False):
    if abelian:
        return (sum(abs(e) for e in key), key)
    return (len(key), tuple((abs(c), c < 0) for c in key))


def _tokenize(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "*^":
            yield ch, ch, pos
            pos += 1
            continue
        m = _INT_RE.match(text, pos)
        if m:
            yield "int", m.group(), pos
            pos = m.end()
            continue
        m = _NAME_RE.match(text, pos)
        if m:
            yield "name", m.group(), pos
            pos = m.end()
            continue
        raise WordSyntaxError(f"unexpected character {ch!r}", text, len(text[:pos].encode()))


def parse_key(text: str, alphabet: Alphabet) -> tuple:
    """Parse ``text`` into a reduced key over ``alphabet``.

    Grammar: ``word := "1" | factor {"*" factor}``, ``factor := gen ["^" int]``.
    """
    toks = list(_tokenize(text))

    def off(p):
        return len(text[:p].encode())

    if not toks:
        raise WordSyntaxError("empty word", text, 0)
    if len(toks) == 1 and toks[0][:2] == ("int", "1"):
        return alphabet.identity
    exps = [0] * alphabet.rank
    letters: list[int] = []
    i = 0
    expect_factor = True
    while i < len(toks):
        kind, val, pos = toks[i]
        if expect_factor:
            if kind != "name":
                raise WordSyntaxError(f"expected generator, got {val!r}", text, off(pos))
            try:
                g = alphabet.index_of(val)
            except KeyError:
                raise WordSyntaxError(f"unknown generator {val!r}", text, off(pos)) from None
            e = 1
            i += 1
            if i < len(toks) and toks[i][0] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "int":
                    raise WordSyntaxError("expected integer exponent", text, off(toks[i][2]))
                e = int(toks[i + 1][1])
                limit = MAX_EXPONENT if alphabet.abelian else MAX_FREE_EXPONENT
                if abs(e) > limit:
                    raise WordSyntaxError("exponent overflow", text, off(toks[i + 1][2]))
                i += 2
            if alphabet.abelian:
                exps[abs(g) - 1] += e if g > 0 else -e
            else:
                s = 1 if (g > 0) == (e > 0) else -1
                letters.extend([s * abs(g)] * abs(e))
            expect_factor = False
        else:
            if kind != "*":
                raise WordSyntaxError(f"expected '*', got {val!r}", text, off(pos))
            i += 1
            expect_factor = True
    if expect_factor:
        raise WordSyntaxError("dangling '*'", text, len(text.encode()))
    if alphabet.abelian:
        return tuple(exps)
    return reduce_word(letters)


def format_key(key: tuple, alphabet: Alphabet) -> str:
    """Canonical text of a key: runs collapse to powers, identity is ``1``."""
    names = alphabet.names
    parts = []
    if alphabet.abelian:
        for nm, e in zip(names, key):
            if e:
                parts.append(nm if e == 1 else f"{nm}^{e}")
    else:
        i = 0
        while i < len(key):
            c = key[i]
            j = i
            while j < len(key) and key[j] == c:
                j += 1
            e = (j - i) * (1 if c > 0 else -1)
            nm = names[abs(c) - 1]
            parts.append(nm if e == 1 else f"{nm}^{e}")
            i = j
    return "*".join(parts) if parts else "1"


def random_key(rng: random.Random, alphabet: Alphabet, max_len: int, min_len: int = 0) -> tuple:
    """Random reduced word with length uniform in ``[min_len, max_len]``.

    Abelian keys get exponents with total absolute degree at most ``max_len``.
    """
    length = rng.randint(min_len, max_len)
    r = alphabet.rank
    if alphabet.abelian:
        exps = [0] * r
        for _ in range(length):
            exps[rng.randrange(r)] += rng.choice((1, -1))
        return tuple(exps)
    out: list[int] = []
    while len(out) < length:
        c = rng.randint(1, r) * rng.choice((1, -1))
        if out and out[-1] == -c:
            continue
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A reduced group element together with its alphabet."""

    alphabet: Alphabet
    key: tuple

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        return cls(alphabet, parse_key(text, alphabet))

    @classmethod
    def from_letters(cls, letters: Iterable, alphabet: Alphabet) -> "Word":
        key = reduce(letters)
        if any(abs(c) > alphabet.rank for c in key):
            raise ValueError("letter index out of range for alphabet")
        return cls(alphabet, key)

    @property
    def letters(self) -> list[tuple[int, int]]:
        """``(generator index, +1/-1)`` pairs, free regime only."""
        if self.alphabet.abelian:
            raise TypeError("abelian words have no letter sequence")
        return [(abs(c), 1 if c > 0 else -1) for c in self.key]

    @property
    def exponents(self) -> tuple[int, ...]:
        if self.alphabet.abelian:
            return self.key
        ex = [0] * self.alphabet.rank
        for c in self.key:
            ex[abs(c) - 1] += 1 if c > 0 else -1
        return tuple(ex)

    def is_identity(self) -> bool:
        return self.key == self.alphabet.identity

    def __mul__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("words over different alphabets")
        return Word(self.alphabet, self.alphabet.mul(self.key, other.key))

    def __invert__(self) -> "Word":
        return invert_word(self)

    def __len__(self) -> int:
        if self.alphabet.abelian:
            return sum(abs(e) for e in self.key)
        return len(self.key)

    def __str__(self) -> str:
        return format_key(self.key, self.alphabet)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    return Word.parse(text, alphabet)


def invert_word(w: Word) -> Word:
    return Word(w.alphabet, invert_key(w.key, w.alphabet.abelian))


def shortlex_compare(u: Word, v: Word) -> int:
    """-1, 0 or 1 according to shortlex order."""
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch("cannot compare words over different alphabets")
    ab = u.alphabet.abelian
    ku, kv = shortlex_key(u.key, ab), shortlex_key(v.key, ab)
    return (ku > kv) - (ku < kv)
