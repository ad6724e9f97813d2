"""Fox pairings of free groups valued in K[F].

A pairing is stored by its generator matrix ``eta(x_i, x_j)`` and evaluated
by double Fox expansion::

    eta(a, b) = sum_{i,j} (d^l a/dx_i) eta(x_i, x_j) (d^r b/dx_j)

which is the unique bilinear map with the given generator values that is a
left derivation in the first slot and a right derivation in the second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .fox_calculus import Derivation, Side, left_fox, right_fox
from .group_ring import CoeffRing, RingElem, RingMismatch
from .reports import CheckReport
from .words import Alphabet, AlphabetMismatch, Word, format_key, invert_key, random_key

__all__ = [
    "BilinearEvaluator",
    "FoxPairing",
    "PairingFormatError",
    "check_aug_intersection",
    "check_axioms",
    "check_boundary_condition",
    "check_skew_identity",
    "deserialize_pairing",
    "evaluate",
    "inner_pairing",
    "intersection_number",
    "pairing_from_derivations",
    "serialize_pairing",
    "transpose",
    "transpose_evaluator",
]

KeyFn = Callable[[tuple, tuple], RingElem]


class BilinearEvaluator:
    """Bilinear extension of a function on pairs of group elements."""

    def __init__(self, alphabet: Alphabet, coeff_ring: CoeffRing, on_keys: KeyFn, name: str = "pairing"):
        self.alphabet = alphabet
        self.coeff_ring = coeff_ring
        self.on_keys = on_keys
        self.name = name

    def __call__(self, x, y) -> RingElem:
        x = _as_elem(x, self.alphabet, self.coeff_ring)
        y = _as_elem(y, self.alphabet, self.coeff_ring)
        total = RingElem.zero(self.alphabet, self.coeff_ring)
        for u, a in x.terms.items():
            for v, b in y.terms.items():
                total = total + self.on_keys(u, v).scale(a * b)
        return total


def _as_elem(x, alphabet: Alphabet, coeff_ring: CoeffRing) -> RingElem:
    if isinstance(x, RingElem):
        if x.alphabet != alphabet:
            raise AlphabetMismatch("argument over a different alphabet")
        if x.coeff_ring is not coeff_ring:
            raise RingMismatch("argument over a different coefficient ring")
        return x
    if isinstance(x, Word):
        if x.alphabet != alphabet:
            raise AlphabetMismatch("argument over a different alphabet")
        return RingElem.from_word(x, coeff_ring)
    if isinstance(x, str):
        return RingElem.parse(x, alphabet, coeff_ring)
    return RingElem.from_key(tuple(x), alphabet, coeff_ring)


@dataclass(frozen=True, eq=False)
class FoxPairing:
    alphabet: Alphabet
    coeff_ring: CoeffRing
    matrix: tuple[tuple[RingElem, ...], ...]
    metadata: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.alphabet.abelian:
            raise TypeError("Fox pairings are defined here for free groups only")
        r = self.alphabet.rank
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != r or any(len(row) != r for row in m):
            raise ValueError(f"generator matrix must be {r}x{r}")
        for row in m:
            for e in row:
                if e.alphabet != self.alphabet:
                    raise AlphabetMismatch("matrix entry over a different alphabet")
                if e.coeff_ring is not self.coeff_ring:
                    raise RingMismatch("matrix entry over a different coefficient ring")

    @classmethod
    def zero(cls, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q) -> "FoxPairing":
        z = RingElem.zero(alphabet, coeff_ring)
        return cls(alphabet, coeff_ring, tuple((z,) * alphabet.rank for _ in range(alphabet.rank)))

    @classmethod
    def from_entries(cls, alphabet: Alphabet, coeff_ring: CoeffRing, entries: dict, metadata: str = ""):
        """Build from ``{(i, j): RingElem or str}`` with 1-based indices; missing entries are 0."""
        r = alphabet.rank
        rows = []
        for i in range(1, r + 1):
            row = []
            for j in range(1, r + 1):
                e = entries.get((i, j))
                if e is None:
                    e = RingElem.zero(alphabet, coeff_ring)
                elif isinstance(e, str):
                    e = RingElem.parse(e, alphabet, coeff_ring)
                row.append(e)
            rows.append(tuple(row))
        return cls(alphabet, coeff_ring, tuple(rows), metadata)

    @classmethod
    def random(cls, rng: random.Random, alphabet: Alphabet, coeff_ring=CoeffRing.Q,
               max_terms: int = 3, max_len: int = 3) -> "FoxPairing":
        r = alphabet.rank
        return cls(alphabet, coeff_ring, tuple(
            tuple(RingElem.random(rng, alphabet, coeff_ring, max_terms, max_len) for _ in range(r))
            for _ in range(r)
        ))

    def entry(self, i: int, j: int) -> RingElem:
        return self.matrix[i - 1][j - 1]

    def on_keys(self, u: tuple, v: tuple) -> RingElem:
        ck = (u, v)
        hit = self._cache.get(ck)
        if hit is None:
            hit = evaluate(self, RingElem.from_key(u, self.alphabet, self.coeff_ring),
                           RingElem.from_key(v, self.alphabet, self.coeff_ring))
            if len(self._cache) < 4096:
                self._cache[ck] = hit
        return hit

    def __call__(self, x, y) -> RingElem:
        return evaluate(self, x, y)

    def __add__(self, other: "FoxPairing") -> "FoxPairing":
        _check_same(self, other)
        return FoxPairing(self.alphabet, self.coeff_ring, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.matrix, other.matrix)
        ))

    def __sub__(self, other: "FoxPairing") -> "FoxPairing":
        return self + other.scale(-1)

    def scale(self, k) -> "FoxPairing":
        return FoxPairing(self.alphabet, self.coeff_ring, tuple(
            tuple(e.scale(k) for e in row) for row in self.matrix
        ), self.metadata)

    def is_zero(self) -> bool:
        return all(not e for row in self.matrix for e in row)

    def same_matrix(self, other: "FoxPairing") -> bool:
        return (
            self.alphabet == other.alphabet
            and self.coeff_ring is other.coeff_ring
            and self.matrix == other.matrix
        )

    def with_metadata(self, metadata: str) -> "FoxPairing":
        return FoxPairing(self.alphabet, self.coeff_ring, self.matrix, metadata)


def _check_same(p: FoxPairing, q: FoxPairing):
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch("pairings over different alphabets")
    if p.coeff_ring is not q.coeff_ring:
        raise RingMismatch("pairings over different coefficient rings")


def evaluate(p: FoxPairing, x, y) -> RingElem:
    """Value of the pairing on ring elements (Words, keys and strings are lifted)."""
    A, K = p.alphabet, p.coeff_ring
    x = _as_elem(x, A, K)
    y = _as_elem(y, A, K)
    r = A.rank
    right = [right_fox(y, j) for j in range(1, r + 1)]
    total = RingElem.zero(A, K)
    for i in range(1, r + 1):
        left = left_fox(x, i)
        if not left:
            continue
        row = RingElem.zero(A, K)
        for j in range(1, r + 1):
            e = p.matrix[i - 1][j - 1]
            if e and right[j - 1]:
                row = row + e * right[j - 1]
        if row:
            total = total + left * row
    return total


def transpose_evaluator(p: FoxPairing | BilinearEvaluator) -> BilinearEvaluator:
    """Direct formula ``(g, h) -> bar(eta(h^-1, g^-1))`` without materialising a matrix."""
    A, K = p.alphabet, p.coeff_ring
    on_keys = p.on_keys

    def fn(u, v):
        return on_keys(invert_key(v), invert_key(u)).involute()

    return BilinearEvaluator(A, K, fn, "transpose")


def transpose(p: FoxPairing) -> FoxPairing:
    """Transposed pairing, stored by its generator matrix.

    Entry ``(i, j)`` is ``bar(eta(x_j^-1, x_i^-1))``.  This is the form for
    which the transpose is again a Fox pairing and ``eta + eta^t`` can equal
    ``(1-g)(1-h)``.
    """
    A, K = p.alphabet, p.coeff_ring
    r = A.rank
    rows = []
    for i in range(1, r + 1):
        rows.append(tuple(
            evaluate(p, RingElem.from_key((-j,), A, K), RingElem.from_key((-i,), A, K)).involute()
            for j in range(1, r + 1)
        ))
    meta = f"transpose of [{p.metadata}]" if p.metadata else ""
    return FoxPairing(A, K, tuple(rows), meta)


def inner_pairing(c: RingElem) -> FoxPairing:
    """Pairing ``(g, h) -> (1-g) c (1-h)``."""
    A, K = c.alphabet, c.coeff_ring
    one = RingElem.one(A, K)
    r = A.rank
    left = [(one - RingElem.generator(i, A, K)) * c for i in range(1, r + 1)]
    right = [one - RingElem.generator(j, A, K) for j in range(1, r + 1)]
    return FoxPairing(A, K, tuple(tuple(li * rj for rj in right) for li in left), "inner")


def pairing_from_derivations(dl: Derivation, dr: Derivation) -> FoxPairing:
    """``(a, b) -> D_l(a) D_r(b)`` for a left derivation D_l and a right one D_r."""
    if dl.side is not Side.LEFT or dr.side is not Side.RIGHT:
        raise ValueError("need a left derivation first and a right derivation second")
    if dl.alphabet != dr.alphabet:
        raise AlphabetMismatch("derivations over different alphabets")
    if dl.coeff_ring is not dr.coeff_ring:
        raise RingMismatch("derivations over different coefficient rings")
    rows = tuple(tuple(a * b for b in dr.gen_values) for a in dl.gen_values)
    return FoxPairing(dl.alphabet, dl.coeff_ring, rows, "derivation product")


# -- checks -------------------------------------------------------------------

def _fmt(A, *keys) -> str:
    return ",".join(format_key(k, A) for k in keys)


def check_axioms(
    p: FoxPairing | BilinearEvaluator,
    samples: int = 200,
    seed: int = 0,
    max_len: int = 6,
    ring_samples: int | None = None,
) -> CheckReport:
    """Sampled check of both Fox pairing laws.

    Word triples test the group-element form of the laws; a smaller batch of
    random ring elements tests them with general augmentations, which is the
    statement that each curried evaluation is a derivation of the right side.
    """
    A, K = p.alphabet, p.coeff_ring
    ev = p.on_keys
    rng = random.Random(seed)
    name = "axioms"
    for _ in range(samples):
        a1, a2, b = (random_key(rng, A, max_len) for _ in range(3))
        lhs = ev(A.mul(a1, a2), b)
        rhs = ev(a1, b) + ev(a2, b).mul_key_left(a1)
        if lhs != rhs:
            return CheckReport(name, False, samples, seed, f"eq1:{_fmt(A, a1, a2, b)}")
        a, b1, b2 = a1, a2, b
        lhs = ev(a, A.mul(b1, b2))
        rhs = ev(a, b1).mul_key_right(b2) + ev(a, b2)
        if lhs != rhs:
            return CheckReport(name, False, samples, seed, f"eq2:{_fmt(A, a, b1, b2)}")
    bil = BilinearEvaluator(A, K, ev) if isinstance(p, FoxPairing) else p
    n_ring = samples // 10 if ring_samples is None else ring_samples
    for _ in range(n_ring):
        x1, x2, y = (RingElem.random(rng, A, K, 3, max(1, max_len // 2)) for _ in range(3))
        if bil(x1 * x2, y) != bil(x1, y).scale(x2.augment()) + x1 * bil(x2, y):
            return CheckReport(name, False, samples, seed, f"eq1-ring:{x1};{x2};{y}")
        if bil(y, x1 * x2) != bil(y, x1) * x2 + bil(y, x2).scale(x1.augment()):
            return CheckReport(name, False, samples, seed, f"eq2-ring:{y};{x1};{x2}")
    return CheckReport(name, True, samples, seed)


def _left_divide(d: RingElem, target: RingElem) -> RingElem | None:
    from .linalg import solve_left_multiple

    return solve_left_multiple(d, target)


def check_boundary_condition(
    p: FoxPairing | BilinearEvaluator,
    s,
    a_s: RingElem | None = None,
    *,
    normalized: bool = False,
    containment: bool = False,
    samples: int = 50,
    seed: int = 0,
    max_len: int = 6,
) -> CheckReport:
    """Check ``eta(s, g) = a_s (1 - g)`` (``normalized`` means ``a_s = 1``).

    With ``containment`` the check is instead that ``eta(s, g)`` lies in the
    left ideal ``(s - 1) K[G]``, decided by exact bounded-support division.
    """
    A, K = p.alphabet, p.coeff_ring
    s_key = _as_elem(s, A, K)
    if len(s_key.terms) != 1 or next(iter(s_key.terms.values())) != 1:
        raise ValueError("s must be a group element")
    s_key = next(iter(s_key.terms))
    one = RingElem.one(A, K)
    if normalized:
        a_s = one
    if a_s is None and not containment:
        raise ValueError("give a_s, normalized=True or containment=True")
    rng = random.Random(seed)
    s_minus_1 = RingElem.from_key(s_key, A, K) - one
    name = "containment" if containment else "boundary"
    for n in range(samples):
        # always include the generators first
        g = A.generator(n + 1) if n < A.rank else random_key(rng, A, max_len)
        val = p.on_keys(s_key, g)
        if containment:
            q = _left_divide(s_minus_1, val)
            if q is None:
                return CheckReport(name, False, samples, seed, f"g={format_key(g, A)}")
        else:
            want = a_s * (one - RingElem.from_key(g, A, K))
            if val != want:
                return CheckReport(name, False, samples, seed, f"g={format_key(g, A)}")
    return CheckReport(name, True, samples, seed)


def check_skew_identity(p: FoxPairing, samples: int = 100, seed: int = 0, max_len: int = 6) -> CheckReport:
    """``eta(g,h) + eta^t(g,h) = (1-g)(1-h)`` on seeded random pairs."""
    A, K = p.alphabet, p.coeff_ring
    pt = transpose(p)
    rng = random.Random(seed)
    one = RingElem.one(A, K)
    for _ in range(samples):
        g = random_key(rng, A, max_len)
        h = random_key(rng, A, max_len)
        lhs = p.on_keys(g, h) + pt.on_keys(g, h)
        rhs = (one - RingElem.from_key(g, A, K)) * (one - RingElem.from_key(h, A, K))
        if lhs != rhs:
            return CheckReport("skew", False, samples, seed, f"g={format_key(g, A)},h={format_key(h, A)}")
    return CheckReport("skew", True, samples, seed)


def intersection_number(a: tuple, b: tuple, genus: int) -> int:
    """Symplectic form of exponent sums on the alphabet a1, b1, ..., ag, bg."""
    ea = [0] * (2 * genus)
    eb = [0] * (2 * genus)
    for c in a:
        ea[abs(c) - 1] += 1 if c > 0 else -1
    for c in b:
        eb[abs(c) - 1] += 1 if c > 0 else -1
    return sum(ea[2 * i] * eb[2 * i + 1] - ea[2 * i + 1] * eb[2 * i] for i in range(genus))


def check_aug_intersection(
    p: FoxPairing | BilinearEvaluator,
    genus: int,
    samples: int = 100,
    seed: int = 0,
    max_len: int = 6,
) -> CheckReport:
    """``aug(eta(a, b)) = lam * I(a, b)`` for one fixed nonzero ``lam``."""
    A, K = p.alphabet, p.coeff_ring
    if A.rank != 2 * genus:
        raise ValueError(f"genus {genus} needs a rank {2 * genus} alphabet")
    rng = random.Random(seed)
    lam = None
    name = "aug-intersection"
    for _ in range(samples):
        a = random_key(rng, A, max_len)
        b = random_key(rng, A, max_len)
        I = K.coerce(intersection_number(a, b, genus))
        aug = p.on_keys(a, b).augment()
        if lam is None:
            if I:
                lam = K.normalize(Fraction(aug) / I) if K is not CoeffRing.F2 else aug
                if K is CoeffRing.Z and isinstance(lam, Fraction):
                    return CheckReport(name, False, samples, seed, f"a={_fmt(A, a)},b={_fmt(A, b)}")
                if not lam:
                    return CheckReport(name, False, samples, seed, f"a={_fmt(A, a)},b={_fmt(A, b)}",
                                       {"lambda": 0})
            elif aug:
                return CheckReport(name, False, samples, seed, f"a={_fmt(A, a)},b={_fmt(A, b)}")
            continue
        if K.normalize(aug - lam * I) != 0:
            return CheckReport(name, False, samples, seed, f"a={_fmt(A, a)},b={_fmt(A, b)}",
                               {"lambda": lam})
    if lam is None:
        return CheckReport(name, False, samples, seed, None, {"inconclusive": "no pair with I != 0"})
    return CheckReport(name, True, samples, seed, None, {"lambda": lam})


# -- file format --------------------------------------------------------------

class PairingFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def serialize_pairing(p: FoxPairing) -> str:
    A = p.alphabet
    lines = ["foxpairing v1", A.header(), f"coeff {p.coeff_ring.value}"]
    for i, ni in enumerate(A.names):
        for j, nj in enumerate(A.names):
            lines.append(f"eta {ni} {nj} = {p.matrix[i][j]}")
    for m in p.metadata.splitlines():
        lines.append(f"# metadata: {m}")
    return "\n".join(lines) + "\n"


def deserialize_pairing(text: str) -> FoxPairing:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "foxpairing v1":
        raise PairingFormatError("expected header 'foxpairing v1'", 1)
    if len(lines) < 3:
        raise PairingFormatError("truncated file", len(lines) + 1)
    parts = lines[1].split()
    if len(parts) < 2 or parts[0] != "alphabet":
        raise PairingFormatError("expected 'alphabet <r> <names...>'", 2)
    try:
        r = int(parts[1])
        A = Alphabet(r, tuple(parts[2:]))
    except ValueError as e:
        raise PairingFormatError(str(e), 2) from None
    cparts = lines[2].split()
    if len(cparts) != 2 or cparts[0] != "coeff":
        raise PairingFormatError("expected 'coeff <Q|Z|F2>'", 3)
    try:
        K = CoeffRing.parse(cparts[1])
    except ValueError as e:
        raise PairingFormatError(str(e), 3) from None
    entries: dict = {}
    meta = []
    idx = {nm: i + 1 for i, nm in enumerate(A.names)}
    for ln, raw in enumerate(lines[3:], start=4):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# metadata: "):
                meta.append(line[len("# metadata: "):])
            continue
        head, sep, body = line.partition("=")
        hp = head.split()
        if not sep or len(hp) != 3 or hp[0] != "eta":
            raise PairingFormatError(f"malformed eta line {raw!r}", ln)
        if hp[1] not in idx or hp[2] not in idx:
            raise PairingFormatError(f"unknown generator in {raw!r}", ln)
        key = (idx[hp[1]], idx[hp[2]])
        if key in entries:
            raise PairingFormatError(f"duplicate entry eta {hp[1]} {hp[2]}", ln)
        try:
            entries[key] = RingElem.parse(body.strip(), A, K)
        except ValueError as e:
            raise PairingFormatError(str(e), ln) from None
    if len(entries) != r * r:
        raise PairingFormatError(f"expected {r * r} eta lines, found {len(entries)}", len(lines))
    return FoxPairing.from_entries(A, K, entries, "\n".join(meta))
