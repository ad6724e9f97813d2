"""Bar-complex cochains checked on samples, quasi-derivations, and the
cross product / contraction / rho maps that turn 2-cocycles of G x G^op
into Fox pairings.

Cochains are functions, never tables.  A cochain knows its group (free,
Z^n, the opposite group, or the product ``G x G^op``) and its module (a
left or right action on ring elements or on tensors).

Frozen conventions for the product construction:

* ``G x G^op`` multiplies as ``(a1, b1)(a2, b2) = (a1 a2, b2 b1)``.
* It acts on ``K[G]`` by ``(a, b) m = a m b`` and on ``K[G] (x) K[G]`` by
  ``(a, b)(x (x) y) = a x (x) b^-1 y``; ``mu(x (x) y) = x y^-1`` is equivariant.
* A right derivation ``D_r`` enters the cross product as ``v = bar o D_r``,
  a cocycle of ``G^op`` with action ``b m = b^-1 m``.
* ``(u x v)((a1, b1), (a2, b2)) = u(a1) (x) b1^-1 v(b2)``.
* ``rho_f(a, b) = f((a,1),(1,b)) - f((1,b),(a,1)) - q(a)(1 - b) + (1 - a) q(b)``
  where q satisfies ``f((a,1),(b,1)) = a q(b) - q(ab) + q(a)`` and
  ``f((1,a),(1,b)) = q(b) a - q(ba) + q(a)``.

With these, ``rho(mu o (D_l x D_r))`` is the pairing ``(a, b) -> D_l(a) D_r(b)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .fox_calculus import Derivation, Side
from .fox_pairing import BilinearEvaluator, FoxPairing
from .group_ring import CoeffRing, RingElem, RingMismatch, _check
from .reports import CheckReport
from .words import Alphabet, AlphabetMismatch, format_key, invert_key, random_key, shortlex_key

__all__ = [
    "Cochain",
    "CochainError",
    "Group",
    "Module",
    "QuasiDerivation",
    "TensorElem",
    "check_dd_zero",
    "coboundary",
    "cross_product_1_1",
    "derivation_cochain",
    "is_cocycle",
    "kappa_from_pairing",
    "mu_cochain",
    "mu_contract",
    "quasi_derivation_extend",
    "rho_map",
]

MAX_DEGREE = 3


class CochainError(ValueError):
    pass


# -- groups -------------------------------------------------------------------

@dataclass(frozen=True)
class Group:
    """``kind`` is ``free``, ``abelian``, ``opposite`` or ``product`` (G x G^op)."""

    kind: str
    alphabet: Alphabet

    @classmethod
    def of(cls, alphabet: Alphabet) -> "Group":
        return cls("abelian" if alphabet.abelian else "free", alphabet)

    @property
    def identity(self):
        e = self.alphabet.identity
        return (e, e) if self.kind == "product" else e

    def mul(self, g, h):
        A = self.alphabet
        if self.kind == "product":
            return (A.mul(g[0], h[0]), A.mul(h[1], g[1]))
        if self.kind == "opposite":
            return A.mul(h, g)
        return A.mul(g, h)

    def inv(self, g):
        ab = self.alphabet.abelian
        if self.kind == "product":
            return (invert_key(g[0], ab), invert_key(g[1], ab))
        return invert_key(g, ab)

    def random(self, rng: random.Random, max_len: int):
        if self.kind == "product":
            return (random_key(rng, self.alphabet, max_len), random_key(rng, self.alphabet, max_len))
        return random_key(rng, self.alphabet, max_len)

    def fmt(self, g) -> str:
        if self.kind == "product":
            return f"({format_key(g[0], self.alphabet)},{format_key(g[1], self.alphabet)})"
        return format_key(g, self.alphabet)


# -- tensors ------------------------------------------------------------------

class TensorElem:
    """Element of ``K[G] (x) K[G]``: a map ``(key, key) -> coefficient``."""

    __slots__ = ("alphabet", "coeff_ring", "terms")

    def __init__(self, alphabet: Alphabet, coeff_ring: CoeffRing = CoeffRing.Q, terms=None):
        self.alphabet = alphabet
        self.coeff_ring = coeff_ring
        norm = coeff_ring.normalize
        self.terms = {k: norm(c) for k, c in (terms or {}).items() if norm(c)}

    @classmethod
    def zero(cls, alphabet, coeff_ring=CoeffRing.Q) -> "TensorElem":
        return cls(alphabet, coeff_ring)

    @classmethod
    def outer(cls, x: RingElem, y: RingElem) -> "TensorElem":
        _check(x, y)
        return cls(x.alphabet, x.coeff_ring, {(u, v): a * b for u, a in x.terms.items() for v, b in y.terms.items()})

    def _same(self, other: "TensorElem"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("tensors over different alphabets")
        if self.coeff_ring is not other.coeff_ring:
            raise RingMismatch("tensors over different coefficient rings")

    def __add__(self, other: "TensorElem") -> "TensorElem":
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElem(self.alphabet, self.coeff_ring, out)

    def __neg__(self) -> "TensorElem":
        return self.scale(-1)

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + (-other)

    def scale(self, k) -> "TensorElem":
        return TensorElem(self.alphabet, self.coeff_ring, {w: c * k for w, c in self.terms.items()})

    def act(self, left: tuple, right: tuple) -> "TensorElem":
        """``x (x) y -> left x (x) right y``."""
        A = self.alphabet
        return TensorElem(self.alphabet, self.coeff_ring,
                          {(A.mul(left, u), A.mul(right, v)): c for (u, v), c in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorElem):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.coeff_ring is other.coeff_ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        ab = self.alphabet.abelian
        return sorted(self.terms.items(), key=lambda t: (shortlex_key(t[0][0], ab), shortlex_key(t[0][1], ab)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in self.sorted_terms():
            s = f"{format_key(u, self.alphabet)} (x) {format_key(v, self.alphabet)}"
            parts.append(s if c == 1 else f"{c} {s}")
        return " + ".join(parts)


def mu_contract(t: TensorElem) -> RingElem:
    """Linear extension of ``g (x) h -> g h^-1``."""
    A = t.alphabet
    ab = A.abelian
    out: dict = {}
    for (u, v), c in t.terms.items():
        w = A.mul(u, invert_key(v, ab))
        out[w] = out.get(w, 0) + c
    return RingElem(A, t.coeff_ring, out)


# -- modules ------------------------------------------------------------------

@dataclass(frozen=True)
class Module:
    """Coefficient module: ``side`` says on which side the group acts.

    Kinds: ``left`` (g m), ``right`` (m g), ``conj`` (g m g^-1),
    ``inverse-left`` (g^-1 m, for G^op), ``bimodule`` ((a, b) m = a m b) and
    ``tensor`` ((a, b)(x (x) y) = a x (x) b^-1 y).
    """

    kind: str
    alphabet: Alphabet
    coeff_ring: CoeffRing = CoeffRing.Q

    @property
    def side(self) -> str:
        return "right" if self.kind == "right" else "left"

    def zero(self):
        if self.kind == "tensor":
            return TensorElem.zero(self.alphabet, self.coeff_ring)
        return RingElem.zero(self.alphabet, self.coeff_ring)

    def act(self, g, m):
        ab = self.alphabet.abelian
        k = self.kind
        if k == "left":
            return m.mul_key_left(g)
        if k == "right":
            return m.mul_key_right(g)
        if k == "conj":
            return m.mul_key_left(g).mul_key_right(invert_key(g, ab))
        if k == "inverse-left":
            return m.mul_key_left(invert_key(g, ab))
        if k == "bimodule":
            return m.mul_key_left(g[0]).mul_key_right(g[1])
        if k == "tensor":
            return m.act(g[0], invert_key(g[1], ab))
        raise CochainError(f"unknown module kind {k!r}")


# -- cochains -----------------------------------------------------------------

@dataclass(frozen=True)
class Cochain:
    degree: int
    group: Group
    module: Module
    evaluator: Callable

    def __call__(self, *gs):
        if len(gs) != self.degree:
            raise CochainError(f"degree-{self.degree} cochain called with {len(gs)} arguments")
        return self.evaluator(*gs)

    @classmethod
    def constant(cls, group: Group, module: Module, m) -> "Cochain":
        return cls(0, group, module, lambda: m)


def coboundary(c: Cochain) -> Cochain:
    """Standard alternating-sum coboundary for the module's action side.

    left:  (df)(g1..g_{n+1}) = g1 f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..gn)
    right: (df)(g1..g_{n+1}) = f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..gn) g_{n+1}
    """
    n = c.degree
    if not 0 <= n <= MAX_DEGREE:
        raise CochainError(f"coboundary supports degrees 0..{MAX_DEGREE}, got {n}")
    G, M = c.group, c.module
    f = c.evaluator
    left = M.side == "left"

    def df(*gs):
        total = M.act(gs[0], f(*gs[1:])) if left else f(*gs[1:])
        for i in range(1, n + 1):
            merged = gs[: i - 1] + (G.mul(gs[i - 1], gs[i]),) + gs[i + 1:]
            term = f(*merged)
            total = total - term if i % 2 else total + term
        last = f(*gs[:n]) if left else M.act(gs[n], f(*gs[:n]))
        return total - last if (n + 1) % 2 else total + last

    return Cochain(n + 1, G, M, df)


def _tuple_fmt(G: Group, gs) -> str:
    return "|".join(G.fmt(g) for g in gs)


def is_cocycle(c: Cochain, samples: int = 50, seed: int = 0, max_len: int = 4, name: str | None = None) -> CheckReport:
    """``dc = 0`` on seeded random (n+1)-tuples."""
    dc = coboundary(c)
    rng = random.Random(seed)
    label = name or f"cocycle-deg{c.degree}"
    for _ in range(samples):
        gs = tuple(c.group.random(rng, max_len) for _ in range(c.degree + 1))
        if dc(*gs):
            return CheckReport(label, False, samples, seed, _tuple_fmt(c.group, gs))
    return CheckReport(label, True, samples, seed)


def check_dd_zero(c: Cochain, samples: int = 100, seed: int = 0, max_len: int = 3) -> CheckReport:
    """``d(d c) = 0`` pointwise on seeded (n+2)-tuples."""
    ddc = coboundary(coboundary(c))
    rng = random.Random(seed)
    for _ in range(samples):
        gs = tuple(c.group.random(rng, max_len) for _ in range(c.degree + 2))
        if ddc(*gs):
            return CheckReport("dd-zero", False, samples, seed, _tuple_fmt(c.group, gs))
    return CheckReport("dd-zero", True, samples, seed)


# -- kappa and quasi-derivations ----------------------------------------------

def kappa_from_pairing(p: FoxPairing | BilinearEvaluator) -> Cochain:
    """``(g, h) -> eta(g, h) h^-1 g^-1`` in conjugation coefficients."""
    A, K = p.alphabet, p.coeff_ring

    def kappa(g, h):
        return p.on_keys(g, h).mul_key_right(invert_key(A.mul(g, h)))

    return Cochain(2, Group.of(A), Module("conj", A, K), kappa)


class QuasiDerivation:
    """Map with ``q(ab) = q(a) b + a q(b) + eta(a, b)``, built from generator values."""

    def __init__(self, p: FoxPairing | BilinearEvaluator, gen_values):
        A, K = p.alphabet, p.coeff_ring
        if A.abelian:
            raise TypeError("quasi-derivations are extended on free groups only")
        vals = tuple(RingElem.parse(v, A, K) if isinstance(v, str) else v for v in gen_values)
        if len(vals) != A.rank:
            raise ValueError(f"need {A.rank} generator values, got {len(vals)}")
        self.pairing = p
        self.alphabet = A
        self.coeff_ring = K
        self.gen_values = vals
        self._letter: dict = {}
        for i, v in enumerate(vals, start=1):
            self._letter[i] = v
            # 0 = q(x x^-1) = q(x) x^-1 + x q(x^-1) + eta(x, x^-1)
            t = v.mul_key_right((-i,)) + p.on_keys((i,), (-i,))
            self._letter[-i] = -t.mul_key_left((-i,))

    def on_letters(self, letters) -> RingElem:
        """Value on an arbitrary, possibly unreduced, letter sequence."""
        A = self.alphabet
        acc = RingElem.zero(A, self.coeff_ring)
        prefix: tuple = ()
        for y in letters:
            acc = acc.mul_key_right((y,)) + self._letter[y].mul_key_left(prefix) + self.pairing.on_keys(prefix, (y,))
            prefix = A.mul(prefix, (y,))
        return acc

    def __call__(self, key) -> RingElem:
        return self.on_letters(key)

    def closed_form(self, key) -> RingElem:
        """``sum_p w_<p q(y_p) w_>p + sum_p eta(w_<p, y_p) w_>p``, an independent path."""
        A = self.alphabet
        total = RingElem.zero(A, self.coeff_ring)
        for p, y in enumerate(key):
            pre, suf = key[:p], key[p + 1:]
            total = total + self._letter[y].mul_key_left(pre).mul_key_right(suf)
            total = total + self.pairing.on_keys(pre, (y,)).mul_key_right(suf)
        return total


def quasi_derivation_extend(p: FoxPairing | BilinearEvaluator, gen_values, samples: int = 100,
                            seed: int = 0, max_len: int = 5) -> tuple[QuasiDerivation, CheckReport]:
    """Extend generator values to a quasi-derivation and check the law on samples.

    The report also covers well-definedness: inserting a cancelling pair into
    a word must not change the value.
    """
    q = QuasiDerivation(p, gen_values)
    A = q.alphabet
    rng = random.Random(seed)
    for _ in range(samples):
        a = random_key(rng, A, max_len)
        b = random_key(rng, A, max_len)
        if q(A.mul(a, b)) != q(a).mul_key_right(b) + q(b).mul_key_left(a) + p.on_keys(a, b):
            return q, CheckReport("quasi-derivation", False, samples, seed,
                                  f"a={format_key(a, A)},b={format_key(b, A)}")
        pos = rng.randint(0, len(a))
        x = rng.randint(1, A.rank) * rng.choice((1, -1))
        padded = a[:pos] + (x, -x) + a[pos:]
        if q.on_letters(padded) != q(a):
            return q, CheckReport("quasi-derivation", False, samples, seed,
                                  f"insertion:{format_key(a, A)}@{pos}")
    return q, CheckReport("quasi-derivation", True, samples, seed)


# -- cross product, mu and rho --------------------------------------------------

def derivation_cochain(d: Derivation) -> Cochain:
    """Left derivation -> 1-cocycle of G in K[G]; right derivation ``D_r`` -> ``bar o D_r``
    as a 1-cocycle of G^op with action ``b m = b^-1 m``."""
    A, K = d.alphabet, d.coeff_ring
    memo: dict = {}
    left = d.side is Side.LEFT

    def value(g):
        hit = memo.get(g)
        if hit is None:
            hit = d(g) if left else d(g).involute()
            if len(memo) < 4096:
                memo[g] = hit
        return hit

    if left:
        return Cochain(1, Group("free", A), Module("left", A, K), value)
    return Cochain(1, Group("opposite", A), Module("inverse-left", A, K), value)


def cross_product_1_1(u: Cochain, v: Cochain, samples: int = 20, seed: int = 0) -> Cochain:
    """Alexander-Whitney cross product ``(u x v)((a1,b1),(a2,b2)) = u(a1) (x) b1^-1 v(b2)``."""
    if u.degree != 1 or v.degree != 1:
        raise CochainError("cross_product_1_1 needs two 1-cochains")
    if u.group.kind != "free" or u.module.kind != "left":
        raise CochainError("u must be a cochain of G with left multiplication")
    if v.group.kind != "opposite" or v.module.kind != "inverse-left":
        raise CochainError("v must be a cochain of G^op with action b m = b^-1 m")
    A, K = u.module.alphabet, u.module.coeff_ring
    if v.module.alphabet != A or v.module.coeff_ring is not K:
        raise CochainError("u and v must share alphabet and coefficient ring")
    for name, c in (("u", u), ("v", v)):
        rep = is_cocycle(c, samples, seed)
        if not rep:
            raise CochainError(f"{name} is not a cocycle: {rep.line()}")

    def uxv(g1, g2):
        a1, b1 = g1
        _, b2 = g2
        return TensorElem.outer(u(a1), v(b2).mul_key_left(invert_key(b1)))

    return Cochain(2, Group("product", A), Module("tensor", A, K), uxv)


def mu_cochain(c: Cochain) -> Cochain:
    """Compose a tensor-valued cochain with the contraction ``mu``."""
    if c.module.kind != "tensor":
        raise CochainError("mu_cochain needs tensor coefficients")
    A, K = c.module.alphabet, c.module.coeff_ring
    f = c.evaluator
    return Cochain(c.degree, c.group, Module("bimodule", A, K), lambda *gs: mu_contract(f(*gs)))


def rho_map(f: Cochain, q: Cochain | None = None, samples: int = 20, seed: int = 0,
            max_len: int = 4) -> BilinearEvaluator:
    """Fox pairing ``rho_f`` of a 2-cocycle of ``G x G^op`` with values in K[G].

    ``q`` (a 1-cochain of G, default 0) must trivialise both restrictions of
    f; this side condition is checked on samples.
    """
    if f.degree != 2 or f.group.kind != "product" or f.module.kind != "bimodule":
        raise CochainError("rho_map needs a 2-cochain of G x G^op in K[G] with (a,b)m = amb")
    A, K = f.module.alphabet, f.module.coeff_ring
    e = A.identity
    if q is None:
        zero = RingElem.zero(A, K)
        qf = lambda g: zero  # noqa: E731
    else:
        qf = q.evaluator
    rng = random.Random(seed)
    for _ in range(samples):
        a = random_key(rng, A, max_len)
        b = random_key(rng, A, max_len)
        if f((a, e), (b, e)) != qf(b).mul_key_left(a) - qf(A.mul(a, b)) + qf(a):
            raise CochainError(f"q does not trivialise f on G x 1 at a={format_key(a, A)}, b={format_key(b, A)}")
        if f((e, a), (e, b)) != qf(b).mul_key_right(a) - qf(A.mul(b, a)) + qf(a):
            raise CochainError(f"q does not trivialise f on 1 x G^op at a={format_key(a, A)}, b={format_key(b, A)}")
    one = RingElem.one(A, K)

    def rho(a, b):
        qa, qb = qf(a), qf(b)
        ga = RingElem.from_key(a, A, K)
        gb = RingElem.from_key(b, A, K)
        return f((a, e), (e, b)) - f((e, b), (a, e)) - qa * (one - gb) + (one - ga) * qb

    return BilinearEvaluator(A, K, rho, "rho")
