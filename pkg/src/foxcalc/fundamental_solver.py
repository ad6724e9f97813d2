"""Fundamental Fox pairing of a one-boundary surface group.

The unknown generator matrix ``u_ij = eta(x_i, x_j)`` must satisfy

    sum_i (d zeta / d x_i) u_ij = 1 - x_j        for every j,

where ``zeta = [a1, b1] ... [ag, bg]``.  Each ``u_ij`` is restricted to words
of length <= L and the exact linear system is solved for L = L_start, ...,
L_max.  The system splits into one block per j, all sharing the same
matrix, so a single elimination with 2g right-hand sides solves it.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .fox_calculus import left_fox_derivative
from .fox_pairing import FoxPairing, check_aug_intersection, evaluate
from .group_ring import CoeffRing, RingElem
from .linalg import SolveResult, SparseSystem, solve_system, words_up_to
from .reports import CheckReport
from .words import Alphabet, format_key, random_key, shortlex_key

__all__ = [
    "InfeasibleError",
    "SolveInfo",
    "SupportBound",
    "SurfacePresentation",
    "assemble_system",
    "boundary_derivative_row",
    "check_equivariance",
    "solve_fundamental",
    "surface_preset",
    "zeta_automorphisms",
    "verify_uniqueness",
]

DEFAULT_L_MAX = 8


class InfeasibleError(RuntimeError):
    """No solution up to the bound; ``certificates`` has one line per L tried."""

    def __init__(self, message: str, certificates: list[str]):
        super().__init__(message + "\n" + "\n".join(certificates))
        self.certificates = certificates


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int
    alphabet: Alphabet
    boundary_word: tuple

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.alphabet.rank != 2 * self.genus or self.alphabet.abelian:
            raise ValueError(f"genus {self.genus} needs a free alphabet of rank {2 * self.genus}")
        if len(self.boundary_word) != 4 * self.genus:
            raise ValueError("boundary word must be reduced of length 4g")
        ex = [0] * self.alphabet.rank
        for c in self.boundary_word:
            ex[abs(c) - 1] += 1 if c > 0 else -1
        if any(ex):
            raise ValueError("boundary word must have zero exponent sums")

    @classmethod
    def standard(cls, genus: int) -> "SurfacePresentation":
        if genus < 1:
            raise ValueError("genus must be >= 1 (the disk has no boundary commutator)")
        if genus <= 13:
            A = Alphabet.letters(2 * genus)
        else:
            A = Alphabet.free(2 * genus, [f"{p}{i}" for i in range(1, genus + 1) for p in ("a", "b")])
        zeta: tuple = ()
        for i in range(genus):
            a, b = 2 * i + 1, 2 * i + 2
            zeta = A.mul(zeta, (a, b, -a, -b))
        return cls(genus, A, zeta)

    def zeta_elem(self, coeff_ring: CoeffRing = CoeffRing.Q) -> RingElem:
        return RingElem.from_key(self.boundary_word, self.alphabet, coeff_ring)


@dataclass(frozen=True)
class SupportBound:
    L: int
    L_eq: int

    def __post_init__(self):
        if self.L < 0:
            raise ValueError("support bound L must be >= 0")
        if self.L_eq < self.L:
            raise ValueError("L_eq must be >= L")

    @classmethod
    def for_presentation(cls, sp: SurfacePresentation, L: int) -> "SupportBound":
        row = boundary_derivative_row(sp)
        return cls(L, L + max(e.support_length() for e in row))


def surface_preset(genus: int, coeff: CoeffRing = CoeffRing.Q) -> tuple[SurfacePresentation, int]:
    """Standard presentation and the recommended starting bound."""
    _require_field(coeff)
    return SurfacePresentation.standard(genus), 2


def _require_field(coeff: CoeffRing):
    if not coeff.is_field:
        raise ValueError(f"the fundamental pairing needs field coefficients (Q or F2), got {coeff.value}")


def boundary_derivative_row(sp: SurfacePresentation, coeff: CoeffRing = CoeffRing.Q) -> list[RingElem]:
    return [
        left_fox_derivative(sp.boundary_word, i, sp.alphabet, coeff)
        for i in range(1, sp.alphabet.rank + 1)
    ]


@dataclass
class AssembledSystem:
    system: SparseSystem
    words: list
    bound: SupportBound
    rank: int

    def column(self, c: int) -> tuple[tuple, int]:
        """``(word, i)`` of column ``c`` (i is 1-based)."""
        w, i = divmod(c, self.rank)
        return self.words[w], i + 1


def assemble_system(sp: SurfacePresentation, bound: SupportBound | int,
                    coeff: CoeffRing = CoeffRing.Q, homogeneous: bool = False) -> AssembledSystem:
    """Scalar equations for one column block, with all 2g right-hand sides.

    Unknown ``(w, i)`` is the coefficient of word ``w`` in ``u_ij``; columns
    are ordered by shortlex on ``w``, then by ``i``.  There is one row per word
    reachable as ``p * w`` or present in a right-hand side.
    """
    _require_field(coeff)
    if isinstance(bound, int):
        bound = SupportBound.for_presentation(sp, bound)
    A = sp.alphabet
    r = A.rank
    row_elems = boundary_derivative_row(sp)
    words = words_up_to(r, bound.L)
    rows: dict = {}
    for wi, w in enumerate(words):
        for i, d in enumerate(row_elems):
            col = wi * r + i
            for p, c in d.terms.items():
                v = A.mul(p, w)
                row = rows.setdefault(v, {})
                row[col] = row.get(col, 0) + c
    rhs: dict = {}
    if not homogeneous:
        for j in range(r):
            rhs.setdefault((), [0] * r)[j] = 1
            rhs.setdefault((j + 1,), [0] * r)[j] = -1
            rows.setdefault((), {})
            rows.setdefault((j + 1,), {})
    sys = SparseSystem(len(words) * r, nrhs=1 if homogeneous else r)
    for v in sorted(rows, key=shortlex_key):
        row = {c: x for c, x in rows[v].items() if x}
        b = rhs.get(v)
        if not row and not b:
            continue
        sys.add_row(row, b, v)
    return AssembledSystem(sys, words, bound, r)


@dataclass
class SolveInfo:
    L: int
    L_eq: int
    kernel_dim: int
    unknowns: int
    equations: int
    certificates: list = field(default_factory=list)


def _solve_block(args):
    rows, rhs, labels, ncols, coeff_value = args
    sys = SparseSystem(ncols, nrhs=1)
    for r, b, lab in zip(rows, rhs, labels):
        sys.add_row(r, (b,), lab)
    return solve_system(sys, CoeffRing(coeff_value))


def _solve(asm: AssembledSystem, coeff: CoeffRing, parallel: int) -> SolveResult:
    sys = asm.system
    if not parallel or parallel <= 1:
        return solve_system(sys, coeff)
    # one process per right-hand side; pivoting ignores the rhs, so the
    # echelon form and the chosen solution are the same as in serial mode
    jobs = [(sys.rows, [b[j] for b in sys.rhs], sys.labels, sys.ncols, coeff.value) for j in range(sys.nrhs)]
    with ProcessPoolExecutor(max_workers=parallel) as ex:
        parts = list(ex.map(_solve_block, jobs))
    inconsistent = []
    for j, part in enumerate(parts):
        for _, idx_label in part.inconsistent:
            inconsistent.append((j, idx_label))
    return SolveResult(parts[0].rank, sys.ncols, [p.solutions[0] for p in parts], inconsistent)


def solve_fundamental(
    sp: SurfacePresentation | int,
    coeff: CoeffRing = CoeffRing.Q,
    L_start: int = 2,
    L_max: int = DEFAULT_L_MAX,
    parallel: int = 0,
    with_info: bool = False,
):
    """First consistent bounded-support solution, verified by evaluation.

    Raises :class:`InfeasibleError` listing, for every L tried, an equation
    word whose row reduced to ``0 = c != 0``.
    """
    if isinstance(sp, int):
        sp = SurfacePresentation.standard(sp)
    _require_field(coeff)
    if L_start > L_max:
        raise ValueError("L_start must be <= L_max")
    A = sp.alphabet
    r = A.rank
    certs = []
    for L in range(L_start, L_max + 1):
        asm = assemble_system(sp, L, coeff)
        res = _solve(asm, coeff, parallel)
        if not res.consistent:
            j, word = res.inconsistent[0]
            certs.append(
                f"L={L}: rhs for {A.names[j]} inconsistent at equation word {format_key(word, A)}"
                f" (rank {res.rank} of {res.ncols} unknowns)"
            )
            continue
        entries = {}
        for j, sol in enumerate(res.solutions):
            acc: list[dict] = [{} for _ in range(r)]
            for c, val in sol.items():
                w, i = asm.column(c)
                acc[i - 1][w] = val
            for i in range(r):
                entries[(i + 1, j + 1)] = RingElem(A, coeff, acc[i])
        kdim = res.kernel_dim * r
        meta = f"genus={sp.genus} coeff={coeff.value} L={L} L_eq={asm.bound.L_eq} kernel_dim={kdim}"
        p = FoxPairing.from_entries(A, coeff, entries, meta)
        _verify_generators(p, sp)
        info = SolveInfo(L, asm.bound.L_eq, kdim, asm.system.ncols * r, len(asm.system.rows) * r, certs)
        return (p, info) if with_info else p
    raise InfeasibleError(f"no solution with support L <= {L_max}", certs)


def _verify_generators(p: FoxPairing, sp: SurfacePresentation):
    # independent re-check through the evaluation engine
    A, K = p.alphabet, p.coeff_ring
    zeta = sp.zeta_elem(K)
    one = RingElem.one(A, K)
    for j in range(1, A.rank + 1):
        x = RingElem.generator(j, A, K)
        if evaluate(p, zeta, x) != one - x:
            raise ArithmeticError(f"solver output fails eta(zeta, {A.names[j - 1]}) = 1 - {A.names[j - 1]}")


def verify_uniqueness(sp: SurfacePresentation | int, bound: SupportBound | int,
                      coeff: CoeffRing = CoeffRing.Q) -> CheckReport:
    """Kernel dimension of the homogeneous system at the bound.

    Zero certifies uniqueness among matrices supported within the bound
    only; it says nothing about solutions of larger support.
    """
    if isinstance(sp, int):
        sp = SurfacePresentation.standard(sp)
    asm = assemble_system(sp, bound, coeff, homogeneous=True)
    res = solve_system(asm.system, coeff)
    kdim = res.kernel_dim * sp.alphabet.rank
    return CheckReport(
        "uniqueness", kdim == 0, 0, None, None,
        {"genus": sp.genus, "L": asm.bound.L, "kernel_dim": kdim, "scope": "bounded-support"},
    )


def solve_report(p: FoxPairing, sp: SurfacePresentation, samples: int = 100, seed: int = 0) -> str:
    """Metadata line with lambda appended, for the pairing file."""
    aug = check_aug_intersection(p, sp.genus, samples, seed)
    lam = aug.details.get("lambda")
    return p.metadata + f" lambda={lam}"


# -- automorphisms fixing zeta ------------------------------------------------

def _apply(images: dict, key: tuple, A: Alphabet) -> tuple:
    out: tuple = ()
    for c in key:
        img = images[abs(c)]
        if c < 0:
            img = tuple(-x for x in reversed(img))
        out = A.mul(out, img)
    return out


def zeta_automorphisms(sp: SurfacePresentation, extra: bool = True) -> list[dict]:
    """Substitutions ``{i: image key}`` that send zeta to exactly zeta.

    Candidates are all signed permutations of the generators, plus (with
    ``extra``) the transvections ``a -> ab`` and ``b -> ba`` of each handle.
    Only those that fix the reduced word zeta are kept.
    """
    A = sp.alphabet
    r = A.rank
    cands = []
    for perm in itertools.permutations(range(1, r + 1)):
        for signs in itertools.product((1, -1), repeat=r):
            cands.append({i + 1: (signs[i] * perm[i],) for i in range(r)})
    if extra:
        for h in range(sp.genus):
            a, b = 2 * h + 1, 2 * h + 2
            base = {i: (i,) for i in range(1, r + 1)}
            cands.append({**base, a: (a, b)})
            cands.append({**base, b: (b, a)})
    return [f for f in cands if _apply(f, sp.boundary_word, A) == sp.boundary_word]


def check_equivariance(p: FoxPairing, sp: SurfacePresentation, automorphisms=None,
                       samples: int = 50, seed: int = 0, max_len: int = 5) -> CheckReport:
    """``eta(f g, f h) = f(eta(g, h))`` for every automorphism f fixing zeta."""
    A, K = p.alphabet, p.coeff_ring
    autos = zeta_automorphisms(sp) if automorphisms is None else automorphisms
    rng = random.Random(seed)
    for _ in range(samples):
        g = random_key(rng, A, max_len)
        h = random_key(rng, A, max_len)
        base = p.on_keys(g, h)
        for f in autos:
            lhs = p.on_keys(_apply(f, g, A), _apply(f, h, A))
            if lhs != base.map_keys(lambda k, f=f: _apply(f, k, A)):
                ce = f"g={format_key(g, A)},h={format_key(h, A)},f={f}"
                return CheckReport("equivariance", False, samples, seed, ce)
    return CheckReport("equivariance", True, samples, seed, None, {"automorphisms": len(autos)})
