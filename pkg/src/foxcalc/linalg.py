"""Exact sparse linear algebra over Q and Z/2.

Built on the elimination kernels; no external algebra package is used.
A system has ``ncols`` unknowns, sparse rows ``{col: coeff}`` and any
number of right-hand sides solved together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .group_ring import CoeffRing, RingElem
from .kernels import eliminate_f2, eliminate_q
from .words import shortlex_key

__all__ = ["SolveResult", "SparseSystem", "solve_left_multiple", "solve_system", "words_up_to"]


@dataclass
class SparseSystem:
    ncols: int
    rows: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    nrhs: int = 1
    labels: list = field(default_factory=list)

    def add_row(self, row: dict, rhs=None, label=None):
        """``rhs`` is a sequence of ``nrhs`` values (or None for zeros)."""
        self.rows.append(row)
        self.rhs.append(tuple(rhs) if rhs is not None else (0,) * self.nrhs)
        self.labels.append(label)


@dataclass
class SolveResult:
    rank: int
    ncols: int
    solutions: list
    # (rhs index, label of the row that reduced to 0 = c != 0)
    inconsistent: list

    @property
    def kernel_dim(self) -> int:
        return self.ncols - self.rank

    @property
    def consistent(self) -> bool:
        return not self.inconsistent


def _integer_row(row: dict, rhs: tuple, ncols: int) -> dict:
    den = 1
    for v in list(row.values()) + list(rhs):
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    for k, v in enumerate(rhs):
        if v:
            out[ncols + k] = int(v * den)
    return out


def _solve_q(sys: SparseSystem) -> SolveResult:
    n = sys.ncols
    rows = [_integer_row(r, b, n) for r, b in zip(sys.rows, sys.rhs)]
    pivots, bad = eliminate_q(rows, n)
    inconsistent = []
    bad_rhs = set()
    for idx, r in bad:
        for c in sorted(r):
            k = c - n
            if k not in bad_rhs:
                bad_rhs.add(k)
                inconsistent.append((k, sys.labels[idx]))
    order = sorted(pivots, reverse=True)
    solutions = []
    for k in range(sys.nrhs):
        if k in bad_rhs:
            solutions.append(None)
            continue
        x: dict = {}
        for c in order:
            p = pivots[c]
            acc = Fraction(p.get(n + k, 0))
            for cc, v in p.items():
                if c < cc < n:
                    xv = x.get(cc)
                    if xv:
                        acc -= v * xv
            val = acc / p[c]
            if val:
                x[c] = val.numerator if val.denominator == 1 else val
        solutions.append(x)
    inconsistent.sort(key=lambda t: t[0])
    return SolveResult(len(pivots), n, solutions, inconsistent)


def _solve_f2(sys: SparseSystem) -> SolveResult:
    n = sys.ncols
    rows = []
    for r, b in zip(sys.rows, sys.rhs):
        m = 0
        for c, v in r.items():
            if v % 2:
                m ^= 1 << c
        for k, v in enumerate(b):
            if v % 2:
                m ^= 1 << (n + k)
        rows.append(m)
    pivots, bad = eliminate_f2(rows, n)
    inconsistent = []
    bad_rhs = set()
    for idx, bits in bad:
        k = 0
        while bits:
            if bits & 1 and k not in bad_rhs:
                bad_rhs.add(k)
                inconsistent.append((k, sys.labels[idx]))
            bits >>= 1
            k += 1
    order = sorted(pivots, reverse=True)
    solutions = []
    for k in range(sys.nrhs):
        if k in bad_rhs:
            solutions.append(None)
            continue
        xmask = 0
        for c in order:
            p = pivots[c]
            val = ((p >> (n + k)) & 1) ^ ((p & xmask).bit_count() & 1)
            if val:
                xmask |= 1 << c
        x = {}
        c = 0
        while xmask:
            if xmask & 1:
                x[c] = 1
            xmask >>= 1
            c += 1
        solutions.append(x)
    inconsistent.sort(key=lambda t: t[0])
    return SolveResult(len(pivots), n, solutions, inconsistent)


def solve_system(sys: SparseSystem, coeff_ring: CoeffRing) -> SolveResult:
    """Row echelon form plus back substitution; free unknowns are set to 0."""
    if coeff_ring is CoeffRing.F2:
        return _solve_f2(sys)
    if coeff_ring is CoeffRing.Q:
        return _solve_q(sys)
    raise ValueError(f"linear solve needs a field, got {coeff_ring.value}")


def words_up_to(rank: int, L: int) -> list[tuple]:
    """All reduced free words of length <= L, in shortlex order."""
    out = [()]
    layer = [()]
    for _ in range(L):
        nxt = []
        for w in layer:
            for g in range(1, rank + 1):
                for c in (g, -g):
                    if w and w[-1] == -c:
                        continue
                    nxt.append(w + (c,))
        out.extend(nxt)
        layer = nxt
    out.sort(key=shortlex_key)
    return out


def solve_left_multiple(d: RingElem, target: RingElem, max_extra: int = 0,
                        max_cols: int = 20000) -> RingElem | None:
    """Find ``u`` with ``d * u = target`` in a free group ring, or None.

    Candidates are supported on words of bounded length; the bound grows up
    to ``len(target) + len(d) + max_extra`` while the candidate count stays
    under ``max_cols``, so None means "no solution within the bound".  Over Z the solve runs over Q
    (a nonzero ``d`` has at most one solution); a non-integral solution
    means no solution over Z.
    """
    A, K = d.alphabet, d.coeff_ring
    if A.abelian:
        raise TypeError("solve_left_multiple is for free group rings")
    if not target:
        return RingElem.zero(A, K)
    if not d:
        return None
    field_ring = CoeffRing.F2 if K is CoeffRing.F2 else CoeffRing.Q
    top = target.support_length() + d.support_length() + max_extra
    for L in range(0, top + 1):
        cols = words_up_to(A.rank, L)
        if len(cols) > max_cols:
            break
        rows: dict = {}
        for ci, w in enumerate(cols):
            for p, c in d.terms.items():
                v = A.mul(p, w)
                rows.setdefault(v, {})[ci] = c
        for v in target.terms:
            rows.setdefault(v, {})
        sys = SparseSystem(len(cols))
        for v in sorted(rows, key=shortlex_key):
            sys.add_row(rows[v], (target.coefficient(v),), v)
        res = solve_system(sys, field_ring)
        if res.consistent:
            terms = {cols[c]: val for c, val in res.solutions[0].items()}
            if K is CoeffRing.Z and any(isinstance(v, Fraction) for v in terms.values()):
                return None
            return RingElem(A, K, terms)
    return None
