"""Pure-Python implementations of the hot kernels.

Free-group words are tuples of nonzero ints: ``k`` is the k-th generator
(1-based) and ``-k`` its inverse.  Abelian words are exponent tuples.
Ring elements are plain dicts ``word -> coefficient`` with no zero values.

``_kernels.pyx`` mirrors this module function for function; both must
return identical results.
"""

from fractions import Fraction
from math import gcd


def reduce_word(seq):
    out = []
    for c in seq:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def mul_words(u, v):
    # both inputs reduced
    n = len(u)
    m = len(v)
    k = 0
    while k < n and k < m and u[n - 1 - k] == -v[k]:
        k += 1
    if k == 0:
        return u + v
    return u[: n - k] + v[k:]


def mul_abelian(u, v):
    return tuple([a + b for a, b in zip(u, v)])


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def convolve(x, y, abelian, modulus):
    """Product of two sparse ring elements; ``modulus`` 0 means no reduction."""
    out = {}
    get = out.get
    mw = mul_abelian if abelian else mul_words
    for u, a in x.items():
        for v, b in y.items():
            w = mw(u, v)
            out[w] = get(w, 0) + a * b
    if modulus:
        return {w: c % modulus for w, c in out.items() if c % modulus}
    return {w: _norm(c) for w, c in out.items() if c}


def fox_left(code, gen):
    """Left Fox derivative of a reduced free word w.r.t. generator ``gen``.

    A letter ``gen`` at position p contributes ``+prefix(p)``; a letter
    ``-gen`` contributes ``-prefix(p+1)``.
    """
    out = {}
    for p, c in enumerate(code):
        if c == gen:
            key = code[:p]
            s = 1
        elif c == -gen:
            key = code[: p + 1]
            s = -1
        else:
            continue
        v = out.get(key, 0) + s
        if v:
            out[key] = v
        else:
            del out[key]
    return out


def fox_right(code, gen):
    """Right (suffix-form) Fox derivative, mirror image of :func:`fox_left`."""
    out = {}
    for p, c in enumerate(code):
        if c == gen:
            key = code[p + 1:]
            s = 1
        elif c == -gen:
            key = code[p:]
            s = -1
        else:
            continue
        v = out.get(key, 0) + s
        if v:
            out[key] = v
        else:
            del out[key]
    return out


def eliminate_f2(rows, ncols):
    """Row-reduce bitmask rows over Z/2.

    Bit ``c < ncols`` of a row is column ``c``; the bits from ``ncols`` up
    hold the right-hand sides.  Returns the pivot rows keyed by pivot column
    (each pivot is the lowest set bit of its row) and a list of
    ``(row index, rhs bits)`` for rows that reduced to ``0 = rhs != 0``.
    """
    pivots = {}
    bad = []
    mask = (1 << ncols) - 1
    for idx, r in enumerate(rows):
        while True:
            low = r & mask
            if not low:
                break
            col = (low & -low).bit_length() - 1
            p = pivots.get(col)
            if p is None:
                pivots[col] = r
                break
            r ^= p
        if not (r & mask) and r >> ncols:
            bad.append((idx, r >> ncols))
    return pivots, bad


def _gcd_content(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def eliminate_q(rows, ncols):
    """Fraction-free row reduction of sparse integer rows.

    Each row is a dict ``col -> int``; columns ``>= ncols`` are right-hand
    sides.  Rows are reduced on their lowest column only (echelon form) and
    divided by their content after every step, with a positive pivot.
    Returns ``(pivots, bad)`` like :func:`eliminate_f2`, with the rhs part of
    a bad row given as a dict.
    """
    pivots = {}
    bad = []
    for idx, src in enumerate(rows):
        r = dict(src)
        while True:
            lead = [c for c in r if c < ncols]
            if not lead:
                if r:
                    bad.append((idx, r))
                break
            col = min(lead)
            p = pivots.get(col)
            if p is None:
                if r[col] < 0:
                    r = {c: -v for c, v in r.items()}
                pivots[col] = r
                break
            a = p[col]
            b = r[col]
            g = gcd(a, b)
            a //= g
            b //= g
            out = {}
            for c, v in r.items():
                out[c] = a * v
            for c, v in p.items():
                w = out.get(c, 0) - b * v
                if w:
                    out[c] = w
                else:
                    out.pop(c, None)
            out = {c: v for c, v in out.items() if v}
            g = _gcd_content(out)
            if g > 1:
                out = {c: v // g for c, v in out.items()}
            r = out
    return pivots, bad
