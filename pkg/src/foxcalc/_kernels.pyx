# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled mirror of ``_kernels_py``; every function returns identical results."""

from fractions import Fraction
from math import gcd

# a Python int, so shifts by the column count never overflow a C long
ONE = int(1)


def reduce_word(seq):
    cdef list out = []
    cdef Py_ssize_t n = 0
    cdef long c
    for c in seq:
        if n and out[n - 1] == -c:
            out.pop()
            n -= 1
        else:
            out.append(c)
            n += 1
    return tuple(out)


def mul_words(tuple u, tuple v):
    cdef Py_ssize_t n = len(u)
    cdef Py_ssize_t m = len(v)
    cdef Py_ssize_t k = 0
    while k < n and k < m and <long>u[n - 1 - k] == -<long>v[k]:
        k += 1
    if k == 0:
        return u + v
    return u[: n - k] + v[k:]


def mul_abelian(tuple u, tuple v):
    return tuple([a + b for a, b in zip(u, v)])


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def convolve(dict x, dict y, bint abelian, long modulus):
    cdef dict out = {}
    cdef tuple u, v, w
    for u, a in x.items():
        for v, b in y.items():
            w = mul_abelian(u, v) if abelian else mul_words(u, v)
            out[w] = out.get(w, 0) + a * b
    if modulus:
        return {w: c % modulus for w, c in out.items() if c % modulus}
    return {w: _norm(c) for w, c in out.items() if c}


def fox_left(tuple code, long gen):
    cdef dict out = {}
    cdef Py_ssize_t p, n = len(code)
    cdef long c, s
    cdef tuple key
    for p in range(n):
        c = code[p]
        if c == gen:
            key = code[:p]
            s = 1
        elif c == -gen:
            key = code[: p + 1]
            s = -1
        else:
            continue
        val = out.get(key, 0) + s
        if val:
            out[key] = val
        else:
            del out[key]
    return out


def fox_right(tuple code, long gen):
    cdef dict out = {}
    cdef Py_ssize_t p, n = len(code)
    cdef long c, s
    cdef tuple key
    for p in range(n):
        c = code[p]
        if c == gen:
            key = code[p + 1:]
            s = 1
        elif c == -gen:
            key = code[p:]
            s = -1
        else:
            continue
        val = out.get(key, 0) + s
        if val:
            out[key] = val
        else:
            del out[key]
    return out


def eliminate_f2(list rows, Py_ssize_t ncols):
    cdef dict pivots = {}
    cdef list bad = []
    cdef Py_ssize_t idx, col
    mask = (ONE << ncols) - 1
    for idx in range(len(rows)):
        r = rows[idx]
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


cdef object _gcd_content(dict row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def eliminate_q(list rows, Py_ssize_t ncols):
    cdef dict pivots = {}
    cdef list bad = []
    cdef dict r, p, out
    cdef Py_ssize_t idx, col, c, best
    for idx in range(len(rows)):
        r = dict(rows[idx])
        while True:
            best = -1
            for c in r:
                if c < ncols and (best < 0 or c < best):
                    best = c
            if best < 0:
                if r:
                    bad.append((idx, r))
                break
            col = best
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
