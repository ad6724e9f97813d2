"""The compiled and pure-Python kernels must agree exactly."""

import importlib
import os
import random
import subprocess
import sys

import pytest

from foxcalc import _kernels_py as py
from foxcalc import kernels

try:
    cy = importlib.import_module("foxcalc._kernels")
except ImportError:  # extension not built
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def rand_word(rng, r, n):
    out = []
    while len(out) < n:
        c = rng.randint(1, r) * rng.choice((1, -1))
        if out and out[-1] == -c:
            continue
        out.append(c)
    return tuple(out)


def rand_poly(rng, r, terms, n):
    return {rand_word(rng, r, rng.randint(0, n)): rng.randint(-4, 4) or 1 for _ in range(terms)}


@needs_cy
def test_word_kernels_agree():
    rng = random.Random(0)
    for _ in range(300):
        seq = [rng.randint(1, 3) * rng.choice((1, -1)) for _ in range(rng.randint(0, 20))]
        assert cy.reduce_word(seq) == py.reduce_word(seq)
        u, v = rand_word(rng, 3, rng.randint(0, 8)), rand_word(rng, 3, rng.randint(0, 8))
        assert cy.mul_words(u, v) == py.mul_words(u, v)
        for g in (1, 2, 3):
            assert cy.fox_left(u, g) == py.fox_left(u, g)
            assert cy.fox_right(u, g) == py.fox_right(u, g)


@needs_cy
@pytest.mark.parametrize("modulus", [0, 2])
def test_convolve_agrees(modulus):
    rng = random.Random(1)
    for _ in range(100):
        x, y = rand_poly(rng, 2, 5, 5), rand_poly(rng, 2, 5, 5)
        assert cy.convolve(x, y, False, modulus) == py.convolve(x, y, False, modulus)
    assert cy.convolve({(1, 0): 2}, {(0, 1): 3}, True, 0) == {(1, 1): 6}


@needs_cy
def test_elimination_agrees():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.choice([rng.randint(1, 12), rng.randint(60, 140)])
        rows_q = [{c: rng.randint(-3, 3) for c in rng.sample(range(n + 2), rng.randint(1, min(4, n + 2)))} for _ in range(15)]
        rows_q = [{c: v for c, v in r.items() if v} for r in rows_q]
        assert cy.eliminate_q(rows_q, n) == py.eliminate_q(rows_q, n)
        rows_f = [rng.getrandbits(n + 2) for _ in range(15)]
        assert cy.eliminate_f2(rows_f, n) == py.eliminate_f2(rows_f, n)


def test_pure_backend_can_be_forced():
    env = dict(os.environ, FOXCALC_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import foxcalc.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")
