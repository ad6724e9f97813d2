"""Acceptance suite: one PASS/FAIL line per criterion, with a runtime budget.

Each test records its line in the session log (printed in the terminal
summary) and also prints it, so ``pytest -s`` shows it inline.
"""

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from foxcalc.cohomology import (
    cross_product_1_1,
    derivation_cochain,
    is_cocycle,
    kappa_from_pairing,
    mu_cochain,
    quasi_derivation_extend,
    rho_map,
)
from foxcalc.fox_calculus import Derivation, Side
from foxcalc.fox_pairing import (
    FoxPairing,
    check_aug_intersection,
    check_axioms,
    check_skew_identity,
    deserialize_pairing,
    evaluate,
    inner_pairing,
    pairing_from_derivations,
    serialize_pairing,
    transpose,
)
from foxcalc.fundamental_solver import SurfacePresentation, solve_fundamental, verify_uniqueness
from foxcalc.group_ring import CoeffRing, RingElem
from foxcalc.higher_pairing import check_higher_cocycle, d_power, higher_eta_Zn, higher_pairing_Zn, laurent_derivation
from foxcalc.words import Alphabet, format_key, invert_key, parse_key, random_key
from oracles import d_mul, naive_reduce, pairing_by_laws

Q, Z, F2 = CoeffRing.Q, CoeffRing.Z, CoeffRing.F2
GOLDEN = Path(__file__).parent / "golden"


def record(log, n, ok, elapsed, budget, detail):
    passed = ok and elapsed <= budget
    line = f"{'PASS' if passed else 'FAIL'} criterion {n} {detail} time={elapsed:.2f}s budget={budget}s"
    log.append(line)
    print(line)
    return passed


def symmetrized(q):
    inner = inner_pairing(RingElem.one(q.alphabet, q.coeff_ring))
    return q - (q + transpose(q) - inner).scale(Fraction(1, 2))


# -- 1 ------------------------------------------------------------------------

def constructors(A, K, seed):
    rng = random.Random(seed)
    dl = Derivation.random(rng, Side.LEFT, A, K)
    dr = Derivation.random(rng, Side.RIGHT, A, K)
    rho = rho_map(mu_cochain(cross_product_1_1(derivation_cochain(dl), derivation_cochain(dr))))
    m = FoxPairing.random(rng, A, K)
    return {
        "matrix": m,
        "inner": inner_pairing(RingElem.random(rng, A, K)),
        "transpose": transpose(m),
        "derivation": pairing_from_derivations(dl, dr),
        "rho": rho,
    }


def test_criterion_1_axioms(acceptance_log):
    t0 = time.perf_counter()
    failures = []
    count = 0
    for rank in (2, 4):
        A = Alphabet.letters(rank)
        for K in (Q, F2):
            for name, p in constructors(A, K, seed=rank).items():
                rep = check_axioms(p, 200, seed=0, max_len=5, ring_samples=20)
                count += 1
                if not rep:
                    failures.append(f"{name}/F{rank}/{K.value}:{rep.counterexample}")
    el = time.perf_counter() - t0
    detail = f"pairing-axioms constructors={count} triples=200 failures={failures or 0}"
    assert record(acceptance_log, 1, not failures, el, 5, detail)


# -- 2 ------------------------------------------------------------------------

def fundamental_case(g, K):
    sp = SurfacePresentation.standard(g)
    p, info = solve_fundamental(sp, K, L_max=8, with_info=True)
    A = sp.alphabet
    one = RingElem.one(A, K)
    zeta = sp.zeta_elem(K)
    gens_ok = all(evaluate(p, zeta, RingElem.generator(j, A, K)) == one - RingElem.generator(j, A, K)
                  for j in range(1, A.rank + 1))
    rng = random.Random(g)
    sampled_ok = True
    for _ in range(50):
        x = RingElem.from_key(random_key(rng, A, 8), A, K)
        if evaluate(p, zeta, x) != one - x:
            sampled_ok = False
    kern = verify_uniqueness(sp, info.L, K).details["kernel_dim"]
    return gens_ok and sampled_ok and kern == 0, f"g{g}/{K.value}:L={info.L},kernel={kern}"


def test_criterion_2_fundamental(acceptance_log):
    t0 = time.perf_counter()
    results = [fundamental_case(g, K) for g in (1, 2) for K in (Q, F2)]
    el = time.perf_counter() - t0
    ok = all(r[0] for r in results)
    detail = "fundamental-pairing " + " ".join(r[1] for r in results)
    assert record(acceptance_log, 2, ok, el, 60, detail)


# -- 3 ------------------------------------------------------------------------

def test_criterion_3_intersection(acceptance_log):
    t0 = time.perf_counter()
    reps = []
    for g in (1, 2):
        p = solve_fundamental(g)
        reps.append((g, check_aug_intersection(p, g, 100, seed=0)))
    el = time.perf_counter() - t0
    ok = all(r and r.details.get("lambda") not in (None, 0) for _, r in reps)
    detail = "aug-intersection pairs=100 " + " ".join(f"g{g}:lambda={r.details.get('lambda')}" for g, r in reps)
    assert record(acceptance_log, 3, ok, el, 5, detail)


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_skew(acceptance_log):
    t0 = time.perf_counter()
    A = Alphabet.letters(2)
    q = FoxPairing.random(random.Random(4), A)
    sym = symmetrized(q)
    sym_ok = bool(check_skew_identity(sym, 100, seed=0))
    zero_fails = not check_skew_identity(FoxPairing.zero(A), 100, seed=0)
    # exactness: a one-term perturbation of a passing pairing must be caught
    bumped = sym + FoxPairing.from_entries(A, Q, {(2, 2): "b^3"})
    bump_fails = not check_skew_identity(bumped, 100, seed=0)
    fund_ok = bool(check_skew_identity(solve_fundamental(1), 100, seed=0))
    el = time.perf_counter() - t0
    ok = sym_ok and zero_fails and bump_fails
    detail = (f"skew pairs=100 symmetrized={'pass' if sym_ok else 'fail'} zero={'fail' if zero_fails else 'pass'}"
              f" perturbed={'fail' if bump_fails else 'pass'} fundamental={'pass' if fund_ok else 'fail'}")
    assert record(acceptance_log, 4, ok, el, 5, detail)


# -- 5 ------------------------------------------------------------------------

def test_criterion_5_quasi(acceptance_log):
    t0 = time.perf_counter()
    A = Alphabet.letters(2)
    pairings = {
        "zero": FoxPairing.zero(A),
        "inner": inner_pairing(RingElem.parse("1 - a*b", A)),
        "fundamental": solve_fundamental(1),
    }
    parts = []
    ok = True
    for name, p in pairings.items():
        rep = is_cocycle(kappa_from_pairing(p), 100, seed=0, max_len=4)
        ok &= bool(rep)
        parts.append(f"kappa-{name}={'pass' if rep else 'fail'}")
        _, qrep = quasi_derivation_extend(p, ["1 + b", "a"], 100, seed=0)
        ok &= bool(qrep)
        parts.append(f"quasi-{name}={'pass' if qrep else 'fail'}")
    el = time.perf_counter() - t0
    assert record(acceptance_log, 5, ok, el, 10, "quasi-derivations " + " ".join(parts))


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_rho(acceptance_log):
    t0 = time.perf_counter()
    A = Alphabet.letters(2)
    mismatches = 0
    for seed in (0, 1, 2):
        rng = random.Random(seed)
        dl = Derivation.random(rng, Side.LEFT, A)
        dr = Derivation.random(rng, Side.RIGHT, A)
        rho = rho_map(mu_cochain(cross_product_1_1(derivation_cochain(dl), derivation_cochain(dr))))
        ref = pairing_from_derivations(dl, dr)
        for _ in range(50):
            a, b = random_key(rng, A, 6), random_key(rng, A, 6)
            if rho.on_keys(a, b) != ref.on_keys(a, b):
                mismatches += 1
    el = time.perf_counter() - t0
    detail = f"rho-equality derivation-pairs=3 pairs=50 mismatches={mismatches}"
    assert record(acceptance_log, 6, mismatches == 0, el, 10, detail)


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_higher(acceptance_log):
    t0 = time.perf_counter()
    T = Alphabet.laurent(3)
    table_ok = (
        d_power(1, 3, T) == RingElem.parse("1 + t1 + t1^2", T)
        and all(d_power(1, ell, T) == RingElem(T, Q, {(k, 0, 0): 1 for k in range(ell)})
                for ell in range(0, 8))
    )
    rng = random.Random(0)
    law_ok = True
    for n in range(200):
        i = n % 3 + 1
        u, v = random_key(rng, T, 6), random_key(rng, T, 6)
        U, V = RingElem.from_key(u, T), RingElem.from_key(v, T)
        ti = RingElem.from_key(tuple(u[i - 1] if j == i - 1 else 0 for j in range(3)), T)
        if laurent_derivation(i, U * V) != laurent_derivation(i, U) + ti * laurent_derivation(i, V):
            law_ok = False
    c2 = check_higher_cocycle(higher_pairing_Zn(2), 50, seed=0)
    c3 = check_higher_cocycle(higher_pairing_Zn(3), 20, seed=0)
    A1 = Alphabet.letters(1)
    free = FoxPairing.from_entries(A1, Q, {(1, 1): "1"})
    collapse_ok = True
    for _ in range(100):
        e, f = rng.randint(-8, 8), rng.randint(-8, 8)
        w = lambda k: (1,) * k if k >= 0 else (-1,) * -k  # noqa: E731
        val = free.on_keys(w(e), w(f))
        as_laurent = RingElem(Alphabet.laurent(1), Q,
                              {(sum(1 if c > 0 else -1 for c in key),): c for key, c in val.terms.items()})
        if as_laurent != higher_eta_Zn(1, [(e,)], [(f,)]):
            collapse_ok = False
    el = time.perf_counter() - t0
    ok = table_ok and law_ok and bool(c2) and bool(c3) and collapse_ok
    detail = (f"higher-Zn table={'ok' if table_ok else 'bad'} law200={'ok' if law_ok else 'bad'}"
              f" n2-cocycle50={'pass' if c2 else 'fail'} n3-cocycle20={'pass' if c3 else 'fail'}"
              f" n1-collapse100={'ok' if collapse_ok else 'bad'}")
    assert record(acceptance_log, 7, ok, el, 30, detail)


# -- 8 ------------------------------------------------------------------------

def test_criterion_8_infrastructure(acceptance_log):
    t0 = time.perf_counter()
    rng = random.Random(8)
    A = Alphabet.letters(3)
    words_ok = True
    for _ in range(300):
        seq = [rng.randint(1, 3) * rng.choice((1, -1)) for _ in range(rng.randint(0, 16))]
        key = naive_reduce(seq)
        if parse_key(format_key(key, A), A) != key or A.mul(key, invert_key(key)) != ():
            words_ok = False
    ring_ok = True
    for K in (Q, Z, F2):
        for _ in range(100):
            x, y, z = (RingElem.random(rng, A, K, 4, 4) for _ in range(3))
            if RingElem.parse(str(x), A, K) != x:
                ring_ok = False
            if (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z:
                ring_ok = False
            mod = 2 if K is F2 else 0
            if (x * y).terms != d_mul(x.terms, y.terms, mod):
                ring_ok = False
    golden_ok = True
    for path in sorted(GOLDEN.glob("*.fxp")):
        text = path.read_text()
        if serialize_pairing(deserialize_pairing(text)) != text:
            golden_ok = False
    # the solver still reproduces the stored golden
    regen = serialize_pairing(solve_fundamental(1)).splitlines()[:-1]
    golden_ok &= regen == (GOLDEN / "genus1_Q.fxp").read_text().splitlines()[:-1]
    el = time.perf_counter() - t0
    ok = words_ok and ring_ok and golden_ok
    detail = (f"infrastructure words={'ok' if words_ok else 'bad'} ring={'ok' if ring_ok else 'bad'}"
              f" golden={'byte-identical' if golden_ok else 'mismatch'}")
    assert record(acceptance_log, 8, ok, el, 5, detail)


def test_law_oracle_agrees_with_fundamental_matrix():
    # the pairing evaluator and the law-recursion oracle agree on the solver output
    p = solve_fundamental(1)
    mat = {(i, j): p.entry(i, j).terms for i in (1, 2) for j in (1, 2)}
    rng = random.Random(1)
    for _ in range(50):
        a, b = random_key(rng, p.alphabet, 6), random_key(rng, p.alphabet, 6)
        assert p.on_keys(a, b).terms == pairing_by_laws(mat, a, b)
