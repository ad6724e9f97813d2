"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--genus 3]

Kernel timings call both modules directly on identical seeded inputs and
check that the results agree.  The end-to-end row runs the solver in a
subprocess with and without FOXCALC_PURE, since the backend is chosen once
at import.
"""

import argparse
import importlib
import os
import random
import subprocess
import sys
import timeit

from foxcalc import _kernels_py


def rand_word(rng, rank, n):
    out = []
    while len(out) < n:
        c = rng.randint(1, rank) * rng.choice((1, -1))
        if out and out[-1] == -c:
            continue
        out.append(c)
    return tuple(out)


def workloads(seed=0):
    rng = random.Random(seed)
    polys = [
        ({rand_word(rng, 3, rng.randint(0, 6)): rng.randint(1, 5) for _ in range(40)},
         {rand_word(rng, 3, rng.randint(0, 6)): rng.randint(1, 5) for _ in range(40)})
        for _ in range(10)
    ]
    words = [rand_word(rng, 4, 200) for _ in range(50)]
    ncols = 400
    # sparse, short-band rows keep exact Q elimination from blowing up
    rows_q = []
    for _ in range(300):
        lo = rng.randrange(ncols - 8)
        rows_q.append({c: rng.randint(-3, 3) or 1 for c in rng.sample(range(lo, lo + 8), 3)})
    rows_f = [rng.getrandbits(ncols + 2) for _ in range(500)]
    return {
        "convolve": lambda m: [m.convolve(x, y, False, 0) for x, y in polys],
        "fox_left": lambda m: [m.fox_left(w, g) for w in words for g in (1, 2, 3, 4)],
        "reduce_word": lambda m: [m.reduce_word(list(w) + [-c for c in reversed(w[:100])]) for w in words],
        "eliminate_q": lambda m: m.eliminate_q(rows_q, ncols),
        "eliminate_f2": lambda m: m.eliminate_f2(rows_f, ncols),
    }


def time_solve(genus, pure):
    env = dict(os.environ)
    if pure:
        env["FOXCALC_PURE"] = "1"
    else:
        env.pop("FOXCALC_PURE", None)
    code = (
        "import time\n"
        "from foxcalc.fundamental_solver import solve_fundamental\n"
        "from foxcalc.kernels import BACKEND\n"
        "t = time.perf_counter()\n"
        f"solve_fundamental({genus})\n"
        "print(BACKEND, time.perf_counter() - t)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--genus", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        compiled = importlib.import_module("foxcalc._kernels")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1

    print(f"{'kernel':<14}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in workloads().items():
        if fn(_kernels_py) != fn(compiled):
            print(f"{name}: results differ between backends")
            return 1
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<14}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")

    bp, sp = time_solve(args.genus, pure=True)
    bc, sc = time_solve(args.genus, pure=False)
    label = f"solve g={args.genus}"
    print(f"{label:<14}{sp * 1e3:>12.2f}{sc * 1e3:>12.2f}{sp / sc:>9.1f}x   ({bp} vs {bc})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
