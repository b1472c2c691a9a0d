"""Compare the compiled and pure-Python tree kernels.

Two measurements:

* per-call cost of each kernel on random parent/color arrays, in-process;
* an end-to-end enumeration of amalgamation diagrams, in a fresh
  interpreter per backend (the backend is fixed at import time).

Usage: python3 benchmarks/bench_kernels.py [--repeat 3] [--n 2] [--max-total 5]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from fraisse import _kernels
from fraisse.amalgam import _to_arrays
from fraisse.trees import ColoredTree

END_TO_END = """
import json, time
from fraisse import _kernels
from fraisse.amalgam import diagrams_up_to, enumerate_amalgamations
start = time.perf_counter()
diagrams = list(diagrams_up_to({n}, {max_total}))
found = sum(len(enumerate_amalgamations(d, max_leaves={max_total}, n={n})) for d in diagrams)
print(json.dumps({{"backend": _kernels.BACKEND, "diagrams": len(diagrams),
                  "amalgamations": found, "seconds": time.perf_counter() - start}}))
"""


def _random_shape(rng, leaves, n):
    if len(leaves) == 1:
        return leaves[0]
    cut = rng.randint(1, len(leaves) - 1)
    return (rng.randint(1, n), _random_shape(rng, leaves[:cut], n), _random_shape(rng, leaves[cut:], n))


def _workload(count=200, seed=3):
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        m = rng.randint(4, 9)
        par, col, node, _ = _to_arrays(ColoredTree(_random_shape(rng, list(range(m)), 3)), 2 * m)
        leaves = [node[x] for x in range(m)]
        cases.append((par, col, leaves))
    return cases


def micro(repeat: int) -> dict:
    cases = _workload()
    results = {}
    for name, backend in _kernels.backends().items():

        def run(backend=backend):
            for par, col, leaves in cases:
                a, b, c = leaves[0], leaves[1], leaves[-1]
                backend.depth(par, a)
                backend.meet(par, a, b)
                backend.outlier(par, a, b, c)

        seconds = min(timeit.repeat(run, number=20, repeat=repeat))
        results[name] = seconds / (20 * len(cases))
    return results


def end_to_end(n: int, max_total: int) -> dict:
    code = END_TO_END.format(n=n, max_total=max_total)
    out = {}
    variants = {"python": {"FRAISSE_PURE_PYTHON": "1"}}
    if "cython" in _kernels.backends():
        variants["cython"] = {}
    for name, extra in variants.items():
        env = {k: v for k, v in os.environ.items() if k != "FRAISSE_PURE_PYTHON"}
        env.update(extra)
        proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[name] = json.loads(proc.stdout)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--max-total", type=int, default=5)
    args = parser.parse_args(argv)

    per_call = micro(args.repeat)
    print("kernel calls (depth + meet + outlier), seconds per case:")
    for name, t in per_call.items():
        print(f"  {name:7s} {t * 1e6:8.2f} us")
    if len(per_call) == 2:
        print(f"  speedup {per_call['python'] / per_call['cython']:.1f}x")

    runs = end_to_end(args.n, args.max_total)
    print(f"diagrams and amalgamations, n={args.n}, up to {args.max_total} leaves:")
    for name, r in runs.items():
        print(f"  {name:7s} {r['seconds']:8.2f} s  ({r['diagrams']} diagrams, {r['amalgamations']} amalgamations)")
    if len(runs) == 2:
        counts = {(r["diagrams"], r["amalgamations"]) for r in runs.values()}
        print(f"  speedup {runs['python']['seconds'] / runs['cython']['seconds']:.1f}x, outputs agree: {len(counts) == 1}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
