"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--names 400] [--nodes 20000] [--repeat 3]

Each kernel is timed on identical inputs under both backends; the last
section times a full 46-network build in two subprocesses, one with
``WSNET_PURE_PYTHON=1``.
"""

import argparse
import os
import random
import string
import subprocess
import sys
import timeit

from wsnet import kernels
from wsnet.kernels import _pykernels

BUILD_ALL = """
import time
from importlib import resources
from wsnet import kernels, load_manifest
from wsnet.networks import build_network, enumerate_taxonomy
coll = load_manifest(resources.files("wsnet") / "data" / "minicorpus.json")
start = time.perf_counter()
for _ in range({repeat}):
    for spec in enumerate_taxonomy():
        build_network(coll, spec)
print(kernels.BACKEND, (time.perf_counter() - start) / {repeat})
"""


def random_names(rng, n):
    return ["".join(rng.choice(string.ascii_letters + "_") for _ in range(rng.randint(4, 16))) for _ in range(n)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def row(label, compiled, python):
    ratio = f"{python / compiled:8.1f}x" if compiled else "       -"
    c = f"{compiled * 1e3:10.2f}" if compiled else "         -"
    print(f"{label:<34}{c}{python * 1e3:12.2f}{ratio}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--names", type=int, default=400, help="names per side for all-pairs matching")
    ap.add_argument("--nodes", type=int, default=20000, help="nodes in the random component graph")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    left, right = random_names(rng, args.names), random_names(rng, args.names)
    n = args.nodes
    tails = [rng.randrange(n) for _ in range(2 * n)]
    heads = [rng.randrange(n) for _ in range(2 * n)]
    backends = {"python": _pykernels, "compiled": kernels.compiled_backend}

    cases = {
        f"levenshtein match {args.names}x{args.names}":
            lambda k: k.match_pairs(kernels.METRIC_LEVENSHTEIN, left, right, 0.8),
        f"jaro match {args.names}x{args.names}": lambda k: k.match_pairs(kernels.METRIC_JARO, left, right, 0.9),
        f"winkler match {args.names}x{args.names}": lambda k: k.match_pairs(kernels.METRIC_WINKLER, left, right, 0.9),
        f"component labels n={n}": lambda k: k.component_labels(n, tails, heads),
    }

    print(f"backend in use: {kernels.BACKEND}")
    print(f"{'kernel':<34}{'compiled ms':>10}{'python ms':>12}{'speedup':>9}")
    for label, case in cases.items():
        timings = {}
        for name, mod in backends.items():
            timings[name] = best(lambda: case(mod), args.repeat) if mod is not None else None
        row(label, timings["compiled"], timings["python"])
        if backends["compiled"] is not None:
            assert case(backends["compiled"]) == case(_pykernels), f"backends disagree on {label}"

    print("\nfull taxonomy build on the bundled 40-service corpus (mean seconds per 46 networks)")
    for env in ({}, {"WSNET_PURE_PYTHON": "1"}):
        out = subprocess.run(
            [sys.executable, "-c", BUILD_ALL.format(repeat=args.repeat)],
            env=dict(os.environ, **env), capture_output=True, text=True, check=True,
        )
        backend, seconds = out.stdout.split()
        print(f"  {backend:<10}{float(seconds):.4f}")


if __name__ == "__main__":
    main()
