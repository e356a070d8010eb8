"""Numba vs numpy-fallback timings for the hot kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Vectorized kernels are switched in-process with ``use_backend``.  The DFS
fallback is the undecorated Python body, which is only reachable when the
process starts with BOLMAG_DISABLE_NUMBA=1, so that row runs in a subprocess.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from bolmag import kernels as K
from bolmag._accel import JIT_ENABLED, use_backend
from bolmag.fixtures import quaternion
from bolmag.ring import zorn_gf2
from bolmag.search import SearchSpec, _ring_layout, enumerate_structures


def best_of(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    zorn = zorn_gf2()
    q8 = quaternion().table
    rng = np.random.default_rng(0)
    batch = np.empty((20000, 5, 5), np.int64)
    batch[:, 0, :] = batch[:, :, 0] = np.arange(5)
    batch[:, 1:, 1:] = rng.integers(0, 5, (20000, 4, 4))
    counts, values = _ring_layout([2, 4])
    digits = np.stack(np.unravel_index(np.arange(int(np.prod(counts))), tuple(counts)), axis=1)
    return {
        "first_failure bol, zorn mul (256)": lambda: K.first_failure(K.BOL, zorn.mul),
        "first_failure ldist, zorn (256)": lambda: K.first_failure(K.LDIST, zorn.mul, zorn.add),
        "canonical_labeling q8": lambda: K.canonical_labeling(q8, 0),
        "magma_batch 20000 x order 5": lambda: K.magma_batch(batch, False, True, 0),
        "ring_batch [2,4] all constants": lambda: K.ring_batch([2, 4], digits, values, True, 0),
    }


DFS_SNIPPET = """
import time, json
from bolmag.search import SearchSpec, enumerate_structures
t0 = time.perf_counter()
r = enumerate_structures(SearchSpec("bol-magma", {order}, iso_reduce=True))
print(json.dumps([time.perf_counter() - t0, r.emitted, r.explored]))
"""


def dfs_row(order, disable):
    env = dict(os.environ)
    env.pop("BOLMAG_DISABLE_NUMBA", None)
    if disable:
        env["BOLMAG_DISABLE_NUMBA"] = "1"
    # run twice in one process so the numba row excludes compilation
    code = DFS_SNIPPET.format(order=order) * 2
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--dfs-order", type=int, default=4)
    args = ap.parse_args(argv)
    if not JIT_ENABLED:
        sys.exit("numba is disabled in this process; unset BOLMAG_DISABLE_NUMBA")

    print(f"{'kernel':40s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>9s}")
    for name, fn in cases().items():
        with use_backend("numba"):
            a = best_of(fn, args.repeat)
        with use_backend("numpy"):
            b = best_of(fn, args.repeat)
        print(f"{name:40s} {a:10.4f} {b:10.4f} {b / a:8.1f}x")

    fast = dfs_row(args.dfs_order, False)
    slow = dfs_row(args.dfs_order, True)
    assert fast[1:] == slow[1:], "backends disagree"
    name = f"dfs bol-magma order {args.dfs_order} iso"
    print(f"{name:40s} {fast[0]:10.4f} {slow[0]:10.4f} {slow[0] / fast[0]:8.1f}x")


if __name__ == "__main__":
    main()
