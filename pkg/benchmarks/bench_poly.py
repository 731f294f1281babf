#!/usr/bin/env python3
"""Benchmark the compiled polynomial kernel against the pure-Python one.

Times ``mul_terms`` on workloads taken from the hot paths (theta
coefficient products, Koszul-signed loop-ring products, the rank-8
shifted-product expansion), then times a full Witten-character build
through each kernel in a subprocess (FRACCHERN_PURE_PYTHON toggles the
fallback at import time).

Usage: python benchmarks/bench_poly.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from fracchern import _poly_py
from fracchern.gcring import RingPresentation

try:
    from fracchern import _poly_cy
except ImportError:
    _poly_cy = None


def dense_poly(ring, rng, terms):
    out = ring.zero()
    names = [g.name for g in ring.generators]
    for _ in range(terms):
        mono = ring.one()
        budget = ring.degree_cap
        for _ in range(rng.randint(1, 4)):
            name = rng.choice(names)
            g = ring.generators[ring.index[name]]
            if g.degree > budget:
                break
            nxt = mono * ring.gen(name)
            if nxt.is_zero:
                continue
            mono = nxt
            budget -= g.degree
        out = out + mono * rng.randint(-9, 9)
    return out


def workloads():
    rng = random.Random(1)
    theta_ring = RingPresentation(
        [("a", 2), ("x1", 2), ("x2", 2), ("x3", 2)], 8
    )
    loop_ring = RingPresentation(
        [("zb1", 1), ("g", 2), ("c1", 2), ("z2", 3), ("c2", 4)], 9
    )
    wide_ring = RingPresentation(
        [("a", 2)] + [(f"x{i}", 2) for i in range(1, 9)], 16
    )
    yield "theta coefficients (4 even gens, cap 8)", theta_ring, [
        (dense_poly(theta_ring, rng, 40), dense_poly(theta_ring, rng, 40))
        for _ in range(20)
    ]
    yield "loop classes (odd gens, Koszul signs)", loop_ring, [
        (dense_poly(loop_ring, rng, 30), dense_poly(loop_ring, rng, 30))
        for _ in range(30)
    ]
    big = wide_ring.one()
    shift = wide_ring.gen("a") * Fraction(1, 8)
    for i in range(1, 9):
        big = big * (wide_ring.one() + wide_ring.gen(f"x{i}") - shift)
    yield "rank-8 product expansion (9 gens, cap 16)", wide_ring, [(big, big)] * 3


def time_kernel(impl, ring, pairs, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for p, q in pairs:
            impl.mul_terms(
                p._terms, q._terms, ring.degrees, ring.odd_mask_by_gen, ring.degree_cap
            )
        best = min(best, time.perf_counter() - start)
    return best


def gch_subprocess(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("FRACCHERN_PURE_PYTHON", None)
    if pure:
        env["FRACCHERN_PURE_PYTHON"] = "1"
    code = (
        "import time\n"
        "from fracchern.symroots import RootModel\n"
        "from fracchern import qtheta\n"
        "start = time.perf_counter()\n"
        "model = RootModel(3, 3, degree_cap=8)\n"
        "for kind in qtheta.WittenKind:\n"
        "    qtheta.gch_witten(model, kind, 4, method='both')\n"
        "print(time.perf_counter() - start)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-subprocess", action="store_true")
    args = parser.parse_args()

    if _poly_cy is None:
        print("compiled kernel not available; timing the pure kernel only")
    print(f"{'workload':<44} {'python':>9} {'cython':>9} {'speedup':>8}")
    for name, ring, pairs in workloads():
        t_py = time_kernel(_poly_py, ring, pairs, args.repeat)
        if _poly_cy is not None:
            t_cy = time_kernel(_poly_cy, ring, pairs, args.repeat)
            print(f"{name:<44} {t_py*1e3:8.1f}ms {t_cy*1e3:8.1f}ms {t_py/t_cy:7.2f}x")
        else:
            print(f"{name:<44} {t_py*1e3:8.1f}ms {'-':>9} {'-':>8}")

    if not args.skip_subprocess and _poly_cy is not None:
        t_pure = gch_subprocess(pure=True)
        t_fast = gch_subprocess(pure=False)
        print(
            f"{'full Witten character, n=3 (subprocess)':<44} "
            f"{t_pure*1e3:8.1f}ms {t_fast*1e3:8.1f}ms {t_pure/t_fast:7.2f}x"
        )


if __name__ == "__main__":
    main()
