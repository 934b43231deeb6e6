"""Time the numba kernels against the pure fallback on identical inputs.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fewham import kernels
from fewham.domset import minimal_dominating_masks
from fewham.enumeration import _arrays
from fewham.generation import GenerationSpec, generate_graphs
from fewham.graph import MultiGraph, complement, complete_graph


def _gnp(n: int, p: float, seed: int) -> MultiGraph:
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return MultiGraph(n, list(zip(iu[0][keep].tolist(), iu[1][keep].tolist())))


def _cases(scale: int):
    g_bt = _gnp(11 + scale, 0.6, 1)
    nbr, mult = _arrays(g_bt)
    g_hk = complete_graph(14 + scale)
    _, mult_hk = _arrays(g_hk)
    green = next(iter(generate_graphs(GenerationSpec(10, "regular", 3))))
    comp = complement(green)
    nbr_c, _ = _arrays(comp)
    out = np.zeros((1 << 14, comp.n), dtype=np.int8)
    dom = np.array(minimal_dominating_masks(green), dtype=np.int64)
    cyc = np.zeros((1 << 12, comp.n), dtype=np.int64)

    return {
        "count_cycles_bt": lambda k: k.count_cycles_bt(nbr, mult, g_bt.n, 0, -1),
        "held_karp": lambda k: k.held_karp(mult_hk, g_hk.n, 0, -1, 0),
        "count_paths_bt": lambda k: k.count_paths_bt(nbr, mult, g_bt.n, 0, 1),
        "enum_cycles_bt": lambda k: k.enum_cycles_bt(nbr_c, comp.n, 0, out),
        "negative_cycles": lambda k: (
            k.enum_cycles_bt(nbr_c, comp.n, 0, cyc) and k.negative_cycles(cyc, len(cyc), comp.n, dom, len(dom))
        ),
        "generate_cubic_10": lambda k: sum(1 for _ in generate_graphs(GenerationSpec(10, "regular", 3),
                                                                      use_jit=k is kernels.jit)),
    }


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=int, default=0, help="grow the inputs by this many vertices")
    ap.add_argument("--only", nargs="*", help="kernel names to run")
    args = ap.parse_args(argv)
    if kernels.jit is None:
        raise SystemExit("numba is not available")

    cases = _cases(args.scale)
    print(f"{'kernel':<20}{'jit s':>12}{'fallback s':>14}{'speedup':>10}")
    for name, case in cases.items():
        if args.only and name not in args.only:
            continue
        a = case(kernels.jit)  # compile outside the timed region
        b = case(kernels.fallback)
        if isinstance(a, np.ndarray):
            assert (a == b).all(), name
        else:
            assert a == b, name
        tj = _time(lambda: case(kernels.jit), args.repeat)
        tf = _time(lambda: case(kernels.fallback), args.repeat)
        print(f"{name:<20}{tj:>12.5f}{tf:>14.5f}{tf / tj if tj else float('inf'):>10.1f}")


if __name__ == "__main__":
    main()
