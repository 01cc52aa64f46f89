#!/usr/bin/env python3
"""Pass/memory trade-off table: one-pass kernels versus many-pass solvers.

Generates planted-cover instances over a range of cover sizes, runs each
algorithm with fresh meters, and prints measured passes and peak working
words side by side.  The kernels finish in one (or ell+1) passes but hold
polynomial-in-K state; the branching solvers stay near-linear in K but pay
exponentially many passes.

Usage: python3 scripts/bench_tradeoff.py [--n 60] [--seeds 3]
"""

import argparse

from vcstream.graph import VertexCover
from vcstream.instances import PlantedSpec, gen_planted
from vcstream.kernel_adjacency import kernel_pifree
from vcstream.kernel_lowrank import low_rank_reduce_str
from vcstream.meters import MemoryMeter
from vcstream.properties import AdjacencyCharacterization
from vcstream.solve_cvd import solve_cvd
from vcstream.solve_oct import solve_oct, solve_oct_cc
from vcstream.streams import AL, make_stream


def run_row(g, cover, ell, alg):
    meter = MemoryMeter()
    handle = make_stream(g, AL)
    if alg == "kernel/adj":
        char = AdjacencyCharacterization(2, lambda k: 3, connected_only=True)
        out = kernel_pifree(handle, cover, ell, char, meter)
        result = f"kept={len(out.kept_vertices)}"
        passes, peak = out.passes, out.peak_words
    elif alg == "kernel/rank":
        out = low_rank_reduce_str(handle, cover, ell + 1, 1, meter)
        result = f"kept={len(out.kept_vertices)}"
        passes, peak = out.passes, out.peak_words
    elif alg == "solve/cvd":
        out = solve_cvd(handle, cover, ell, meter)
        result, passes, peak = out.verdict, out.passes, out.peak_words
    elif alg == "solve/oct":
        out = solve_oct(handle, cover, ell, meter)
        result, passes, peak = out.verdict, out.passes, out.peak_words
    else:
        out = solve_oct_cc(handle, cover, ell, meter)
        result, passes, peak = out.verdict, out.passes, out.peak_words
    return result, passes, peak


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=60)
    parser.add_argument("--seeds", type=int, default=2)
    parser.add_argument("--ell", type=int, default=2)
    args = parser.parse_args()

    algs = ["kernel/adj", "kernel/rank", "solve/cvd", "solve/oct", "solve/oct-cc"]
    rows = []
    for k in (3, 5, 7):
        for seed in range(args.seeds):
            g, cover = gen_planted(PlantedSpec(args.n, k, 0.3, seed, args.ell))
            for alg in algs:
                result, passes, peak = run_row(g, cover, args.ell, alg)
                rows.append((f"n={g.n},K={k},seed={seed}", alg, result, passes, peak))

    header = ("instance", "algorithm", "result", "passes", "peak_words")
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    for row in [header] + rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))


if __name__ == "__main__":
    main()
