#!/usr/bin/env python3
"""Benchmark the popularity-scan kernels.

Builds a dense two-sided market, enumerates every matching once, then
times a full all-pairs popularity sweep (one first_negative call per
matching) on the compiled extension and on the numpy fallback.  The two
backends share the flat vote-table layout, so the sweep is identical
work; only the kernel differs.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --n-u 4 --n-w 6 --repeat 10
"""

from __future__ import annotations

import argparse
import time

from popmatch._kernels import _scan_py
from popmatch.core import VoteRule
from popmatch.gadgets import random_instance
from popmatch.oracle import build_vote_tables, encode_matchings, enumerate_matchings

try:
    from popmatch._kernels import _scan as _scan_compiled
except ImportError:
    _scan_compiled = None


def sweep(first_negative, flat, offsets, sizes, assign, repeat: int):
    """Best-of-`repeat` wall time for scanning every row, plus the
    number of rows that are popular (no matching beats them)."""
    rows = assign.shape[0]
    best = float("inf")
    popular = 0
    for _ in range(repeat):
        start = time.perf_counter()
        popular = 0
        for row in range(rows):
            if first_negative(flat, offsets, sizes, assign, row) < 0:
                popular += 1
        best = min(best, time.perf_counter() - start)
    return best, popular


def main() -> None:
    parser = argparse.ArgumentParser(
        description="compare the compiled popularity-scan kernel with the numpy fallback")
    parser.add_argument("--n-u", type=int, default=4, help="left-side agents (default 4)")
    parser.add_argument("--n-w", type=int, default=5, help="right-side agents (default 5)")
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats, best is kept")
    parser.add_argument("--seed", type=int, default=0, help="market generator seed")
    args = parser.parse_args()

    inst = random_instance(args.n_u, args.n_w, 1.0, [1, 2, 3], seed=args.seed)
    matchings = list(enumerate_matchings(inst, limit=len(inst.edges)))
    flat, offsets, sizes = build_vote_tables(inst, VoteRule.WEAK)
    assign = encode_matchings(inst, matchings)
    print(f"market: {args.n_u}x{args.n_w} complete, {len(inst.edges)} edges, "
          f"{len(inst.agents)} agents, {len(matchings)} matchings")
    print(f"sweep: {len(matchings)} x {len(matchings)} pairwise elections per pass\n")

    pure_time, pure_popular = sweep(
        _scan_py.first_negative, flat, offsets, sizes, assign, args.repeat)
    rows = [("pure (numpy)", pure_time, pure_popular)]

    if _scan_compiled is None:
        print("compiled extension not built; timing the fallback only")
    else:
        comp_time, comp_popular = sweep(
            _scan_compiled.first_negative, flat, offsets, sizes, assign, args.repeat)
        if comp_popular != pure_popular:
            raise SystemExit("backends disagree on the popular-matching count")
        rows.append(("compiled (cython)", comp_time, comp_popular))

    print(f"{'backend':<20}{'sweep time':>14}{'popular rows':>14}")
    for name, seconds, popular in rows:
        print(f"{name:<20}{seconds * 1e3:>12.2f}ms{popular:>14}")
    if _scan_compiled is not None:
        print(f"\nspeedup: {pure_time / comp_time:.1f}x")


if __name__ == "__main__":
    main()
