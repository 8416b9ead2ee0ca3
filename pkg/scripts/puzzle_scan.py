#!/usr/bin/env python3
"""Scan the tree-probability identity over a grid of types.

For each feasible type at the requested size, print both exact
probabilities side by side (they must agree), and optionally compare a
seeded Monte Carlo estimate at a larger size where enumeration is still
cheap enough to provide the exact value.

Usage:
  python3 scripts/puzzle_scan.py --k 3 --n-max 4
  python3 scripts/puzzle_scan.py --k 3 --n-max 4 --sample 6 2,3,4 --trials 100000
"""
from __future__ import annotations

import argparse
import itertools
import sys

from constellation_lab.counting import m_tuples
from constellation_lab.puzzle import sample_puzzle, verify_puzzle


def feasible_types(n: int, k: int):
    for p in itertools.product(range(0, n + 1), repeat=k):
        if any(mt.counts() == p for mt in m_tuples(n, k)):
            yield p


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=3)
    parser.add_argument("--sample", nargs=2, metavar=("N", "P"), default=None)
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    bad = 0
    for n in range(1, args.n_max + 1):
        for p in feasible_types(n, args.k):
            r = verify_puzzle(n, args.k, p)
            mark = "" if r.equal else "   <-- MISMATCH"
            print(f"n={n} p={p}: P(tree) = {r.tree}  P(|R_1|={args.k - 1}) = {r.r1}{mark}")
            bad += not r.equal

    if args.sample is not None:
        n = int(args.sample[0])
        p = tuple(int(x) for x in args.sample[1].split(","))
        res = sample_puzzle(n, args.k, p, trials=args.trials, seed=args.seed)
        exact = verify_puzzle(n, args.k, p)
        print()
        print(f"sampled n={n} p={p}: {res.accepted}/{res.trials} accepted")
        print(f"  tree estimate {res.tree_estimate}  exact {exact.tree}")
        print(f"  |R_1| estimate {res.r1_estimate}  exact {exact.r1}")

    print()
    print("no mismatches" if bad == 0 else f"{bad} MISMATCHES")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
