#!/usr/bin/env python3
"""Tabulate the stability bound B(n) and its level decomposition.

Two outputs: a decade table of B(n) against H(n/2) showing how slowly
the gap closes, and for selected n the per-level alpha/beta/theta
columns that drive the bound.  CSV goes to stdout so the tables pipe
straight into plotting.
"""

import argparse
import sys

from netdesign import bound_gap_table, harmonic_int, level_table, mixing_weight


def decade_list(max_exp):
    return [10**k for k in range(2, max_exp + 1)]


def emit_gap_table(max_exp, thresholds):
    table = bound_gap_table(decade_list(max_exp))
    # the library CSV keeps H_n and x exact, which is unreadable past
    # n ~ 100; decades get a float rendering instead
    print("n,H_n,x,B(n),H(n/2),gap")
    for r in table.rows:
        print(
            f"{r.n},{float(r.h_n):.12f},{float(r.x):.12f},"
            f"{r.bound:.12f},{r.half:.12f},{r.gap:.12f}"
        )
    for eps in thresholds:
        n = table.least_n_below(eps)
        if n is None:
            print(f"# gap < {eps}: not reached by n = 10^{max_exp}", file=sys.stderr)
        else:
            print(f"# gap < {eps}: first at n = {n}", file=sys.stderr)


def emit_level_table(n):
    x = mixing_weight(n)
    print(f"# n = {n}, H_n = {harmonic_int(n)}, x = {x} = {float(x):.6f}")
    print("l,alpha,beta,theta")
    for row in level_table(n):
        print(
            f"{row.l},{float(row.alpha):.9f},{float(row.beta):.9f},"
            f"{float(row.theta):.9f}"
        )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-exp", type=int, default=6, help="largest decade 10^k")
    ap.add_argument(
        "--threshold",
        type=float,
        action="append",
        default=None,
        help="report the first tabulated n with gap below this (repeatable)",
    )
    ap.add_argument(
        "--levels",
        type=int,
        action="append",
        default=None,
        help="also print the level table for this n (repeatable)",
    )
    args = ap.parse_args(argv)
    thresholds = args.threshold if args.threshold is not None else [0.1, 0.05]
    emit_gap_table(args.max_exp, thresholds)
    for n in args.levels or []:
        print()
        emit_level_table(n)
    return 0


if __name__ == "__main__":
    sys.exit(main())
