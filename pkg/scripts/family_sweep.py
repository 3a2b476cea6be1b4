#!/usr/bin/env python3
"""Sweep the two structured families and print exact diagnostics.

The directed family pins the price of stability at H_n/(1+eps); in
the undirected bridge family every pivot's reroute through the optimum
spokes is potential neutral, so phi(dev) = phi(N) exactly and the
whole slack sits in the charging step.  This prints both, with exact
rationals next to floats, so a change in any construction shows up as
a wrong fraction rather than a drifted decimal.
"""

import argparse
import sys
from fractions import Fraction

from netdesign import (
    decompose_optimum,
    directed_harmonic_family,
    format_rational,
    harmonic_int,
    potential,
    potential_minimizers,
    price_ratios,
    shared_bridge_family,
    social_optimum,
    verify_lemma1,
)


def sweep_directed(n_max, eps_list):
    print("directed family: PoS versus H_n/(1+eps)")
    for n in range(2, n_max + 1):
        for eps in eps_list:
            g = directed_harmonic_family(n, eps)
            rep = price_ratios(g)
            target = harmonic_int(n) / (1 + eps)
            mark = "ok" if rep.pos == target else "MISMATCH"
            print(
                f"  n={n} eps={format_rational(eps)}: "
                f"PoS = {format_rational(rep.pos)} = {float(rep.pos):.6f}, "
                f"nash profiles = {len(rep.nash_flats)}  {mark}"
            )


def sweep_bridge(n_max):
    print("bridge family: potential-neutral pivots and their charging slack")
    for n in range(2, n_max + 1):
        g = shared_bridge_family(n)
        N = potential_minimizers(g)[0]
        dec = decompose_optimum(g, social_optimum(g))
        phi = potential(g, N)
        print(f"  n={n}: phi(N) = {format_rational(phi)}")
        for player in g.players:
            rep = verify_lemma1(g, N, dec, player.id)
            slack = rep.rhs - rep.phi_deviation
            print(
                f"    pivot {player.id}: phi(dev) = "
                f"{format_rational(rep.phi_deviation)}, "
                f"RHS = {format_rational(rep.rhs)}, "
                f"slack = {format_rational(slack)}"
            )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument(
        "--eps",
        action="append",
        default=None,
        help="epsilon for the directed family, rational string (repeatable)",
    )
    args = ap.parse_args(argv)
    eps_list = [Fraction(e) for e in (args.eps or ["1/10", "1/100"])]
    sweep_directed(args.n_max, eps_list)
    print()
    sweep_bridge(args.n_max)
    return 0


if __name__ == "__main__":
    sys.exit(main())
