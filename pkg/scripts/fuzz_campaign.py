#!/usr/bin/env python3
"""Large randomized verification campaign with structural statistics.

Runs the full pipeline per instance: potential minimizer, canonical
forest optimum, decomposition, every applicable inequality verifier,
then the aggregate chain.  On top of the CLI fuzz command this sweeps
instance shapes and reports tag and counter histograms plus the worst
observed cost ratio per player count, which is the interesting part
when staring at tightness.
"""

import argparse
import collections
import random
import sys
import time
from fractions import Fraction

from netdesign import (
    GenerationError,
    VerificationError,
    decompose_optimum,
    pos_upper_bound,
    potential_minimizers,
    random_instance,
    save_game,
    social_cost,
    social_optimum,
    verify_aggregate,
    verify_lemma1,
    verify_lemma2,
    verify_lemma3,
)


def run_campaign(args):
    rng = random.Random(args.seed)
    tag_hist = collections.Counter()
    lemma_counts = collections.Counter()
    counter_hist = collections.Counter()
    worst = {}
    generated = 0
    skipped = 0
    violations = []

    start = time.perf_counter()
    for idx in range(args.count):
        n_players = rng.randint(2, args.players)
        n_vertices = rng.randint(3, args.vertices)
        n_edges = rng.randint(n_vertices - 1, args.edges)
        inst_seed = rng.randrange(2**32)
        try:
            g = random_instance(
                n_players, n_vertices, n_edges, (0, args.cost_hi), inst_seed
            )
        except GenerationError:
            skipped += 1
            continue
        generated += 1
        try:
            N = potential_minimizers(g)[0]
            O = social_optimum(g)
            dec = decompose_optimum(g, O)
            connected = len(dec.components) == 1
            for player in g.players:
                reports = [verify_lemma3(g, N, dec, player.id)]
                lemma_counts["lemma3"] += 1
                if connected:
                    reports.append(verify_lemma2(g, N, dec, player.id))
                    lemma_counts["lemma2"] += 1
                if dec.shared_all:
                    reports.append(verify_lemma1(g, N, dec, player.id))
                    lemma_counts["lemma1"] += 1
                for rep in reports:
                    tag_hist.update(rep.deviation.tags)
                    counter_hist.update(rep.counters.values())
            verify_aggregate(g, N, O)
            cost_o = social_cost(g, O)
            if cost_o:
                ratio = social_cost(g, N) / cost_o
                if ratio > worst.get(g.n, Fraction(0)):
                    worst[g.n] = ratio
        except VerificationError as exc:
            violations.append((inst_seed, g, exc))
    elapsed = time.perf_counter() - start

    print(f"instances: {generated} generated, {skipped} skipped, {elapsed:.1f}s")
    for name in ("lemma1", "lemma2", "lemma3"):
        print(f"{name} pivots verified: {lemma_counts[name]}")
    print("tag histogram:")
    for tag, cnt in tag_hist.most_common():
        print(f"  {tag}: {cnt}")
    print("reroute counter histogram:")
    for val, cnt in sorted(counter_hist.items()):
        print(f"  {val}: {cnt}")
    print("worst cost(minimizer)/cost(optimum) per n:")
    for n in sorted(worst):
        ratio = worst[n]
        print(f"  n={n}: {ratio} = {float(ratio):.6f}  (bound {pos_upper_bound(n):.6f})")
    print(f"violations: {len(violations)}")
    for inst_seed, g, exc in violations:
        print(f"  seed {inst_seed}: {exc}")
        if args.dump_violations:
            path = f"violation-{inst_seed}.json"
            with open(path, "w") as fh:
                fh.write(save_game(g))
            print(f"  wrote {path}")
    return 1 if violations else 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--players", type=int, default=3)
    ap.add_argument("--vertices", type=int, default=5)
    ap.add_argument("--edges", type=int, default=8)
    ap.add_argument("--cost-hi", type=int, default=3)
    ap.add_argument("--dump-violations", action="store_true")
    return run_campaign(ap.parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
