"""Command line front end: analyze, verify-lemmas, bounds, fuzz, gen.

Exit codes: 0 success, 2 usage, 10 parse, 11 validation, 12 budget,
13 verification failure, 14 io.  All reports are reproducible byte for
byte given identical inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .bounds import bound_gap_table, verify_aggregate
from .deviation import verify_lemma1, verify_lemma2, verify_lemma3
from .enumeration import DEFAULT_PROFILE_BUDGET
from .equilibrium import potential_minimizers, price_ratios
from .errors import (
    BudgetError,
    DomainError,
    GenerationError,
    ParseError,
    StructureError,
    ValidationError,
    VerificationError,
)
from .game import load_game, save_game
from .generators import directed_harmonic_family, random_instance, shared_bridge_family
from .optimum import decompose_optimum, minimum_forest_optima, social_optimum
from .rationals import decimal_str, format_rational, parse_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 10
EXIT_VALIDATION = 11
EXIT_BUDGET = 12
EXIT_VERIFICATION = 13
EXIT_IO = 14

_GAP_DECADES = [100, 1_000, 10_000, 100_000, 1_000_000]


def _fmt(value):
    """Exact rational plus a 12 significant digit decimal rendering."""
    return f"{format_rational(value)} ({decimal_str(value)})"


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_instance(path: str):
    return load_game(Path(path).read_text())


def cmd_analyze(args) -> int:
    g = _read_instance(args.instance)
    report = price_ratios(g, args.max_profiles)
    if args.json:
        doc = {
            "players": g.n,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "profiles": report.space.size,
            "nash_count": len(report.nash_flats),
            "minimizer_count": len(report.minimizer_flats),
            "potential_min": format_rational(report.potential_min),
            "optimum_cost": format_rational(report.optimum_cost),
            "nash_cost_min": format_rational(report.nash_cost_min),
            "nash_cost_max": format_rational(report.nash_cost_max),
            "pos": None if report.pos is None else format_rational(report.pos),
            "poa": None if report.poa is None else format_rational(report.poa),
            "popoa": None if report.popoa is None else format_rational(report.popoa),
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        return EXIT_OK
    lines = [
        f"instance: {args.instance}",
        f"players: {g.n}  vertices: {len(g.vertices)}  edges: {len(g.edges)}",
        f"profiles: {report.space.size}",
        f"nash equilibria: {len(report.nash_flats)}",
        f"potential minimizers: {len(report.minimizer_flats)}",
        f"potential minimum: {_fmt(report.potential_min)}",
        f"optimum cost: {_fmt(report.optimum_cost)}",
        f"nash cost range: {_fmt(report.nash_cost_min)} .. {_fmt(report.nash_cost_max)}",
    ]
    if report.defined:
        lines.append(f"PoS = {_fmt(report.pos)}")
        lines.append(f"PoA = {_fmt(report.poa)}")
        lines.append(f"POPoA = {_fmt(report.popoa)}")
    else:
        lines.append("PoS = undefined (optimum cost is 0)")
        lines.append("PoA = undefined (optimum cost is 0)")
        lines.append("POPoA = undefined (optimum cost is 0)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _applicable_verifier(dec):
    if dec.shared_all:
        return "lemma1", verify_lemma1
    if len(dec.components) == 1:
        return "lemma2", verify_lemma2
    return "lemma3", verify_lemma3


def _verify_one(g, N, O):
    """Run the applicable lemma for every pivot plus the aggregate chain.

    Returns (lines, reports, failures); a failing check still produces
    its report line so the whole table is printed before the nonzero
    exit.
    """
    lines = []
    reports = []
    failures = []
    dec = decompose_optimum(g, O)
    name, verifier = _applicable_verifier(dec)
    for player in g.players:
        try:
            rep = verifier(g, N, dec, player.id)
            verdict = "PASS"
        except VerificationError as exc:
            if exc.report is None:
                raise
            rep = exc.report
            verdict = "FAIL"
            failures.append(f"{name} pivot {player.id!r}")
        reports.append(rep)
        lines.append(
            f"{name} pivot {player.id!r}: phi(N) = {_fmt(rep.phi_nash)}, "
            f"phi(dev) = {_fmt(rep.phi_deviation)}, RHS = {_fmt(rep.rhs)}  {verdict}"
        )
    try:
        agg = verify_aggregate(g, N, O)
        lines.append("aggregate: PASS")
    except VerificationError as exc:
        agg = exc.report
        failures.append("aggregate")
        lines.append("aggregate: FAIL")
    for check in agg.checks:
        tick = "ok" if check.ok else "VIOLATED"
        if check.exact:
            lines.append(
                f"  {check.name}: {_fmt(check.lhs)} <= {_fmt(check.rhs)}  {tick}"
            )
        else:
            lines.append(f"  {check.name}: {check.lhs!r} <= {check.rhs!r}  {tick}")
    return lines, (name, reports, agg), failures


def cmd_verify_lemmas(args) -> int:
    g = _read_instance(args.instance)
    if g.directed:
        raise ValidationError(
            "the deviation constructions need an undirected instance"
        )
    minimizers = potential_minimizers(g, args.max_profiles)
    optima = minimum_forest_optima(g, args.max_profiles)
    if not optima:
        raise StructureError("no minimum-cost forest profile exists")
    n_list = minimizers if args.all_minimizers else minimizers[:1]
    o_list = optima if args.all_optima else optima[:1]

    lines = []
    docs = []
    failures = []
    for ni, N in enumerate(n_list):
        for oi, O in enumerate(o_list):
            if len(n_list) > 1 or len(o_list) > 1:
                lines.append(f"minimizer {ni}, optimum {oi}:")
            pair_lines, (name, reports, agg), pair_failures = _verify_one(g, N, O)
            lines.extend(pair_lines)
            failures.extend(pair_failures)
            docs.append(
                {
                    "minimizer": ni,
                    "optimum": oi,
                    "lemma": name,
                    "pivots": [r.to_dict() for r in reports],
                    "aggregate": agg.to_dict(),
                }
            )
    if args.json:
        _emit(json.dumps(docs, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    if failures:
        raise VerificationError("verification failed: " + ", ".join(failures))
    return EXIT_OK


def cmd_bounds(args) -> int:
    ns = set(args.n or [])
    if args.n_max is not None:
        if args.n_max < 2:
            raise DomainError(f"--n-max must be at least 2, got {args.n_max}")
        ns.update(range(2, args.n_max + 1))
    if not ns:
        ns.update(_GAP_DECADES)
    table = bound_gap_table(sorted(ns))
    if args.format == "json":
        _emit(table.to_json(), args.out)
    else:
        _emit(table.to_csv(), args.out)
    if args.epsilon is not None:
        least = table.least_n_below(args.epsilon)
        if least is None:
            sys.stdout.write(f"no tabulated n has gap < {args.epsilon}\n")
        else:
            sys.stdout.write(f"least tabulated n with gap < {args.epsilon}: {least}\n")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    lemma_counts = {"lemma1": 0, "lemma2": 0, "lemma3": 0}
    aggregates = 0
    violations = []
    lo_players = min(2, args.players)
    lo_vertices = min(3, args.vertices)
    lo_edges = min(4, args.edges)
    for idx in range(args.count):
        sub = random.Random(args.seed * 1_000_000 + idx)
        n_players = sub.randint(lo_players, args.players)
        n_vertices = sub.randint(lo_vertices, args.vertices)
        n_edges = sub.randint(lo_edges, args.edges)
        inst_seed = sub.randrange(2**32)
        try:
            g = random_instance(n_players, n_vertices, n_edges, (0, 3), inst_seed)
        except GenerationError:
            continue
        try:
            N = potential_minimizers(g, args.max_profiles)[0]
            O = social_optimum(g, args.max_profiles)
            dec = decompose_optimum(g, O)
            name, verifier = _applicable_verifier(dec)
            for player in g.players:
                verifier(g, N, dec, player.id)
                lemma_counts[name] += 1
            verify_aggregate(g, N, O)
            aggregates += 1
        except VerificationError as exc:
            violations.append(f"instance {idx}: {exc}")
            if args.dump_dir is not None:
                dump = Path(args.dump_dir)
                dump.mkdir(parents=True, exist_ok=True)
                (dump / f"fuzz-{idx}.json").write_text(save_game(g))
    lines = [
        "fuzz summary",
        f"seed: {args.seed}",
        f"requested: {args.count}",
        f"params: players<={args.players} vertices<={args.vertices} edges<={args.edges}",
        f"lemma1 pivots: {lemma_counts['lemma1']}",
        f"lemma2 pivots: {lemma_counts['lemma2']}",
        f"lemma3 pivots: {lemma_counts['lemma3']}",
        f"aggregate reports: {aggregates}",
        f"violations: {len(violations)}",
    ]
    lines.extend(violations)
    _emit("\n".join(lines) + "\n", args.out)
    if violations:
        raise VerificationError(f"{len(violations)} fuzz violations")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "random":
        g = random_instance(
            args.players,
            args.vertices,
            args.edges,
            (parse_rational(args.cost_lo), parse_rational(args.cost_hi)),
            args.seed,
        )
    elif args.family == "directed":
        g = directed_harmonic_family(args.players, parse_rational(args.eps))
    else:
        g = shared_bridge_family(
            args.players,
            parse_rational(args.bridge_cost),
            parse_rational(args.spoke_cost),
        )
    _emit(save_game(g), args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-profiles",
        type=int,
        default=DEFAULT_PROFILE_BUDGET,
        help="refuse profile spaces larger than this",
    )
    common.add_argument("--out", default=None, help="write the report to a file")

    parser = argparse.ArgumentParser(
        prog="netdesign",
        description="Exact equilibrium analysis for Shapley network design games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="equilibria and price ratios")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "verify-lemmas", parents=[common], help="deviation and aggregate checks"
    )
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.add_argument("--all-minimizers", action="store_true")
    p.add_argument("--all-optima", action="store_true")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("bounds", parents=[common], help="bound and gap table")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fuzz", parents=[common], help="randomized pipeline campaign")
    p.add_argument("--players", type=int, default=3)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--edges", type=int, default=8)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-dir", default=None)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gen", parents=[common], help="write a generated instance")
    p.add_argument("--family", choices=["random", "directed", "bridge"], required=True)
    p.add_argument("--players", type=int, default=2)
    p.add_argument("--vertices", type=int, default=4)
    p.add_argument("--edges", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cost-lo", default="0")
    p.add_argument("--cost-hi", default="3")
    p.add_argument("--eps", default="1/10")
    p.add_argument("--bridge-cost", default="1")
    p.add_argument("--spoke-cost", default="1")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, DomainError, StructureError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
