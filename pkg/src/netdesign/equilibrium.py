"""Best responses, Nash enumeration, potential minimizers, dynamics,
and the three price ratios.

Ground truth throughout is the exhaustive scan over the profile space.
The scan works on integer-rescaled costs: multiplying every edge cost
by the lcm of the cost denominators and every share by lcm(1..n) turns
all Shapley shares and all potential terms into machine integers, so
the inner loop stays exact without Fraction overhead.  Public results
are converted back to Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .costs import player_cost, potential
from .enumeration import (
    DEFAULT_PROFILE_BUDGET,
    StrategySpace,
    build_strategy_space,
    check_budget,
    enumerate_paths,
    profile_from_flat,
)
from .errors import VerificationError
from .game import Game, StrategyProfile, make_profile
from .harmonic import harmonic_int

# beyond this many opponent combinations per player the best-response
# memo would dominate memory, so the scan recomputes instead
_CACHE_LIMIT = 500_000


def _others_usage(p: StrategyProfile, own_path):
    usage = dict(p.usage)
    for eid in own_path:
        k = usage[eid] - 1
        if k:
            usage[eid] = k
        else:
            del usage[eid]
    return usage


def _best_against(g: Game, others, i, paths):
    """Cheapest path of player i when the other players' usage is fixed.

    Cost of a candidate path is the substituted share sum
    c_e / (k + 1) with k the number of others on e.  Ties go to the
    lexicographically smallest edge-id sequence; `paths` is already in
    that order, so the first strict minimum wins.
    """
    if paths is None:
        paths = enumerate_paths(g, i)
    best_cost = None
    best_path = None
    for q in paths:
        c = Fraction(0)
        for eid in q:
            c += g.edge(eid).cost / (others.get(eid, 0) + 1)
        if best_cost is None or c < best_cost:
            best_cost = c
            best_path = q
    return best_cost, best_path


def best_response(g: Game, p: StrategyProfile, i, paths=None):
    """A cost-minimizing unilateral reply for player i against p.

    Equivalent to an exact shortest path under weights c_e / (k + 1),
    where k counts the other players on e; ties break to the
    lexicographically smallest edge-id sequence.
    """
    idx = g.player_index(i)
    others = _others_usage(p, p.paths[idx])
    _, path = _best_against(g, others, i, paths)
    return path


class NashVerdict(NamedTuple):
    ok: bool
    player: object
    path: tuple
    current_cost: object
    deviation_cost: object

    def __bool__(self):
        return self.ok


def is_nash(g: Game, p: StrategyProfile, space: StrategySpace = None) -> NashVerdict:
    """Check the profile for strictly improving unilateral deviations.

    Returns a truthy verdict when none exists; otherwise the verdict
    carries the first deviating player (in id order) and her improving
    path as a witness.
    """
    for idx, player in enumerate(g.players):
        own = p.paths[idx]
        others = _others_usage(p, own)
        paths = space.paths[idx] if space is not None else None
        best_cost, best_path = _best_against(g, others, player.id, paths)
        cur = player_cost(g, p, player.id)
        if best_cost < cur:
            return NashVerdict(False, player.id, best_path, cur, best_cost)
    return NashVerdict(True, None, None, None, None)


@dataclass(frozen=True, eq=False)
class ScanResult:
    """Everything one lexicographic pass over the profile space yields."""

    space: StrategySpace
    size: int
    phi_min: Fraction
    minimizer_flats: tuple
    minimizer_cost_max: Fraction
    minimizer_cost_max_flat: int
    nash_flats: tuple
    nash_cost_min: Fraction
    nash_cost_min_flat: int
    nash_cost_max: Fraction
    nash_cost_max_flat: int
    cost_min: Fraction
    first_min_flat: int
    forest_flat: object
    forest_flats: tuple

    def profile(self, flat: int) -> StrategyProfile:
        return profile_from_flat(self.space, flat)


def scan_space(
    space: StrategySpace,
    budget: int = DEFAULT_PROFILE_BUDGET,
    collect_forest_optima: bool = False,
) -> ScanResult:
    """Single exhaustive pass computing minimizers, equilibria, optima.

    Profile indices are advanced odometer-style so potential and social
    cost are maintained incrementally; per-player best-response values
    are memoized on the opponents' index tuple.
    """
    g = space.game
    size = check_budget(space, budget)
    n = g.n
    m = len(g.edges)
    denom = math.lcm(*(e.cost.denominator for e in g.edges))
    hd = math.lcm(*range(1, n + 1))
    sc = [int(e.cost * denom) for e in g.edges]
    share = [[0] * (n + 1) for _ in range(m)]
    for e in range(m):
        for k in range(1, n + 1):
            share[e][k] = sc[e] * (hd // k)
    shnum = [int(harmonic_int(k) * hd) for k in range(n + 1)]
    paths_ix = space.index_paths()
    sizes = space.sizes
    usage = [0] * m
    phi_s = 0
    cost_s = 0

    def apply(pix, delta):
        nonlocal phi_s, cost_s
        for e in pix:
            k0 = usage[e]
            k1 = k0 + delta
            usage[e] = k1
            phi_s += sc[e] * (shnum[k1] - shnum[k0])
            if k0 == 0:
                cost_s += sc[e]
            elif k1 == 0:
                cost_s -= sc[e]

    indices = [0] * n
    for pos in range(n):
        apply(paths_ix[pos][0], +1)

    best_cache = [
        {} if size // sizes[i] <= _CACHE_LIMIT else None for i in range(n)
    ]
    edges_uv = [(e.u, e.v) for e in g.edges]

    def acyclic_now():
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(m):
            if usage[e]:
                u, v = edges_uv[e]
                parent.setdefault(u, u)
                parent.setdefault(v, v)
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
        return True

    phi_best = None
    phi_flats = []
    mz_cost_max = None
    mz_cost_max_flat = None
    nash_flats = []
    ne_min = ne_max = None
    ne_min_flat = ne_max_flat = None
    cost_best = None
    first_min_flat = None
    forest_flat = None
    forest_flats = []

    for flat in range(size):
        if phi_best is None or phi_s < phi_best:
            phi_best = phi_s
            phi_flats = [flat]
            mz_cost_max = cost_s
            mz_cost_max_flat = flat
        elif phi_s == phi_best:
            phi_flats.append(flat)
            if cost_s > mz_cost_max:
                mz_cost_max = cost_s
                mz_cost_max_flat = flat

        if cost_best is None or cost_s < cost_best:
            cost_best = cost_s
            first_min_flat = flat
            forest_flat = None
            forest_flats = []
        if cost_s == cost_best and (
            forest_flat is None or collect_forest_optima
        ):
            if acyclic_now():
                if forest_flat is None:
                    forest_flat = flat
                if collect_forest_optima:
                    forest_flats.append(flat)

        is_ne = True
        for i in range(n):
            pix = paths_ix[i][indices[i]]
            cur = 0
            for e in pix:
                cur += share[e][usage[e]]
            cache = best_cache[i]
            best = None
            if cache is not None:
                key = tuple(indices[:i] + indices[i + 1 :])
                best = cache.get(key)
            if best is None:
                km = usage.copy()
                for e in pix:
                    km[e] -= 1
                best = min(
                    sum(share[e][km[e] + 1] for e in q) for q in paths_ix[i]
                )
                if cache is not None:
                    cache[key] = best
            if cur != best:
                is_ne = False
                break
        if is_ne:
            nash_flats.append(flat)
            if ne_min is None or cost_s < ne_min:
                ne_min = cost_s
                ne_min_flat = flat
            if ne_max is None or cost_s > ne_max:
                ne_max = cost_s
                ne_max_flat = flat

        pos = n - 1
        while pos >= 0:
            old = indices[pos]
            apply(paths_ix[pos][old], -1)
            new = old + 1
            if new < sizes[pos]:
                indices[pos] = new
                apply(paths_ix[pos][new], +1)
                break
            indices[pos] = 0
            apply(paths_ix[pos][0], +1)
            pos -= 1

    scale_phi = denom * hd
    return ScanResult(
        space=space,
        size=size,
        phi_min=Fraction(phi_best, scale_phi),
        minimizer_flats=tuple(phi_flats),
        minimizer_cost_max=Fraction(mz_cost_max, denom),
        minimizer_cost_max_flat=mz_cost_max_flat,
        nash_flats=tuple(nash_flats),
        nash_cost_min=Fraction(ne_min, denom),
        nash_cost_min_flat=ne_min_flat,
        nash_cost_max=Fraction(ne_max, denom),
        nash_cost_max_flat=ne_max_flat,
        cost_min=Fraction(cost_best, denom),
        first_min_flat=first_min_flat,
        forest_flat=forest_flat,
        forest_flats=tuple(forest_flats),
    )


def enumerate_nash(g: Game, budget: int = DEFAULT_PROFILE_BUDGET):
    """Exactly the profiles with no strictly improving deviation."""
    space = build_strategy_space(g)
    scan = scan_space(space, budget)
    return [scan.profile(flat) for flat in scan.nash_flats]


def potential_minimizers(g: Game, budget: int = DEFAULT_PROFILE_BUDGET):
    """All profiles attaining the global potential minimum.

    By the potential argument every one of them is a Nash equilibrium;
    that is re-checked against the scan's own Nash flags before
    returning, and a failure would be an implementation bug.
    """
    space = build_strategy_space(g)
    scan = scan_space(space, budget)
    nash = set(scan.nash_flats)
    for flat in scan.minimizer_flats:
        if flat not in nash:
            raise VerificationError(
                f"potential minimizer {flat} failed the Nash check", report=scan
            )
    return [scan.profile(flat) for flat in scan.minimizer_flats]


class MoveRecord(NamedTuple):
    player: object
    old_cost: Fraction
    new_cost: Fraction
    potential: Fraction


def best_response_dynamics(g: Game, start: StrategyProfile, order=None):
    """Run improving best replies to convergence.

    `order` is the player schedule per round (default: id order).  The
    potential strictly decreases at every move over a finite space, so
    the loop terminates; the result is a Nash equilibrium.  The trace
    records (player, old cost, new cost, potential after the move).
    """
    if order is None:
        order = [p.id for p in g.players]
    paths_by_player = {p.id: enumerate_paths(g, p.id) for p in g.players}
    current = start
    trace = []
    while True:
        moved = False
        for pid in order:
            idx = g.player_index(pid)
            own = current.paths[idx]
            others = _others_usage(current, own)
            best_cost, best_path = _best_against(g, others, pid, paths_by_player[pid])
            cur_cost = player_cost(g, current, pid)
            if best_cost < cur_cost:
                new_paths = list(current.paths)
                new_paths[idx] = best_path
                current = make_profile(g, new_paths)
                trace.append(MoveRecord(pid, cur_cost, best_cost, potential(g, current)))
                moved = True
        if not moved:
            return current, trace


@dataclass(frozen=True, eq=False)
class EquilibriumReport:
    """Equilibria, minimizers, optimum cost, and the three price ratios.

    When the optimum cost is zero the ratios are undefined; `defined`
    is False and the ratio fields are None in that case.
    """

    space: StrategySpace
    nash_flats: tuple
    minimizer_flats: tuple
    potential_min: Fraction
    nash_cost_min: Fraction
    nash_cost_max: Fraction
    optimum_cost: Fraction
    optimum_flat: int
    defined: bool
    pos: object
    poa: object
    popoa: object
    pos_witness_flat: int
    poa_witness_flat: int
    popoa_witness_flat: int

    def profile(self, flat: int) -> StrategyProfile:
        return profile_from_flat(self.space, flat)

    def nash_profiles(self):
        return [self.profile(f) for f in self.nash_flats]

    def minimizer_profiles(self):
        return [self.profile(f) for f in self.minimizer_flats]

    def optimum_profile(self) -> StrategyProfile:
        return self.profile(self.optimum_flat)


def price_ratios(g: Game, budget: int = DEFAULT_PROFILE_BUDGET) -> EquilibriumReport:
    """Exact PoS, PoA, and potential-optimal PoA by exhaustive scan."""
    space = build_strategy_space(g)
    scan = scan_space(space, budget)
    nash = set(scan.nash_flats)
    for flat in scan.minimizer_flats:
        if flat not in nash:
            raise VerificationError(
                f"potential minimizer {flat} failed the Nash check", report=scan
            )
    opt_cost = scan.cost_min
    opt_flat = scan.forest_flat if scan.forest_flat is not None else scan.first_min_flat
    defined = opt_cost != 0
    if defined:
        pos = scan.nash_cost_min / opt_cost
        poa = scan.nash_cost_max / opt_cost
        popoa = scan.minimizer_cost_max / opt_cost
    else:
        pos = poa = popoa = None
    return EquilibriumReport(
        space=space,
        nash_flats=scan.nash_flats,
        minimizer_flats=scan.minimizer_flats,
        potential_min=scan.phi_min,
        nash_cost_min=scan.nash_cost_min,
        nash_cost_max=scan.nash_cost_max,
        optimum_cost=opt_cost,
        optimum_flat=opt_flat,
        defined=defined,
        pos=pos,
        poa=poa,
        popoa=popoa,
        pos_witness_flat=scan.nash_cost_min_flat,
        poa_witness_flat=scan.nash_cost_max_flat,
        popoa_witness_flat=scan.minimizer_cost_max_flat,
    )
