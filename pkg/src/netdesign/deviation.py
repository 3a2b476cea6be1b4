"""Deviation profiles routed through a pivot player, and their bounds.

For a pivot player i, the builders assemble a profile that sends every
player j from her own source to the pivot's equilibrium path N_i using
only optimum-forest connectors, and back out to her own target.  Three
verifiers recompute, in exact arithmetic, the inequality

    Phi(N) <= Phi(deviation profile) <= structured RHS

whose right hand side charges every used edge to one of three buckets:
edges of N shared with the pivot, optimum edges crossed by the pivot,
and optimum edges the pivot does not cross.  Any violation raises; a
raised violation would falsify either the builders or the inequality
itself, so the verifiers double as an executable proof check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .costs import mask_of, players_of, set_cost, usage_partition, potential
from .errors import DomainError, LemmaViolation, StructureError, ValidationError
from .game import Game, StrategyProfile, make_profile
from .harmonic import harmonic_int
from .optimum import OptimumDecomposition
from .rationals import format_rational

# construction tags, one per way a player's path can arise
TAG_PIVOT = "pivot-N_i"
TAG_FIVE_STEP = "five-step"
TAG_PRIME = "O-cycle-free-prime"
TAG_DOUBLEPRIME = "O-cycle-free-doubleprime"
TAG_FALLBACK = "fallback-O_j"


def simplify_walk(g: Game, edges, start):
    """Cut every enclosed cycle out of a walk, keeping a simple path.

    Walk vertices are consumed in order; the first time a vertex is
    revisited, the whole segment since its first visit is deleted.
    Deterministic, single pass, linear in the walk length.
    """
    out_v = [start]
    out_e = []
    pos = {start: 0}
    for eid in edges:
        e = g.edge(eid)
        cur = out_v[-1]
        if e.u == cur:
            nxt = e.v
        elif e.v == cur:
            nxt = e.u
        else:
            raise ValidationError(f"edge {eid!r} does not continue the walk at {cur!r}")
        if nxt in pos:
            k = pos[nxt]
            for v in out_v[k + 1 :]:
                del pos[v]
            del out_v[k + 1 :]
            del out_e[k:]
        else:
            pos[nxt] = len(out_v)
            out_v.append(nxt)
            out_e.append(eid)
    return tuple(out_e)


@dataclass(frozen=True, eq=False)
class DeviationProfile:
    """A pivoted profile plus everything needed to audit it.

    paths / tags / walks / segments are aligned with game player order.
    walks hold the raw edge sequences before cycle removal; segments
    keep the per-step split of each walk (five pieces for the shared
    edge construction, three for the connector construction, the bare
    path otherwise).  differs lists the players whose built path is a
    different edge set than their optimum path, pivot excluded; the
    counters map each optimum usage block U to the number of such
    players outside U.
    """

    game: Game
    kind: str
    pivot: object
    profile: StrategyProfile
    paths: tuple
    tags: tuple
    walks: tuple
    segments: tuple
    differs: frozenset
    counters: dict

    def path(self, player_id):
        return self.paths[self.game.player_index(player_id)]

    def tag(self, player_id):
        return self.tags[self.game.player_index(player_id)]

    def walk(self, player_id):
        return self.walks[self.game.player_index(player_id)]


def _audit(g: Game, O: StrategyProfile, opart, paths, pivot_idx):
    """Measure which players were rerouted and the per-block counters."""
    differs = set()
    for idx, player in enumerate(g.players):
        if idx == pivot_idx:
            continue
        if frozenset(paths[idx]) != frozenset(O.paths[idx]):
            differs.add(player.id)
    dmask = mask_of(g, differs)
    counters = {mask: (dmask & ~mask).bit_count() for mask in opart.blocks}
    return frozenset(differs), counters


def _finish(g, kind, pivot, paths, tags, walks, segments, dec):
    profile = make_profile(g, paths)
    differs, counters = _audit(
        g, dec.profile, dec.partition, paths, g.player_index(pivot)
    )
    return DeviationProfile(
        game=g,
        kind=kind,
        pivot=pivot,
        profile=profile,
        paths=tuple(tuple(p) for p in paths),
        tags=tuple(tags),
        walks=tuple(tuple(w) for w in walks),
        segments=tuple(segments),
        differs=differs,
        counters=counters,
    )


def build_S(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i) -> DeviationProfile:
    """Five-step deviation profile for instances whose optimum has a
    spine edge shared by all players.

    Every player j walks: along her optimum path up to the first edge
    she shares with the pivot, back along the pivot's optimum prefix to
    the pivot's source, across the pivot's equilibrium path, back along
    the pivot's optimum suffix from the last shared edge, and finally
    out along her own optimum suffix.  Cycles are cut afterwards.  All
    bookkeeping runs in the source-side orientation recorded by the
    decomposition; stored paths are flipped back for swapped players.
    """
    if g.directed:
        raise ValidationError("deviation profiles need an undirected game")
    if not dec.shared_all:
        raise StructureError(
            "no edge is shared by all players; use the connector construction"
        )
    i_idx = g.player_index(i)
    ni = tuple(N.paths[i_idx])
    ni_oriented = tuple(reversed(ni)) if i in dec.swapped else ni
    oi = dec.oriented_edges[i]

    paths, tags, walks, segments = [], [], [], []
    for idx, player in enumerate(g.players):
        j = player.id
        if idx == i_idx:
            paths.append(ni)
            tags.append(TAG_PIVOT)
            walks.append(ni)
            segments.append((ni,))
            continue
        oj = dec.oriented_edges[j]
        u = dec.first_shared[(i, j)]
        v = dec.last_shared[(i, j)]
        step1 = oj[: oj.index(u)]
        step2 = tuple(reversed(oi[: oi.index(u)]))
        step4 = tuple(reversed(oi[oi.index(v) + 1 :]))
        step5 = oj[oj.index(v) + 1 :]
        walk = step1 + step2 + ni_oriented + step4 + step5
        simple = simplify_walk(g, walk, dec.oriented_vertices[j][0])
        if j in dec.swapped:
            simple = tuple(reversed(simple))
        paths.append(simple)
        tags.append(TAG_FIVE_STEP)
        walks.append(walk)
        segments.append((step1, step2, ni_oriented, step4, step5))
    return _finish(g, "S", i, paths, tags, walks, segments, dec)


def _connector_choice(dec: OptimumDecomposition, i, j):
    """Pick the connector pair for routing j through pivot i.

    Returns (tag, entry connector, exit connector); connectors are None
    on fallback.  The primed variant enters at the pivot's source and
    leaves from its target, the doubly primed variant does the reverse;
    a variant is usable only when its two connectors are edge disjoint,
    and the primed one wins when both are.
    """
    g = dec.game
    if dec.player_component(i) != dec.player_component(j):
        return TAG_FALLBACK, None, None
    pi = g.players[g.player_index(i)]
    pj = g.players[g.player_index(j)]
    entry = dec.tree_path(pj.source, pi.source)
    exit_ = dec.tree_path(pi.target, pj.target)
    if not set(entry) & set(exit_):
        return TAG_PRIME, entry, exit_
    entry2 = dec.tree_path(pj.source, pi.target)
    exit2 = dec.tree_path(pi.source, pj.target)
    if not set(entry2) & set(exit2):
        return TAG_DOUBLEPRIME, entry2, exit2
    return TAG_FALLBACK, None, None


def build_T(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i) -> DeviationProfile:
    """Connector based deviation profile; total for undirected games.

    Players in another optimum component than the pivot, and players
    for which neither connector variant is edge disjoint, keep their
    optimum path unchanged.
    """
    if g.directed:
        raise ValidationError("deviation profiles need an undirected game")
    i_idx = g.player_index(i)
    ni = tuple(N.paths[i_idx])

    paths, tags, walks, segments = [], [], [], []
    for idx, player in enumerate(g.players):
        j = player.id
        if idx == i_idx:
            paths.append(ni)
            tags.append(TAG_PIVOT)
            walks.append(ni)
            segments.append((ni,))
            continue
        tag, entry, exit_ = _connector_choice(dec, i, j)
        if tag == TAG_FALLBACK:
            oj = tuple(dec.profile.paths[idx])
            paths.append(oj)
            tags.append(tag)
            walks.append(oj)
            segments.append((oj,))
            continue
        mid = ni if tag == TAG_PRIME else tuple(reversed(ni))
        walk = tuple(entry) + mid + tuple(exit_)
        simple = simplify_walk(g, walk, player.source)
        paths.append(simple)
        tags.append(tag)
        walks.append(walk)
        segments.append((tuple(entry), mid, tuple(exit_)))
    return _finish(g, "T", i, paths, tags, walks, segments, dec)


class TraversalVerdict(NamedTuple):
    case: str
    may_traverse: bool


def classify_edge_traversal(dec: OptimumDecomposition, e, U, i, j) -> TraversalVerdict:
    """Case label and permission for edge e of optimum block U to show
    up in player j's connector built path under pivot i.

    The verdict speaks about the connector steps only: an edge that
    also lies on the pivot's equilibrium path is charged to the first
    bucket of the inequality and is exempt from the prohibition.
    """
    g = dec.game
    mask = U if isinstance(U, int) else mask_of(g, U)
    if dec.partition.edge_masks.get(e) != mask:
        raise DomainError(f"edge {e!r} is not the optimum block of exactly {U!r}")
    i_in = bool(mask >> g.player_index(i) & 1)
    j_in = bool(mask >> g.player_index(j) & 1)
    if not i_in and j_in:
        return TraversalVerdict("i-out-j-in", True)
    if not i_in and not j_in:
        return TraversalVerdict("i-out-j-out", False)
    if i_in and j_in:
        return TraversalVerdict("i-in-j-in", False)
    tag = _connector_choice(dec, i, j)[0]
    if tag == TAG_FALLBACK:
        return TraversalVerdict("i-in-j-out-fallback", False)
    return TraversalVerdict("i-in-j-out-rerouted", True)


@dataclass(frozen=True)
class LemmaTerm:
    """One summand of a verified right hand side."""

    kind: str
    players: tuple
    harmonic_index: int
    coefficient: Fraction
    weight: Fraction
    value: Fraction

    def to_dict(self):
        return {
            "kind": self.kind,
            "players": list(self.players),
            "harmonic_index": self.harmonic_index,
            "coefficient": format_rational(self.coefficient),
            "weight": format_rational(self.weight),
            "value": format_rational(self.value),
        }


@dataclass(frozen=True, eq=False)
class LemmaReport:
    """Both sides of one verified inequality with its full term table."""

    lemma: str
    pivot: object
    phi_nash: Fraction
    phi_deviation: Fraction
    rhs: Fraction
    terms: tuple
    counters: dict
    ok: bool
    deviation: DeviationProfile

    def to_dict(self):
        return {
            "lemma": self.lemma,
            "pivot": self.pivot,
            "phi_nash": format_rational(self.phi_nash),
            "phi_deviation": format_rational(self.phi_deviation),
            "rhs": format_rational(self.rhs),
            "ok": self.ok,
            "tags": {
                str(p.id): tag
                for p, tag in zip(self.deviation.game.players, self.deviation.tags)
            },
            "terms": [t.to_dict() for t in self.terms],
        }


def _verify(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i, lemma):
    """Shared verifier core.

    Recomputes the usage partitions and the rerouting counters from the
    built paths rather than trusting the builder's own records, so that
    the check stays an independent oracle.
    """
    i_idx = g.player_index(i)
    if lemma == "lemma1":
        dev = build_S(g, N, dec, i)
    else:
        dev = build_T(g, N, dec, i)
    phi_n = potential(g, N)
    phi_d = potential(g, dev.profile)
    npart = usage_partition(g, N)
    opart = usage_partition(g, dec.profile)
    differs, counters = _audit(g, dec.profile, opart, dev.paths, i_idx)

    n = g.n
    hn = harmonic_int(n)
    bit = 1 << i_idx
    group = dec.groups[dec.player_component(i)]
    gsize = len(group)
    gmask = mask_of(g, group)
    terms = []
    problems = []
    for mask in sorted(npart.blocks):
        if not mask & bit:
            continue
        w = npart.block_cost(g, mask)
        terms.append(
            LemmaTerm("nash", players_of(g, mask), n, hn, w, hn * w)
        )
    for mask in sorted(opart.blocks):
        w = opart.block_cost(g, mask)
        size = mask.bit_count()
        if mask & bit:
            if lemma == "lemma1":
                sub = n - size
            else:
                sub = counters[mask]
                if lemma == "lemma2" and sub > n - size:
                    problems.append(
                        f"counter {sub} exceeds {n - size} on block {players_of(g, mask)}"
                    )
                if lemma == "lemma3":
                    if mask & ~gmask:
                        problems.append(
                            f"block {players_of(g, mask)} leaves the pivot's group"
                        )
                    if sub > gsize - size:
                        problems.append(
                            f"counter {sub} exceeds {gsize - size} on block "
                            f"{players_of(g, mask)}"
                        )
            h = harmonic_int(sub)
            terms.append(
                LemmaTerm("opt-pivot", players_of(g, mask), sub, h, w, h * w)
            )
        else:
            h = harmonic_int(size)
            terms.append(
                LemmaTerm("opt-other", players_of(g, mask), size, h, w, h * w)
            )
    rhs = sum((t.value for t in terms), Fraction(0))
    if phi_n > phi_d:
        problems.append(
            f"potential rose: {format_rational(phi_n)} > {format_rational(phi_d)}"
        )
    if phi_d > rhs:
        problems.append(
            f"bound failed: {format_rational(phi_d)} > {format_rational(rhs)}"
        )
    report = LemmaReport(
        lemma=lemma,
        pivot=i,
        phi_nash=phi_n,
        phi_deviation=phi_d,
        rhs=rhs,
        terms=tuple(terms),
        counters=counters,
        ok=not problems,
        deviation=dev,
    )
    if problems:
        raise LemmaViolation(
            f"{lemma} pivot {i!r}: " + "; ".join(problems), report=report
        )
    return report


def verify_lemma1(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i) -> LemmaReport:
    """Check the five-step inequality for pivot i, exactly.

    Needs an optimum with an all-player edge.  The RHS charges H_n to
    the pivot's equilibrium blocks, H_{n-|U|} to optimum blocks crossed
    by the pivot, and H_{|U|} to the rest.
    """
    return _verify(g, N, dec, i, "lemma1")


def verify_lemma2(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i) -> LemmaReport:
    """Connector inequality on a connected optimum forest.

    Same shape as verify_lemma1, but blocks crossed by the pivot are
    charged H of the measured rerouting counter, which is checked to
    stay at most n - |U|.
    """
    if len(dec.components) != 1:
        raise StructureError("the optimum edge set is not connected")
    return _verify(g, N, dec, i, "lemma2")


def verify_lemma3(g: Game, N: StrategyProfile, dec: OptimumDecomposition, i) -> LemmaReport:
    """General forest version of verify_lemma2.

    Counter bound tightens to |R| - |U| where R is the pivot's player
    group; blocks crossed by the pivot are checked to lie inside R.
    """
    return _verify(g, N, dec, i, "lemma3")
