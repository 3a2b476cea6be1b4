"""Social optima with forest structure, and their decomposition.

The decomposition splits a forest optimum O into its connected
components C_m with player groups R_m, the usage blocks O_U, the
all-player edge set O^n, and, when O^n is nonempty, the two side trees
(the one holding every source, called the source side, and the one
holding every target) together with the first and last shared edges
u_{i,j} and v_{i,j} per ordered player pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .costs import UsagePartition, usage_partition
from .enumeration import DEFAULT_PROFILE_BUDGET, build_strategy_space
from .equilibrium import scan_space
from .errors import StructureError, ValidationError
from .game import Game, StrategyProfile, id_key, make_profile, trace_path


def social_optimum(g: Game, budget: int = DEFAULT_PROFILE_BUDGET) -> StrategyProfile:
    """A minimum social cost profile, canonical and forest-shaped.

    For undirected games the result is the lexicographically smallest
    minimum-cost profile whose edge union is acyclic (one always
    exists: deleting a cycle edge never raises the cost).  Directed
    games get the same rule, falling back to the lexicographically
    smallest minimum-cost profile when no minimum-cost union is a
    forest.
    """
    space = build_strategy_space(g)
    scan = scan_space(space, budget)
    if scan.forest_flat is not None:
        return scan.profile(scan.forest_flat)
    if g.directed:
        return scan.profile(scan.first_min_flat)
    raise StructureError("no minimum-cost forest profile found")


def minimum_forest_optima(g: Game, budget: int = DEFAULT_PROFILE_BUDGET):
    """Every minimum-cost profile whose edge union is a forest."""
    space = build_strategy_space(g)
    scan = scan_space(space, budget, collect_forest_optima=True)
    return [scan.profile(flat) for flat in scan.forest_flats]


def _components(vertices, adj):
    """Connected components as (vertex frozenset, edge frozenset) pairs."""
    seen = set()
    comps = []
    for start in vertices:
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        comp_v = {start}
        comp_e = set()
        while stack:
            v = stack.pop()
            for eid, w in adj.get(v, ()):
                comp_e.add(eid)
                if w not in comp_v:
                    comp_v.add(w)
                    seen.add(w)
                    stack.append(w)
        comps.append((frozenset(comp_v), frozenset(comp_e)))
    return comps


def _union_adj(g: Game, edge_ids):
    """Undirected adjacency of an edge subset, in edge-id order."""
    adj = {}
    for eid in sorted(edge_ids, key=id_key):
        e = g.edge(eid)
        adj.setdefault(e.u, []).append((eid, e.v))
        adj.setdefault(e.v, []).append((eid, e.u))
    return adj


def _has_cycle(g: Game, edge_ids):
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in edge_ids:
        e = g.edge(eid)
        parent.setdefault(e.u, e.u)
        parent.setdefault(e.v, e.v)
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def _tree_walk(adj, src, dst):
    """Unique path between two vertices of a forest, or None."""
    if src == dst:
        return ()
    prev = {src: None}
    stack = [src]
    while stack:
        v = stack.pop()
        for eid, w in adj.get(v, ()):
            if w not in prev:
                prev[w] = (eid, v)
                if w == dst:
                    out = []
                    cur = w
                    while prev[cur] is not None:
                        eid, back = prev[cur]
                        out.append(eid)
                        cur = back
                    return tuple(reversed(out))
                stack.append(w)
    return None


def forest_normalize(g: Game, p: StrategyProfile) -> StrategyProfile:
    """Reroute a profile so its edge union is acyclic, never costlier.

    While the union has a cycle, the most expensive edge lying on any
    cycle is deleted (tie: largest edge id); deleting a cycle edge
    keeps its component connected, so afterwards every player takes her
    now unique path inside the remaining forest.
    """
    if g.directed:
        raise ValidationError("forest_normalize needs an undirected game")
    union = set(p.usage)
    while _has_cycle(g, union):
        removable = []
        for eid in union:
            rest = union - {eid}
            adj = _union_adj(g, rest)
            e = g.edge(eid)
            if _tree_walk(adj, e.u, e.v) is not None:
                removable.append(eid)
        # non-bridge edges are exactly the edges on some cycle
        victim = max(removable, key=lambda eid: (g.edge(eid).cost, id_key(eid)))
        union.remove(victim)
    adj = _union_adj(g, union)
    new_paths = []
    for player in g.players:
        walk = _tree_walk(adj, player.source, player.target)
        if walk is None:
            raise StructureError(
                f"player {player.id!r} lost connectivity during normalization"
            )
        new_paths.append(walk)
    return make_profile(g, new_paths)


@dataclass(frozen=True, eq=False)
class OptimumDecomposition:
    """Structure of a forest profile O used by the deviation builders.

    Components and groups are aligned: players in `groups[m]` have both
    terminals inside `components[m]`.  When `shared_all` (the edges used
    by every player) is nonempty, the forest minus those edges leaves
    exactly two terminal-bearing sides; players whose source sat on the
    target side are recorded in `swapped` and their oriented paths run
    from the relabeled source, so that every oriented path crosses the
    shared edges in the same direction.
    """

    game: Game
    profile: StrategyProfile
    edge_ids: frozenset
    partition: UsagePartition
    components: tuple
    groups: tuple
    shared_all: frozenset
    side_source_vertices: object
    side_target_vertices: object
    side_source_edges: object
    side_target_edges: object
    swapped: frozenset
    oriented_edges: dict
    oriented_vertices: dict
    first_shared: dict
    last_shared: dict

    def player_component(self, player_id) -> int:
        for k, grp in enumerate(self.groups):
            if player_id in grp:
                return k
        raise KeyError(player_id)

    def tree_path(self, x, y):
        """Unique E(O)-path between two vertices, or None across components."""
        adj = self._adj
        if x == y:
            return ()
        if x not in adj or y not in adj:
            return None
        return _tree_walk(adj, x, y)

    def separates(self, eid, x, y) -> bool:
        """True when removing `eid` from E(O) parts x from y."""
        walk = self.tree_path(x, y)
        return walk is not None and eid in walk

    @property
    def _adj(self):
        cached = getattr(self, "_adj_cache", None)
        if cached is None:
            cached = _union_adj(self.game, self.edge_ids)
            object.__setattr__(self, "_adj_cache", cached)
        return cached

    def oriented_source(self, player_id):
        return self.oriented_vertices[player_id][0]

    def oriented_target(self, player_id):
        return self.oriented_vertices[player_id][-1]


def decompose_optimum(g: Game, O: StrategyProfile) -> OptimumDecomposition:
    """Populate the full decomposition of a forest profile.

    Raises StructureError when the edge union of O contains a cycle.
    """
    union = frozenset(O.usage)
    if _has_cycle(g, union):
        raise StructureError("profile union contains a cycle")
    adj = _union_adj(g, union)
    touched = sorted({v for eid in union for v in (g.edge(eid).u, g.edge(eid).v)})
    comps = _components(touched, adj)
    comps.sort(key=lambda c: min(id_key(eid) for eid in c[1]))
    groups = []
    for comp_v, _ in comps:
        grp = frozenset(
            p.id for p in g.players if p.source in comp_v and p.target in comp_v
        )
        groups.append(grp)
    assigned = [pid for grp in groups for pid in grp]
    if len(assigned) != g.n:
        raise StructureError("players are not partitioned by the forest components")

    part = usage_partition(g, O)
    full_mask = (1 << g.n) - 1
    shared_all = frozenset(part.blocks.get(full_mask, frozenset()))

    oriented_edges = {}
    oriented_vertices = {}
    for idx, player in enumerate(g.players):
        path = O.paths[idx]
        oriented_edges[player.id] = tuple(path)
        oriented_vertices[player.id] = trace_path(g, path, player.source)

    swapped = frozenset()
    side_src_v = side_src_e = side_dst_v = side_dst_e = None
    if shared_all:
        rest = union - shared_all
        rest_adj = _union_adj(g, rest)
        rest_comps = _components(touched, rest_adj)
        terminals = {p.source for p in g.players} | {p.target for p in g.players}
        terminal_comps = [c for c in rest_comps if c[0] & terminals]
        if len(terminal_comps) != 2:
            raise StructureError(
                "removing the all-player edges must leave exactly two terminal sides"
            )
        anchor = g.players[0].source
        if anchor in terminal_comps[0][0]:
            src_side, dst_side = terminal_comps
        else:
            src_side, dst_side = terminal_comps[1], terminal_comps[0]
        side_src_v, side_src_e = src_side
        side_dst_v, side_dst_e = dst_side
        flips = set()
        for player in g.players:
            if player.source in side_src_v and player.target in side_dst_v:
                continue
            if player.source in side_dst_v and player.target in side_src_v:
                flips.add(player.id)
                oriented_edges[player.id] = tuple(reversed(oriented_edges[player.id]))
                oriented_vertices[player.id] = tuple(
                    reversed(oriented_vertices[player.id])
                )
            else:
                raise StructureError(
                    f"player {player.id!r} does not span the two sides"
                )
        swapped = frozenset(flips)

    first_shared = {}
    last_shared = {}
    for pi in g.players:
        set_i = set(oriented_edges[pi.id])
        for pj in g.players:
            if pi.id == pj.id:
                continue
            common = set_i & set(oriented_edges[pj.id])
            if not common:
                continue
            along_i = [eid for eid in oriented_edges[pi.id] if eid in common]
            first_shared[(pi.id, pj.id)] = along_i[0]
            last_shared[(pi.id, pj.id)] = along_i[-1]

    return OptimumDecomposition(
        game=g,
        profile=O,
        edge_ids=union,
        partition=part,
        components=tuple(comps),
        groups=tuple(groups),
        shared_all=shared_all,
        side_source_vertices=side_src_v,
        side_target_vertices=side_dst_v,
        side_source_edges=side_src_e,
        side_target_edges=side_dst_e,
        swapped=swapped,
        oriented_edges=oriented_edges,
        oriented_vertices=oriented_vertices,
        first_shared=first_shared,
        last_shared=last_shared,
    )
