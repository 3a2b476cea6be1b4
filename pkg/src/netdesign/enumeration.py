"""Strategy sets (all simple paths) and profile-space iteration.

Exhaustive enumeration is the ground-truth mode of the whole package:
equilibria, potential minimizers, and optima are all defined as argmins
over the full profile space, so the iteration order here (lexicographic
by per-player path indices, paths themselves sorted lexicographically
by edge-id sequence) fixes every deterministic tie rule downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetError
from .game import Game, StrategyProfile

DEFAULT_PROFILE_BUDGET = 10**7
DEFAULT_PATH_CAP = 10**6


def enumerate_paths(g: Game, i, cap: int = DEFAULT_PATH_CAP):
    """All simple source-target paths of player i as edge-id tuples.

    The DFS explores incident edges in id order at every vertex, which
    emits the paths already sorted lexicographically by edge-id
    sequence.  Raises BudgetError when more than `cap` paths exist.
    """
    player = g.players[g.player_index(i)]
    src, dst = player.source, player.target
    out = []
    path = []
    visited = {src}

    def walk(vertex):
        if vertex == dst:
            if len(out) >= cap:
                raise BudgetError(
                    f"player {player.id!r} has more than {cap} simple paths",
                    budget=cap,
                )
            out.append(tuple(path))
            return
        for edge_index, other in g.incident(vertex):
            if other in visited:
                continue
            visited.add(other)
            path.append(g.edges[edge_index].id)
            walk(other)
            path.pop()
            visited.remove(other)

    walk(src)
    return out


@dataclass(frozen=True, eq=False)
class StrategySpace:
    """Per-player strategy lists plus the profile-space geometry."""

    game: Game
    paths: tuple  # per player, tuple of edge-id tuples

    @property
    def sizes(self):
        return tuple(len(p) for p in self.paths)

    @property
    def size(self) -> int:
        return math.prod(self.sizes)

    def index_paths(self):
        """Per-player paths as tuples of edge indices (scan-friendly)."""
        g = self.game
        return tuple(
            tuple(tuple(g.edge_index(eid) for eid in path) for path in per_player)
            for per_player in self.paths
        )


def build_strategy_space(g: Game, path_cap: int = DEFAULT_PATH_CAP) -> StrategySpace:
    return StrategySpace(
        game=g,
        paths=tuple(tuple(enumerate_paths(g, p.id, cap=path_cap)) for p in g.players),
    )


def _profile(space: StrategySpace, indices) -> StrategyProfile:
    paths = tuple(space.paths[k][ix] for k, ix in enumerate(indices))
    usage = {}
    for path in paths:
        for eid in path:
            usage[eid] = usage.get(eid, 0) + 1
    return StrategyProfile(paths=paths, usage=usage)


def profile_at(space: StrategySpace, indices) -> StrategyProfile:
    """Profile for an explicit per-player path index tuple."""
    if len(indices) != len(space.paths):
        raise ValueError("one path index per player is required")
    return _profile(space, indices)


def indices_from_flat(space: StrategySpace, flat: int):
    """Decode a flat profile number into per-player path indices."""
    sizes = space.sizes
    out = [0] * len(sizes)
    for k in range(len(sizes) - 1, -1, -1):
        flat, out[k] = divmod(flat, sizes[k])
    return tuple(out)


def profile_from_flat(space: StrategySpace, flat: int) -> StrategyProfile:
    return _profile(space, indices_from_flat(space, flat))


def check_budget(space: StrategySpace, budget: int):
    size = space.size
    if size > budget:
        raise BudgetError(
            f"profile space size {size} exceeds budget {budget}",
            size=size,
            budget=budget,
        )
    return size


def iterate_profiles(space: StrategySpace, budget: int = DEFAULT_PROFILE_BUDGET):
    """Stream every profile exactly once, in lexicographic order.

    The budget is checked against the full space size eagerly, before
    anything is yielded; iteration itself is lazy and keeps only the
    current index vector in memory.
    """
    size = check_budget(space, budget)

    def stream():
        sizes = space.sizes
        indices = [0] * len(sizes)
        for _ in range(size):
            yield _profile(space, indices)
            for k in range(len(sizes) - 1, -1, -1):
                indices[k] += 1
                if indices[k] < sizes[k]:
                    break
                indices[k] = 0

    return stream()
