"""Shapley cost shares, social cost, potential, and usage partitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game import Game, StrategyProfile
from .harmonic import harmonic_int


def mask_of(g: Game, player_ids) -> int:
    """Bitmask over player indices for a collection of player ids."""
    m = 0
    for pid in player_ids:
        m |= 1 << g.player_index(pid)
    return m


def players_of(g: Game, mask: int):
    """Sorted tuple of player ids selected by a bitmask."""
    return tuple(g.players[k].id for k in range(g.n) if mask >> k & 1)


@dataclass(frozen=True, eq=False)
class UsagePartition:
    """Partition of a profile's used edges by their exact user set.

    blocks maps a player-set bitmask U to the edges used by exactly the
    players in U; levels maps l to the total cost of edges used by
    exactly l players.  edge_masks is the inverse view per edge.
    """

    n: int
    blocks: dict
    levels: dict
    edge_masks: dict

    def block_cost(self, g: Game, mask: int) -> Fraction:
        return set_cost(g, self.blocks.get(mask, ()))


def set_cost(g: Game, edge_ids) -> Fraction:
    """Total cost of a set of edges (the |F| notation)."""
    total = Fraction(0)
    for eid in edge_ids:
        total += g.edge(eid).cost
    return total


def usage_partition(g: Game, p: StrategyProfile) -> UsagePartition:
    masks = {}
    for pos, path in enumerate(p.paths):
        bit = 1 << pos
        for eid in path:
            masks[eid] = masks.get(eid, 0) | bit
    grouped = {}
    for eid, m in masks.items():
        grouped.setdefault(m, []).append(eid)
    blocks = {m: frozenset(ids) for m, ids in grouped.items()}
    levels = {}
    for m, ids in blocks.items():
        l = m.bit_count()
        levels[l] = levels.get(l, Fraction(0)) + set_cost(g, ids)
    return UsagePartition(n=g.n, blocks=blocks, levels=levels, edge_masks=masks)


def player_cost(g: Game, p: StrategyProfile, i) -> Fraction:
    """Exact Shapley share sum of player i under profile p."""
    idx = g.player_index(i)
    total = Fraction(0)
    for eid in p.paths[idx]:
        total += g.edge(eid).cost / p.usage[eid]
    return total


def social_cost(g: Game, p: StrategyProfile) -> Fraction:
    """Total cost of the used edge set, which equals the player cost sum."""
    total = Fraction(0)
    for eid in p.usage:
        total += g.edge(eid).cost
    return total


def potential(g: Game, p: StrategyProfile) -> Fraction:
    """Sum over used edges of H_{k_e} * c_e; an exact potential for the game."""
    total = Fraction(0)
    for eid, k in p.usage.items():
        total += g.edge(eid).cost * harmonic_int(k)
    return total
