"""Instance generators: seeded random games and two structured families."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import GenerationError, ValidationError
from .game import Edge, Game, Player
from .rationals import parse_rational

_MAX_RETRIES = 1000
_MAX_DENOMINATOR = 10


def _as_cost(value, where):
    if isinstance(value, bool):
        raise GenerationError(f"{where}: expected an exact cost, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    raise GenerationError(f"{where}: expected an exact cost, got {value!r}")


def random_instance(n_players, n_vertices, n_edges, cost_range, seed) -> Game:
    """Seeded random undirected game with every terminal pair connected.

    Endpoints are sampled uniformly (parallel edges allowed, self loops
    not), costs are uniform rationals over the given closed range with
    denominators at most 10.  Draws that leave some player disconnected
    are rejected and redrawn, up to a bounded retry count, so the
    result is a pure function of the seed.
    """
    if n_players < 1 or n_vertices < 2 or n_edges < 1:
        raise GenerationError(
            "need at least one player, two vertices, and one edge: "
            f"got {n_players}, {n_vertices}, {n_edges}"
        )
    lo = _as_cost(cost_range[0], "cost range")
    hi = _as_cost(cost_range[1], "cost range")
    if lo < 0 or hi < lo:
        raise GenerationError(f"bad cost range [{lo}, {hi}]")
    usable = [
        q
        for q in range(1, _MAX_DENOMINATOR + 1)
        if math.ceil(lo * q) <= math.floor(hi * q)
    ]
    if not usable:
        raise GenerationError(f"cost range [{lo}, {hi}] holds no usable rational")

    rng = random.Random(seed)
    vertices = [f"v{k}" for k in range(1, n_vertices + 1)]
    for _ in range(_MAX_RETRIES):
        edges = []
        for k in range(1, n_edges + 1):
            u, v = rng.sample(vertices, 2)
            q = rng.choice(usable)
            numer = rng.randint(math.ceil(lo * q), math.floor(hi * q))
            edges.append(Edge(id=f"e{k}", u=u, v=v, cost=Fraction(numer, q)))
        players = []
        for i in range(1, n_players + 1):
            s, t = rng.sample(vertices, 2)
            players.append(Player(id=i, source=s, target=t))
        try:
            return Game(
                vertices=tuple(vertices),
                edges=tuple(edges),
                players=tuple(players),
            )
        except ValidationError:
            continue
    raise GenerationError(
        f"no connected draw in {_MAX_RETRIES} tries for "
        f"({n_players} players, {n_vertices} vertices, {n_edges} edges)"
    )


def directed_harmonic_family(n: int, eps) -> Game:
    """Directed family whose unique equilibrium costs H_n times nearly
    the optimum.

    Every player i can go straight to the common target for 1/i or ride
    a free spoke to a relay whose single outgoing edge costs 1 + eps.
    The all-direct profile is the only equilibrium; sharing the relay
    edge is optimal, so the stability gap is H_n/(1 + eps).
    """
    if n < 2:
        raise GenerationError(f"the family needs n >= 2, got {n}")
    eps = _as_cost(eps, "eps")
    if eps <= 0:
        raise GenerationError(f"eps must be positive, got {eps}")
    vertices = ["t", "v"] + [f"s{i}" for i in range(1, n + 1)]
    edges = [Edge(id="shared", u="v", v="t", cost=1 + eps)]
    players = []
    for i in range(1, n + 1):
        edges.append(Edge(id=f"direct{i}", u=f"s{i}", v="t", cost=Fraction(1, i)))
        edges.append(Edge(id=f"spoke{i}", u=f"s{i}", v="v", cost=Fraction(0)))
        players.append(Player(id=i, source=f"s{i}", target="t"))
    return Game(
        vertices=tuple(vertices),
        edges=tuple(edges),
        players=tuple(players),
        directed=True,
    )


def shared_bridge_family(n: int, bridge_cost=1, spoke_costs=1) -> Game:
    """Two stars joined by one bridge every player must cross.

    Player i runs s_i to t_i through the left star center, the bridge,
    and the right star center; under the default unit costs the optimum
    is the full star pair plus bridge, whose all-player block is the
    bridge alone.  spoke_costs is a scalar, or a sequence of 2n values
    ordered source spokes first.
    """
    if n < 2:
        raise GenerationError(f"the family needs n >= 2, got {n}")
    bridge = _as_cost(bridge_cost, "bridge cost")
    if isinstance(spoke_costs, (list, tuple)):
        if len(spoke_costs) != 2 * n:
            raise GenerationError(
                f"need 2n = {2 * n} spoke costs, got {len(spoke_costs)}"
            )
        spokes = [_as_cost(c, f"spoke cost {k}") for k, c in enumerate(spoke_costs)]
    else:
        flat = _as_cost(spoke_costs, "spoke cost")
        spokes = [flat] * (2 * n)
    vertices = ["a", "b"] + [f"s{i}" for i in range(1, n + 1)] + [
        f"t{i}" for i in range(1, n + 1)
    ]
    edges = [Edge(id="ab", u="a", v="b", cost=bridge)]
    players = []
    for i in range(1, n + 1):
        edges.append(Edge(id=f"sa{i}", u=f"s{i}", v="a", cost=spokes[i - 1]))
        edges.append(Edge(id=f"bt{i}", u="b", v=f"t{i}", cost=spokes[n + i - 1]))
        players.append(Player(id=i, source=f"s{i}", target=f"t{i}"))
    return Game(
        vertices=tuple(vertices),
        edges=tuple(edges),
        players=tuple(players),
    )
