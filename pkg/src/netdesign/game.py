"""Game instances, strategy profiles, and the instance file format.

A game is an edge-weighted graph (parallel edges allowed, undirected by
default) together with n terminal pairs.  Each player picks a simple
path between her terminals and every edge splits its cost equally among
the players whose paths contain it.

Instances are stored as JSON documents with top-level fields
``directed`` (optional, default false), ``vertices`` (list of strings),
``edges`` (records ``{id, u, v, cost}`` where cost is an integer or a
"p/q" string), and ``players`` (records ``{id, source, target}``).
Exact rational cost tokens survive a save/load round trip bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError, ValidationError
from .rationals import format_rational, parse_rational

# player sets are bitmasks over a machine word
MAX_PLAYERS = 64


def id_key(value):
    """Total order over mixed int/str identifiers.

    Integers sort before strings; within a kind the natural order
    applies.  Used everywhere an id-based tie rule is needed.
    """
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValidationError(f"id must be an int or str, got {value!r}")
    if isinstance(value, int):
        return (0, value, "")
    return (1, 0, value)


class Edge(NamedTuple):
    id: object
    u: str
    v: str
    cost: Fraction


class Player(NamedTuple):
    id: object
    source: str
    target: str


@dataclass(frozen=True)
class Game:
    """Validated, immutable game instance.

    Edges and players are kept sorted by id so that equality, iteration
    order, and serialized form are canonical.
    """

    vertices: frozenset
    edges: tuple
    players: tuple
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = tuple(sorted((Edge(*e) for e in self.edges), key=lambda e: id_key(e.id)))
        players = tuple(sorted((Player(*p) for p in self.players), key=lambda p: id_key(p.id)))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "players", players)
        self._validate()
        object.__setattr__(self, "_edge_index", {e.id: k for k, e in enumerate(edges)})
        object.__setattr__(self, "_player_index", {p.id: k for k, p in enumerate(players)})
        adj = {v: [] for v in self.vertices}
        for k, e in enumerate(edges):
            adj[e.u].append((k, e.v))
            if not self.directed:
                adj[e.v].append((k, e.u))
        # incident edges in index order, which is id order
        object.__setattr__(self, "_adj", {v: tuple(sorted(lst)) for v, lst in adj.items()})
        for p in players:
            if not self._reachable(p.source, p.target):
                raise ValidationError(
                    f"player {p.id!r}: no {p.source!r}-{p.target!r} path exists"
                )

    def _validate(self):
        if not self.players:
            raise ValidationError("at least one player is required")
        if len(self.players) > MAX_PLAYERS:
            raise ValidationError(f"at most {MAX_PLAYERS} players are supported")
        for v in self.vertices:
            if not isinstance(v, str):
                raise ValidationError(f"vertex ids must be strings, got {v!r}")
        seen = set()
        for e in self.edges:
            id_key(e.id)
            if e.id in seen:
                raise ValidationError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.u not in self.vertices or e.v not in self.vertices:
                raise ValidationError(f"edge {e.id!r}: unknown vertex")
            if not isinstance(e.cost, Fraction):
                raise ValidationError(f"edge {e.id!r}: cost must be a Fraction")
            if e.cost < 0:
                raise ValidationError(f"edge {e.id!r}: negative cost {e.cost}")
        seen = set()
        for p in self.players:
            id_key(p.id)
            if p.id in seen:
                raise ValidationError(f"duplicate player id {p.id!r}")
            seen.add(p.id)
            if p.source not in self.vertices:
                raise ValidationError(f"player {p.id!r}: unknown vertex {p.source!r}")
            if p.target not in self.vertices:
                raise ValidationError(f"player {p.id!r}: unknown vertex {p.target!r}")
            if p.source == p.target:
                raise ValidationError(f"player {p.id!r}: source equals target")

    def _reachable(self, src, dst):
        seen = {src}
        stack = [src]
        while stack:
            v = stack.pop()
            if v == dst:
                return True
            for _, w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    @property
    def n(self) -> int:
        return len(self.players)

    def edge(self, edge_id) -> Edge:
        return self.edges[self._edge_index[edge_id]]

    def edge_index(self, edge_id) -> int:
        return self._edge_index[edge_id]

    def player_index(self, player_id) -> int:
        return self._player_index[player_id]

    def incident(self, vertex):
        """(edge index, other endpoint) pairs in edge-id order."""
        return self._adj[vertex]


@dataclass(frozen=True)
class StrategyProfile:
    """One simple path per player plus the derived per-edge usage counts.

    Equality and hashing look at the paths only; usage is derived data.
    """

    paths: tuple
    usage: dict = field(compare=False, repr=False)

    def used_edges(self):
        return self.usage.keys()


def trace_path(g: Game, path, start):
    """Return the vertex sequence visited by an edge-id walk from `start`.

    Works for arbitrary walks, not only simple paths; raises
    ValidationError when consecutive edges do not chain up or an edge is
    traversed against its direction in a directed game.
    """
    verts = [start]
    cur = start
    for eid in path:
        try:
            e = g.edge(eid)
        except KeyError:
            raise ValidationError(f"unknown edge {eid!r}") from None
        if e.u == cur:
            cur = e.v
        elif not g.directed and e.v == cur:
            cur = e.u
        else:
            raise ValidationError(f"edge {eid!r} does not continue the walk at {cur!r}")
        verts.append(cur)
    return tuple(verts)


def make_profile(g: Game, paths) -> StrategyProfile:
    """Validate one path per player and attach usage counts.

    Each path must be a nonempty simple path from the player's source to
    her target, given as a sequence of edge ids.
    """
    paths = tuple(tuple(p) for p in paths)
    if len(paths) != g.n:
        raise ValidationError(f"expected {g.n} paths, got {len(paths)}")
    usage = {}
    for player, path in zip(g.players, paths):
        if not path:
            raise ValidationError(f"player {player.id!r}: empty path")
        verts = trace_path(g, path, player.source)
        if verts[-1] != player.target:
            raise ValidationError(
                f"player {player.id!r}: path ends at {verts[-1]!r}, not {player.target!r}"
            )
        if len(set(verts)) != len(verts):
            raise ValidationError(f"player {player.id!r}: path revisits a vertex")
        for eid in path:
            usage[eid] = usage.get(eid, 0) + 1
    return StrategyProfile(paths=paths, usage=usage)


def _cost_to_json(cost: Fraction):
    if cost.denominator == 1:
        return int(cost.numerator)
    return format_rational(cost)


def save_game(g: Game) -> str:
    """Serialize a game to instance text (canonical field and id order)."""
    doc = {
        "directed": g.directed,
        "vertices": sorted(g.vertices),
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "cost": _cost_to_json(e.cost)}
            for e in g.edges
        ],
        "players": [
            {"id": p.id, "source": p.source, "target": p.target} for p in g.players
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _require(doc, key, kind, where):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return value


def load_game(text: str) -> Game:
    """Parse and validate instance text.

    Malformed documents raise ParseError; well-formed documents that
    violate a model invariant (negative cost, unknown vertex,
    unreachable terminal pair, ...) raise ValidationError naming the
    offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid instance text: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("instance text must be a JSON object")
    directed = doc.get("directed", False)
    if not isinstance(directed, bool):
        raise ParseError("field 'directed' must be a boolean")
    vertices = _require(doc, "vertices", list, "instance")
    edges = []
    for k, rec in enumerate(_require(doc, "edges", list, "instance")):
        if not isinstance(rec, dict):
            raise ParseError(f"edges[{k}]: expected an object")
        where = f"edges[{k}]"
        eid = _require(rec, "id", None, where)
        u = _require(rec, "u", str, where)
        v = _require(rec, "v", str, where)
        raw = _require(rec, "cost", None, where)
        if isinstance(raw, float):
            raise ParseError(f"{where}: cost must be an integer or a 'p/q' string")
        try:
            cost = parse_rational(raw)
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}") from None
        edges.append(Edge(eid, u, v, cost))
    players = []
    for k, rec in enumerate(_require(doc, "players", list, "instance")):
        if not isinstance(rec, dict):
            raise ParseError(f"players[{k}]: expected an object")
        where = f"players[{k}]"
        players.append(
            Player(
                _require(rec, "id", None, where),
                _require(rec, "source", str, where),
                _require(rec, "target", str, where),
            )
        )
    return Game(
        vertices=frozenset(vertices),
        edges=tuple(edges),
        players=tuple(players),
        directed=directed,
    )
