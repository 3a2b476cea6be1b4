"""Shared instances and hypothesis settings for the suite.

Instance A is the two-player parallel-edge graph used as the running
regression example: vertices {a, b}, edges e1 (cost 2) and e2 (cost 3)
both joining a and b, both players travelling a -> b.  Its full
strategy space has four profiles, small enough to check every claim by
hand.
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from netdesign import Edge, Game, Player

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


INSTANCE_A_TEXT = """\
{
  "vertices": ["a", "b"],
  "edges": [
    {"id": "e1", "u": "a", "v": "b", "cost": 2},
    {"id": "e2", "u": "a", "v": "b", "cost": 3}
  ],
  "players": [
    {"id": 1, "source": "a", "target": "b"},
    {"id": 2, "source": "a", "target": "b"}
  ]
}
"""


def _game(vertices, edges, players, directed=False):
    return Game(
        vertices=frozenset(vertices),
        edges=tuple(Edge(*e) for e in edges),
        players=tuple(Player(*p) for p in players),
        directed=directed,
    )


def make_instance_a() -> Game:
    return _game(
        ["a", "b"],
        [("e1", "a", "b", Fraction(2)), ("e2", "a", "b", Fraction(3))],
        [(1, "a", "b"), (2, "a", "b")],
    )


def make_triangle() -> Game:
    """One player, two routes a-b: the direct edge and the detour via c."""
    return _game(
        ["a", "b", "c"],
        [
            ("ab", "a", "b", Fraction(1)),
            ("ac", "a", "c", Fraction(1)),
            ("cb", "c", "b", Fraction(1)),
        ],
        [(1, "a", "b")],
    )


def make_path_graph() -> Game:
    """Two players on the path a-b-c with staggered terminals.

    Player 1 travels a->b, player 2 travels b->c; the optimum uses both
    edges, no edge is shared by everyone, and the whole thing is one
    tree.  The smallest instance whose optimum has an empty all-player
    block but a single component.
    """
    return _game(
        ["a", "b", "c"],
        [("ab", "a", "b", Fraction(1)), ("bc", "b", "c", Fraction(1))],
        [(1, "a", "b"), (2, "b", "c")],
    )


def make_disjoint() -> Game:
    """Two players in separate components; the optimum forest has two trees."""
    return _game(
        ["s1", "t1", "s2", "t2"],
        [("a", "s1", "t1", Fraction(1)), ("b", "s2", "t2", Fraction(1))],
        [(1, "s1", "t1"), (2, "s2", "t2")],
    )


def make_star_fallback() -> Game:
    """Three players whose optimum tree forces the connector fallback.

    Players i (si->ti) and j (sj->tj) hang off the two ends of the
    middle edge f = a-b owned by player k (a->b).  Routing j through
    k's side would have to enter and leave across f itself, so both
    tree connectors share f and the rerouted path for j degenerates to
    j's own optimum path.
    """
    return _game(
        ["si", "ti", "sj", "tj", "a", "b"],
        [
            ("e1", "si", "a", Fraction(1)),
            ("e2", "a", "ti", Fraction(1)),
            ("f", "a", "b", Fraction(1)),
            ("g1", "b", "sj", Fraction(1)),
            ("g2", "b", "tj", Fraction(1)),
        ],
        [("i", "si", "ti"), ("j", "sj", "tj"), ("k", "a", "b")],
    )


@pytest.fixture
def instance_a() -> Game:
    return make_instance_a()


@pytest.fixture
def instance_a_text() -> str:
    return INSTANCE_A_TEXT


@pytest.fixture
def triangle() -> Game:
    return make_triangle()


@pytest.fixture
def path_graph() -> Game:
    return make_path_graph()


@pytest.fixture
def disjoint() -> Game:
    return make_disjoint()


@pytest.fixture
def star_fallback() -> Game:
    return make_star_fallback()
