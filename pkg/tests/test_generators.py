"""Instance generators: the seeded random family and the two
structured families."""

from fractions import Fraction

import pytest

from netdesign import (
    GenerationError,
    ValidationError,
    directed_harmonic_family,
    enumerate_paths,
    random_instance,
    shared_bridge_family,
)


def test_random_instance_is_deterministic():
    a = random_instance(3, 5, 7, (0, 3), 42)
    b = random_instance(3, 5, 7, (0, 3), 42)
    assert a == b
    c = random_instance(3, 5, 7, (0, 3), 43)
    assert a != c


def test_random_instance_shape_and_costs():
    g = random_instance(2, 4, 6, ("1/2", "5/2"), 7)
    assert g.n == 2
    assert len(g.vertices) == 4
    assert len(g.edges) == 6
    for e in g.edges:
        assert Fraction(1, 2) <= e.cost <= Fraction(5, 2)
        assert e.cost.denominator <= 10
    for p in g.players:
        assert p.source != p.target


def test_random_instance_accepts_fraction_bounds():
    g = random_instance(2, 3, 4, (Fraction(0), Fraction(3)), 11)
    for e in g.edges:
        assert 0 <= e.cost <= 3


@pytest.mark.parametrize(
    "players, vertices, edges, rng",
    [
        (0, 3, 4, (0, 3)),
        (2, 1, 4, (0, 3)),
        (2, 3, 0, (0, 3)),
        (2, 3, 4, (3, 0)),
        (2, 3, 4, (-1, 3)),
    ],
)
def test_random_instance_rejects_impossible_params(players, vertices, edges, rng):
    with pytest.raises(GenerationError):
        random_instance(players, vertices, edges, rng, 0)


def test_random_instance_rejects_bad_cost_token():
    with pytest.raises(GenerationError):
        random_instance(2, 3, 4, (0.5, 3), 0)


def test_directed_family_shape():
    g = directed_harmonic_family(3, Fraction(1, 100))
    assert g.directed
    assert g.n == 3
    assert len(g.vertices) == 5
    assert len(g.edges) == 7
    assert g.edge("shared").cost == Fraction(101, 100)
    for i in (1, 2, 3):
        assert g.edge(f"direct{i}").cost == Fraction(1, i)
        assert g.edge(f"spoke{i}").cost == 0
        assert enumerate_paths(g, i) == [
            (f"direct{i}",),
            (f"spoke{i}", "shared"),
        ]


def test_directed_family_domain():
    with pytest.raises(GenerationError):
        directed_harmonic_family(1, Fraction(1, 10))
    with pytest.raises(GenerationError):
        directed_harmonic_family(2, Fraction(0))
    with pytest.raises(GenerationError):
        directed_harmonic_family(2, Fraction(-1, 10))


def test_bridge_family_shape():
    g = shared_bridge_family(3)
    assert not g.directed
    assert g.n == 3
    assert len(g.vertices) == 8
    assert len(g.edges) == 7
    assert g.edge("ab").cost == 1
    for i in (1, 2, 3):
        assert g.edge(f"sa{i}").cost == 1
        assert g.edge(f"bt{i}").cost == 1
        # the tree leaves each player a single strategy
        assert enumerate_paths(g, i) == [(f"sa{i}", "ab", f"bt{i}")]


def test_bridge_family_cost_overrides():
    g = shared_bridge_family(2, bridge_cost=Fraction(5, 2), spoke_costs=[1, 2, 3, 4])
    assert g.edge("ab").cost == Fraction(5, 2)
    assert g.edge("sa1").cost == 1
    assert g.edge("sa2").cost == 2
    assert g.edge("bt1").cost == 3
    assert g.edge("bt2").cost == 4


def test_bridge_family_domain():
    with pytest.raises(GenerationError):
        shared_bridge_family(0)
    with pytest.raises(GenerationError):
        shared_bridge_family(2, spoke_costs=[1, 2, 3])
    with pytest.raises(GenerationError):
        shared_bridge_family(2, bridge_cost=1.5)
    # negative costs are caught by instance validation
    with pytest.raises(ValidationError):
        shared_bridge_family(2, bridge_cost=-1)
