"""Mixing weight, bound assembly functions, gap tables, and the
aggregate chain from equilibrium levels to the cost ratio bound."""

import json
import math
from fractions import Fraction

import pytest

from netdesign import (
    DomainError,
    StructureError,
    ValidationError,
    alpha,
    beta,
    bound_gap_table,
    harmonic_int,
    harmonic_real,
    level_table,
    make_profile,
    mixing_weight,
    pos_upper_bound,
    potential_minimizers,
    social_optimum,
    theta,
    verify_aggregate,
    directed_harmonic_family,
)

# gaps B(n) - H(n/2) at the first three decades, frozen from a 30-digit
# evaluation double-checked against a 60-digit rerun
GAP_100 = 0.40990773593114654
GAP_1000 = 0.1875828961242731
GAP_10000 = 0.11575878874362319

B_2 = 2.560744611093552


def test_mixing_weight_small_values():
    assert mixing_weight(2) == 1
    assert mixing_weight(3) == Fraction(7, 5)
    assert mixing_weight(4) == Fraction(23, 13)


def test_mixing_weight_defining_identity():
    for n in (2, 3, 7, 40, 137):
        hn = harmonic_int(n)
        x = mixing_weight(n)
        assert x * (hn - 1) == n - hn
        # equivalent closed form for the shifted total
        assert n + x == (n - 1) * hn / (hn - 1)


@pytest.mark.parametrize("bad", [1, 0, -3, 2.0, True, "4"])
def test_mixing_weight_domain(bad):
    with pytest.raises(DomainError):
        mixing_weight(bad)


def test_alpha_boundary_values():
    # alpha(1) = alpha(n) = n + x - H_n, checked at n = 4 against the
    # hand-reduced constant
    assert alpha(1, 4) == Fraction(575, 156)
    assert alpha(4, 4) == Fraction(575, 156)
    x = mixing_weight(4)
    assert alpha(1, 4) == 4 + x - harmonic_int(4)


def test_theta_symmetry_and_peak():
    for n in (2, 4, 6, 10):
        for l in range(1, n):
            assert theta(l, n) == theta(n - l, n)
        # exact peak value at the midpoint for even n
        assert theta(n // 2, n) == n * harmonic_int(n // 2)
    assert theta(1, 3) == Fraction(7, 2)


def test_theta_below_real_midpoint_value():
    for n in (2, 3, 5, 8, 13):
        cap = n * harmonic_real(Fraction(n, 2))
        for l in range(1, n + 1):
            assert float(theta(l, n)) <= cap + 1e-9


def test_alpha_unimodal_small():
    # differences (n+x)/(l+1) - H_n change sign at most once, + to -
    for n in range(2, 61):
        diffs = [alpha(l + 1, n) - alpha(l, n) for l in range(1, n)]
        signs = [d > 0 for d in diffs]
        assert signs == sorted(signs, reverse=True)


def test_beta_below_shifted_midpoint():
    for n in (2, 3, 5, 9):
        x = mixing_weight(n)
        cap = float(n + x) * harmonic_real(Fraction(n + x, 2))
        for l in range(1, n + 1):
            assert float(beta(l, n)) <= cap + 1e-9


def test_level_domain_checks():
    with pytest.raises(DomainError):
        alpha(0, 4)
    with pytest.raises(DomainError):
        beta(5, 4)
    with pytest.raises(DomainError):
        theta(1, 1)


def test_level_table_rows():
    rows = level_table(4)
    assert [r.l for r in rows] == [1, 2, 3, 4]
    assert rows[0].alpha == Fraction(575, 156)
    for r in rows:
        assert r.alpha == alpha(r.l, 4)
        assert r.beta == beta(r.l, 4)
        assert r.theta == theta(r.l, 4)


def test_bound_small_value():
    # B(2) = 2 H(3/2) = 2 (8/3 - 2 ln 2)
    expected = 2 * (Fraction(8, 3) - 2 * math.log(2))
    assert abs(pos_upper_bound(2) - float(expected)) <= 1e-12
    assert abs(pos_upper_bound(2) - B_2) <= 1e-12


def test_bound_exceeds_midpoint_harmonic():
    for n in (2, 3, 10, 100):
        assert pos_upper_bound(n) > harmonic_real(Fraction(n, 2))


def test_bound_domain():
    with pytest.raises(DomainError):
        pos_upper_bound(1)
    with pytest.raises(DomainError):
        pos_upper_bound(0)


def test_gap_table_first_decades():
    table = bound_gap_table([100, 1000, 10000])
    gaps = {r.n: r.gap for r in table.rows}
    assert gaps[100] == pytest.approx(GAP_100, abs=1e-6)
    assert gaps[1000] == pytest.approx(GAP_1000, abs=1e-6)
    assert gaps[10000] == pytest.approx(GAP_10000, abs=1e-6)
    for r in table.rows:
        # bound and half are rounded separately, so allow a few ulps
        assert r.gap == pytest.approx(r.bound - r.half, abs=1e-12)
        assert r.h_n == harmonic_int(r.n)


def test_gap_table_sorts_and_dedupes():
    table = bound_gap_table([1000, 100, 1000])
    assert [r.n for r in table.rows] == [100, 1000]


def test_least_n_below():
    table = bound_gap_table([100, 1000, 10000])
    assert table.least_n_below(0.5) == 100
    assert table.least_n_below(0.2) == 1000
    assert table.least_n_below(0.01) is None


def test_gap_table_csv_and_json():
    table = bound_gap_table([2, 100])
    text = table.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "n,H_n,x,B(n),H(n/2),gap"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "2"
    assert first[1] == "3/2"
    assert first[2] == "1"
    # float cells round-trip through repr
    assert float(first[3]) == pytest.approx(B_2, abs=1e-12)
    doc = json.loads(table.to_json())
    assert [row["n"] for row in doc] == [2, 100]
    assert set(doc[0]) == {"n", "H_n", "x", "B(n)", "H(n/2)", "gap"}


def test_aggregate_instance_a(instance_a):
    N = potential_minimizers(instance_a)[0]
    O = social_optimum(instance_a)
    report = verify_aggregate(instance_a, N, O)
    assert report.ok
    assert [c.name for c in report.checks] == [
        "level-mix",
        "potential",
        "combined",
        "chain",
        "ratio",
    ]
    by_name = {c.name: c for c in report.checks}
    assert by_name["level-mix"].lhs == 0
    assert by_name["level-mix"].rhs == 0
    assert by_name["combined"].lhs == 3
    assert by_name["combined"].rhs == 3
    assert report.ratio == 1
    assert report.bound == pos_upper_bound(2)
    assert json.dumps(report.to_dict())


def test_aggregate_single_player(triangle):
    N = potential_minimizers(triangle)[0]
    O = social_optimum(triangle)
    report = verify_aggregate(triangle, N, O)
    assert [c.name for c in report.checks] == ["potential"]
    assert report.ratio is None
    assert report.bound is None
    assert report.ok


def test_aggregate_rejects_directed():
    g = directed_harmonic_family(2, Fraction(1, 10))
    p = make_profile(g, [("direct1",), ("direct2",)])
    with pytest.raises(ValidationError):
        verify_aggregate(g, p, p)


def test_aggregate_rejects_cyclic_reference(instance_a):
    split = make_profile(instance_a, [("e1",), ("e2",)])
    N = potential_minimizers(instance_a)[0]
    with pytest.raises(StructureError):
        verify_aggregate(instance_a, N, split)
