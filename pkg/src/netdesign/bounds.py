"""Closed-form bound machinery for the stability gap.

Everything that can be exact stays exact: the mixing weight x, the
level weights alpha, beta, theta, and the level aggregates are all
rationals.  Only the harmonic extension at the non integer argument
(n + x)/2, and hence the bound B(n) itself, are real valued, with a
stated absolute error budget of 1e-9.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .costs import social_cost, usage_partition
from .errors import AggregateViolation, DomainError, StructureError, ValidationError
from .game import Game, StrategyProfile
from .harmonic import _as_fraction, _harmonic_mpq, harmonic_int, harmonic_mpf
from .optimum import _has_cycle
from .rationals import format_rational

_DPS = 30
_SLACK = 1e-9


def _mpf(q):
    if isinstance(q, int):
        return mpmath.mpf(q)
    return mpmath.mpf(int(q.numerator)) / mpmath.mpf(int(q.denominator))


def mixing_weight(n: int) -> Fraction:
    """x(n) = (n - H_n)/(H_n - 1), the weight combining the two level
    inequalities; defined for n >= 2.

    The arithmetic runs on GMP rationals: at n = 10^6 the reduction
    gcds run over multi-megabit integers, where the CPython gcd alone
    would cost several seconds.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"mixing weight needs an integer n >= 2, got {n!r}")
    hq = _harmonic_mpq(n)
    return _as_fraction((n - hq) / (hq - 1))


def _check_level(l, n):
    if isinstance(l, bool) or not isinstance(l, int) or not 1 <= l <= n:
        raise DomainError(f"level must be an integer in 1..{n}, got {l!r}")


def alpha(l: int, n: int) -> Fraction:
    """(n + x) H_l - l H_n; minimal at both extremes l = 1 and l = n."""
    x = mixing_weight(n)
    _check_level(l, n)
    return (n + x) * harmonic_int(l) - l * harmonic_int(n)


def beta(l: int, n: int) -> Fraction:
    """l H_{n-l} + (n + x - l) H_l, exact despite the real-valued cap."""
    x = mixing_weight(n)
    _check_level(l, n)
    return l * harmonic_int(n - l) + (n + x - l) * harmonic_int(l)


def theta(l: int, n: int) -> Fraction:
    """l H_{n-l} + (n - l) H_l; symmetric around n/2."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"theta needs an integer n >= 2, got {n!r}")
    _check_level(l, n)
    return l * harmonic_int(n - l) + (n - l) * harmonic_int(l)


def _bound_mpf(n: int):
    """B(n) at working precision, together with H(n/2)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"the bound needs an integer n >= 2, got {n!r}")
    hq = _harmonic_mpq(n)
    top = n + (n - hq) / (hq - 1)
    with mpmath.workdps(_DPS):
        pref = _mpf(top) / _mpf(top - hq)
        b = pref * harmonic_mpf(top / 2)
        half = harmonic_mpf(Fraction(n, 2))
        return b, half


def pos_upper_bound(n: int) -> float:
    """B(n) = ((n+x)/(n+x-H_n)) * H((n+x)/2), within 1e-9 absolute."""
    b, _ = _bound_mpf(n)
    return float(b)


@dataclass(frozen=True)
class LevelRow:
    """Exact level weights at one l."""

    l: int
    alpha: Fraction
    beta: Fraction
    theta: Fraction


def level_table(n: int):
    """All level rows for one n, l = 1..n."""
    return [LevelRow(l, alpha(l, n), beta(l, n), theta(l, n)) for l in range(1, n + 1)]


@dataclass(frozen=True)
class BoundRow:
    n: int
    h_n: Fraction
    x: Fraction
    bound: float
    half: float
    gap: float

    def to_dict(self):
        return {
            "n": self.n,
            "H_n": format_rational(self.h_n),
            "x": format_rational(self.x),
            "B(n)": self.bound,
            "H(n/2)": self.half,
            "gap": self.gap,
        }


@dataclass(frozen=True, eq=False)
class BoundTable:
    """Per-n bound evaluations, ordered by n."""

    rows: tuple

    def to_csv(self) -> str:
        lines = ["n,H_n,x,B(n),H(n/2),gap"]
        for r in self.rows:
            lines.append(
                f"{r.n},{format_rational(r.h_n)},{format_rational(r.x)},"
                f"{r.bound!r},{r.half!r},{r.gap!r}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.rows], indent=2) + "\n"

    def least_n_below(self, eps):
        """Smallest tabulated n whose gap drops under eps, or None."""
        for r in self.rows:
            if r.gap < eps:
                return r.n
        return None


def bound_gap_table(n_list) -> BoundTable:
    """Tabulate B(n), H(n/2) and their gap for each requested n."""
    rows = []
    for n in sorted(set(n_list)):
        b, half = _bound_mpf(n)
        rows.append(
            BoundRow(
                n=n,
                h_n=harmonic_int(n),
                x=mixing_weight(n),
                bound=float(b),
                half=float(half),
                gap=float(b - half),
            )
        )
    return BoundTable(rows=tuple(rows))


@dataclass(frozen=True)
class AggregateCheck:
    name: str
    lhs: object
    rhs: object
    exact: bool
    ok: bool

    def to_dict(self):
        show = format_rational if self.exact else repr
        return {
            "name": self.name,
            "lhs": show(self.lhs),
            "rhs": show(self.rhs),
            "exact": self.exact,
            "ok": self.ok,
        }


@dataclass(frozen=True, eq=False)
class AggregateReport:
    """Level aggregates of N and O and the chained cost comparison."""

    n: int
    levels_nash: dict
    levels_opt: dict
    cost_nash: Fraction
    cost_opt: Fraction
    ratio: object
    bound: object
    checks: tuple
    ok: bool

    def to_dict(self):
        return {
            "n": self.n,
            "levels_nash": {
                str(l): format_rational(w) for l, w in sorted(self.levels_nash.items())
            },
            "levels_opt": {
                str(l): format_rational(w) for l, w in sorted(self.levels_opt.items())
            },
            "cost_nash": format_rational(self.cost_nash),
            "cost_opt": format_rational(self.cost_opt),
            "ratio": None if self.ratio is None else format_rational(self.ratio),
            "bound": self.bound,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }


def verify_aggregate(g: Game, N: StrategyProfile, O: StrategyProfile) -> AggregateReport:
    """Assert the full aggregate chain from N's levels to the cost bound.

    Four checks: the mixed level inequality, potential dominance
    Phi(N) <= Phi(O), their x-weighted combination, and the end to end
    product form (n+x-H_n) cost(N) <= (n+x) H((n+x)/2) cost(O).  The
    first three are exact; the last is evaluated at 30 digits with a
    1e-9 relative slack, and implies cost(N)/cost(O) <= B(n).  With a
    single player only potential dominance applies.
    """
    if g.directed:
        raise ValidationError("aggregate verification needs an undirected game")
    if _has_cycle(g, frozenset(O.usage)):
        raise StructureError("the reference optimum must be a forest profile")
    n = g.n
    nlev = usage_partition(g, N).levels
    olev = usage_partition(g, O).levels
    cost_n = social_cost(g, N)
    cost_o = social_cost(g, O)
    hn = harmonic_int(n)
    checks = []

    phi_n = sum((harmonic_int(l) * w for l, w in nlev.items()), Fraction(0))
    phi_o = sum((harmonic_int(l) * w for l, w in olev.items()), Fraction(0))

    if n >= 2:
        lhs1 = sum(
            ((n * harmonic_int(l) - l * hn) * w for l, w in nlev.items()), Fraction(0)
        )
        rhs1 = sum((theta(l, n) * w for l, w in olev.items()), Fraction(0))
        checks.append(AggregateCheck("level-mix", lhs1, rhs1, True, lhs1 <= rhs1))

    checks.append(AggregateCheck("potential", phi_n, phi_o, True, phi_n <= phi_o))

    ratio = None
    bound = None
    if n >= 2:
        x = mixing_weight(n)
        lhs3 = sum((alpha(l, n) * w for l, w in nlev.items()), Fraction(0))
        rhs3 = sum((beta(l, n) * w for l, w in olev.items()), Fraction(0))
        checks.append(AggregateCheck("combined", lhs3, rhs3, True, lhs3 <= rhs3))

        with mpmath.workdps(_DPS):
            lhs4 = _mpf((n + x - hn) * cost_n)
            rhs4 = _mpf((n + x) * cost_o) * harmonic_mpf(Fraction(n + x, 2))
            ok4 = lhs4 <= rhs4 + _SLACK * (1 + rhs4)
        checks.append(AggregateCheck("chain", float(lhs4), float(rhs4), False, ok4))

        bound = pos_upper_bound(n)
        if cost_o > 0:
            ratio = cost_n / cost_o
            checks.append(
                AggregateCheck(
                    "ratio", float(ratio), bound, False, float(ratio) <= bound + _SLACK
                )
            )

    ok = all(c.ok for c in checks)
    report = AggregateReport(
        n=n,
        levels_nash=dict(nlev),
        levels_opt=dict(olev),
        cost_nash=cost_n,
        cost_opt=cost_o,
        ratio=ratio,
        bound=bound,
        checks=tuple(checks),
        ok=ok,
    )
    if not ok:
        bad = ", ".join(c.name for c in checks if not c.ok)
        raise AggregateViolation(f"aggregate checks failed: {bad}", report=report)
    return report
