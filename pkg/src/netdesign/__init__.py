"""Exact analysis of Shapley network design games.

Games are undirected or directed multigraphs with one terminal pair
per player; every edge's cost is split evenly among its users.  The
package computes equilibria, potential minimizers, social optima, and
price ratios exhaustively in exact rational arithmetic, constructs the
pivot deviation profiles that bound the potential-optimal price of
anarchy, and evaluates the closed-form stability bound B(n).
"""

from .bounds import (
    AggregateCheck,
    AggregateReport,
    BoundRow,
    BoundTable,
    LevelRow,
    alpha,
    beta,
    bound_gap_table,
    level_table,
    mixing_weight,
    pos_upper_bound,
    theta,
    verify_aggregate,
)
from .costs import (
    UsagePartition,
    mask_of,
    player_cost,
    players_of,
    potential,
    set_cost,
    social_cost,
    usage_partition,
)
from .deviation import (
    DeviationProfile,
    LemmaReport,
    LemmaTerm,
    TraversalVerdict,
    build_S,
    build_T,
    classify_edge_traversal,
    simplify_walk,
    verify_lemma1,
    verify_lemma2,
    verify_lemma3,
)
from .enumeration import (
    DEFAULT_PATH_CAP,
    DEFAULT_PROFILE_BUDGET,
    StrategySpace,
    build_strategy_space,
    check_budget,
    enumerate_paths,
    iterate_profiles,
    profile_at,
    profile_from_flat,
)
from .equilibrium import (
    EquilibriumReport,
    MoveRecord,
    NashVerdict,
    ScanResult,
    best_response,
    best_response_dynamics,
    enumerate_nash,
    is_nash,
    potential_minimizers,
    price_ratios,
    scan_space,
)
from .errors import (
    AggregateViolation,
    BudgetError,
    DomainError,
    GenerationError,
    LemmaViolation,
    NetdesignError,
    ParseError,
    StructureError,
    ValidationError,
    VerificationError,
)
from .game import (
    Edge,
    Game,
    Player,
    StrategyProfile,
    load_game,
    make_profile,
    save_game,
    trace_path,
)
from .generators import directed_harmonic_family, random_instance, shared_bridge_family
from .harmonic import harmonic_int, harmonic_mpf, harmonic_prefix, harmonic_real
from .optimum import (
    OptimumDecomposition,
    decompose_optimum,
    forest_normalize,
    minimum_forest_optima,
    social_optimum,
)
from .rationals import Rational, decimal_str, format_rational, parse_rational

__version__ = "0.1.0"
