"""Global numerical invariants: orbifold Euler characteristics, quotient
Betti numbers, the desingularization ledger, sign-data combinatorics,
and node-configuration checks."""

from .betti import (
    LOCAL_CASE_DATA,
    POINT_CASE_PATTERNS,
    SPIN7_EXAMPLE_BETTI,
    BettiVector,
    ContributionTable,
    DesingPlan,
    exterior_power_matrix,
    ledger_apply,
    plan_from_choices,
    quotient_betti,
)
from .chi import (
    ChiCensus,
    ChiData,
    chi_admissible,
    chi_count_brute_force,
    chi_family_census,
    chi_total_count,
    code_admissible,
)
from .euler import EulerReport, euler_presum, orbifold_euler
from .nodes import (
    NodeConfiguration,
    SmoothabilityResult,
    generic_combination,
    node_kahler,
    node_smoothable,
)

__all__ = [
    "BettiVector",
    "ChiCensus",
    "ChiData",
    "ContributionTable",
    "DesingPlan",
    "EulerReport",
    "LOCAL_CASE_DATA",
    "NodeConfiguration",
    "POINT_CASE_PATTERNS",
    "SPIN7_EXAMPLE_BETTI",
    "SmoothabilityResult",
    "chi_admissible",
    "chi_count_brute_force",
    "chi_family_census",
    "chi_total_count",
    "code_admissible",
    "euler_presum",
    "exterior_power_matrix",
    "generic_combination",
    "ledger_apply",
    "node_kahler",
    "node_smoothable",
    "orbifold_euler",
    "plan_from_choices",
    "quotient_betti",
]
