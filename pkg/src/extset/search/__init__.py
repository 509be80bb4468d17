"""Isomorph-free exhaustive search: canonical forms, the orderly search
engine, and open-problem probes."""

from .canonical import (
    CanonicalForm,
    canonical_form,
    canonical_representative,
    is_canonical,
)
from .engine import (
    BUDGET_ENV_VAR,
    DEFAULT_NODE_BUDGETS,
    ENUMERATION_LIMITS,
    ConstraintSet,
    SearchProblem,
    SearchResult,
    enumerate_maximal_intersecting,
    maximize_min_t_degree,
    node_budget,
)
from .probes import (
    PAIR_LIMITS,
    PRESETS,
    cross_pair_problem,
    ekr_degree_problem,
    emc_degree_problem,
    hm_degree_problem,
    probe_problem1,
    probe_problem2,
    run_pair_problem,
    solve,
)

__all__ = [
    "BUDGET_ENV_VAR",
    "CanonicalForm",
    "ConstraintSet",
    "DEFAULT_NODE_BUDGETS",
    "ENUMERATION_LIMITS",
    "PAIR_LIMITS",
    "PRESETS",
    "SearchProblem",
    "SearchResult",
    "canonical_form",
    "canonical_representative",
    "cross_pair_problem",
    "ekr_degree_problem",
    "emc_degree_problem",
    "enumerate_maximal_intersecting",
    "hm_degree_problem",
    "is_canonical",
    "maximize_min_t_degree",
    "node_budget",
    "probe_problem1",
    "probe_problem2",
    "run_pair_problem",
    "solve",
]
