"""Open-problem probes and named search presets.

The probes report exact desk-scale optima next to the relevant closed-form
reference values; they assert nothing, since the questions they explore are
open. Pair probes optimize min(|A|, |B|) over disjoint cross-intersecting
pairs by branch and bound over the A-side: once A is fixed, the best B is
everything that meets all of A, so the search walks inclusion decisions for
A with an upper bound from the undecided count and the surviving B pool.
"""

from __future__ import annotations

import os
from fractions import Fraction

from ..core import Family, ParameterError, family_from_masks, k_subset_masks
from .. import invariants
from ..exact import a0_t_degree, binom, hm_t_degree_bound
from .engine import (
    BUDGET_ENV_VAR,
    ConstraintSet,
    SearchProblem,
    SearchResult,
    _Budget,
    maximize_min_t_degree,
)

PAIR_LIMITS = {"max_n": 8, "max_k": 3}

# Pair-search nodes are cheap bitset operations, orders of magnitude lighter
# than the canonicity-tested nodes of the family engine, so they get a much
# larger default cap. The env override still wins.
DEFAULT_PAIR_NODE_BUDGET = 50_000_000


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def ekr_degree_problem(n: int, k: int, t: int = 1) -> SearchProblem:
    """Maximize the minimum t-degree over intersecting families."""
    cs = ConstraintSet(n=n, k=k, t=t, intersecting=True)
    reference = binom(n - t - 1, k - t - 1)
    if t == 1:
        within = n >= 2 * k + 1
    else:
        within = n * (k - t) >= 2 * k * k + k * t
    return SearchProblem(cs, "max_min_t_degree", reference, within)


def hm_degree_problem(n: int, k: int, t: int = 1) -> SearchProblem:
    """Maximize the minimum t-degree over non-trivial intersecting families."""
    cs = ConstraintSet(n=n, k=k, t=t, intersecting=True, non_trivial=True)
    reference = hm_t_degree_bound(n, k, t) if n >= 2 * k + 1 and t < k else None
    if t == 1:
        within = (n >= 2 * k + 5 and k >= 30) or (
            k >= 4 and n >= (30 if k <= 5 else 4) * k * k
        )
    else:
        within = 1 < t <= k / 4 - 2 and n >= 2 * k + 14 * t
    return SearchProblem(cs, "max_min_t_degree", reference, bool(within))


def emc_degree_problem(n: int, k: int, s: int, t: int = 1) -> SearchProblem:
    """Maximize the minimum t-degree over families with matching number <= s."""
    cs = ConstraintSet(n=n, k=k, t=t, matching_at_most=s)
    reference = a0_t_degree(n, k, s, t)
    within = n >= 2 * k * k and (k >= 5 * s * t or (t == 1 and k >= 3 * s))
    within = within or (t == 1 and n >= 3 * k * k * (s + 1))
    return SearchProblem(cs, "max_min_t_degree", reference, bool(within))


def cross_pair_problem(n: int, k: int) -> SearchProblem:
    """Maximize min(|A|, |B|) over disjoint cross-intersecting pairs."""
    cs = ConstraintSet(n=n, k=k, t=1, pair_mode=True)
    reference = Fraction(binom(n - 1, k - 1), 2)
    return SearchProblem(cs, "max_min_pair_size", reference, None)


PRESETS = {
    "ekr-degree": ekr_degree_problem,
    "hm-degree": hm_degree_problem,
    "emc-degree": emc_degree_problem,
    "problem2": cross_pair_problem,
}


# ---------------------------------------------------------------------------
# Pair search
# ---------------------------------------------------------------------------


def _pair_search(n: int, k: int, cap: int) -> tuple[int, tuple[int, ...], tuple[int, ...], int, bool]:
    """Exact max of min(|A|, |B|); returns (value, A-masks, B-masks, nodes, exact).

    Vertices are the k-sets; edges join disjoint pairs, so cross-intersecting
    means no edge between A and B. Each vertex is assigned to A, B, or
    neither; eligibility bitsets (vertices with no neighbor on the opposite
    side yet) give the bound min(|A| + eligible_A, |B| + eligible_B). Since
    the symmetric group is transitive on k-sets and the two sides are
    swappable, the first vertex can be forced into A once any nonempty
    solution is known.
    """
    universe = tuple(k_subset_masks(n, k))
    size = len(universe)
    adj = []
    for i, mi in enumerate(universe):
        row = 0
        for j, mj in enumerate(universe):
            if i != j and not mi & mj:
                row |= 1 << j
        adj.append(row)
    full = (1 << size) - 1

    budget = _Budget(cap)

    # Deterministic warm start: A = sets containing both 1 and 2; B = every
    # set meeting all of them (anything else touching {1, 2}).
    seed_a = 0
    pair_mask = 0b11
    for i, m in enumerate(universe):
        if m & pair_mask == pair_mask:
            seed_a |= 1 << i
    blocked = seed_a
    bits = seed_a
    while bits:
        low = bits & -bits
        blocked |= adj[low.bit_length() - 1]
        bits ^= low
    seed_b = full & ~blocked
    best = min(seed_a.bit_count(), seed_b.bit_count())
    best_pair = (seed_a, seed_b)

    def dfs(a_bits: int, b_bits: int, elig_a: int, elig_b: int,
            record_witness: bool, target: int) -> tuple[int, int] | None:
        """Prunes at `target`; in record mode returns the first pair
        reaching it, otherwise updates `best` as a side effect."""
        nonlocal best, best_pair
        if not budget.tick():
            return None
        a_count = a_bits.bit_count()
        b_count = b_bits.bit_count()
        open_a = elig_a & ~a_bits
        open_b = elig_b & ~b_bits
        ub = min(a_count + open_a.bit_count(), b_count + open_b.bit_count())
        if record_witness:
            if ub < target:
                return None
        elif ub <= target:
            return None
        undecided = (open_a | open_b)
        if not undecided:
            value = min(a_count, b_count)
            if record_witness:
                return (a_bits, b_bits) if value >= target else None
            if value > best:
                best = value
                best_pair = (a_bits, b_bits)
            return None
        v = (undecided & -undecided).bit_length() - 1
        vbit = 1 << v
        branches = []
        if open_a & vbit:
            branches.append((a_bits | vbit, b_bits, elig_a, elig_b & ~adj[v] & ~vbit))
        if open_b & vbit:
            branches.append((a_bits, b_bits | vbit, elig_a & ~adj[v] & ~vbit, elig_b))
        branches.append((a_bits, b_bits, elig_a & ~vbit, elig_b & ~vbit))
        for na, nb, nea, neb in branches:
            found = dfs(na, nb, nea, neb, record_witness,
                        target if record_witness else best)
            if found is not None:
                return found
            if budget.exhausted:
                return None
        return None

    # Value phase: vertex 0 is forced into A (some optimal pair has it there).
    dfs(1, 0, full, full & ~adj[0] & ~1, False, best)
    exact = not budget.exhausted
    optimum = max(best, 0)

    a_bits, b_bits = best_pair
    if exact:
        hit = dfs(1, 0, full, full & ~adj[0] & ~1, True, optimum)
        if hit is not None:
            a_bits, b_bits = hit
        exact = not budget.exhausted
    a_masks = tuple(universe[i] for i in range(size) if a_bits >> i & 1)
    b_masks = tuple(universe[i] for i in range(size) if b_bits >> i & 1)
    return optimum, a_masks, b_masks, budget.count, exact


def run_pair_problem(problem: SearchProblem, budget: int | None = None) -> SearchResult:
    """Solve a pair_mode problem exactly (single-threaded, deterministic)."""
    cs = problem.constraints
    if not cs.pair_mode:
        raise ParameterError("run_pair_problem needs a pair_mode problem")
    if cs.n > PAIR_LIMITS["max_n"] or cs.k > PAIR_LIMITS["max_k"]:
        raise ParameterError(
            f"pair probes support n <= {PAIR_LIMITS['max_n']}, "
            f"k <= {PAIR_LIMITS['max_k']}; got n={cs.n}, k={cs.k}"
        )
    if budget is not None:
        cap = budget
    else:
        override = os.environ.get(BUDGET_ENV_VAR)
        cap = int(override) if override else DEFAULT_PAIR_NODE_BUDGET
    optimum, a_masks, b_masks, nodes, exact = _pair_search(cs.n, cs.k, cap)
    fam_a = family_from_masks(cs.n, cs.k, a_masks)
    fam_b = family_from_masks(cs.n, cs.k, b_masks)
    if exact:
        _revalidate_pair(fam_a, fam_b, optimum)
    return SearchResult(
        optimum=optimum,
        witness=None,
        witness_pair=(fam_a, fam_b),
        nodes_expanded=nodes,
        isomorph_rejections=0,
        status="exact" if exact else "timeout",
        reference_bound=problem.reference_bound,
        within_regime=problem.within_regime,
    )


def _revalidate_pair(fam_a: Family, fam_b: Family, optimum: int) -> None:
    if optimum == 0:
        return
    if set(fam_a.masks) & set(fam_b.masks):
        raise RuntimeError("unsound pair witness: families are not disjoint")
    if not invariants.are_cross_intersecting(fam_a, fam_b):
        raise RuntimeError("unsound pair witness: families are not cross-intersecting")
    if min(len(fam_a), len(fam_b)) != optimum:
        raise RuntimeError(
            f"unsound pair witness: min size {min(len(fam_a), len(fam_b))} "
            f"!= optimum {optimum}"
        )


# ---------------------------------------------------------------------------
# Open-problem probes
# ---------------------------------------------------------------------------


def probe_problem1(k: int, threads: int = 1, budget: int | None = None) -> SearchResult:
    """Exact maximum minimum degree of non-trivial intersecting families at
    n = 2k+1, next to the closed-form value of the k-core construction.
    Reported, never asserted."""
    if not 2 <= k <= 4:
        raise ParameterError(f"probe budget covers 2 <= k <= 4, got k={k}")
    n = 2 * k + 1
    problem = hm_degree_problem(n, k, t=1)
    return maximize_min_t_degree(problem, threads=threads, budget=budget)


def probe_problem2(n: int, k: int, budget: int | None = None) -> SearchResult:
    """Exact maximum of min(|A|, |B|) over disjoint cross-intersecting pairs,
    next to half the star size. Reported, never asserted."""
    return run_pair_problem(cross_pair_problem(n, k), budget=budget)


def solve(problem: SearchProblem, threads: int = 1, budget: int | None = None) -> SearchResult:
    """Dispatch a SearchProblem to the appropriate engine."""
    if problem.constraints.pair_mode:
        return run_pair_problem(problem, budget=budget)
    return maximize_min_t_degree(problem, threads=threads, budget=budget)
