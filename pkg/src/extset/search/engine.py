"""Isomorph-free exhaustive search over set families.

Generation is "orderly": the search tree contains exactly the canonical
representatives (lex-max code, see `canonical`) of each isomorphism class,
children extend a family only by sets with larger masks, and a child is
expanded only if it is itself canonical. Deleting the largest member of a
canonical family yields a canonical family, so every class appears exactly
once and no global seen-set is needed.

Optimization runs in two phases. The value phase (parallelizable; workers
share a monotone incumbent) establishes the exact optimum with an admissible
completion bound: the degree a t-set could still reach through the remaining
compatible pool, plus a handshake cap. The witness phase then re-walks the
tree deterministically in ascending mask order, pruning only strictly
hopeless branches, and stops at the first optimum-attaining family: the
lexicographically smallest canonical witness, independent of thread count.
"""

from __future__ import annotations

import os
import queue
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterator

from ..core import (
    BudgetExceededError,
    Family,
    ParameterError,
    family_from_masks,
    k_subset_masks,
)
from .. import invariants
from .canonical import is_canonical

# Node caps per (n, k): one tick per expanded node or rejected child. A tick
# costs roughly 0.05 ms at k <= 3 and up to ~5 ms at k = 4 (larger families,
# bigger candidate pools), so the k = 4 caps are much smaller to keep the
# worst-case wall time in minutes. EXTSET_BUDGET_OVERRIDE replaces the cap.
DEFAULT_NODE_BUDGETS: dict[tuple[int, int], int] = {
    (8, 3): 1_000_000,
    (9, 3): 3_000_000,
    (8, 4): 100_000,
    (9, 4): 100_000,
}

ENUMERATION_LIMITS = {"max_n": 9, "max_k": 4}

BUDGET_ENV_VAR = "EXTSET_BUDGET_OVERRIDE"


def node_budget(n: int, k: int) -> int:
    override = os.environ.get(BUDGET_ENV_VAR)
    if override:
        try:
            return int(override)
        except ValueError:
            raise ParameterError(f"{BUDGET_ENV_VAR} must be an integer, got {override!r}")
    if (n, k) in DEFAULT_NODE_BUDGETS:
        return DEFAULT_NODE_BUDGETS[(n, k)]
    return 100_000 if k >= 4 else 600_000


@dataclass(frozen=True)
class ConstraintSet:
    """Feasibility flags for a search, with its ground parameters."""

    n: int
    k: int
    t: int = 1
    intersecting: bool = False
    non_trivial: bool = False
    matching_at_most: int | None = None
    pair_mode: bool = False

    def __post_init__(self):
        if self.pair_mode and (self.intersecting or self.non_trivial or self.matching_at_most):
            raise ParameterError("pair_mode excludes the single-family constraint flags")
        if self.non_trivial and not self.intersecting:
            raise ParameterError("non_trivial is only supported together with intersecting")
        if self.matching_at_most is not None:
            if self.matching_at_most < 1:
                raise ParameterError("matching_at_most must be >= 1")
            if self.intersecting:
                raise ParameterError("use either intersecting or matching_at_most, not both")
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if not 1 <= self.t <= self.k:
            raise ParameterError(f"need 1 <= t <= k, got t={self.t}, k={self.k}")


@dataclass(frozen=True)
class SearchProblem:
    constraints: ConstraintSet
    objective: str = "max_min_t_degree"
    reference_bound: int | Fraction | None = None
    within_regime: bool | None = None

    def __post_init__(self):
        if self.objective not in ("max_min_t_degree", "max_min_pair_size"):
            raise ParameterError(f"unknown objective {self.objective!r}")
        if (self.objective == "max_min_pair_size") != self.constraints.pair_mode:
            raise ParameterError("objective max_min_pair_size requires pair_mode and vice versa")


@dataclass(frozen=True)
class SearchResult:
    optimum: int
    witness: Family | None
    nodes_expanded: int
    isomorph_rejections: int
    status: str  # "exact" or "timeout"
    witness_pair: tuple[Family, Family] | None = None
    reference_bound: int | Fraction | None = None
    within_regime: bool | None = None
    counterexample: bool = False


class _Budget:
    """Shared monotone node counter with a hard cap."""

    def __init__(self, cap: int):
        self.cap = cap
        self.count = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def tick(self, amount: int = 1) -> bool:
        with self._lock:
            self.count += amount
            if self.count > self.cap:
                self.exhausted = True
            return not self.exhausted


class _Incumbent:
    """Best value (and a witness for timeout reporting) shared by workers."""

    def __init__(self):
        self.value = -1
        self.witness: tuple[int, ...] | None = None
        self._lock = threading.Lock()

    def offer(self, value: int, masks: tuple[int, ...] | None) -> None:
        with self._lock:
            if value > self.value:
                self.value = value
                self.witness = masks

    def get(self) -> int:
        with self._lock:
            return self.value


def _t_subsets(mask: int, t: int) -> tuple[int, ...]:
    bits = []
    b = mask
    while b:
        low = b & -b
        bits.append(low)
        b ^= low
    out = []
    for combo in combinations(bits, t):
        m = 0
        for c in combo:
            m |= c
        out.append(m)
    return tuple(out)


def _has_packing(masks: list[int], size: int) -> bool:
    """True iff `masks` contains `size` pairwise disjoint sets."""
    if size == 0:
        return True

    def rec(idx: int, need: int, avoid: int) -> bool:
        if need == 0:
            return True
        for i in range(idx, len(masks)):
            if len(masks) - i < need:
                return False
            m = masks[i]
            if not m & avoid and rec(i + 1, need - 1, avoid | m):
                return True
        return False

    return rec(0, size, 0)


class _FamilySearch:
    """Orderly search over families satisfying a hereditary constraint set.

    The t = 1 case (the common one) indexes degrees by element in flat lists;
    larger t uses dicts keyed by t-subset mask.
    """

    def __init__(self, constraints: ConstraintSet, budget: _Budget):
        cs = constraints
        self.cs = cs
        self.n, self.k, self.t = cs.n, cs.k, cs.t
        self.budget = budget
        self.universe: tuple[int, ...] = tuple(k_subset_masks(self.n, self.k))
        if self.t == 1:
            self.elems: dict[int, tuple[int, ...]] = {
                m: tuple(b.bit_length() - 1 for b in _t_subsets(m, 1))
                for m in self.universe
            }
        else:
            self.tsubs: dict[int, tuple[int, ...]] = {
                m: _t_subsets(m, self.t) for m in self.universe
            }
        self.total_tsets = comb(self.n, self.t)
        self.handshake_per_set = comb(self.k, self.t)
        self.nodes = 0
        self.rejections = 0
        self._count_lock = threading.Lock()

    # -- constraint machinery ------------------------------------------------

    def compatible(self, cand: int, masks: tuple[int, ...]) -> bool:
        if self.cs.intersecting:
            for m in masks:
                if not m & cand:
                    return False
            return True
        s = self.cs.matching_at_most
        if s is not None:
            free = [m for m in masks if not m & cand]
            return not _has_packing(free, s)
        return True

    def child_pool(self, pool: tuple[int, ...], added: int,
                   masks: tuple[int, ...]) -> tuple[int, ...]:
        if self.cs.intersecting:
            return tuple(m for m in pool if m > added and m & added)
        s = self.cs.matching_at_most
        if s is not None:
            out = []
            for m in pool:
                if m > added and self.compatible(m, masks):
                    out.append(m)
            return tuple(out)
        return tuple(m for m in pool if m > added)

    def scoring_ok(self, masks: tuple[int, ...], and_mask: int) -> bool:
        if not masks:
            return False
        if self.cs.non_trivial and and_mask != 0:
            return False
        return True

    # -- node statistics -----------------------------------------------------

    def value(self, deg) -> int:
        if self.t == 1:
            return min(deg)
        if len(deg) < self.total_tsets:
            return 0
        return min(deg.values())

    def bound(self, size: int, deg, pool: tuple[int, ...]) -> int:
        handshake = (self.handshake_per_set * (size + len(pool))) // self.total_tsets
        if self.t == 1:
            pot = list(deg)
            for m in pool:
                for i in self.elems[m]:
                    pot[i] += 1
            return min(min(pot), handshake)
        pot = dict(deg)
        for m in pool:
            for tm in self.tsubs[m]:
                pot[tm] = pot.get(tm, 0) + 1
        if len(pot) < self.total_tsets:
            return 0
        return min(min(pot.values()), handshake)

    def child_deg(self, deg, added: int):
        if self.t == 1:
            out = list(deg)
            for i in self.elems[added]:
                out[i] += 1
            return out
        out = dict(deg)
        for tm in self.tsubs[added]:
            out[tm] = out.get(tm, 0) + 1
        return out

    def heuristic_key(self, deg) -> Callable[[int], tuple[int, int]]:
        if self.t == 1:
            def key(cand: int) -> tuple[int, int]:
                return (min(deg[i] for i in self.elems[cand]), cand)
        else:
            def key(cand: int) -> tuple[int, int]:
                return (min(deg.get(tm, 0) for tm in self.tsubs[cand]), cand)

        return key

    def count_node(self) -> bool:
        with self._count_lock:
            self.nodes += 1
        return self.budget.tick()

    def count_rejection(self) -> None:
        # Rejected children consume the budget too: canonicity tests dominate
        # the per-child cost, so the cap must bound them as well.
        with self._count_lock:
            self.rejections += 1
        self.budget.tick()


@dataclass
class _Node:
    masks: tuple[int, ...]
    pool: tuple[int, ...]
    deg: list[int] | dict[int, int]  # per-element for t = 1, per-t-set mask otherwise
    and_mask: int


def _root_node(search: _FamilySearch) -> _Node:
    return _Node(
        masks=(),
        pool=tuple(search.universe),
        deg=[0] * search.n if search.t == 1 else {},
        and_mask=(1 << search.n) - 1,
    )


def _children(search: _FamilySearch, node: _Node,
              prune_at: Callable[[], int] | None,
              ordered: bool) -> Iterator[_Node]:
    """Canonical children of `node`; with `prune_at`, children whose
    completion bound does not exceed prune_at() are cut before the (more
    expensive) canonicity test."""
    cands = node.pool
    if ordered:
        cands = tuple(sorted(cands, key=search.heuristic_key(node.deg)))
    for cand in cands:
        child_masks = node.masks + (cand,)
        child_deg = search.child_deg(node.deg, cand)
        child_pool = search.child_pool(node.pool, cand, child_masks)
        if prune_at is not None:
            if search.bound(len(child_masks), child_deg, child_pool) <= prune_at():
                continue
        if not is_canonical(child_masks, search.n, search.k):
            search.count_rejection()
            if search.budget.exhausted:
                return
            continue
        yield _Node(
            masks=child_masks,
            pool=child_pool,
            deg=child_deg,
            and_mask=node.and_mask & cand,
        )


def _value_dfs(search: _FamilySearch, node: _Node, incumbent: _Incumbent) -> None:
    if not search.count_node():
        return
    if search.scoring_ok(node.masks, node.and_mask):
        incumbent.offer(search.value(node.deg), node.masks)
    for child in _children(search, node, incumbent.get, ordered=True):
        if search.budget.exhausted:
            return
        _value_dfs(search, child, incumbent)


def _witness_dfs(search: _FamilySearch, node: _Node, target: int) -> tuple[int, ...] | None:
    """First family in ascending mask order attaining `target`."""
    if not search.count_node():
        return None
    if search.scoring_ok(node.masks, node.and_mask) and search.value(node.deg) == target:
        return node.masks
    for child in _children(search, node, lambda: target - 1, ordered=False):
        found = _witness_dfs(search, child, target)
        if found is not None or search.budget.exhausted:
            return found
    return None


def _collect_frontier(search: _FamilySearch, incumbent: _Incumbent,
                      min_tasks: int) -> list[_Node]:
    """Expand the shallowest layers breadth-first until enough subtree tasks
    exist to feed the worker pool; scores the expanded prefix on the way."""
    frontier = [_root_node(search)]
    while len(frontier) < min_tasks:
        grown: list[_Node] = []
        progressed = False
        for node in frontier:
            if not search.count_node():
                return []
            if search.scoring_ok(node.masks, node.and_mask):
                incumbent.offer(search.value(node.deg), node.masks)
            kids = list(_children(search, node, incumbent.get, ordered=True))
            if kids:
                progressed = True
            grown.extend(kids)
        if not progressed:
            return []
        frontier = grown
    return frontier


def _run_value_phase(search: _FamilySearch, incumbent: _Incumbent, threads: int) -> None:
    if threads <= 1:
        _value_dfs(search, _root_node(search), incumbent)
        return
    frontier = _collect_frontier(search, incumbent, min_tasks=4 * threads)
    tasks: queue.SimpleQueue[_Node | None] = queue.SimpleQueue()
    for node in frontier:
        tasks.put(node)
    for _ in range(threads):
        tasks.put(None)

    def worker() -> None:
        while True:
            item = tasks.get()
            if item is None:
                return
            _value_dfs(search, item, incumbent)

    pool = [threading.Thread(target=worker) for _ in range(threads)]
    for th in pool:
        th.start()
    for th in pool:
        th.join()


def _seed_candidates(cs: ConstraintSet) -> list[Family]:
    """Known families used to warm-start the incumbent; each is re-verified
    against the constraints before its value is trusted."""
    from .. import constructions

    seeds: list[Family] = []
    n, k = cs.n, cs.k

    def try_add(builder, *args):
        try:
            seeds.append(builder(*args))
        except ParameterError:
            pass

    try_add(constructions.star, n, k, 1)
    try_add(constructions.full_layer, n, k)
    for u in range(2, k + 1):
        try_add(constructions.hilton_milner, n, k, u)
    if cs.matching_at_most is not None:
        for s in range(1, cs.matching_at_most + 1):
            try_add(constructions.a0, n, k, s)
            try_add(constructions.ak, k, s, n)
    return seeds


def _feasible(cs: ConstraintSet, fam: Family) -> bool:
    if len(fam) == 0:
        return False
    if cs.intersecting and not invariants.is_intersecting(fam):
        return False
    if cs.non_trivial and invariants.is_trivial(fam):
        return False
    if cs.matching_at_most is not None:
        if invariants.matching_number(fam) > cs.matching_at_most:
            return False
    return True


def _validate_search_budget(cs: ConstraintSet) -> None:
    if cs.n > ENUMERATION_LIMITS["max_n"] or cs.k > ENUMERATION_LIMITS["max_k"]:
        raise BudgetExceededError(
            f"search supports n <= {ENUMERATION_LIMITS['max_n']} and "
            f"k <= {ENUMERATION_LIMITS['max_k']}, got n={cs.n}, k={cs.k}"
        )


def maximize_min_t_degree(problem: SearchProblem, threads: int = 1,
                          budget: int | None = None) -> SearchResult:
    """Exact maximum of the minimum t-degree over all families satisfying the
    problem's constraints, with the lexicographically smallest canonical
    witness. Exceeding the node budget returns status="timeout" carrying the
    incumbent instead of a silently wrong exact claim."""
    cs = problem.constraints
    if cs.pair_mode:
        raise ParameterError("maximize_min_t_degree does not handle pair problems")
    if not cs.t < cs.k:
        raise ParameterError(f"need t < k, got t={cs.t}, k={cs.k}")
    _validate_search_budget(cs)
    cap = budget if budget is not None else node_budget(cs.n, cs.k)

    shared_budget = _Budget(cap)
    search = _FamilySearch(cs, shared_budget)
    incumbent = _Incumbent()

    for fam in _seed_candidates(cs):
        if _feasible(cs, fam):
            incumbent.offer(invariants.min_t_degree(fam, cs.t).min_degree, fam.masks)

    _run_value_phase(search, incumbent, threads)
    optimum = incumbent.get()

    if shared_budget.exhausted:
        witness = _finish(cs, incumbent.witness)
        return SearchResult(
            optimum=optimum, witness=witness, nodes_expanded=search.nodes,
            isomorph_rejections=search.rejections, status="timeout",
            reference_bound=problem.reference_bound,
            within_regime=problem.within_regime,
        )

    if optimum < 0:
        raise ParameterError("constraints are infeasible: no nonempty family satisfies them")

    witness_masks = _witness_dfs(search, _root_node(search), optimum)
    if shared_budget.exhausted:
        witness = _finish(cs, witness_masks or incumbent.witness)
        return SearchResult(
            optimum=optimum, witness=witness, nodes_expanded=search.nodes,
            isomorph_rejections=search.rejections, status="timeout",
            reference_bound=problem.reference_bound,
            within_regime=problem.within_regime,
        )
    if witness_masks is None:
        raise RuntimeError("internal error: optimum established but no witness found")

    witness = _finish(cs, witness_masks)
    _revalidate(cs, witness, optimum)
    counterexample = bool(
        problem.within_regime
        and problem.reference_bound is not None
        and optimum > problem.reference_bound
    )
    return SearchResult(
        optimum=optimum,
        witness=witness,
        nodes_expanded=search.nodes,
        isomorph_rejections=search.rejections,
        status="exact",
        reference_bound=problem.reference_bound,
        within_regime=problem.within_regime,
        counterexample=counterexample,
    )


def _finish(cs: ConstraintSet, masks: tuple[int, ...] | None) -> Family | None:
    if masks is None:
        return None
    return family_from_masks(cs.n, cs.k, masks)


def _revalidate(cs: ConstraintSet, witness: Family, optimum: int) -> None:
    """Witnesses never leave the engine unchecked: the independent invariant
    implementations must agree the witness is feasible and attains the value."""
    if not _feasible(cs, witness):
        raise RuntimeError(f"unsound witness: constraints fail on {witness!r}")
    achieved = invariants.min_t_degree(witness, cs.t).min_degree
    if achieved != optimum:
        raise RuntimeError(
            f"unsound witness: min {cs.t}-degree {achieved} != optimum {optimum}"
        )


def enumerate_maximal_intersecting(n: int, k: int,
                                   budget: int | None = None) -> Iterator[Family]:
    """Every maximal intersecting subfamily of the k-sets of [n], one
    canonical representative per isomorphism class, in ascending code order
    of the search tree. Exceeding the budget raises BudgetExceededError
    rather than silently truncating the stream."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got n={n}, k={k}")
    cs = ConstraintSet(n=n, k=k, t=min(1, k), intersecting=True)
    _validate_search_budget(cs)
    cap = budget if budget is not None else node_budget(n, k)
    shared_budget = _Budget(cap)
    search = _FamilySearch(cs, shared_budget)
    full_universe = search.universe

    def is_maximal(masks: tuple[int, ...]) -> bool:
        members = set(masks)
        for cand in full_universe:
            if cand in members:
                continue
            if search.compatible(cand, masks):
                return False
        return True

    def walk(node: _Node) -> Iterator[Family]:
        if not search.count_node():
            raise BudgetExceededError(
                f"enumeration exceeded the node budget of {cap} at (n={n}, k={k})"
            )
        if node.masks and not node.pool and is_maximal(node.masks):
            yield family_from_masks(n, k, node.masks)
        for child in _children(search, node, None, ordered=False):
            yield from walk(child)

    yield from walk(_root_node(search))
