"""Exact family statistics: degrees, t-degrees, diversity, matching and covering numbers.

Minimum degrees are always taken over the whole ground set [n], including
elements (or t-subsets) that no member touches; an untouched element gives
minimum degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import Family, ParameterError, elements_from_mask, k_subset_masks


@dataclass(frozen=True)
class DegreeProfile:
    """Per-element degrees of a family; element i's degree is degrees[i-1]."""

    degrees: tuple[int, ...]
    min_degree: int
    max_degree: int
    argmax: int  # 1-indexed element attaining max_degree (smallest such)


@dataclass(frozen=True)
class TDegreeProfile:
    """Minimum t-degree of a family with a witness t-subset attaining it."""

    t: int
    min_degree: int
    witness: tuple[int, ...]  # sorted 1-indexed elements of the witness t-set


def is_intersecting(fam: Family) -> bool:
    """True iff no two members are disjoint (vacuously true when |F| <= 1)."""
    masks = fam.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not a & b:
                return False
    return True


def is_trivial(fam: Family) -> bool:
    """True iff all members share a common element. Rejects empty families."""
    if not fam.sets:
        raise ParameterError("is_trivial is undefined for the empty family")
    common = -1
    for m in fam.masks:
        common &= m
        if not common:
            return False
    return True


def degree_profile(fam: Family) -> DegreeProfile:
    degrees = [0] * fam.n
    for m in fam.masks:
        while m:
            low = m & -m
            degrees[low.bit_length() - 1] += 1
            m ^= low
    max_degree = max(degrees)
    return DegreeProfile(
        degrees=tuple(degrees),
        min_degree=min(degrees),
        max_degree=max_degree,
        argmax=degrees.index(max_degree) + 1,
    )


def _t_subset_masks_of(mask: int, t: int):
    bits = [1 << (e - 1) for e in elements_from_mask(mask)]
    for combo in combinations(bits, t):
        sub = 0
        for b in combo:
            sub |= b
        yield sub


def min_t_degree(fam: Family, t: int) -> TDegreeProfile:
    """Exact minimum, over all t-subsets T of [n], of |{F in fam : T ⊆ F}|.

    Accumulates the C(k, t) t-subsets of each member into a table, then
    minimizes over all C(n, t) t-subsets; a t-subset absent from the table
    has degree 0 and the colex-smallest absent one is the witness.
    """
    if not 1 <= t <= fam.k:
        raise ParameterError(f"t must be in [1, {fam.k}], got {t}")
    counts: dict[int, int] = {}
    for m in fam.masks:
        for sub in _t_subset_masks_of(m, t):
            counts[sub] = counts.get(sub, 0) + 1
    if len(counts) < comb(fam.n, t):
        for sub in k_subset_masks(fam.n, t):
            if sub not in counts:
                return TDegreeProfile(t, 0, elements_from_mask(sub))
    best = min(counts.items(), key=lambda item: (item[1], item[0]))
    return TDegreeProfile(t, best[1], elements_from_mask(best[0]))


def diversity(fam: Family) -> int:
    """|F| minus the maximum degree; 0 exactly for stars and the empty family."""
    if not fam.sets:
        return 0
    return len(fam.sets) - degree_profile(fam).max_degree


def matching_number(fam: Family) -> int:
    """Exact maximum number of pairwise disjoint members, by branch and bound.

    Branches on the lowest-indexed set compatible with the current packing;
    bounds by candidate count and by how many k-sets fit in the untouched
    part of the universe.
    """
    masks = fam.masks
    k = fam.k
    if k == 0:
        return 1 if masks else 0
    best = 0

    def extend(cands: tuple[int, ...], count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if not cands:
            return
        free = 0
        for m in cands:
            free |= m
        if count + min(len(cands), free.bit_count() // k) <= best:
            return
        first = cands[0]
        extend(tuple(m for m in cands[1:] if not m & first), count + 1)
        extend(cands[1:], count)

    extend(masks, 0)
    return best


def covering_number(fam: Family) -> int:
    """Exact minimum size of an element set meeting every member.

    Branches on the k elements of the first uncovered member, so the depth is
    at most the answer and the branching factor at most k. Rejects empty
    families (no set meets no members, so tau would be 0 vacuously; callers
    that care should special-case).
    """
    if not fam.sets:
        raise ParameterError("covering_number is undefined for the empty family")
    masks = fam.masks
    if fam.k == 0:
        raise ParameterError("covering_number is undefined when the empty set is a member")

    # Greedy warm start: repeatedly hit the most members with one element.
    cover = 0
    remaining = list(masks)
    greedy = 0
    while remaining:
        counts: dict[int, int] = {}
        for m in remaining:
            mm = m
            while mm:
                low = mm & -mm
                counts[low] = counts.get(low, 0) + 1
                mm ^= low
        bit = max(counts, key=lambda b: (counts[b], -b))
        cover |= bit
        greedy += 1
        remaining = [m for m in remaining if not m & bit]
    best = greedy

    def extend(cover_mask: int, depth: int) -> None:
        nonlocal best
        if depth >= best:
            return
        for m in masks:
            if not m & cover_mask:
                while m:
                    low = m & -m
                    extend(cover_mask | low, depth + 1)
                    m ^= low
                return
        best = depth

    extend(0, 0)
    return best


def are_cross_intersecting(a: Family, b: Family) -> bool:
    """True iff every member of `a` meets every member of `b`."""
    if (a.n, a.k) != (b.n, b.k):
        raise ParameterError(
            f"(n, k) mismatch: ({a.n}, {a.k}) vs ({b.n}, {b.k})"
        )
    for ma in a.masks:
        for mb in b.masks:
            if not ma & mb:
                return False
    return True
