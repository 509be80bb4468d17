"""Shared enumeration oracles, written against plain element tuples so they
stay independent of the bitmask code paths they are used to check."""

from __future__ import annotations

from itertools import combinations

import pytest

from extset.core import Family


def as_element_sets(fam: Family) -> list[frozenset[int]]:
    return [frozenset(s.elements()) for s in fam.sets]


def oracle_degrees(sets: list[frozenset[int]], n: int) -> dict[int, int]:
    return {i: sum(1 for a in sets if i in a) for i in range(1, n + 1)}


def oracle_min_t_degree(sets: list[frozenset[int]], n: int, t: int) -> int:
    return min(
        sum(1 for a in sets if set(tt) <= a)
        for tt in combinations(range(1, n + 1), t)
    )


def oracle_matching_number(sets: list[frozenset[int]]) -> int:
    """Naive exponential max-packing recursion, no bounding."""
    if not sets:
        return 0
    head, tail = sets[0], sets[1:]
    without = oracle_matching_number(tail)
    with_head = 1 + oracle_matching_number([a for a in tail if not a & head])
    return max(without, with_head)


def oracle_covering_number(sets: list[frozenset[int]], n: int) -> int:
    """Smallest hitting set by direct enumeration over all subsets of [n]."""
    assert sets, "covering oracle needs a nonempty family"
    for size in range(n + 1):
        for cover in combinations(range(1, n + 1), size):
            cset = set(cover)
            if all(cset & a for a in sets):
                return size
    raise AssertionError("unreachable: [n] always covers")


def oracle_is_intersecting(sets: list[frozenset[int]]) -> bool:
    return all(a & b for a, b in combinations(sets, 2))


@pytest.fixture
def element_oracle():
    return {
        "degrees": oracle_degrees,
        "min_t_degree": oracle_min_t_degree,
        "matching": oracle_matching_number,
        "covering": oracle_covering_number,
        "intersecting": oracle_is_intersecting,
    }
