import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from extset.constructions import a0, ak, full_layer, hilton_milner, star
from extset.core import ParameterError, family_from_masks, k_subset_masks, make_family, kset_from_elements
from extset.invariants import (
    are_cross_intersecting,
    covering_number,
    degree_profile,
    diversity,
    is_intersecting,
    is_trivial,
    matching_number,
    min_t_degree,
)

from conftest import (
    as_element_sets,
    oracle_covering_number,
    oracle_degrees,
    oracle_is_intersecting,
    oracle_matching_number,
    oracle_min_t_degree,
)


def family_of(n, k, *element_sets):
    return family_from_masks(
        n, k, [kset_from_elements(es, n).mask for es in element_sets]
    )


# ---------------------------------------------------------------------------
# is_intersecting / is_trivial
# ---------------------------------------------------------------------------


def test_is_intersecting_star_and_disjoint_pair():
    assert is_intersecting(star(7, 3, 1))
    assert not is_intersecting(family_of(7, 3, [1, 2, 3], [4, 5, 6]))
    assert is_intersecting(make_family(7, 3))


def test_is_trivial():
    assert is_trivial(star(7, 3, 1))
    assert not is_trivial(hilton_milner(9, 4, 4))
    assert is_trivial(family_of(7, 3, [2, 4, 6]))
    with pytest.raises(ParameterError):
        is_trivial(make_family(7, 3))


# ---------------------------------------------------------------------------
# degree_profile
# ---------------------------------------------------------------------------


def test_degree_profile_star():
    # Degrees frozen from the enumeration oracle; they also match the closed
    # forms C(n-1, k-1) for the center and C(n-2, k-2) elsewhere.
    fam = star(7, 3, 1)
    oracle = oracle_degrees(as_element_sets(fam), 7)
    dp = degree_profile(fam)
    assert dp.degrees == tuple(oracle[i] for i in range(1, 8))
    assert dp.degrees[0] == 15 == comb(6, 2)
    assert dp.degrees[1] == 5 == comb(5, 1)
    assert dp.min_degree == 5
    assert dp.max_degree == 15
    assert dp.argmax == 1


def test_degree_profile_empty():
    dp = degree_profile(make_family(6, 2))
    assert dp.degrees == (0,) * 6
    assert dp.min_degree == dp.max_degree == 0


def test_degree_profile_hm4():
    # Frozen by enumeration: min degree of the k-core construction at n=9.
    fam = hilton_milner(9, 4, 4)
    dp = degree_profile(fam)
    assert dp.min_degree == 18 == comb(7, 2) - comb(3, 2)
    oracle = oracle_degrees(as_element_sets(fam), 9)
    assert dp.min_degree == min(oracle.values())


# ---------------------------------------------------------------------------
# min_t_degree
# ---------------------------------------------------------------------------


def test_min_t_degree_a0():
    fam = a0(8, 3, 2)
    prof = min_t_degree(fam, 1)
    assert prof.min_degree == 11 == comb(7, 2) - comb(5, 2)
    assert prof.min_degree == oracle_min_t_degree(as_element_sets(fam), 8, 1)


def test_min_t_degree_t_equals_k():
    # A proper subfamily of the layer always has a zero t-degree at t = k.
    fam = family_of(6, 3, [1, 2, 3], [2, 3, 4])
    prof = min_t_degree(fam, 3)
    assert prof.min_degree == 0
    full = full_layer(5, 3)
    assert min_t_degree(full, 3).min_degree == 1


def test_min_t_degree_untouched_element():
    fam = ak(3, 1, 6)  # all 3-subsets of [5], element 6 untouched
    prof = min_t_degree(fam, 1)
    assert prof.min_degree == 0
    assert prof.witness == (6,)


def test_min_t_degree_range_check():
    fam = star(6, 3, 1)
    with pytest.raises(ParameterError):
        min_t_degree(fam, 0)
    with pytest.raises(ParameterError):
        min_t_degree(fam, 4)


# ---------------------------------------------------------------------------
# diversity
# ---------------------------------------------------------------------------


def test_diversity():
    assert diversity(star(7, 3, 1)) == 0
    assert diversity(hilton_milner(9, 4, 4)) == 1  # only [2,5] avoids element 1
    assert diversity(full_layer(5, 3)) == 10 - 6  # every degree is C(4,2) = 6
    assert diversity(make_family(5, 2)) == 0


# ---------------------------------------------------------------------------
# matching_number / covering_number
# ---------------------------------------------------------------------------


def test_matching_number_basics():
    assert matching_number(star(7, 3, 1)) == 1
    assert matching_number(ak(2, 2, 5)) == 2  # a perfect-ish packing in C([5],2)
    assert matching_number(ak(3, 1, 5)) == 1
    assert matching_number(make_family(6, 2)) == 0
    assert matching_number(a0(8, 3, 2)) == 2


def test_covering_number_basics():
    assert covering_number(star(7, 3, 1)) == 1
    assert covering_number(a0(8, 3, 2)) == 2
    assert covering_number(hilton_milner(9, 4, 4)) == 2
    assert covering_number(ak(2, 1, 3)) == 2  # triangle needs two vertices
    with pytest.raises(ParameterError):
        covering_number(make_family(5, 2))


def test_matching_and_covering_against_oracles_random():
    rng = random.Random(20240817)
    for _ in range(1000):
        n = rng.randint(2, 8)
        k = rng.randint(1, min(3, n))
        universe = list(k_subset_masks(n, k))
        size = rng.randint(0, min(len(universe), 10))
        fam = family_from_masks(n, k, rng.sample(universe, size))
        sets = as_element_sets(fam)
        assert matching_number(fam) == oracle_matching_number(sets)
        if sets:
            assert covering_number(fam) == oracle_covering_number(sets, n)
        assert is_intersecting(fam) == oracle_is_intersecting(sets)


# ---------------------------------------------------------------------------
# are_cross_intersecting
# ---------------------------------------------------------------------------


def test_cross_intersecting():
    s = star(7, 3, 1)
    assert are_cross_intersecting(s, s)
    a = family_of(7, 3, [1, 2, 3])
    b = family_of(7, 3, [4, 5, 6])
    assert not are_cross_intersecting(a, b)
    pair_core = family_from_masks(
        7, 3, (m for m in k_subset_masks(7, 3) if m & 0b11 == 0b11)
    )
    touching = family_from_masks(
        7, 3, (m for m in k_subset_masks(7, 3) if m & 0b11)
    )
    assert are_cross_intersecting(pair_core, touching)
    with pytest.raises(ParameterError):
        are_cross_intersecting(a, star(8, 3, 1))
    with pytest.raises(ParameterError):
        are_cross_intersecting(a, star(7, 2, 1))


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------


small_family = st.integers(4, 8).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda k: st.lists(
            st.sampled_from(list(k_subset_masks(n, k))), max_size=12
        ).map(lambda masks: family_from_masks(n, k, masks))
    )
)


@given(small_family)
def test_handshake_identity(fam):
    dp = degree_profile(fam)
    assert sum(dp.degrees) == fam.k * len(fam)
    assert dp.min_degree <= dp.max_degree <= len(fam)


@given(small_family, st.integers(1, 3))
@settings(max_examples=60)
def test_t_degree_sum_identity(fam, t):
    # Sum of t-degrees over all t-subsets equals C(k, t) * |F|.
    if t > fam.k:
        t = fam.k
    total = 0
    minimum = None
    for tt in combinations(range(1, fam.n + 1), t):
        tmask = 0
        for e in tt:
            tmask |= 1 << (e - 1)
        deg = sum(1 for m in fam.masks if m & tmask == tmask)
        total += deg
        minimum = deg if minimum is None else min(minimum, deg)
    assert total == comb(fam.k, t) * len(fam)
    assert min_t_degree(fam, t).min_degree == minimum


@given(small_family)
def test_min_t_degree_matches_degree_profile_at_t1(fam):
    if fam.k >= 1:
        assert min_t_degree(fam, 1).min_degree == degree_profile(fam).min_degree


@given(small_family)
def test_matching_one_iff_intersecting(fam):
    if len(fam) > 0 and fam.k >= 1:
        assert (matching_number(fam) == 1) == is_intersecting(fam)


@given(small_family)
@settings(max_examples=60)
def test_nu_tau_sandwich(fam):
    if len(fam) > 0 and fam.k >= 1:
        nu = matching_number(fam)
        tau = covering_number(fam)
        assert nu <= tau <= fam.k * nu


@given(small_family)
def test_diversity_nontrivial_link(fam):
    if len(fam) > 0 and fam.k >= 1 and is_intersecting(fam):
        assert (diversity(fam) >= 1) == (not is_trivial(fam))
