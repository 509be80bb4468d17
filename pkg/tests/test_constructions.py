from math import comb

import pytest

from extset.constructions import a0, ak, full_layer, hilton_milner, relabel, star
from extset.core import ParameterError, kset_from_elements
from extset.exact import a0_t_degree, hm_size, hm_t_degree_bound, kz_bound
from extset.invariants import (
    degree_profile,
    diversity,
    is_intersecting,
    matching_number,
    min_t_degree,
)


def test_star_examples():
    assert len(star(7, 3, 1)) == 15 == comb(6, 2)
    assert len(star(3, 3, 1)) == 1
    assert star(5, 1, 3).sets[0] == kset_from_elements([3], 5)
    with pytest.raises(ParameterError):
        star(5, 0, 1)
    with pytest.raises(ParameterError):
        star(5, 2, 6)


def test_full_layer_examples():
    assert len(full_layer(5, 3)) == 10
    empty_set_layer = full_layer(4, 0)
    assert len(empty_set_layer) == 1 and empty_set_layer.sets[0].k == 0
    assert len(full_layer(6, 6)) == 1


def test_a0_examples():
    fam = a0(8, 3, 2)
    assert len(fam) == comb(8, 3) - comb(6, 3) == 36
    assert matching_number(fam) == 2
    # complement layer empty: every k-set meets [s]
    assert len(a0(8, 3, 6)) == comb(8, 3)
    with pytest.raises(ParameterError):
        a0(8, 3, 0)
    with pytest.raises(ParameterError):
        a0(8, 3, 8)


def test_ak_examples():
    fam = ak(2, 2, 5)
    assert len(fam) == 10
    assert matching_number(fam) == 2
    assert matching_number(ak(3, 1, 5)) == 1
    assert matching_number(ak(2, 1, 3)) == 1  # any two triangle edges meet
    with pytest.raises(ParameterError):
        ak(3, 3, 8)  # needs n >= 11


def test_hilton_milner_examples():
    fam = hilton_milner(9, 4, 4)
    assert len(fam) == 53 == comb(8, 3) - comb(4, 3) + 1
    assert len(hilton_milner(7, 3, 3)) == len(hilton_milner(7, 3, 2)) == 13
    # u = k: exactly one member omits element 1
    omitting = [s for s in hilton_milner(9, 4, 4) if 1 not in s.elements()]
    assert len(omitting) == 1 and omitting[0].elements() == (2, 3, 4, 5)
    assert diversity(hilton_milner(9, 4, 4)) == 1
    with pytest.raises(ParameterError):
        hilton_milner(9, 4, 1)
    with pytest.raises(ParameterError):
        hilton_milner(7, 4, 2)  # k > n - k


def test_relabel_is_isomorphic_copy():
    fam = star(7, 3, 1)
    perm = [5, 1, 2, 3, 4, 7, 6]
    moved = relabel(fam, perm)
    assert len(moved) == len(fam)
    assert degree_profile(moved).degrees[4] == 15  # new center is 5
    assert relabel(moved, _inverse(perm)) == fam
    with pytest.raises(ParameterError):
        relabel(fam, [1, 1, 2, 3, 4, 5, 6])


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return inv


# ---------------------------------------------------------------------------
# Closed-form invariants on the standard grid
# ---------------------------------------------------------------------------


def _grid():
    for k in range(1, 6):
        for n in range(2 * k + 1, 13):
            yield n, k


def test_sizes_match_closed_forms_on_grid():
    for n, k in _grid():
        for center in (1, n):
            assert len(star(n, k, center)) == comb(n - 1, k - 1)
        for s in range(1, n):
            assert len(a0(n, k, s)) == comb(n, k) - comb(n - s, k)
        for u in range(2, k + 1):
            assert len(hilton_milner(n, k, u)) == hm_size(n, k, u)
        if k >= 3:
            for u in range(3, k + 1):
                assert len(hilton_milner(n, k, u)) == kz_bound(n, k, u)


def test_intersecting_on_grid():
    for n, k in _grid():
        assert is_intersecting(star(n, k, 1))
        for u in range(2, k + 1):
            assert is_intersecting(hilton_milner(n, k, u))
        for s in range(1, min(5, n)):
            assert matching_number(a0(n, k, s)) <= s


def test_a0_t_degree_formula_on_grid():
    for n, k in _grid():
        for s in range(1, min(5, n)):
            fam = a0(n, k, s)
            for t in range(1, k + 1):
                assert (
                    min_t_degree(fam, t).min_degree
                    == a0_t_degree(n, k, s, t)
                    == comb(n - t, k - t)
                    - (comb(n - s - t, k - t) if n - s - t >= k - t else 0)
                )


def test_hm_min_degree_formula_on_grid():
    for n, k in _grid():
        if k < 2:
            continue
        fam = hilton_milner(n, k, k)
        dp = degree_profile(fam)
        expected = comb(n - 2, k - 2) - (
            comb(n - k - 2, k - 2) if n - k - 2 >= k - 2 else 0
        )
        assert dp.min_degree == expected
        for t in range(1, k):
            assert min_t_degree(fam, t).min_degree == hm_t_degree_bound(n, k, t)
