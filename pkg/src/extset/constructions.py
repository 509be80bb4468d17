"""Named extremal family constructions over [n].

Each constructor builds the family literally from its defining membership
condition (with fixed anchor elements), so sizes and degree statistics can be
validated against closed forms by independent enumeration. Isomorphic copies
are obtained by composing with `relabel`.
"""

from __future__ import annotations

from typing import Sequence

from .core import Family, ParameterError, check_ground_set, family_from_masks, k_subset_masks


def full_layer(n: int, k: int) -> Family:
    """All k-subsets of [n]."""
    check_ground_set(n)
    if not 0 <= k <= n:
        raise ParameterError(f"k must be in [0, {n}], got {k}")
    return family_from_masks(n, k, k_subset_masks(n, k))


def star(n: int, k: int, center: int) -> Family:
    """All k-subsets of [n] containing `center`; size C(n-1, k-1)."""
    check_ground_set(n)
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1, {n}], got {k}")
    if not 1 <= center <= n:
        raise ParameterError(f"center {center} outside [1, {n}]")
    bit = 1 << (center - 1)
    return family_from_masks(n, k, (m for m in k_subset_masks(n, k) if m & bit))


def a0(n: int, k: int, s: int) -> Family:
    """All k-subsets of [n] meeting [s]; size C(n, k) - C(n-s, k)."""
    check_ground_set(n)
    if not 0 <= k <= n:
        raise ParameterError(f"k must be in [0, {n}], got {k}")
    if not 1 <= s <= n - 1:
        raise ParameterError(f"s must be in [1, {n - 1}], got {s}")
    smask = (1 << s) - 1
    return family_from_masks(n, k, (m for m in k_subset_masks(n, k) if m & smask))


def ak(k: int, s: int, n: int) -> Family:
    """All k-subsets of [k(s+1) - 1], embedded in the ground set [n]."""
    if k < 1 or s < 1:
        raise ParameterError(f"need k >= 1 and s >= 1, got k={k}, s={s}")
    universe = k * (s + 1) - 1
    if n < universe:
        raise ParameterError(f"ground set [{n}] too small, need n >= {universe}")
    check_ground_set(n)
    return family_from_masks(n, k, k_subset_masks(universe, k))


def hilton_milner(n: int, k: int, u: int) -> Family:
    """The family of k-sets fully containing [2, u+1], together with those
    containing 1 and meeting [2, u+1].

    Requires 2 <= u <= k <= n-k, which makes the result intersecting.
    """
    check_ground_set(n)
    if not 2 <= u <= k:
        raise ParameterError(f"u must be in [2, k], got u={u}, k={k}")
    if not k <= n - k:
        raise ParameterError(f"need k <= n - k for an intersecting family, got n={n}, k={k}")
    if n < u + 1:
        raise ParameterError(f"ground set [{n}] too small for core [2, {u + 1}]")
    core = ((1 << u) - 1) << 1  # elements 2..u+1
    one = 1
    masks = (
        m
        for m in k_subset_masks(n, k)
        if (m & core) == core or (m & one and m & core)
    )
    return family_from_masks(n, k, masks)


def relabel(fam: Family, perm: Sequence[int]) -> Family:
    """Apply a permutation of [n] to every member; perm[i-1] is the image of i."""
    if sorted(perm) != list(range(1, fam.n + 1)):
        raise ParameterError(f"not a permutation of [1, {fam.n}]: {perm!r}")
    images = [1 << (p - 1) for p in perm]

    def apply(mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= images[i]
            mask >>= 1
            i += 1
        return out

    return family_from_masks(fam.n, fam.k, (apply(m) for m in fam.masks))
