"""Canonical forms of families under permutations of the ground set.

A family's code is the characteristic bit vector of its members over all
k-subsets of [n] listed in colexicographic (= ascending mask) order; the
canonical form is the lexicographically largest code any relabeling of [n]
achieves. Two families have equal canonical forms iff some permutation of
[n] maps one onto the other.

The maximization walks label assignments depth-first: placing label m fixes
the code bits of every k-subset whose largest label is m, so candidate
prefixes compare against the reference code block by block and losing
branches are cut early. Automorphisms discovered along fully-tying branches
prune sibling candidates that an already-known symmetry maps onto an
explored one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..core import Family, ParameterError, family_from_masks, k_subset_masks

MAX_SEARCH_GROUND_SET = 16

_GREATER, _EQUAL, _LESS = 1, 0, -1


@lru_cache(maxsize=None)
def _blocks(k: int, n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """blocks[m] for m in [k, n]: the (k-1)-subsets of labels {0..m-2}, in
    colex order, as index tuples. Placing label m-1 decides exactly the code
    bits of the k-sets (A | {m-1}) for A in blocks[m]."""
    out = []
    for m in range(k, n + 1):
        block = []
        for mask in k_subset_masks(m - 1, k - 1):
            idxs = []
            b = mask
            while b:
                low = b & -b
                idxs.append(low.bit_length() - 1)
                b ^= low
            block.append(tuple(idxs))
        out.append(tuple(block))
    return tuple(out)


class _Labeler:
    """Shared state for the lex-max label assignment search."""

    def __init__(self, masks: tuple[int, ...], n: int, k: int):
        self.n = n
        self.k = k
        self.fam = frozenset(masks)
        self.blocks = _blocks(k, n) if k <= n else ()
        # Reference code bits per block, for the identity labeling.
        self.ref: list[tuple[bool, ...]] = []
        for m in range(k, n + 1):
            top = 1 << (m - 1)
            block = self.blocks[m - k]
            bits = []
            for idxs in block:
                mask = top
                for i in idxs:
                    mask |= 1 << i
                bits.append(mask in self.fam)
            self.ref.append(tuple(bits))
        # Degree of each original element, for candidate ordering.
        self.degree = [0] * n
        for mask in masks:
            b = mask
            while b:
                low = b & -b
                self.degree[low.bit_length() - 1] += 1
                b ^= low
        self.order = sorted(range(n), key=lambda x: (-self.degree[x], x))
        self.automorphisms: list[tuple[int, ...]] = []

    def block_bits(self, assigned: list[int], depth: int) -> tuple[bool, ...]:
        """Candidate code bits decided by placing label depth-1 (0-based)."""
        if depth < self.k:
            return ()
        top = 1 << assigned[depth - 1]
        bits = []
        for idxs in self.blocks[depth - self.k]:
            mask = top
            for i in idxs:
                mask |= 1 << assigned[i]
            bits.append(mask in self.fam)
        return tuple(bits)

    def record_automorphism(self, assigned: list[int]) -> None:
        # assigned maps label -> original; the relabeling original -> label
        # fixes the family, hence is an automorphism of it.
        sigma = [0] * self.n
        for label, original in enumerate(assigned):
            sigma[original] = label
        perm = tuple(sigma)
        if perm not in self.automorphisms and len(self.automorphisms) < 64:
            self.automorphisms.append(perm)
            inv = tuple(assigned)
            if inv != perm and inv not in self.automorphisms:
                self.automorphisms.append(inv)

    def pruned_by_symmetry(self, assigned: list[int], tried: list[int], x: int) -> bool:
        for sigma in self.automorphisms:
            ok = True
            for original in assigned:
                if sigma[original] != original:
                    ok = False
                    break
            if ok:
                for y in tried:
                    if sigma[y] == x:
                        return True
        return False


def _compare(cand: tuple[bool, ...], ref: tuple[bool, ...]) -> int:
    if cand == ref:
        return _EQUAL
    for c, r in zip(cand, ref):
        if c != r:
            return _GREATER if c else _LESS
    return _EQUAL


def is_canonical(masks: tuple[int, ...], n: int, k: int) -> bool:
    """True iff no relabeling of [n] yields a lexicographically larger code."""
    if n > MAX_SEARCH_GROUND_SET:
        raise ParameterError(f"canonical labeling capped at n <= {MAX_SEARCH_GROUND_SET}")
    if not masks or k == 0:
        return True
    if masks[0] != (1 << k) - 1:
        # The top code position is the k-set {1..k}; any member can be
        # relabeled onto it, so a canonical family must contain it.
        return False
    lab = _Labeler(masks, n, k)
    used = [False] * n
    assigned: list[int] = []

    def walk() -> bool:
        depth = len(assigned)
        if depth == n:
            lab.record_automorphism(assigned)
            return False
        tried: list[int] = []
        for x in lab.order:
            if used[x]:
                continue
            if lab.pruned_by_symmetry(assigned, tried, x):
                continue
            assigned.append(x)
            used[x] = True
            verdict = _compare(lab.block_bits(assigned, depth + 1), lab.ref[depth + 1 - lab.k]) \
                if depth + 1 >= lab.k else _EQUAL
            if verdict == _GREATER:
                return True
            if verdict == _EQUAL and walk():
                return True
            used[x] = False
            assigned.pop()
            tried.append(x)
        return False

    return not walk()


def _best_labeling(masks: tuple[int, ...], n: int, k: int) -> tuple[list[tuple[bool, ...]], list[int]]:
    """Lex-max code blocks over all labelings, with a labeling achieving it.

    Every explored node ties the current best prefix exactly: a candidate
    block that beats the best replaces the best's suffix with the minimal
    all-False filler (so the branch stays tight), a losing block is pruned.
    Automorphisms are recognized against the original code, not the evolving
    incumbent.
    """
    lab = _Labeler(masks, n, k)
    ref_blocks = list(lab.ref)
    best_blocks: list[tuple[bool, ...]] = list(lab.ref)
    best_assign = list(range(n))
    used = [False] * n
    assigned: list[int] = []
    stack: list[tuple[bool, ...]] = []

    def walk() -> None:
        nonlocal best_blocks, best_assign
        depth = len(assigned)
        if depth == n:
            best_assign = list(assigned)
            if stack == ref_blocks and assigned != list(range(n)):
                lab.record_automorphism(assigned)
            return
        tried: list[int] = []
        for x in lab.order:
            if used[x]:
                continue
            if lab.pruned_by_symmetry(assigned, tried, x):
                continue
            assigned.append(x)
            used[x] = True
            descend = True
            if depth + 1 >= lab.k:
                idx = depth + 1 - lab.k
                bits = lab.block_bits(assigned, depth + 1)
                verdict = _compare(bits, best_blocks[idx])
                if verdict == _LESS:
                    descend = False
                else:
                    if verdict == _GREATER:
                        filler = [
                            (False,) * len(block) for block in best_blocks[idx + 1:]
                        ]
                        best_blocks = stack + [bits] + filler
                    stack.append(bits)
            if descend:
                walk()
                if depth + 1 >= lab.k:
                    stack.pop()
            used[x] = False
            assigned.pop()
            tried.append(x)

    walk()
    return best_blocks, best_assign


@dataclass(frozen=True)
class CanonicalForm:
    """Permutation-invariant encoding of a family: (n, k, packed code bits)."""

    n: int
    k: int
    blob: bytes


def _pack(blocks: list[tuple[bool, ...]], n: int, k: int) -> bytes:
    bits = [b for block in blocks for b in block]
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    width = (len(bits) + 7) // 8
    return bytes([n, k]) + value.to_bytes(max(width, 1), "big")


def canonical_form(fam: Family) -> CanonicalForm:
    """Canonical byte string of `fam` under permutations of [n]."""
    if fam.n > MAX_SEARCH_GROUND_SET:
        raise ParameterError(f"canonical_form capped at n <= {MAX_SEARCH_GROUND_SET}")
    if fam.k == 0 or not fam.sets:
        # Only the empty code or the single empty set; already canonical.
        size_bit = [(True,)] if fam.sets and fam.k == 0 else []
        if fam.k == 0:
            return CanonicalForm(fam.n, fam.k, _pack(size_bit, fam.n, fam.k))
        return CanonicalForm(fam.n, fam.k, _pack([], fam.n, fam.k))
    blocks, _ = _best_labeling(fam.masks, fam.n, fam.k)
    return CanonicalForm(fam.n, fam.k, _pack(blocks, fam.n, fam.k))


def canonical_representative(fam: Family) -> Family:
    """The relabeled copy of `fam` whose code is the canonical one."""
    if fam.n > MAX_SEARCH_GROUND_SET:
        raise ParameterError(f"canonical_representative capped at n <= {MAX_SEARCH_GROUND_SET}")
    if fam.k == 0 or not fam.sets:
        return fam
    _, assign = _best_labeling(fam.masks, fam.n, fam.k)
    position = [0] * fam.n
    for label, original in enumerate(assign):
        position[original] = label
    moved = []
    for mask in fam.masks:
        out = 0
        b = mask
        while b:
            low = b & -b
            out |= 1 << position[low.bit_length() - 1]
            b ^= low
        moved.append(out)
    return family_from_masks(fam.n, fam.k, moved)
