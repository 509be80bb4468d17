"""Bitmask representation of k-sets and set families over a ground set [n].

Elements are 1-indexed in every public interface; internally element i
occupies bit i-1 of a machine-word mask. Ground sets are capped at 64
elements so a single Python int (and a single word in CPython) holds a set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_GROUND_SET = 64


class ParameterError(ValueError):
    """An argument violates an operation's precondition."""


class FamilyParseError(ValueError):
    """A family file or JSON document is malformed.

    `line` is the 1-based line number of the offending input line, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class BudgetExceededError(RuntimeError):
    """A search or enumeration exceeded its configured node budget."""


def check_ground_set(n: int) -> None:
    if not 1 <= n <= MAX_GROUND_SET:
        raise ParameterError(f"ground set size must be in [1, {MAX_GROUND_SET}], got {n}")


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    """Pack 1-indexed elements into a bitmask, checking range and duplicates."""
    check_ground_set(n)
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ParameterError(f"element {e} outside [1, {n}]")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ParameterError(f"duplicate element {e}")
        mask |= bit
    return mask


def elements_from_mask(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into sorted 1-indexed elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def k_subset_masks(n: int, k: int) -> Iterator[int]:
    """All C(n, k) masks of k-subsets of [n], in ascending numeric order.

    Ascending mask order coincides with colexicographic order on the sets.
    Uses Gosper's hack to step between same-popcount masks.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        yield v
        # Gosper: lowest set bit, ripple the carry, redistribute the ones.
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


@dataclass(frozen=True, order=True)
class KSet:
    """A k-subset of [n] stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        check_ground_set(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"mask {self.mask:#x} has bits above position {self.n}")

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> tuple[int, ...]:
        return elements_from_mask(self.mask)

    def __repr__(self) -> str:
        return f"KSet(n={self.n}, {{{', '.join(map(str, self.elements()))}}})"


def kset_from_elements(elements: Iterable[int], n: int) -> KSet:
    """Build a KSet from distinct 1-indexed elements of [n]."""
    return KSet(n, mask_from_elements(elements, n))


def disjoint(a: KSet, b: KSet) -> bool:
    """True iff the two sets share no element. Requires a common ground set."""
    if a.n != b.n:
        raise ParameterError(f"ground set mismatch: {a.n} vs {b.n}")
    return (a.mask & b.mask) == 0


@dataclass(frozen=True)
class Family:
    """A deduplicated collection of k-sets sharing (n, k).

    `sets` is stored in strictly increasing mask order, which makes equality,
    hashing and serialization deterministic. Instances are immutable.
    """

    n: int
    k: int
    sets: tuple[KSet, ...]

    def __post_init__(self):
        check_ground_set(self.n)
        if not 0 <= self.k <= self.n:
            raise ParameterError(f"k must be in [0, {self.n}], got {self.k}")
        prev = -1
        for s in self.sets:
            if s.n != self.n or s.k != self.k:
                raise ParameterError(
                    f"member {s!r} does not have (n, k) = ({self.n}, {self.k})"
                )
            if s.mask <= prev:
                raise ParameterError("sets must be strictly increasing by mask")
            prev = s.mask

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(s.mask for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[KSet]:
        return iter(self.sets)

    def __contains__(self, s: KSet) -> bool:
        return s.n == self.n and s.mask in self._mask_set

    @cached_property
    def _mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def __repr__(self) -> str:
        return f"Family(n={self.n}, k={self.k}, size={len(self.sets)})"


def family_from_masks(n: int, k: int, masks: Iterable[int]) -> Family:
    """Build a family from raw masks; sorts and deduplicates."""
    uniq = sorted(set(masks))
    return Family(n, k, tuple(KSet(n, m) for m in uniq))


def make_family(n: int, k: int, sets: Iterable[KSet] = ()) -> Family:
    """Build a family from KSets; sorts and deduplicates."""
    return family_from_masks(n, k, (s.mask for s in sets))


def family_insert(fam: Family, s: KSet) -> Family:
    """Return the family with `s` added (a no-op if already present)."""
    if s.n != fam.n or s.k != fam.k:
        raise ParameterError(
            f"cannot insert (n={s.n}, k={s.k}) set into (n={fam.n}, k={fam.k}) family"
        )
    if s in fam:
        return fam
    return family_from_masks(fam.n, fam.k, fam.masks + (s.mask,))


# ---------------------------------------------------------------------------
# Serialization: text format and JSON
#
# Text format: first non-comment line is "n k"; each following line is one
# set as space-separated increasing 1-indexed elements. Blank lines and lines
# starting with '#' are ignored. JSON: {"n": ..., "k": ..., "sets": [[...]]}.
# ---------------------------------------------------------------------------


def format_family_text(fam: Family) -> str:
    lines = [f"{fam.n} {fam.k}"]
    lines.extend(" ".join(map(str, s.elements())) for s in fam.sets)
    return "\n".join(lines) + "\n"


def parse_family_text(text: str) -> tuple[Family, list[str]]:
    """Parse the text format; returns (family, warnings).

    Duplicate set lines are tolerated and reported as warnings. Malformed
    lines raise FamilyParseError with the 1-based line number.
    """
    header: tuple[int, int] | None = None
    masks: list[int] = []
    seen: set[int] = set()
    warnings: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise FamilyParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(values) != 2:
                raise FamilyParseError("header must be exactly 'n k'", lineno)
            n, k = values
            try:
                check_ground_set(n)
            except ParameterError as exc:
                raise FamilyParseError(str(exc), lineno) from None
            if not 0 <= k <= n:
                raise FamilyParseError(f"k={k} outside [0, {n}]", lineno)
            header = (n, k)
            continue
        n, k = header
        if len(values) != k:
            raise FamilyParseError(f"expected {k} elements, got {len(values)}", lineno)
        try:
            mask = mask_from_elements(values, n)
        except ParameterError as exc:
            raise FamilyParseError(str(exc), lineno) from None
        if mask in seen:
            warnings.append(f"line {lineno}: duplicate set {' '.join(map(str, values))} ignored")
            continue
        seen.add(mask)
        masks.append(mask)
    if header is None:
        raise FamilyParseError("missing 'n k' header", line=1)
    return family_from_masks(header[0], header[1], masks), warnings


def family_to_json_obj(fam: Family) -> dict:
    return {"n": fam.n, "k": fam.k, "sets": [list(s.elements()) for s in fam.sets]}


def family_from_json_obj(obj: dict) -> tuple[Family, list[str]]:
    try:
        n = int(obj["n"])
        k = int(obj["k"])
        sets = obj["sets"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FamilyParseError(f"bad family JSON: {exc}") from None
    try:
        check_ground_set(n)
    except ParameterError as exc:
        raise FamilyParseError(str(exc)) from None
    if not 0 <= k <= n:
        raise FamilyParseError(f"k={k} outside [0, {n}]")
    masks: list[int] = []
    seen: set[int] = set()
    warnings: list[str] = []
    for idx, elems in enumerate(sets):
        if len(elems) != k:
            raise FamilyParseError(f"set #{idx} has {len(elems)} elements, expected {k}")
        try:
            mask = mask_from_elements(elems, n)
        except ParameterError as exc:
            raise FamilyParseError(f"set #{idx}: {exc}") from None
        if mask in seen:
            warnings.append(f"set #{idx}: duplicate set ignored")
            continue
        seen.add(mask)
        masks.append(mask)
    return family_from_masks(n, k, masks), warnings


def parse_family_json(text: str) -> tuple[Family, list[str]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return family_from_json_obj(obj)
