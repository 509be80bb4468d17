import pytest
from hypothesis import given, strategies as st

from extset.core import (
    Family,
    FamilyParseError,
    KSet,
    ParameterError,
    disjoint,
    elements_from_mask,
    family_from_json_obj,
    family_from_masks,
    family_insert,
    family_to_json_obj,
    format_family_text,
    k_subset_masks,
    kset_from_elements,
    make_family,
    parse_family_json,
    parse_family_text,
)


def test_kset_from_elements_direct_encoding():
    s = kset_from_elements({2, 3, 4}, n=6)
    assert s.elements() == (2, 3, 4)
    assert s.k == 3
    assert s.mask == 0b001110


def test_kset_empty_and_full():
    assert kset_from_elements([], n=5).k == 0
    full = kset_from_elements(range(1, 7), n=6)
    assert full.mask == 0b111111
    assert full.k == 6


def test_kset_errors():
    with pytest.raises(ParameterError):
        kset_from_elements([0], n=5)
    with pytest.raises(ParameterError):
        kset_from_elements([6], n=5)
    with pytest.raises(ParameterError):
        kset_from_elements([2, 2], n=5)
    with pytest.raises(ParameterError):
        KSet(4, 1 << 5)


def test_disjoint():
    a = kset_from_elements([1, 2], 7)
    b = kset_from_elements([3, 4], 7)
    c = kset_from_elements([2, 3], 7)
    assert disjoint(a, b)
    assert not disjoint(a, c)
    assert not disjoint(a, a)
    with pytest.raises(ParameterError):
        disjoint(a, kset_from_elements([1, 2], 8))


def test_family_insert_idempotent_and_order_free():
    a = kset_from_elements([1, 2, 3], 7)
    b = kset_from_elements([2, 3, 4], 7)
    empty = make_family(7, 3)
    fam1 = family_insert(family_insert(empty, a), b)
    fam2 = family_insert(family_insert(empty, b), a)
    assert fam1 == fam2
    assert len(fam1) == 2
    assert family_insert(fam1, a) == fam1
    assert len(family_insert(empty, a)) == 1


def test_family_insert_mismatch():
    fam = make_family(7, 3)
    with pytest.raises(ParameterError):
        family_insert(fam, kset_from_elements([1, 2], 7))
    with pytest.raises(ParameterError):
        family_insert(fam, kset_from_elements([1, 2, 3], 8))


def test_family_masks_strictly_increasing_enforced():
    a = KSet(5, 0b00111)
    with pytest.raises(ParameterError):
        Family(5, 3, (a, a))


def test_k_subset_masks_counts_and_order():
    masks = list(k_subset_masks(6, 3))
    assert len(masks) == 20
    assert masks == sorted(masks)
    assert masks[0] == 0b000111
    assert masks[-1] == 0b111000
    assert list(k_subset_masks(4, 0)) == [0]
    assert list(k_subset_masks(3, 4)) == []


@given(st.integers(1, 12), st.data())
def test_elements_round_trip(n, data):
    k = data.draw(st.integers(0, n))
    elems = data.draw(
        st.lists(st.integers(1, n), min_size=k, max_size=k, unique=True)
    )
    s = kset_from_elements(elems, n)
    assert s.elements() == tuple(sorted(elems))


@given(st.integers(1, 10), st.data())
def test_family_build_order_independent(n, data):
    k = data.draw(st.integers(1, n))
    universe = list(k_subset_masks(n, k))
    picks = data.draw(st.lists(st.sampled_from(universe), max_size=12))
    shuffled = data.draw(st.permutations(picks))
    f1 = family_from_masks(n, k, picks)
    f2 = family_from_masks(n, k, shuffled)
    assert f1 == f2
    assert list(f1.masks) == sorted(set(picks))


def test_text_round_trip():
    fam = family_from_masks(7, 3, [0b0000111, 0b0011100, 0b1100001])
    text = format_family_text(fam)
    parsed, warnings = parse_family_text(text)
    assert parsed == fam
    assert warnings == []
    assert text.splitlines()[0] == "7 3"


def test_text_comments_blank_lines_and_duplicates():
    text = "# a comment\n\n5 2\n1 2\n\n# another\n2 3\n1 2\n"
    fam, warnings = parse_family_text(text)
    assert len(fam) == 2
    assert len(warnings) == 1 and "duplicate" in warnings[0]


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("", 1),
        ("5\n1 2\n", 1),
        ("5 2\n1 2 3\n", 2),
        ("5 2\n1 9\n", 2),
        ("5 2\n1 x\n", 2),
        ("# c\n5 2\n1 1\n", 3),
    ],
)
def test_text_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(FamilyParseError) as exc:
        parse_family_text(text)
    assert exc.value.line == lineno


def test_json_round_trip():
    fam = family_from_masks(6, 2, [0b000011, 0b110000])
    obj = family_to_json_obj(fam)
    assert obj == {"n": 6, "k": 2, "sets": [[1, 2], [5, 6]]}
    back, warnings = family_from_json_obj(obj)
    assert back == fam and warnings == []


def test_json_errors():
    with pytest.raises(FamilyParseError):
        parse_family_json("{not json")
    with pytest.raises(FamilyParseError):
        family_from_json_obj({"n": 5, "k": 2, "sets": [[1, 2, 3]]})
    with pytest.raises(FamilyParseError):
        family_from_json_obj({"n": 5, "sets": []})


def test_mask_element_helpers():
    assert elements_from_mask(0) == ()
    assert elements_from_mask(0b10101) == (1, 3, 5)
