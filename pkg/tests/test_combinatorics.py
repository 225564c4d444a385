import itertools
from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overqt.combinatorics import (
    DelannoyPath,
    DurfeeDecomposition,
    Overpartition,
    box_generating_function,
    conjugate,
    durfee,
    enumerate_delannoy_paths,
    enumerate_overpartitions,
    op_stats,
    path_stats,
    reconstruct,
)
from overqt.errors import InvalidOverpartition

O = Overpartition.parse


def brute_force_box(max_part, max_count):
    """Every sequence of (value, mark) pairs that the constructor accepts."""
    out = set()
    cells = [(v, o) for v in range(1, max_part + 1) for o in (False, True)]
    for length in range(max_count + 1):
        for seq in itertools.product(cells, repeat=length):
            try:
                out.add(Overpartition(seq))
            except InvalidOverpartition:
                pass
    return out


@lru_cache(maxsize=None)
def box(m, n):
    return tuple(enumerate_overpartitions(m, n))


def test_invariants_rejected():
    with pytest.raises(InvalidOverpartition):
        Overpartition(((2, True), (2, False)))
    with pytest.raises(InvalidOverpartition):
        Overpartition(((1, False), (2, False)))
    with pytest.raises(InvalidOverpartition):
        Overpartition.parse("0~")


def test_text_and_json_forms():
    lam = O("5,5~,3,2,0")
    assert lam.parts == ((5, False), (5, True), (3, False), (2, False))
    assert lam.zeros == 1
    assert lam.to_text() == "5,5~,3,2,0"
    assert Overpartition.from_json_obj(lam.to_json_obj()) == lam
    assert lam.to_json_obj()["parts"][1] == {"v": 5, "o": True}
    assert O("") == Overpartition()


def test_enumerate_1x1():
    assert set(box(1, 1)) == {O(""), O("1"), O("1~")}
    assert len(box(1, 1)) == 3


def test_eight_overpartitions_of_three():
    of_three = [lam for lam in box(3, 3) if lam.weight == 3]
    assert len(of_three) == 8
    assert {lam.to_text() for lam in of_three} == {
        "3", "3~", "2,1", "2~,1", "2,1~", "2~,1~", "1,1,1", "1,1,1~"}


def test_empty_box():
    assert list(enumerate_overpartitions(0, 5)) == [Overpartition()]


@pytest.mark.parametrize("m,n", [(0, 0), (1, 3), (2, 2), (3, 2), (2, 4), (3, 3)])
def test_enumeration_matches_brute_force(m, n):
    got = box(m, n)
    assert len(got) == len(set(got))
    assert set(got) == brute_force_box(m, n)


def test_enumeration_is_deterministic():
    assert list(enumerate_overpartitions(3, 3)) == list(enumerate_overpartitions(3, 3))


def test_op_stats():
    assert op_stats(O("2,2~,0")) == (4, 1, 3, 2)
    assert op_stats(O("")) == (0, 0, 0, 0)
    assert op_stats(O("7~,6,4")) == (17, 1, 3, 7)


# -- conjugation ----------------------------------------------------------------


def test_conjugate_examples():
    assert conjugate(O("2,2~")) == O("2,2~")
    assert conjugate(O("3~")) == O("1,1,1~")
    assert conjugate(O("3")) == O("1,1,1")
    assert conjugate(O("")) == O("")
    assert conjugate(O("5~,4,3,3,2,2")) == O("6,6,4,2,1~")


def test_conjugate_rejects_zero_parts():
    with pytest.raises(InvalidOverpartition):
        conjugate(O("1,0"))


def test_conjugation_exhaustive_6x6():
    for lam in box(6, 6):
        c = conjugate(lam)
        assert conjugate(c) == lam
        assert (c.weight, c.overline_count) == (lam.weight, lam.overline_count)
        assert (c.largest, c.num_parts) == (lam.num_parts, lam.largest)


@pytest.mark.parametrize("m", range(9))
def test_generating_function_symmetry(m):
    for n in range(m, 9):
        assert box_generating_function(m, n) == box_generating_function(n, m)


# -- Durfee ---------------------------------------------------------------------


def test_durfee_example():
    dec = durfee(O("5,5~,3,2,0"))
    assert dec.d == 3
    assert dec.below == O("2,0")
    assert dec.right == O("2,2~")
    assert not dec.corner


def test_reconstruct_example():
    dec = DurfeeDecomposition(3, O("2"), O("2,2~,0"))
    assert reconstruct(dec) == O("4,4,3,2,2~,0")


def test_durfee_empty():
    dec = durfee(O(""))
    assert (dec.d, dec.right, dec.below) == (0, O(""), O(""))


def test_durfee_corner_mark():
    dec = durfee(O("2,2~"))
    assert (dec.d, dec.right, dec.below, dec.corner) == (2, O(""), O(""), True)
    assert reconstruct(dec) == O("2,2~")


@pytest.mark.parametrize("offset", [-1, 0, 1])
def test_durfee_round_trip_8x8(offset):
    for lam in box(8, 8):
        dec = durfee(lam, offset)
        assert reconstruct(dec) == lam
        width = dec.d + offset
        assert all(v >= width for v in lam.values[: dec.d])


@given(st.lists(st.tuples(st.integers(1, 12), st.booleans()), max_size=12),
       st.integers(0, 3), st.integers(-1, 2))
def test_durfee_round_trip_random(raw, zeros, offset):
    vals = sorted(raw, key=lambda p: p[0], reverse=True)
    parts = []
    for i, (v, o) in enumerate(vals):
        last = i + 1 == len(vals) or vals[i + 1][0] != v
        parts.append((v, o and last))
    lam = Overpartition(tuple(parts), zeros)
    assert reconstruct(durfee(lam, offset)) == lam


# -- insertion ------------------------------------------------------------------


def test_insert_keeps_mark_last():
    assert O("2,0").insert(2, True) == O("2,2~,0")
    assert O("2~").insert(2, False) == O("2,2~")
    assert O("3,1").insert(2) == O("3,2,1")
    assert O("3").insert(0) == O("3,0")


# -- Delannoy paths -------------------------------------------------------------


def test_paths_1x1():
    paths = list(enumerate_delannoy_paths(1, 1))
    assert len(paths) == 3
    assert Counter(path_stats(p) for p in paths) == Counter({(0, 0): 1, (0, 1): 1, (1, 1): 1})


def test_paths_counts():
    assert len(list(enumerate_delannoy_paths(2, 2))) == 13
    (only,) = enumerate_delannoy_paths(0, 3)
    assert only == DelannoyPath(("N", "N", "N")) and path_stats(only) == (0, 0)


@pytest.mark.parametrize("m", range(7))
def test_path_bijection_statistics(m):
    for n in range(7):
        paths = Counter(path_stats(p) for p in enumerate_delannoy_paths(m, n))
        parts = Counter((lam.overline_count, lam.weight) for lam in box(m, n))
        assert paths == parts
        for p in enumerate_delannoy_paths(m, n):
            assert p.end == (m, n)
