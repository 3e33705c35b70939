import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdlc import cantor
from zdlc.cantor import (
    DepthLimitError,
    EMPTY,
    FULL,
    ImpossibleInputError,
    clopen,
    contains_point,
    cylinder,
    cylinder_around,
    cylinder_avoiding,
    from_mask,
    point,
    region,
    separating_cylinder,
    some_point,
    to_mask,
    trace_closure,
    world,
)

P0 = point("", "0")
P1 = point("", "1")
P01 = point("", "01")


def test_sibling_merge():
    assert clopen(["0", "1"]) == FULL
    assert clopen(["00", "01"]) == cylinder("0")
    assert clopen(["00", "01", "10", "11"]) == FULL


def test_meet_absorption():
    assert cylinder("01") & cylinder("0") == cylinder("01")
    assert cylinder("01") & cylinder("1") == EMPTY


def test_complement_renormalizes():
    assert ~clopen(["00", "01"]) == cylinder("1")
    assert ~FULL == EMPTY
    assert ~EMPTY == FULL


def test_ops_and_predicates():
    a = clopen(["00", "1"])
    b = clopen(["0"])
    assert (a & b) == cylinder("00")
    assert (a | b) == FULL
    assert (a - b) == cylinder("1")
    assert cylinder("00") <= a
    assert not a <= b
    assert cantor.disjoint(cylinder("00"), cylinder("01"))
    assert cantor.is_empty(EMPTY) and not cantor.is_empty(FULL)


@given(st.integers(min_value=0, max_value=(1 << 16) - 1))
@settings(max_examples=200)
def test_mask_round_trip(mask):
    assert to_mask(from_mask(mask, 4), 4) == mask


@given(st.integers(min_value=0, max_value=(1 << 16) - 1),
       st.integers(min_value=0, max_value=(1 << 16) - 1))
@settings(max_examples=200)
def test_canonical_forms_of_equal_sets_coincide(m1, m2):
    a, b = from_mask(m1, 4), from_mask(m2, 4)
    assert (a | b) == ~((~a) & (~b))
    assert (a & b) == ~((~a) | (~b))


def test_laws_on_random_triples():
    rng = random.Random(11)
    for _ in range(10_000):
        a = from_mask(rng.getrandbits(16), 4)
        b = from_mask(rng.getrandbits(16), 4)
        c = from_mask(rng.getrandbits(16), 4)
        assert a & (b | c) == (a & b) | (a & c)
        assert a | (b & c) == (a | b) & (a | c)
        assert ~(a & b) == ~a | ~b


def test_point_canonical_form():
    assert point("0", "0") == P0
    assert point("", "0101") == P01
    assert point("01", "01") == P01
    assert point("0", "10") == P01
    assert str(point("0", "1")) == "0(1)"
    with pytest.raises(ValueError):
        point("", "")


def test_point_prefix_and_tail():
    p = point("01", "10")
    assert p.prefix(6) == "011010"
    assert p.tail(2) == point("", "10")
    assert p.tail(3) == point("", "01")
    assert point("", "0").tail(5) == point("", "0")


def test_contains_point_matches_truncation():
    rng = random.Random(5)
    pts = [P0, P1, P01, point("001", "10"), point("1", "001")]
    for _ in range(500):
        a = from_mask(rng.getrandbits(64), 6)
        for p in pts:
            assert contains_point(a, p) == (p.prefix(6) in
                                            {w for c in [a] for w in _leaves(c, 6)})


def _leaves(c, depth):
    out = set()
    for w in c.words:
        k = depth - len(w)
        for i in range(1 << k):
            out.add(w + format(i, f"0{k}b") if k else w)
    return out


def test_separating_cylinder_examples():
    assert separating_cylinder(P0, [P1]) == cylinder("0")
    assert separating_cylinder(P0, []) == FULL
    assert separating_cylinder(P01, [P0, P1]) == cylinder("01")
    with pytest.raises(ImpossibleInputError):
        separating_cylinder(P0, [P0])


def test_separating_cylinder_minimal_depth():
    # the two points agree on the first three letters
    p = point("0001", "0")
    q = point("0000", "1")
    sep = separating_cylinder(p, [q])
    assert sep == cylinder("0001")


def test_cylinder_around_constraints():
    c = cylinder_around(P01, within=cylinder("0"), avoid_points=[P0])
    assert c <= cylinder("0") and contains_point(c, P01) and not contains_point(c, P0)
    with pytest.raises(ImpossibleInputError):
        cylinder_around(P0, within=cylinder("1"))
    d = cylinder_around(P0, avoid=cylinder("01"))
    assert cantor.disjoint(d, cylinder("01")) and contains_point(d, P0)


def test_cylinder_avoiding_and_some_point():
    c = cylinder_avoiding(FULL, [P0, P1])
    assert not contains_point(c, P0) and not contains_point(c, P1)
    x = some_point(cylinder("11"), avoid=[P1])
    assert contains_point(cylinder("11"), x) and x != P1


def test_trace_closure_flags():
    w1 = world([P0])
    assert trace_closure(cylinder("0"), w1)[1] == frozenset({0})
    assert trace_closure(cylinder("1"), w1)[1] == frozenset()
    w2 = world([P0, P1])
    c = clopen(["00", "1"])
    assert trace_closure(c, w2)[1] == frozenset({0, 1})


def test_compactness_criterion():
    w2 = world([P0, P1])
    assert w2.trace_compact(cylinder("01"))
    assert not w2.trace_compact(cylinder("0"))


def test_world_rejects_duplicates():
    with pytest.raises(ValueError):
        world([P0, point("0", "0")])


def test_depth_limit_is_an_error():
    with pytest.raises(DepthLimitError):
        clopen(["0" * 40])


def test_region_filters_contained_points():
    r = region(cylinder("0"), [P0, P1])
    assert r.points == (P1,)
    assert cantor.as_region(P1).points == (P1,)


def test_clopen_rejects_non_canonical():
    with pytest.raises(ValueError):
        cantor.Clopen(("0", "00"))
    with pytest.raises(ValueError):
        cantor.Clopen(("00", "01"))
