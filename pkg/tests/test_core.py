import itertools

import pytest
from hypothesis import given, strategies as st

from qsymtest.core import (
    BooleanOracle,
    Point,
    Restriction,
    UsageError,
    embed_point,
    query,
    restrict,
    weight,
    xor_delta,
)
from qsymtest.truthtable import TruthTable

from conftest import oracle_of


def P(s):
    return Point.from_string(s)


@pytest.mark.parametrize("bits, w", [((0, 0, 0, 0), 0), ((0, 1, 1, 0), 2), ((1, 1, 1), 3)])
def test_weight(bits, w):
    assert weight(Point.from_bits(bits)) == w


def test_point_bits_roundtrip():
    p = Point.from_bits((1, 0, 1, 1))
    assert p.bits == (1, 0, 1, 1)
    assert str(p) == "1011"
    assert p[1] == 1 and p[2] == 0
    assert P("1011") == p
    assert p.mask == 0b1101


def test_point_rejects_bad_input():
    with pytest.raises(UsageError):
        Point(4, 2)
    with pytest.raises(UsageError):
        Point.from_bits((0, 2))
    with pytest.raises(UsageError):
        Point.from_string("01x")


def test_query_parity_and_dictator():
    par = oracle_of("parity", 3)
    assert query(par, Point.from_bits((1, 1, 0))) == 0
    dic = oracle_of("dictator", 2, index=1)
    assert query(dic, Point.from_bits((1, 0))) == 1


def test_query_counts_every_call_including_repeats():
    f = oracle_of("majority", 3)
    p = P("110")
    assert f.query(p) == f.query(p)
    assert f.queries == 2


def test_query_arity_mismatch():
    with pytest.raises(UsageError):
        oracle_of("parity", 3).query(P("10"))


def test_xor_delta_examples():
    assert xor_delta(P("000"), P("000")) == (0, [])
    assert xor_delta(P("010"), P("001")) == (2, [2, 3])
    assert xor_delta(Point(0, 5), Point(31, 5)) == (5, [1, 2, 3, 4, 5])
    with pytest.raises(UsageError):
        xor_delta(P("01"), P("011"))


def test_restrict_parity_forced_bit():
    g = restrict(oracle_of("parity", 3), {3: 1})
    assert g.arity == 2
    assert g.query(P("00")) == 1


def test_restrict_empty_is_identical():
    f = oracle_of("majority", 4)
    g = restrict(f, {})
    for m in range(16):
        assert g.query(Point(m, 4)) == f.query(Point(m, 4))


def test_restrict_dictator_to_constant():
    f = oracle_of("dictator", 3, index=2)
    g = restrict(f, {2: 0})
    assert g.arity == 2
    # oracle: enumerate every reduced point against the full table
    tt = TruthTable.from_oracle(f)
    for q in range(4):
        assert g.query(Point(q, 2)) == 0 == tt.value(embed_point(Point(q, 2), {2: 0}).mask)


def test_restrict_charges_base_counter():
    f = oracle_of("parity", 4)
    g = restrict(f, {1: 0, 3: 1})
    g.query(P("11"))
    g.query(P("01"))
    assert f.queries == 2
    assert g.queries == 2


def test_restrict_index_out_of_range():
    with pytest.raises(UsageError):
        restrict(oracle_of("parity", 3), {4: 0})
    with pytest.raises(UsageError):
        restrict(oracle_of("parity", 3), {0: 1})


def test_restriction_of_restriction_composes():
    f = oracle_of("parity", 5)
    g = restrict(f, {2: 1, 4: 0})  # free: 1, 3, 5
    h = restrict(g, {2: 1})  # reduced position 2 is original 3
    assert isinstance(h, Restriction)
    assert h.base is f
    assert h.fixed == {2: 1, 3: 1, 4: 0}
    assert h.free == [1, 5]


def test_free_index_map_increasing():
    g = restrict(oracle_of("parity", 6), {5: 1, 2: 0})
    assert g.free == sorted(g.free) == [1, 3, 4, 6]
    assert [g.original_index(k) for k in range(1, 5)] == [1, 3, 4, 6]


def test_embed_point_examples():
    assert embed_point(Point(0, 0), {1: 1, 2: 0}) == P("10")
    assert embed_point(P("11"), {2: 0}) == P("101")
    with pytest.raises(UsageError):
        embed_point(P("11"), {2: 0}, n=4)
    with pytest.raises(UsageError):
        embed_point(P("11"), {5: 0})


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_restrict_embed_roundtrip_exhaustive(n):
    # every function of n <= 3 args, sampled functions at n = 4, every fixing map
    if n <= 3:
        tables = [TruthTable.from_array([(v >> i) & 1 for i in range(1 << n)]) for v in range(1 << (1 << n))]
    else:
        tables = [TruthTable.from_array([(v * 2654435761 >> i) & 1 for i in range(16)]) for v in range(40)]
    for tt in tables:
        f = tt.oracle()
        for S in itertools.chain.from_iterable(itertools.combinations(range(1, n + 1), r) for r in range(n + 1)):
            for vals in itertools.product((0, 1), repeat=len(S)):
                m = dict(zip(S, vals))
                g = restrict(f, m)
                for q in range(1 << (n - len(S))):
                    qp = Point(q, n - len(S))
                    assert g.query(qp) == f.query(embed_point(qp, m, n))


@pytest.mark.parametrize("n", range(13))
def test_index_bijection(n):
    seen = set()
    for bits in itertools.product((0, 1), repeat=n) if n <= 12 else ():
        idx = sum(b << i for i, b in enumerate(bits))
        assert Point.from_bits(bits).mask == idx
        seen.add(idx)
    assert seen == set(range(1 << n))


def test_counter_matches_evaluator_calls(counting_oracle):
    f, ev = counting_oracle(4, lambda m: m.bit_count() & 1)
    g = restrict(f, {2: 1})
    for q in range(8):
        g.query(Point(q, 3))
    f.query(P("1111"))
    f.query_mask(3)
    assert f.queries == ev.calls == 10


@given(st.integers(0, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_point_string_roundtrip(nm):
    n, m = nm
    p = Point(m, n)
    assert Point.from_string(str(p)) == p
    assert weight(p) == sum(p.bits)
