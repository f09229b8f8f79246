"""Kloosterman sums, the quadratic/bilinear forms, and the zero census."""

from collections import Counter

import numpy as np
import pytest

from invperm.gf2n import alternate_modulus, make_field
from invperm.kloosterman import (
    bform,
    divisible_by_16,
    kloosterman_all,
    kloosterman_sum,
    kloosterman_zeros,
    qform,
    qform_table,
)


def naive_kloosterman(ctx, a):
    return sum(
        (-1) ** (ctx.trace(ctx.inv0(x) ^ ctx.mul(a, x))) for x in ctx.elements()
    )


def test_k_at_zero_is_zero():
    for n in (3, 4, 5, 8):
        assert kloosterman_sum(make_field(n), 0) == 0


def test_k_gf8_frozen_values():
    # frozen from the literal 8-term sums over GF(8) with modulus 0xb
    ctx = make_field(3)
    assert kloosterman_sum(ctx, 1) == -4
    assert [kloosterman_sum(ctx, a) for a in range(8)] == [0, -4, 0, 4, 0, 4, 0, 4]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_fast_transform_matches_direct(n):
    ctx = make_field(n)
    ks = kloosterman_all(ctx)
    for a in range(ctx.order):
        assert int(ks[a]) == naive_kloosterman(ctx, a)


@pytest.mark.parametrize("n", range(3, 13))
def test_weil_bound_and_evenness(n):
    # magnitude bound from standard character-sum theory (not a claim
    # under verification here, just a sanity invariant); the classical
    # bound covers the sum over nonzero x, which is K(a) - 1 under the
    # 0^-1 = 0 convention
    ctx = make_field(n)
    ks = kloosterman_all(ctx)
    assert int(np.abs(ks - 1).max()) <= 2 ** (n / 2 + 1)
    assert not np.any(ks % 2)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_kloosterman_multiset_is_modulus_invariant(n):
    a = make_field(n)
    b = make_field(n, alternate_modulus(n))
    assert Counter(map(int, kloosterman_all(a))) == Counter(map(int, kloosterman_all(b)))


def test_qform_basics():
    for n in (3, 4, 5, 6, 8):
        ctx = make_field(n)
        assert qform(ctx, 0) == 0
        assert qform(ctx, 1) == (n * (n - 1) // 2) % 2
        qt = qform_table(ctx)
        assert np.array_equal(qt[ctx.sqr_table], qt)  # Q(x^2) = Q(x)


def test_qform_against_pointwise_definition():
    for n in (3, 5, 6):
        ctx = make_field(n)
        for x in ctx.elements():
            acc = 0
            for i in range(n):
                for j in range(i + 1, n):
                    acc ^= ctx.mul(ctx.pow2k(x, i), ctx.pow2k(x, j))
            assert acc == qform(ctx, x)


def test_bform_basics():
    ctx = make_field(6)
    for x in ctx.elements():
        assert bform(ctx, x, x) == 0
        assert bform(ctx, x, 0) == 0


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_bform_is_polarization_of_qform(n):
    ctx = make_field(n)
    qt = qform_table(ctx)
    xs = np.arange(ctx.order)
    for x in ctx.elements():
        lhs = qt[x] ^ qt[xs] ^ qt[x ^ xs]
        rhs = ctx.trace_table[ctx.mul_vec(x, xs)] ^ (
            ctx.trace_table[x] & ctx.trace_table[xs]
        )
        assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("n", range(4, 13))
def test_mod16_iff_trace_and_qform(n):
    ctx = make_field(n)
    ks = kloosterman_all(ctx)
    qt = qform_table(ctx)
    by_theorem = (ctx.trace_table == 0) & (qt == 0)
    by_sum = ks % 16 == 0
    assert np.array_equal(by_theorem, by_sum)


def test_divisible_by_16_api():
    ctx = make_field(5)
    assert divisible_by_16(ctx, 0)
    for a in ctx.elements():
        if ctx.trace(a) == 1:
            assert not divisible_by_16(ctx, a)
    with pytest.raises(ValueError, match="n >= 4"):
        divisible_by_16(make_field(3), 1)


@pytest.mark.parametrize("n", range(3, 13))
def test_census_zero_count_positive(n):
    census = kloosterman_zeros(make_field(n))
    assert census.zero_count >= 1
    assert 0 not in census.zeros
    assert census.k_at_zero_element == 0
    for z in census.zeros:
        assert kloosterman_sum(make_field(n), z) == 0


@pytest.mark.parametrize("n", range(5, 13))
def test_census_zeros_avoid_proper_subfields(n):
    census = kloosterman_zeros(make_field(n))
    assert all(len(v) == 0 for v in census.subfield_hits.values())


@pytest.mark.parametrize("n", range(3, 13))
def test_census_cross_modulus_invariance(n):
    a = kloosterman_zeros(make_field(n))
    b = kloosterman_zeros(make_field(n, alternate_modulus(n)))
    assert a.zero_count == b.zero_count


def test_census_agrees_with_transform_route():
    for n in (3, 4, 5, 6, 7, 8):
        ctx = make_field(n)
        census = kloosterman_zeros(ctx)
        ks = kloosterman_all(ctx)
        transform_zeros = [a for a in range(1, ctx.order) if ks[a] == 0]
        assert list(census.zeros) == transform_zeros


def test_census_json_and_dump():
    census = kloosterman_zeros(make_field(4), dump_sums=True)
    d = census.to_json_dict()
    assert d["field"] == "4:0x13"
    assert d["zero_count"] == len(d["zeros"])
    assert len(d["sums"]) == 16
    assert d["sums"][0] == 0
