"""Field construction and arithmetic checks for GF(2^n)."""

import random

import numpy as np
import pytest

from invperm.gf2n import (
    DEFAULT_MODULI,
    FieldContext,
    alternate_modulus,
    default_modulus,
    irreducible_polys,
    is_irreducible,
    make_field,
    parse_field_spec,
)


def test_default_moduli_are_smallest_irreducibles():
    for n in range(2, 17):
        assert default_modulus(n) == next(irreducible_polys(n))


def test_make_field_default_n3():
    # smallest irreducible of degree 3 is x^3 + x + 1
    assert make_field(3).modulus == 0b1011


def test_make_field_explicit_modulus():
    ctx = make_field(4, 0b10011)
    assert ctx.n == 4 and ctx.modulus == 0b10011


def test_make_field_all_ones_quartic_is_irreducible():
    # x^4+x^3+x^2+x+1 has no roots and is not the square of x^2+x+1,
    # so the irreducibility oracle accepts it
    assert is_irreducible(0b11111)
    assert make_field(4, 0b11111).modulus == 0b11111


def test_make_field_rejects_reducible():
    with pytest.raises(ValueError, match="reducible"):
        make_field(4, 0b11001 ^ 0b1)  # x^4+x^3+x: divisible by x
    with pytest.raises(ValueError, match="reducible"):
        make_field(4, 0b10101)  # x^4+x^2+1 = (x^2+x+1)^2


def test_make_field_rejects_bad_degree_or_range():
    with pytest.raises(ValueError, match="out of range"):
        make_field(1)
    with pytest.raises(ValueError, match="out of range"):
        make_field(17)
    with pytest.raises(ValueError, match="degree"):
        make_field(4, 0b1011)


def test_parse_field_spec():
    assert parse_field_spec("5") == (5, None)
    assert parse_field_spec("5:0x25") == (5, 0x25)
    with pytest.raises(ValueError):
        parse_field_spec("x")


def test_mul_identities():
    ctx = make_field(5)
    for b in ctx.elements():
        assert ctx.mul(0, b) == 0
        assert ctx.mul(1, b) == b


def test_generator_order_in_gf8():
    # every generator g of GF(8)* satisfies g * g^6 = 1
    ctx = make_field(3)
    for g in range(2, 8):
        powers = {ctx.pow(g, e) for e in range(1, 8)}
        if len(powers) == 7:  # g generates
            assert ctx.mul(g, ctx.pow(g, 6)) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_field_axioms_exhaustive(n):
    # associativity, commutativity and distributivity over every triple,
    # chunked along the first operand to keep memory flat
    ctx = make_field(n)
    m = ctx.mul_table
    xs = np.arange(ctx.order)
    assert np.array_equal(m, m.T)  # commutativity
    for a in range(ctx.order):
        assert np.array_equal(m[m[a]][:, xs], m[a][m])  # a(bc) == (ab)c
        assert np.array_equal(
            m[a][xs[:, None] ^ xs[None, :]], m[a][:, None] ^ m[a][None, :]
        )  # a(b+c) == ab + ac


def test_mul_matches_raw_schoolbook():
    for n in (3, 5, 8):
        ctx = make_field(n)
        rng = random.Random(n)
        for _ in range(500):
            a, b = rng.randrange(ctx.order), rng.randrange(ctx.order)
            assert ctx.mul(a, b) == ctx._mul_raw(a, b)


@pytest.mark.parametrize("n", range(2, 13))
def test_inv0_involution_and_bijection(n):
    ctx = make_field(n)
    tab = ctx.inv_table
    assert tab[0] == 0 and tab[1] == 1
    assert np.array_equal(np.sort(tab), np.arange(ctx.order))  # bijection
    assert np.array_equal(tab[tab], np.arange(ctx.order))  # involution
    for a in range(1, min(ctx.order, 256)):
        assert ctx.mul(a, ctx.inv0(a)) == 1


@pytest.mark.parametrize("n", range(2, 11))
def test_trace_properties(n):
    ctx = make_field(n)
    tr = ctx.trace_table
    assert tr[0] == 0
    assert tr[1] == n % 2
    assert int(np.sum(tr == 0)) == ctx.order // 2
    assert np.array_equal(tr[ctx.sqr_table], tr)  # Tr(a^2) = Tr(a), all a
    # additivity over every pair
    xs = np.arange(ctx.order)
    assert np.array_equal(tr[xs[:, None] ^ xs[None, :]], tr[:, None] ^ tr[None, :])


@pytest.mark.parametrize("n", [3, 4, 6, 8])
def test_pow2k(n):
    ctx = make_field(n)
    for a in range(ctx.order):
        assert ctx.pow2k(a, 0) == a
        r = ctx.pow2k(a, n - 1)
        assert ctx.mul(r, r) == a  # square root
        x = a
        for _ in range(n):
            x = ctx.sqr(x)
        assert x == a  # Frobenius has order dividing n
    with pytest.raises(ValueError):
        ctx.pow2k(1, n)


def test_hyperplane_sizes_and_intersections():
    ctx = make_field(6)
    rng = random.Random(9)
    for _ in range(20):
        a = rng.randrange(1, ctx.order)
        b = rng.randrange(1, ctx.order)
        ha = ctx.hyperplane(a)
        assert len(ha) == ctx.order // 2
        assert 0 in ha
        if a != b:
            assert len(ha & ctx.hyperplane(b)) == ctx.order // 4
    # closed under xor
    ha = ctx.hyperplane(5)
    sample = random.Random(0).sample(sorted(ha), 12)
    for x in sample:
        for y in sample:
            assert (x ^ y) in ha
    with pytest.raises(ValueError):
        ctx.hyperplane(0)


def test_subfields():
    ctx = make_field(6)
    assert ctx.subfield_elements(1) == frozenset({0, 1})
    assert ctx.subfield_elements(6) == frozenset(range(64))
    sub = ctx.subfield_elements(2)
    assert len(sub) == 4
    for x in sub:
        if x:
            assert ctx.pow(x, 3) == 1
        for y in sub:
            assert ctx.mul(x, y) in sub
            assert (x ^ y) in sub
    with pytest.raises(ValueError):
        ctx.subfield_elements(4)


def test_alternate_modulus():
    assert alternate_modulus(2) is None
    for n in (3, 4, 5, 8):
        alt = alternate_modulus(n)
        assert alt is not None and alt != default_modulus(n)
        assert is_irreducible(alt)


def test_mul_vec_matches_scalar():
    ctx = make_field(7)
    rng = np.random.default_rng(5)
    a = rng.integers(0, ctx.order, 300)
    b = rng.integers(0, ctx.order, 300)
    got = ctx.mul_vec(a, b)
    assert all(int(g) == ctx.mul(int(x), int(y)) for g, x, y in zip(got, a, b))


def test_context_cache_and_pickle_roundtrip():
    import pickle

    ctx = make_field(5)
    assert make_field(5) is ctx
    assert pickle.loads(pickle.dumps(ctx)) is ctx


def test_top_of_range_n16():
    # the supported ceiling: construction is table-heavy but everything
    # downstream is table lookups
    ctx = make_field(16)
    assert ctx.modulus == 0x1002B
    assert ctx.mul(ctx.inv0(12345), 12345) == 1
    assert ctx.trace_table.shape == (1 << 16,)
    assert int((ctx.trace_table == 0).sum()) == 1 << 15
