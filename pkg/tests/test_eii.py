import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eii import catalog as cat
from eii import gf as gfm
from eii.analysis import min_distance_exhaustive
from eii.eii import UProfile, build_eii
from eii.errors import ConstructionError
from eii.linear_codes import VerticalCode, make_parity, make_rs

from strategies import eii_codes, pc_codes


# ---- fixed examples ------------------------------------------------------------

def test_ex0_parameters_and_encoding():
    C = cat.get("ex0")
    assert (C.k, C.d_lb, C.t) == (8, 12, 1)
    direct = C.encode_direct([cat.EX0_DATA])
    systematic = C.encode_systematic([cat.EX0_DATA])
    assert np.array_equal(direct, cat.EX0_ARRAY)
    assert np.array_equal(systematic, cat.EX0_ARRAY)
    assert C.is_codeword(cat.EX0_ARRAY)


def test_single_row_profile_is_one_level():
    p = UProfile((2,), 5)
    assert (p.t, p.values, p.mults, p.dimension) == (1, (2, 5), (1, 0), 3)
    gf = gfm.field(3)
    C = build_eii(p, [make_rs(gf, 5, 3)], [VerticalCode.interleaved(make_rs(gf, 1, 1), 3)])
    c = C.random_codeword(np.random.default_rng(0))
    assert c.shape == (1, 5) and C.is_codeword(c)


def test_profile_rejections():
    with pytest.raises(ConstructionError):
        UProfile((3, 2), 5)
    with pytest.raises(ConstructionError):
        UProfile((1, 6), 5)
    with pytest.raises(ConstructionError):
        UProfile((5, 5), 5)   # every row full: no level left


def test_profile_levels_disambiguation():
    implicit = UProfile((1, 3), 4)
    explicit = UProfile((1, 3), 4, 1)
    assert implicit.values == (1, 3, 4) and implicit.mults == (1, 1, 0)
    assert explicit.values == (1, 3) and explicit.mults == (1, 1)


def test_ex3_level0_component_zero_columns():
    C = cat.get("ex3")
    rng = np.random.default_rng(3)
    rows, c0, c1 = C.layout.blocks[0]
    comp = C.component(0, rng.integers(0, 2, (rows, c1 - c0)))
    assert not comp[:, :7].any()
    assert all(C.horizontals[0].is_codeword(r) for r in comp)


def test_ex4_data_layout():
    C = cat.get("ex4")
    M = C.layout.mask(C.m, C.n)
    expect = np.zeros((5, 15), dtype=bool)
    expect[0:2, 0:11] = True
    expect[2, 0:7] = True
    expect[3, 0:5] = True
    assert np.array_equal(M, expect)
    assert C.layout.size == C.k == int(expect.sum())


def test_ex11_parity_check_rank():
    C = cat.get("ex11")
    H = C.parity_check_matrix
    assert H.shape[1] == 16
    assert gfm.rank(C.gf, H) == 16 - C.k == 7


def test_parity_check_needs_pc_code():
    with pytest.raises(ConstructionError):
        _ = cat.get("ex0").parity_check_matrix


def test_ex20_transpose_profile():
    T = cat.get("ex20").transpose
    assert T.profile.values == (0, 1, 4, 8) and T.profile.mults == (1, 3, 3, 1)
    assert str(T.profile) == "C(8,(0,1,1,1,4,4,4,8))"


def test_ex12_transpose_profile():
    T = cat.get("ex12").transpose
    assert T.profile.u == (0, 1, 1, 2) and T.m == 4 and T.n == 2


def test_transpose_needs_pc():
    with pytest.raises(ConstructionError):
        _ = cat.get("ex0").transpose


@pytest.mark.parametrize("name,d", [("ex11", 4), ("ex2b", 9), ("ex12", 4), ("ex13", 4)])
def test_distance_meets_lower_bound(name, d):
    C = cat.get(name)
    got = min_distance_exhaustive(C)
    assert got >= C.d_lb
    if name in ("ex11", "ex2b"):
        assert got == C.d_lb == d


# ---- properties on random codes ------------------------------------------------

def _data(C, seed):
    return C.gf.random(np.random.default_rng(seed), C.k)


@given(eii_codes(), st.integers(0, 2**31), st.integers(0, 2**31))
def test_encoding_is_linear(C, s1, s2):
    x, y = _data(C, s1), _data(C, s2)
    assert np.array_equal(C.encode_direct(x ^ y), C.encode_direct(x) ^ C.encode_direct(y))
    assert np.array_equal(C.encode_systematic(x ^ y), C.encode_systematic(x) ^ C.encode_systematic(y))


@given(eii_codes(), st.integers(0, 2**31))
def test_codewords_satisfy_membership(C, seed):
    x = _data(C, seed)
    for c in (C.encode_direct(x), C.encode_systematic(x)):
        assert C.is_codeword(c)


@given(eii_codes(), st.integers(0, 2**31))
def test_systematic_encoding_places_data(C, seed):
    x = _data(C, seed)
    c = C.encode_systematic(x)
    got = np.concatenate([b.ravel() for b in C.layout.extract(c)])
    assert np.array_equal(got, x)


@given(eii_codes(), st.integers(0, 2**31))
def test_row_decomposition_round_trip(C, seed):
    rng = np.random.default_rng(seed)
    C0 = C.horizontals[0]
    for _ in range(20):
        row = C0.encode(C.gf.random(rng, C0.k))
        parts = C.decompose_row(row)
        assert np.array_equal(np.bitwise_xor.reduce(np.array(parts), axis=0), row)
        for v, part in enumerate(parts):
            assert C.horizontals[v].is_codeword(part)
        # parts above level 0 are the encodings of their own leading symbols
        for v in range(1, C.t):
            kv = C.horizontals[v].k
            assert np.array_equal(C.horizontals[v].encode(parts[v][:kv]), parts[v])


@given(eii_codes(), st.integers(0, 2**31), st.integers(0, 999))
def test_single_symbol_change_leaves_code(C, seed, where):
    c = C.encode_systematic(_data(C, seed))
    i, j = divmod(where % (C.m * C.n), C.n)
    c[i, j] ^= 1
    # the minimum distance is at least 2 whenever the bound says so
    if C.d_lb and C.d_lb >= 2:
        assert not C.is_codeword(c)


@given(pc_codes(), st.integers(0, 2**31))
def test_pc_membership_routes_agree(C, seed):
    rng = np.random.default_rng(seed)
    c = C.random_codeword(rng)
    assert C.membership(c) and C.membership_pc(c)
    noisy = c.copy()
    noisy[rng.integers(C.m), rng.integers(C.n)] ^= int(rng.integers(1, C.gf.q))
    assert bool(C.membership(noisy)) == bool(C.membership_pc(noisy))
    r = C.gf.random(rng, C.m * C.n).reshape(C.m, C.n)
    assert bool(C.membership(r)) == bool(C.membership_pc(r))


@given(pc_codes(full_top=True), st.integers(0, 2**31))
@settings(max_examples=30)
def test_parity_check_matrix_rank_and_annihilation(C, seed):
    H = C.parity_check_matrix
    assert H.shape[1] == C.m * C.n
    assert gfm.rank(C.gf, H) == C.m * C.n - C.k
    c = C.random_codeword(np.random.default_rng(seed))
    assert not gfm.matmul(C.gf, H, c.ravel()[:, None]).any()


@given(pc_codes(full_top=True), st.integers(0, 2**31))
@settings(max_examples=30)
def test_transpose_is_an_involution_on_codewords(C, seed):
    p = C.profile
    assert p.transpose().transpose() == UProfile(p.u, p.n, p.t)
    T = C.transpose
    assert T.k == C.k
    rng = np.random.default_rng(seed)
    for _ in range(10):
        c = C.random_codeword(rng)
        assert T.is_codeword(c.T)
        assert T.transpose.is_codeword(c)


@given(pc_codes(), st.integers(0, 2**31))
@settings(max_examples=30)
def test_generator_rows_span_the_code(C, seed):
    G = C.generator_matrix
    assert gfm.rank(C.gf, G) == C.k
    for row in G[: min(len(G), 8)]:
        assert C.is_codeword(row.reshape(C.m, C.n))


@pytest.mark.slow
@given(pc_codes(full_top=True))
@settings(max_examples=15)
def test_exhaustive_distance_at_least_bound(C):
    if C.k * C.gf.b > 14:
        return
    d = min_distance_exhaustive(C)
    assert d >= C.d_lb
