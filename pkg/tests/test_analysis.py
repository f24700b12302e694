import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eii import catalog as cat
from eii.analysis import (LrcParams, Ordering, PlacementMask, balanced_parity_placement, burst_erasure_ok,
                          bound_verdict, check_cm_bound, cm_bound, delta_bound, erasures_until_failure,
                          griesmer_dopt_upper, griesmer_kopt_upper, griesmer_length, make_ordering,
                          max_correctable_burst, min_distance_exhaustive, monte_carlo_avg_erasures,
                          placement_precondition, report, singleton_lrc_bound)
from eii.eii import UProfile, build_eii_pc
from eii.errors import ConstructionError
from eii.gf import field
from eii.linear_codes import HCoefficients, VandermondeCoefficients, make_parity, make_rs, make_whole

from oracles import expected_erasures_rows_threshold, product_iterative_ok
from strategies import pc_codes


# ---- bounds ------------------------------------------------------------------

def test_singleton_lrc_bound():
    assert singleton_lrc_bound(LrcParams(5, 8, 4, 12)) == 29
    assert singleton_lrc_bound(LrcParams(3, 8, 3, 0)) == 4
    assert singleton_lrc_bound(LrcParams(4, 3, 2, 2)) == (2 + 1) * 2 + 2 + 1


def test_lrc_params_validation():
    with pytest.raises(ValueError):
        LrcParams(4, 8, 0, 1)
    with pytest.raises(ValueError):
        LrcParams(4, 8, 4, 16)
    p = LrcParams.from_code(cat.get("ex1"))
    assert (p.m, p.n, p.h, p.g, p.k) == (5, 8, 4, 12, 8)


@pytest.mark.parametrize("q,N,K,d", [(2, 32, 4, 16), (2, 48, 5, 24), (2, 11, 1, 11), (4, 30, 3, 22)])
def test_griesmer_dopt(q, N, K, d):
    assert griesmer_dopt_upper(q, N, K) == d
    assert griesmer_length(q, K, d) <= N < griesmer_length(q, K, d + 1)


def test_griesmer_kopt_and_errors():
    assert griesmer_kopt_upper(2, 7, 3) == 4          # Hamming [7,4,3] is Griesmer-optimal
    assert griesmer_kopt_upper(2, 5, 5) == 1
    with pytest.raises(ValueError):
        griesmer_dopt_upper(2, 8, 0)
    with pytest.raises(ValueError):
        griesmer_kopt_upper(2, 8, 0)


@pytest.mark.parametrize("name,kstar,bound,verdict", [
    ("ex1", 4, 16, "met"),
    ("ex18", 7, 15, "consistent"),
    ("ex19", 7, 10, "consistent"),
    ("ex19bis", 7, 24, "met"),
    ("ex31", 5, 22, "met"),
])
def test_bound_verdicts(name, kstar, bound, verdict):
    chk = check_cm_bound(cat.get(name), kstar)
    assert (chk.bound, chk.verdict) == (bound, verdict)
    assert min(chk.terms.values()) == chk.bound


def test_cm_bound_single_term_and_verdicts():
    p = LrcParams(2, 8, 4, 4)            # k = 4 <= k*
    assert cm_bound(p, 4) == griesmer_dopt_upper(2, 16, 4)
    assert [bound_verdict(x, 8) for x in (None, 8, 6, 9)] == ["open", "met", "consistent", "violated"]
    with pytest.raises(ValueError):
        cm_bound(p, 0)


def test_ex1_singleton_exceeds_distance():
    assert singleton_lrc_bound(LrcParams.from_code(cat.get("ex1"))) == 29 > 16


# ---- exhaustive distances ------------------------------------------------------

@pytest.mark.parametrize("name,d", [("ex0", 14), ("ex2b", 9), ("ex11", 4), ("ex1", 16)])
def test_exhaustive_distance(name, d):
    assert min_distance_exhaustive(cat.get(name)) == d


def test_exhaustive_distance_whole_space_and_caps():
    assert min_distance_exhaustive(make_whole(field(1), 5)) == 1
    with pytest.raises(ValueError):
        min_distance_exhaustive(cat.get("ex20"), cap=1000)


@given(st.integers(2, 5), st.integers(2, 5), st.integers(1, 2), st.integers(1, 2))
@settings(max_examples=15)
def test_one_level_product_distance(m, n, r, c):
    """1-level MDS product codes have distance exactly d_row * d_column."""
    gf = field(3)
    if r >= n or c >= m or (m - c) * (n - r) > 6:
        return
    h = VandermondeCoefficients(gf, [gf.exp(i) for i in range(7)])
    code = build_eii_pc(UProfile((r,) * (m - c) + (n,) * c, n), h)
    assert min_distance_exhaustive(code) == code.horizontals[0].d * code.verticals[0].d == (r + 1) * (c + 1)


# ---- Monte Carlo ----------------------------------------------------------------

def test_mc_whole_space_row_is_zero():
    gf = field(1)
    code = build_eii_pc(UProfile((0,), 6, 1), HCoefficients(gf, np.eye(6, dtype=np.int64)))
    r = monte_carlo_avg_erasures(code, "recursive", 50, 1)
    assert r.mean == 0 and r.stderr == 0


def test_mc_envelope_matches_exact_expectation():
    code = cat.get("ex2a")
    expect = expected_erasures_rows_threshold(7, 7, 2, 3)
    assert expect == pytest.approx(17.3314, abs=1e-4)
    r = monte_carlo_avg_erasures(code, "envelope", 2000, 11)
    assert abs(r.mean - expect) <= 4 * r.stderr


def test_mc_row_column_matches_product_peeling_per_trial():
    code = cat.get("ex2b")
    rng = np.random.default_rng(5)
    for _ in range(300):
        order = rng.permutation(49)
        got = erasures_until_failure(code, order, "row-column", criterion="distance")
        M = np.zeros(49, dtype=bool)
        ref = 0
        for pos in order:
            M[pos] = True
            if not product_iterative_ok(M.reshape(7, 7), 2, 2):
                break
            ref += 1
        assert got == ref


def test_mc_bisect_equals_sequential():
    rng = np.random.default_rng(9)
    for name, dec in (("ex2a", "envelope"), ("ex2b", "iterative"), ("ex13", "row-column")):
        code = cat.get(name)
        for _ in range(40):
            order = rng.permutation(code.m * code.n)
            assert (erasures_until_failure(code, order, dec, "bisect")
                    == erasures_until_failure(code, order, dec, "sequential"))


def test_mc_seed_invariance_and_determinism():
    code = cat.get("ex2a")
    a = monte_carlo_avg_erasures(code, "envelope", 800, 1)
    b = monte_carlo_avg_erasures(code, "envelope", 800, 2)
    assert abs(a.mean - b.mean) <= 3 * np.hypot(a.stderr, b.stderr)
    again = monte_carlo_avg_erasures(code, "envelope", 800, 1)
    assert np.array_equal(a.counts, again.counts)
    with pytest.raises(ValueError):
        monte_carlo_avg_erasures(code, trials=0)


# ---- orderings and bursts -------------------------------------------------------

def test_orderings():
    rw = Ordering.row_wise(2, 3)
    assert rw.sequence.tolist() == [0, 1, 2, 3, 4, 5]
    assert np.array_equal(Ordering.diagonal(4, 4).index, cat.EX11_DIAGONAL)
    assert rw.burst(5, 2).ravel().tolist() == [True, False, False, False, False, True]
    with pytest.raises(ValueError):
        Ordering(np.array([[0, 0], [1, 2]]))
    with pytest.raises(ValueError):
        make_ordering("spiral", 2, 2)


def test_burst_erasure_ok():
    gf = field(1)
    assert burst_erasure_ok(cat.ex26_coefficients().code(4, 8), 4)
    assert burst_erasure_ok(make_rs(field(3), 7, 4), 3)
    assert not burst_erasure_ok(make_parity(gf, 4), 2)
    assert burst_erasure_ok(make_parity(gf, 4), 0)
    assert not burst_erasure_ok(make_parity(gf, 4), 5)


@pytest.mark.parametrize("name,ordering,decoder,length", [
    ("ex11", "row-wise", "rows-only", 3),
    ("ex11", "row-wise", "transpose-only", 5),
    ("ex11", "row-wise", "iterative", 5),
    ("ex11", "diagonal", "rows-only", 5),
    ("ex11", "diagonal", "transpose-only", 4),
    ("ex11", "diagonal", "iterative", 7),
    ("ex11", "diagonal", "row-column", 7),
    ("ex12", "reference", "transpose-only", 4),
    ("ex12", "reference", "rows-only", 3),
    ("ex13", "reference", "rows-only", 5),
    ("ex13", "reference", "iterative", 8),
])
def test_max_burst(name, ordering, decoder, length):
    code = cat.get(name)
    if ordering == "reference":
        order = Ordering({"ex12": cat.EX12_ORDER, "ex13": cat.EX13_ORDER}[name])
    else:
        order = make_ordering(ordering, code.m, code.n)
    res = max_correctable_burst(code, order, decoder)
    assert res.length == length
    assert res.first_failure[1] == length + 1
    # distance and rank thresholds agree on these bursts
    assert max_correctable_burst(code, order, decoder, "distance").length == length


@pytest.mark.parametrize("name,delta,bound,row_bound", [("ex11", 3, 5, 5), ("ex12", 1, 4, 3), ("ex13", 2, 7, 7)])
def test_delta_bound(name, delta, bound, row_bound):
    db = delta_bound(cat.get(name))
    assert (db.delta, db.bound, db.row_bound) == (delta, bound, row_bound)


@given(pc_codes(full_top=True), st.integers(0, 2**31))
@settings(max_examples=20)
def test_burst_invariants(code, seed):
    order = Ordering(np.random.default_rng(seed).permutation(code.m * code.n).reshape(code.m, code.n))
    rows = max_correctable_burst(code, order, "rows-only").length
    it = max_correctable_burst(code, order, "iterative").length
    assert rows <= it <= code.parity_count


# ---- placement -------------------------------------------------------------------

def test_ex26_column_permutation():
    assert cat.ex26_permutation() == (0, 1, 2, 3, 4, 5, 7, 6)


@pytest.mark.parametrize("name,ref", [("ex26a", cat.EX26_MASK_1), ("ex26b", cat.EX26_MASK_2)])
def test_ex26_placement(name, ref):
    code = cat.get(name)
    pm = balanced_parity_placement(code)
    assert np.array_equal(pm.mask, ref)
    assert pm.is_balanced() and pm.total == code.parity_count


def test_placement_precondition_failure():
    code = cat.get("ex20")
    assert placement_precondition(code)
    with pytest.raises(ConstructionError):
        balanced_parity_placement(code)
    unchecked = balanced_parity_placement(code, check=False)
    assert unchecked.total == code.parity_count


def test_placement_mask_balance():
    assert PlacementMask(np.eye(4, dtype=bool)).is_balanced()
    M = np.zeros((4, 4), dtype=bool)
    M[0, :2] = True
    assert not PlacementMask(M).is_balanced()


@given(pc_codes(full_top=True))
@settings(max_examples=30)
def test_placement_invariant(code):
    if placement_precondition(code):
        return
    pm = balanced_parity_placement(code)
    assert pm.is_balanced() and pm.total == code.parity_count


def test_report_fields():
    r = report(cat.get("ex0"), exhaustive=True)
    assert (r["k"], r["d_lb"], r["d_exhaustive"], r["parities"]) == (8, 12, 14, 67)
    r = report(cat.get("ex1"), kstar=4)
    assert (r["cm_bound"], r["cm_verdict"]) == (16, "met")
