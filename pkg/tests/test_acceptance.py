"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible in ``pytest -v`` output)
before asserting, so a run doubles as a reproduction report.
"""

import numpy as np
import pytest

from eii import catalog as cat
from eii import gf as gfm
from eii.analysis import (Ordering, balanced_parity_placement, check_cm_bound, max_correctable_burst,
                          min_distance_exhaustive, monte_carlo_avg_erasures)
from eii.decode import decodable, decode_errors_erasures, iterative_decode
from eii.errors import MiscorrectionDetected, Uncorrectable
from eii.gf import field

from oracles import clmul_mod
from strategies import random_in_profile_mask


@pytest.fixture
def say(capsys):
    def _say(label, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\n{'PASS' if ok else 'FAIL'} {label}{tail}")
        return ok
    return _say


def test_criterion_1_ex0_encoding(say):
    arr = cat.get("ex0").encode_systematic([cat.EX0_DATA])
    ok = np.array_equal(arr, cat.EX0_ARRAY)
    assert say("criterion 1: ex0 systematic array is byte-exact", ok)


def test_criterion_2_exhaustive_distance(say):
    d = min_distance_exhaustive(cat.get("ex0"))
    w = int(np.count_nonzero(cat.EX0_ARRAY))
    assert say("criterion 2: ex0 distance 14 and reference weight 14", d == 14 and w == 14, f"d={d}, weight={w}")


# criterion 3: (code, decoder, criterion, trials, target, tolerance)
MC_CASES = {
    "ex2 C(a)": ("ex2a", "envelope", None, 10_000, 17.8, 0.5),
    "ex2 C(b)": ("ex2b", "row-column", "distance", 10_000, 22.7, 0.5),
    "ex2bis C(a)": ("ex2bis-a", "envelope", None, 1000, 38.0, 1.5),
    "ex2bis C(b)": ("ex2bis-b", "row-column", "distance", 1000, 48.0, 1.5),
}
MC_LARGE = {
    "ex25bis code 1": ("ex25bis-1", 119.0),
    "ex25bis code 2": ("ex25bis-2", 184.0),
    "ex25bis code 3": ("ex25bis-3", 369.0),
}


@pytest.mark.parametrize("label", list(MC_CASES))
def test_criterion_3_monte_carlo(say, label):
    name, dec, crit, trials, target, tol = MC_CASES[label]
    r = monte_carlo_avg_erasures(cat.get(name), dec, trials, seed=7, criterion=crit)
    ok = abs(r.mean - target) <= tol
    assert say(f"criterion 3: {label} averages {target} +- {tol}", ok,
               f"mean={r.mean:.3f}, stderr={r.stderr:.3f}, {trials} trials")


@pytest.mark.slow
@pytest.mark.parametrize("label", list(MC_LARGE))
def test_criterion_3_monte_carlo_large(say, label):
    name, target = MC_LARGE[label]
    r = monte_carlo_avg_erasures(cat.get(name), "recursive", 300, seed=7, criterion="distance")
    ok = abs(r.mean - target) <= 0.05 * target
    assert say(f"criterion 3: {label} averages {target} +- 5%", ok,
               f"mean={r.mean:.2f}, stderr={r.stderr:.2f}, 300 trials")


def test_criterion_4_parity_check_matrices(say):
    rng = np.random.default_rng(4)
    ok, detail = True, []
    for name, shape, r in (("ex20", (23, 64), 23), ("ex22", (25, 64), 24)):
        C = cat.get(name)
        H = C.parity_check_matrix
        rk = gfm.rank(C.gf, H)
        zero = all(not gfm.matmul(C.gf, H, C.random_codeword(rng).reshape(-1, 1)).any() for _ in range(200))
        ok &= H.shape == shape and rk == r and zero
        detail.append(f"{name} {H.shape[0]}x{H.shape[1]} rank {rk}")
    assert say("criterion 4: parity-check dimensions, ranks and 200 codewords each", ok, ", ".join(detail))


def test_criterion_5_iterative_decoding(say):
    C = cat.get("ex20")
    M = cat.EX23_MASK
    c = C.random_codeword(np.random.default_rng(23))
    rows = decodable(C, M, "envelope")
    cols = decodable(C, M, "transpose", "distance")
    try:
        fixed = np.array_equal(iterative_decode(C, np.where(M, 0, c), M, global_fallback=False), c)
    except Uncorrectable:
        fixed = False
    ok = not rows and not cols and fixed
    assert say("criterion 5: ex23 fails rows-only and transpose-only, iterative recovers", ok)


def test_criterion_6_bursts(say):
    ex11, ex12, ex13 = cat.get("ex11"), cat.get("ex12"), cat.get("ex13")
    got = {
        "ex11 row-wise": max_correctable_burst(ex11, Ordering.row_wise(4, 4), "iterative").length,
        "ex11 diagonal": max_correctable_burst(ex11, Ordering(cat.EX11_DIAGONAL), "iterative").length,
        "ex12": max_correctable_burst(ex12, Ordering(cat.EX12_ORDER), "transpose-only").length,
        "ex13": max_correctable_burst(ex13, Ordering(cat.EX13_ORDER), "iterative").length,
    }
    o13 = Ordering(cat.EX13_ORDER)
    starts = all(decodable(ex13, o13.burst(s, 8), "iterative") for s in cat.EX13_BURST_STARTS)
    want = {"ex11 row-wise": 5, "ex11 diagonal": 7, "ex12": 4, "ex13": 8}
    ok = got == want and starts
    assert say("criterion 6: burst lengths 5/7/4/8 and the listed bursts", ok,
               ", ".join(f"{k}={v}" for k, v in got.items()))


def test_criterion_7_balanced_placement(say):
    ok = True
    for name, ref in (("ex26a", cat.EX26_MASK_1), ("ex26b", cat.EX26_MASK_2)):
        C = cat.get(name)
        pm = balanced_parity_placement(C)
        ok &= pm.is_balanced() and decodable(C.transpose, pm.mask.T, "recursive")
        ok &= bool(np.array_equal(pm.mask, ref))
    assert say("criterion 7: ex26 masks are balanced, decodable and match", ok)


def test_criterion_8_miscorrection(say):
    C = cat.get("ex16")
    try:
        decode_errors_erasures(C, cat.EX16_RECEIVED_1)
        flagged = False
    except MiscorrectionDetected:
        flagged = True
    alt = C.is_codeword(cat.EX16_ALTERNATIVE)
    zero = not decode_errors_erasures(C, cat.EX16_RECEIVED_2, distrust_rows=(1,)).any()
    assert say("criterion 8: ex16 miscorrection flagged, alternative is a codeword, trusted row-0 decodes to 0",
               flagged and alt and zero)


ENVELOPE = ("ex0", "ex1", "ex2a", "ex3", "ex4", "ex10", "ex16", "ex19", "ex19bis")


def test_criterion_9_property_suites(say):
    rng = np.random.default_rng(9)
    parts = {}
    # envelope: 500 in-profile masks per code
    parts["envelope"] = all(decodable(cat.get(n), random_in_profile_mask(cat.get(n), rng), "envelope")
                            for n in ENVELOPE for _ in range(500))
    # transposition and coefficient membership
    ok = True
    for name in ("ex20", "ex22", "ex13"):
        C = cat.get(name)
        for _ in range(100):
            c = C.random_codeword(rng)
            ok &= C.transpose.is_codeword(c.T) and bool(C.membership_pc(c))
            ok &= C.transpose.transpose.is_codeword(c)
    parts["transpose"] = ok
    # row decomposition
    ok = True
    for name in ("ex4", "ex10", "ex19bis"):
        C = cat.get(name)
        C0 = C.horizontals[0]
        for _ in range(100):
            row = C0.encode(C.gf.random(rng, C0.k))
            pieces = C.decompose_row(row)
            ok &= np.array_equal(np.bitwise_xor.reduce(np.array(pieces), axis=0), row)
            ok &= all(C.horizontals[v].is_codeword(p) for v, p in enumerate(pieces))
    parts["decomposition"] = ok
    # field axioms against carry-less multiplication, and the Kronecker identity
    ok = True
    for b in (1, 3, 4, 8):
        F = field(b)
        for _ in range(200):
            x, y, z = (int(v) for v in rng.integers(0, F.q, 3))
            ok &= F.mul(x, y) == clmul_mod(x, y, b, F.modulus)
            ok &= F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
            ok &= x == 0 or F.mul(x, F.inv(x)) == 1
    F = field(4)
    for _ in range(50):
        A, B, X = F.random(rng, (3, 4)), F.random(rng, (2, 5)), F.random(rng, (4, 5))
        lhs = gfm.matmul(F, gfm.kronecker(F, A, B), X.reshape(-1, 1))[:, 0]
        ok &= np.array_equal(lhs, gfm.matmul(F, gfm.matmul(F, A, X), B.T).ravel())
    parts["field"] = ok
    # bound verdicts
    verdicts = {n: check_cm_bound(cat.get(n), k).verdict
                for n, k in (("ex1", 4), ("ex18", 7), ("ex19bis", 7), ("ex31", 5))}
    parts["bounds"] = verdicts == {"ex1": "met", "ex18": "consistent", "ex19bis": "met", "ex31": "met"}
    ok = all(parts.values())
    assert say("criterion 9: property suites", ok, ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items()))
