"""Checks of the reference worked examples, shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog as cat
from . import gf as gfm
from .analysis import (Ordering, balanced_parity_placement, bursts_ok, max_correctable_burst,
                       min_distance_exhaustive, monte_carlo_avg_erasures)
from .decode import decodable, decode_errors_erasures, iterative_decode
from .errors import MiscorrectionDetected, Uncorrectable


@dataclass
class Check:
    example: str
    what: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.example}: {self.what}{tail}"


def ex0():
    C = cat.get("ex0")
    arr = C.encode([cat.EX0_DATA])
    d = min_distance_exhaustive(C)
    return [
        Check("ex0", "systematic encoding matches the reference array", bool(np.array_equal(arr, cat.EX0_ARRAY))),
        Check("ex0", "exhaustive minimum distance is 14", d == 14, f"d={d}"),
        Check("ex0", "reference array has weight 14", int(np.count_nonzero(cat.EX0_ARRAY)) == 14),
    ]


def ex2(trials=2000, seed=0):
    a, b = cat.get("ex2a"), cat.get("ex2b")
    M = cat.EX2_MASK
    out = [
        Check("ex2", "pattern is uncorrectable by C(a)", not decodable(a, M, "envelope")),
        Check("ex2", "pattern is corrected by C(b) row-column decoding", decodable(b, M, "row-column")),
    ]
    ra = monte_carlo_avg_erasures(a, "envelope", trials, seed)
    rb = monte_carlo_avg_erasures(b, "row-column", trials, seed, criterion="distance")
    out.append(Check("ex2", "C(a) averages 17.8 +- 0.5 erasures", abs(ra.mean - 17.8) <= 0.5,
                     f"mean={ra.mean:.2f} over {trials}"))
    out.append(Check("ex2", "C(b) averages 22.7 +- 0.5 erasures", abs(rb.mean - 22.7) <= 0.5,
                     f"mean={rb.mean:.2f} over {trials}"))
    return out


def ex11():
    C = cat.get("ex11")
    rw = max_correctable_burst(C, Ordering.row_wise(4, 4), "iterative").length
    dg = max_correctable_burst(C, Ordering(cat.EX11_DIAGONAL, "diagonal"), "iterative").length
    return [Check("ex11", "row-wise ordering corrects bursts of 5", rw == 5, f"max={rw}"),
            Check("ex11", "diagonal ordering corrects bursts of 7", dg == 7, f"max={dg}")]


def ex12():
    C = cat.get("ex12")
    L = max_correctable_burst(C, Ordering(cat.EX12_ORDER), "transpose-only").length
    return [Check("ex12", "reference ordering corrects bursts of 4 with the transpose code", L == 4, f"max={L}")]


def ex13():
    C = cat.get("ex13")
    o = Ordering(cat.EX13_ORDER)
    L = max_correctable_burst(C, o, "iterative").length
    each = all(decodable(C, o.burst(s, 8), "iterative") for s in cat.EX13_BURST_STARTS)
    return [Check("ex13", "reference ordering corrects bursts of 8 iteratively", L == 8, f"max={L}"),
            Check("ex13", "the three listed bursts of 8 decode", each)]


def ex16():
    C = cat.get("ex16")
    try:
        decode_errors_erasures(C, cat.EX16_RECEIVED_1)
        first = False
    except MiscorrectionDetected:
        first = True
    alt = C.is_codeword(cat.EX16_ALTERNATIVE)
    try:
        zero = not decode_errors_erasures(C, cat.EX16_RECEIVED_2, distrust_rows=(1,)).any()
    except (Uncorrectable, MiscorrectionDetected):
        zero = False
    return [Check("ex16", "first received array is flagged as a miscorrection", first),
            Check("ex16", "reference alternative array is a codeword", alt),
            Check("ex16", "second received array decodes to zero when row 0 is trusted", zero)]


def ex22():
    out = []
    for name, shape, r in (("ex20", (23, 64), 23), ("ex22", (25, 64), 24)):
        C = cat.get(name)
        H = C.parity_check_matrix
        got = gfm.rank(C.gf, H)
        out.append(Check("ex22", f"{name} parity-check matrix is {shape[0]}x{shape[1]} of rank {r}",
                         H.shape == shape and got == r, f"{H.shape[0]}x{H.shape[1]}, rank {got}"))
    return out


def ex23():
    C = cat.get("ex20")
    M = cat.EX23_MASK
    rng = np.random.default_rng(23)
    c = C.random_codeword(rng)
    try:
        ok = bool(np.array_equal(iterative_decode(C, c, M), c))
    except Uncorrectable:
        ok = False
    return [Check("ex23", "rows-only decoding fails", not decodable(C, M, "rows-only")),
            Check("ex23", "transpose-only decoding fails", not decodable(C, M, "transpose-only")),
            Check("ex23", "iterative decoding recovers the codeword", ok)]


def ex26():
    out = []
    for name, ref in (("ex26a", cat.EX26_MASK_1), ("ex26b", cat.EX26_MASK_2)):
        C = cat.get(name)
        pm = balanced_parity_placement(C)
        ok = pm.is_balanced() and decodable(C.transpose, pm.mask.T, "recursive")
        out.append(Check("ex26", f"{name} placement is balanced and decodable", ok))
        out.append(Check("ex26", f"{name} placement equals the reference mask", bool(np.array_equal(pm.mask, ref))))
    return out


EXAMPLES = {"ex0": ex0, "ex2": ex2, "ex11": ex11, "ex12": ex12, "ex13": ex13, "ex16": ex16,
            "ex22": ex22, "ex23": ex23, "ex26": ex26}


def run(names=None) -> list[Check]:
    names = list(EXAMPLES) if not names or names == ["all"] else names
    unknown = [n for n in names if n not in EXAMPLES]
    if unknown:
        raise KeyError(f"unknown example(s): {', '.join(unknown)}; known: {', '.join(EXAMPLES)}")
    out = []
    for n in names:
        out += EXAMPLES[n]()
    return out
