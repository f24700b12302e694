"""Registry of the worked example codes and their reference fixtures.

``get(name)`` builds (and caches) a code; the module-level constants hold the
arrays, masks and orderings the examples display. Field elements are stored
as integers in the polynomial basis.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from . import gf as gfm
from .eii import EiiCode, UProfile, build_eii, build_eii_pc
from .linear_codes import (HCoefficients, VandermondeCoefficients, VerticalCode, complete_coefficients,
                           make_bch, make_cyclic, make_extended, make_parity, make_repetition, make_rs,
                           make_whole, reed_muller_coefficients)

GF2 = gfm.field(1)
GF4 = gfm.field(2)
GF8 = gfm.field(3)
GF16 = gfm.field(4)

# 8 x 8 binary coefficient matrix shared by the 3-level II-PC example
EQ8 = np.array([
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 0, 1, 1, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 0, 0],
    [0, 1, 1, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1],
], dtype=np.int64)

EX0_SYMBOLS = (GF16.exp(3), GF16.exp(7))
# the two GF(16) symbols as bit rows (a_0, a_1, a_2, a_3): the 2 x 4 data block
EX0_DATA = np.array([[(v >> i) & 1 for i in range(4)] for v in EX0_SYMBOLS], dtype=np.int64)
EX0_ARRAY = np.array([
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0],
], dtype=np.int64)


def _mask(rows, shape):
    M = np.zeros(shape, dtype=bool)
    for i, cols in enumerate(rows):
        M[i, list(cols)] = True
    return M


EX2_MASK = _mask([(1, 2, 5, 6), (0, 2, 5, 6), (), (), (0, 1, 2, 3, 4, 5), (), (2, 3, 4, 5)], (7, 7))

EX23_MASK = _mask([(1,), (0, 2, 3, 7), (5,), (2, 3, 4, 5), (3, 5, 6), (2, 3, 5, 6), (3, 6), (7,)], (8, 8))

# ex10: X marks errors, E marks erasures
EX10_ERRORS = _mask([(4, 7, 10, 13), (0, 4, 5, 8, 11), (1, 6, 11, 14), (7,)], (4, 15))
EX10_ERASURES = _mask([(), (13,), (4, 9), (2, 11)], (4, 15))

_a8 = GF8.exp
EX16_RECEIVED_1 = np.array([[0, 0, 0, 0, _a8(6), 0, 0],
                            [0, 0, 0, 0, 0, _a8(2), _a8(6)]], dtype=np.int64)
EX16_NAIVE = np.array([[0] * 7, [0, 0, 0, 0, 1, _a8(2), _a8(6)]], dtype=np.int64)
EX16_ALTERNATIVE = np.array([[_a8(4), 0, 0, _a8(3), _a8(6), 0, 0],
                             [0, 0, 0, 0, 1, _a8(2), _a8(6)]], dtype=np.int64)
EX16_RECEIVED_2 = np.array([[0, 0, 0, 0, _a8(3), 0, 0],
                            [0, 0, 0, 0, 0, _a8(2), _a8(6)]], dtype=np.int64)

EX26_MASK_1 = _mask([(0, 1, 3, 5)] * 4 + [(0, 2, 4, 6)] * 4, (8, 8))
EX26_MASK_2 = _mask([(0, 1, 2, 3)] * 4 + [(0, 1, 2, 4), (0, 1, 3, 5), (0, 2, 3, 6), (1, 2, 3, 7)], (8, 8))

# orderings: entry (i, j) is the transmission index of that symbol
EX11_DIAGONAL = np.array([[0, 4, 8, 12], [13, 1, 5, 9], [10, 14, 2, 6], [7, 11, 15, 3]])
EX12_ORDER = np.array([[0, 1, 3, 7], [2, 4, 5, 6]])
EX13_ORDER = np.array([[0, 1, 3, 10], [9, 2, 7, 11], [14, 13, 5, 4], [8, 6, 15, 12]])
EX13_BURST_STARTS = (0, 8, 12)


def _hamming15():
    return make_cyclic(GF2, 15, [1, 1, 0, 0, 1], name="Hamming[15,11,3]")


def _hamming7():
    return make_cyclic(GF2, 7, [1, 1, 0, 1], name="Hamming[7,4,3]")


def _bch15(delta):
    return make_bch(GF2, GF16, 15, delta)


def _lifted_rs(base, big_b, n, k, variant="shortened"):
    return VerticalCode.lifted(make_rs(gfm.field(big_b), n, k, variant), base)


def _interleaved(code, w):
    return VerticalCode.interleaved(code, w)


# ---- builders ----------------------------------------------------------------

def ex0() -> EiiCode:
    p = UProfile((4, 4, 8, 8, 8), 15, 1)
    return build_eii(p, [_hamming15()], [_lifted_rs(GF2, 4, 5, 2)])


def ex1() -> EiiCode:
    p = UProfile((4, 4, 8, 8, 8), 8, 1)
    ham = make_extended(_hamming7(), name="ext-Hamming[8,4,4]")
    return build_eii(p, [ham], [_lifted_rs(GF2, 4, 5, 2)])


def ex2a() -> EiiCode:
    p = UProfile((3, 3, 3, 3, 7, 7, 7), 7)
    return build_eii(p, [_hamming7()], [_lifted_rs(GF2, 4, 7, 4)])


def ex2b() -> EiiCode:
    h = complete_coefficients(GF2, _hamming7().H, 7)
    return build_eii_pc(UProfile((3, 3, 3, 3, 7, 7, 7), 7), h)


def ex2bis_profile() -> UProfile:
    # five rows at 1, six at 5, five at 16 gives a [256,141] code
    return UProfile((1,) * 5 + (5,) * 6 + (16,) * 5, 16)


def ex2bis_a() -> EiiCode:
    ham = make_extended(_hamming15(), name="ext-Hamming[16,11,4]")
    v0 = _lifted_rs(GF2, 11, 16, 11)
    v1 = _lifted_rs(GF2, 4, 16, 5, "extended")
    return build_eii(ex2bis_profile(), [make_parity(GF2, 16), ham], [v0, v1])


def ex2bis_b() -> EiiCode:
    return build_eii_pc(ex2bis_profile(), reed_muller_coefficients(4))


def ex3() -> EiiCode:
    p = UProfile((4, 4, 8, 15), 15)
    return build_eii(p, [_hamming15(), _bch15(5)],
                     [_interleaved(make_parity(GF2, 4), 7), _lifted_rs(GF2, 4, 4, 2)])


def ex4() -> EiiCode:
    p = UProfile((4, 4, 8, 10, 15), 15)
    return build_eii(p, [_hamming15(), _bch15(5), _bch15(7)],
                     [_interleaved(make_parity(GF2, 5), 5),
                      _lifted_rs(GF2, 2, 5, 3, "doubly-extended"),
                      _lifted_rs(GF2, 4, 5, 2)])


def ex10() -> EiiCode:
    p = UProfile((4, 8, 10, 15), 15)
    hs = [make_rs(GF16, 15, k) for k in (11, 7, 5)]
    vs = [_interleaved(make_parity(GF16, 4), 5), _interleaved(make_rs(GF16, 4, 2), 2),
          _interleaved(make_repetition(GF16, 4), 4)]
    return build_eii(p, hs, vs)


def ex11() -> EiiCode:
    h = complete_coefficients(GF2, np.ones((1, 4), dtype=np.int64), 4)
    return build_eii_pc(UProfile((1, 1, 1, 4), 4), h)


def ex12() -> EiiCode:
    h = VandermondeCoefficients(GF8, [GF8.exp(i) for i in range(4)])
    return build_eii_pc(UProfile((1, 3), 4, 2), h)


def ex13() -> EiiCode:
    h = VandermondeCoefficients(GF4, [1, GF4.exp(1), GF4.exp(2), 0])
    return build_eii_pc(UProfile((1, 1, 2, 4), 4), h)


def ex16() -> EiiCode:
    p = UProfile((2, 4), 7, 2)
    hs = [make_rs(GF8, 7, 5), make_rs(GF8, 7, 3)]
    vs = [_interleaved(make_whole(GF8, 2), 3), _interleaved(make_repetition(GF8, 2), 2)]
    return build_eii(p, hs, vs)


def ex19() -> EiiCode:
    p = UProfile((1, 1, 4, 4, 8), 8)
    ham = make_extended(_hamming7())
    return build_eii(p, [make_parity(GF2, 8), ham],
                     [_interleaved(make_parity(GF2, 5), 4), _lifted_rs(GF2, 3, 5, 2)])


def ex19bis() -> EiiCode:
    p = UProfile((9, 9, 11, 16, 16), 16)
    return build_eii(p, [make_extended(_bch15(5)), make_extended(_bch15(7))],
                     [_lifted_rs(GF2, 5, 5, 3), _lifted_rs(GF2, 2, 5, 2, "doubly-extended")])


def ex18(m: int = 5) -> EiiCode:
    p = UProfile((9,) * (m - 1) + (16,), 16)
    return build_eii(p, [make_extended(_bch15(5))], [_interleaved(make_parity(GF2, m), 7)])


def ex31(m: int = 6) -> EiiCode:
    p = UProfile((10,) * (m - 2) + (12, 15), 15)
    # roots start at beta^0: the narrow-sense choice gives dimension 4, not 5
    c0 = make_bch(GF4, GF16, 15, 8, first_root=0)
    c1 = make_bch(GF4, GF16, 15, 11, first_root=0)
    return build_eii(p, [c0, c1], [_interleaved(make_parity(GF4, m), 3),
                                   _lifted_rs(GF4, 4, m, m - 2, "doubly-extended")])


def eq8() -> HCoefficients:
    return HCoefficients(GF2, EQ8)


def ex20() -> EiiCode:
    return build_eii_pc(UProfile((1, 1, 1, 1, 4, 4, 4, 7), 8), eq8())


def ex22() -> EiiCode:
    return build_eii_pc(UProfile((1, 1, 1, 1, 4, 4, 4, 8), 8), eq8())


def _cyclic_burst_free(H, L):
    n = H.shape[1]
    for s in range(n):
        cols = [(s + i) % n for i in range(L)]
        if gfm.rank(GF2, H[:, cols]) < L:
            return False
    return True


@lru_cache(maxsize=None)
def ex26_permutation() -> tuple:
    """First column permutation (lexicographic) of the 8 x 8 matrix whose
    [8,4,4] window corrects every cyclic burst of 4 erasures."""
    for perm in permutations(range(8)):
        if _cyclic_burst_free(EQ8[:4, list(perm)], 4):
            return perm
    raise RuntimeError("no burst-correcting column order")


def ex26_coefficients() -> HCoefficients:
    return HCoefficients(GF2, EQ8[:, list(ex26_permutation())])


def ex26a() -> EiiCode:
    return build_eii_pc(UProfile((1, 1, 1, 1, 7, 7, 7, 7), 8), ex26_coefficients())


def ex26b() -> EiiCode:
    return build_eii_pc(UProfile((0, 4, 4, 4, 4, 4, 4, 8), 8), ex26_coefficients())


def _ext_rs16(k):
    return make_rs(GF16, 16, k, "extended")


def _rs256(n, k):
    return make_rs(gfm.field(8), n, k, "extended")


def ex25bis_1() -> EiiCode:
    p = UProfile((2,) * 254 + (4, 8), 16)
    hs = [_ext_rs16(k) for k in (14, 12, 8)]
    vs = [_interleaved(make_whole(GF16, 256), 8),
          _interleaved(make_parity(GF16, 256), 4),
          VerticalCode.lifted(_rs256(256, 254), GF16)]
    return build_eii(p, hs, vs)


def ex25bis_2() -> EiiCode:
    p = UProfile((1,) * 216 + (3,) * 20 + (5,) * 7 + (16,) * 13, 16)
    hs = [_ext_rs16(k) for k in (15, 13, 11)]
    # width 11 over GF(16) exceeds GF(2^16); split as 4 + 4 + 3 symbol coordinates
    big = make_rs(gfm.field(16), 256, 243)
    v0 = VerticalCode(GF16, [(4, big), (4, big), (3, make_rs(gfm.field(12), 256, 243))])
    vs = [v0, VerticalCode.lifted(_rs256(256, 236), GF16), VerticalCode.lifted(_rs256(256, 216), GF16)]
    return build_eii(p, hs, vs)


def ex25bis_3() -> EiiCode:
    p = UProfile((1,) * 143 + (3,) * 99 + (5,) * 9 + (7,) * 5, 16)
    hs = [_ext_rs16(k) for k in (15, 13, 11, 9)]
    vs = [_interleaved(make_whole(GF16, 256), 9)] + [
        VerticalCode.lifted(_rs256(256, k), GF16) for k in (251, 242, 143)]
    return build_eii(p, hs, vs)


BUILDERS = {
    "ex0": ex0, "ex1": ex1, "ex2a": ex2a, "ex2b": ex2b, "ex2bis-a": ex2bis_a, "ex2bis-b": ex2bis_b,
    "ex3": ex3, "ex4": ex4, "ex10": ex10, "ex11": ex11, "ex12": ex12, "ex13": ex13, "ex16": ex16,
    "ex18": ex18, "ex19": ex19, "ex19bis": ex19bis, "ex20": ex20, "ex22": ex22, "ex31": ex31,
    "ex26a": ex26a, "ex26b": ex26b,
    "ex25bis-1": ex25bis_1, "ex25bis-2": ex25bis_2, "ex25bis-3": ex25bis_3,
}


@lru_cache(maxsize=None)
def get(name: str) -> EiiCode:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(BUILDERS))}") from None
