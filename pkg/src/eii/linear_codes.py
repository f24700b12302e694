"""Component linear block codes over GF(2^b) and vertical codes over vector symbols.

Every :class:`LinearCode` is described by a parity-check matrix. From it we
derive the dimension, a systematic encoder on the first k coordinates,
rank-based erasure decoding and, where feasible, bounded-distance error and
erasure decoding (algebraic for Reed-Solomon kinds, exhaustive otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import gf as gfm
from .errors import CapabilityUnavailable, ConstructionError, NotSystematic, Uncorrectable
from .gf import GF, Lift

EXHAUSTIVE_DECODE_CAP = 1 << 22
EXHAUSTIVE_DISTANCE_CAP = 1 << 18
_CODEBOOK_CAP = 1 << 16
_ZERO = "zero"
_INF = "inf"


def _positions(erased, n):
    """Normalise a boolean mask or an iterable of indices to a sorted tuple."""
    if erased is None:
        return ()
    arr = np.asarray(erased)
    if arr.dtype == bool and arr.shape == (n,):
        return tuple(int(i) for i in np.nonzero(arr)[0])
    return tuple(sorted(set(int(i) for i in erased)))


class LinearCode:
    """An [n, k, d] linear code over ``gf`` given by a parity-check matrix.

    Parameters
    ----------
    gf : GF
    H : array_like
        r x n parity-check matrix; rows may be dependent.
    kind : str
        One of rs-shortened, rs-extended, rs-doubly-extended,
        cyclic-from-generator, parity, repetition, whole-space, zero, custom-H.
    d : int, optional
        Declared minimum distance.
    designed : bool
        True when ``d`` is only a designed distance that was not verified.
    """

    def __init__(self, gf: GF, H, kind="custom-H", d=None, designed=False, n=None,
                 cyclic=False, generator_poly=None, rs_points=None, rs_offset=0, name=None):
        H = gfm.as_matrix(H, n)
        if n is None:
            n = H.shape[1]
        if H.shape[1] != n:
            raise ConstructionError("parity-check width does not match n")
        self.gf = gf
        self.n = n
        self.parity_check = H
        self.kind = kind
        self.cyclic = cyclic
        self.generator_poly = generator_poly
        self.name = name
        self._rs_points = rs_points
        self._rs_offset = rs_offset
        self._declared_d = d
        self.designed = designed

        Hr = gfm.row_basis(gf, H) if H.shape[0] else np.zeros((0, n), dtype=np.int64)
        self.H = Hr
        self.r = Hr.shape[0]
        self.k = n - self.r
        k, r = self.k, self.r
        self.systematic = True
        self._A = np.zeros((r, k), dtype=np.int64)
        if r:
            perm = np.concatenate([Hr[:, k:], Hr[:, :k]], axis=1)
            R, piv = gfm.rref(gf, perm)
            if piv == list(range(r)):
                self._A = R[:, r:]
            else:
                self.systematic = False
        self._recovery: dict = {}
        self._rank_cache: dict = {}
        self._codebook = None
        self._d_cache = None

    def __repr__(self):
        d = self.d if self.k == 0 or self.field_size_k() <= EXHAUSTIVE_DISTANCE_CAP else self._declared_d
        label = self.name or self.kind
        return f"<{label} [{self.n},{self.k},{d}] over GF({self.gf.q})>"

    @property
    def q(self):
        return self.gf.q

    def field_size_k(self) -> int:
        return self.gf.q ** self.k

    @property
    def is_mds_kind(self) -> bool:
        return self.kind.startswith("rs-") or self.kind in ("parity", "repetition", "whole-space")

    # ---- distance ------------------------------------------------------

    @property
    def d(self):
        """Minimum distance: declared, else exhaustive when feasible, else None."""
        if self._declared_d is not None:
            return self._declared_d
        if self._d_cache is None and self.field_size_k() <= EXHAUSTIVE_DISTANCE_CAP:
            self._d_cache = self.min_distance_exhaustive()
        return self._d_cache

    def min_distance_exhaustive(self, cap=EXHAUSTIVE_DECODE_CAP) -> int | None:
        """Minimum nonzero weight over all codewords; None for the zero code."""
        if self.k == 0:
            return None
        if self.field_size_k() > cap:
            raise ValueError(f"q^k = {self.field_size_k()} exceeds the enumeration cap")
        best = self.n
        for block in self.codeword_blocks():
            w = np.count_nonzero(block, axis=1)
            w = w[w > 0]
            if w.size:
                best = min(best, int(w.min()))
        return best

    def codeword_blocks(self, chunk=1 << 15):
        """Yield every codeword, in chunks of rows."""
        total = self.field_size_k()
        q, k = self.gf.q, self.k
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            msgs = np.stack([(idx // q ** i) % q for i in range(k)], axis=1)
            yield self.encode(msgs)

    # ---- encoding and membership --------------------------------------

    def generator_matrix(self) -> np.ndarray:
        if not self.systematic:
            raise NotSystematic(f"{self!r} has no systematic encoder on its first {self.k} symbols")
        return np.concatenate([gfm.identity(self.k), self._A.T], axis=1)

    def encode(self, data) -> np.ndarray:
        """Systematic encoding on the first k coordinates; accepts (k,) or (N, k)."""
        if not self.systematic:
            raise NotSystematic(f"{self!r} has no systematic encoder on its first {self.k} symbols")
        data = np.asarray(data, dtype=np.int64)
        if data.shape[-1] != self.k:
            raise ValueError(f"expected {self.k} data symbols, got {data.shape[-1]}")
        if self.r == 0:
            return data.copy()
        lead = data.shape[:-1]
        flat = data.reshape(int(np.prod(lead, dtype=np.int64)), self.k)
        if self.k == 0:
            return np.zeros(lead + (self.n,), dtype=np.int64)
        parity = gfm.matmul(self.gf, flat, self._A.T)
        return np.concatenate([flat, parity], axis=1).reshape(lead + (self.n,))

    def syndrome(self, word) -> np.ndarray:
        word = np.asarray(word, dtype=np.int64)
        if self.r == 0:
            return np.zeros(word.shape[:-1] + (0,), dtype=np.int64)
        return gfm.matmul(self.gf, word.reshape(-1, self.n), self.H.T).reshape(word.shape[:-1] + (self.r,))

    def is_codeword(self, word) -> bool:
        return not np.any(self.syndrome(word))

    def contains(self, other: "LinearCode") -> bool:
        """True iff every codeword of ``other`` lies in this code."""
        if other.n != self.n or other.gf != self.gf:
            return False
        if other.k == 0 or self.r == 0:
            return True
        return not np.any(gfm.matmul(self.gf, self.H, _basis(other).T))

    # ---- erasures ------------------------------------------------------

    def erasures_recoverable(self, erased) -> bool:
        """Rank criterion: the erased columns of H are independent."""
        E = _positions(erased, self.n)
        e = len(E)
        if e == 0:
            return True
        if e > self.r:
            return False
        if self.is_mds_kind:
            return True
        hit = self._rank_cache.get(E)
        if hit is None:
            hit = gfm.rank(self.gf, self.H[:, list(E)]) == e
            if len(self._rank_cache) < 200_000:
                self._rank_cache[E] = hit
        return hit

    def _recovery_matrix(self, E):
        hit = self._recovery.get(E)
        if hit is not None:
            return hit
        e = len(E)
        K = [j for j in range(self.n) if j not in set(E)]
        if e > self.r:
            res = None
        else:
            M = np.concatenate([self.H[:, list(E)], self.H[:, K]], axis=1)
            R, piv = gfm.rref(self.gf, M)
            res = (K, R[:e, e:]) if piv[:e] == list(range(e)) else None
        if len(self._recovery) < 50_000:
            self._recovery[E] = res
        return res

    def decode_erasures(self, word, erased) -> np.ndarray:
        """Fill the erased coordinates; accepts (n,) or (N, n) with one shared pattern."""
        word = np.array(word, dtype=np.int64)
        E = _positions(erased, self.n)
        if not E:
            return word
        rec = self._recovery_matrix(E)
        if rec is None:
            raise Uncorrectable(f"erasures {E} are not recoverable in {self!r}")
        K, M = rec
        flat = word.reshape(-1, self.n)
        flat[:, list(E)] = gfm.matmul(self.gf, flat[:, K], M.T)
        return flat.reshape(word.shape)

    # ---- errors and erasures -------------------------------------------

    def decode_errors_erasures(self, word, erased=None) -> tuple[np.ndarray, int]:
        """Bounded-distance decoding within 2x + y <= d - 1.

        Returns the codeword and the number of corrected errors (erasures not
        counted). Raises :class:`Uncorrectable` when no codeword lies within
        the budget.
        """
        word = np.asarray(word, dtype=np.int64).copy()
        E = _positions(erased, self.n)
        word[list(E)] = 0
        d = self.d
        if self.k == 0:
            zero = np.zeros(self.n, dtype=np.int64)
            x = int(np.count_nonzero(np.delete(word, E)))
            return zero, x
        if d is None:
            raise CapabilityUnavailable(f"{self!r} has no known minimum distance")
        y = len(E)
        if y > d - 1:
            raise Uncorrectable("too many erasures for bounded-distance decoding")
        if y == 0 and self.is_codeword(word):
            return word, 0
        if self.kind.startswith("rs-"):
            return self._decode_rs(word, E)
        if self.field_size_k() <= EXHAUSTIVE_DECODE_CAP:
            return self._decode_exhaustive(word, E)
        raise CapabilityUnavailable(f"no error decoder for {self!r}")

    def _accept(self, cand, word, E):
        if cand is None or not self.is_codeword(cand):
            return None
        mask = np.ones(self.n, dtype=bool)
        mask[list(E)] = False
        x = int(np.count_nonzero(cand[mask] != word[mask]))
        if 2 * x + len(E) <= self.d - 1:
            return x
        return None

    def _decode_exhaustive(self, word, E):
        keep = np.ones(self.n, dtype=bool)
        keep[list(E)] = False
        budget = self.d - 1 - len(E)
        best = None
        if self.field_size_k() <= _CODEBOOK_CAP:
            if self._codebook is None:
                self._codebook = np.concatenate(list(self.codeword_blocks()))
            blocks = [self._codebook]
        else:
            blocks = self.codeword_blocks()
        for block in blocks:
            dist = np.count_nonzero(block[:, keep] != word[keep], axis=1)
            i = int(np.argmin(dist))
            if 2 * int(dist[i]) <= budget and (best is None or dist[i] < best[1]):
                best = (block[i].copy(), int(dist[i]))
        if best is None:
            raise Uncorrectable("no codeword within the decoding radius")
        return best

    def _decode_rs(self, word, E):
        """Berlekamp-Massey with erasures; special columns tried erased and trusted."""
        gf = self.gf
        pts = self._rs_points
        R = self.r
        off = self._rs_offset
        S_full = gfm.matmul(gf, self.parity_check, word)
        specials = [j for j, p in enumerate(pts) if isinstance(p, str)]
        free_specials = [j for j in specials if j not in E]
        Eset = set(E)
        results = []
        for take in range(len(free_specials) + 1):
            for extra in combinations(free_specials, take):
                erased_all = Eset | set(extra)
                rows = list(range(self.parity_check.shape[0]))
                for j in specials:
                    if j in erased_all:
                        rows.remove(0 if pts[j] == _ZERO else self.parity_check.shape[0] - 1)
                regular = [j for j in range(self.n) if j not in specials]
                # a trusted special symbol is assumed correct, so it adds nothing
                S = [int(v) for v in S_full[rows]]
                locs = {j: pts[j] for j in regular}
                shift = off + (rows[0] if rows else 0)
                errs = _grs_decode(gf, S, locs, [j for j in erased_all if j in locs], shift)
                if errs is None:
                    continue
                cand = word.copy()
                for j, v in errs.items():
                    cand[j] ^= v
                sp = [j for j in specials if j in erased_all]
                if sp:
                    cand[sp] = 0
                    try:
                        cand = self.decode_erasures(cand, sp)
                    except Uncorrectable:
                        continue
                x = self._accept(cand, word, E)
                if x is not None:
                    results.append((cand, x))
        if not results:
            raise Uncorrectable("no codeword within the decoding radius")
        return min(results, key=lambda t: t[1])


def _grs_decode(gf: GF, S, locs: dict, erased, shift):
    """Error values for syndromes S_l = sum_j e_j X_j^(shift + l).

    ``locs`` maps positions to nonzero locators. Returns {position: error}
    or None on decoding failure.
    """
    Rp = len(S)
    rho = len(erased)
    if rho > Rp:
        return None
    if not any(S):
        return {}
    gamma = [1]
    for j in erased:
        gamma = gfm.poly_mul(gf, gamma, [1, locs[j]])
    xi = gfm.poly_mul(gf, gamma, S)[:Rp]
    lam, L = _berlekamp_massey(gf, xi[rho:Rp])
    if 2 * L > Rp - rho:
        return None
    psi = gfm.poly_mul(gf, lam, gamma)
    while len(psi) > 1 and psi[-1] == 0:
        psi.pop()
    deg = len(psi) - 1
    roots = [j for j, X in locs.items() if gfm.poly_eval(gf, psi, gf.inv(X)) == 0]
    if len(roots) != deg or not set(erased) <= set(roots):
        return None
    omega = gfm.poly_mul(gf, S, psi)[:Rp]
    dpsi = [psi[i] if i % 2 == 1 else 0 for i in range(1, len(psi))]
    out = {}
    for j in roots:
        X = locs[j]
        Xinv = gf.inv(X)
        den = gfm.poly_eval(gf, dpsi, Xinv)
        if den == 0:
            return None
        big_e = gf.mul(X, gf.div(gfm.poly_eval(gf, omega, Xinv), den))
        out[j] = gf.div(big_e, gf.pow(X, shift))
    return out


def _berlekamp_massey(gf: GF, s):
    C = [1]
    B = [1]
    L = 0
    m = 1
    b = 1
    for i in range(len(s)):
        dlt = s[i]
        for j in range(1, L + 1):
            if j < len(C):
                dlt ^= gf.mul(C[j], s[i - j])
        if dlt == 0:
            m += 1
            continue
        coef = gf.div(dlt, b)
        T = C[:]
        need = len(B) + m
        if len(C) < need:
            C = C + [0] * (need - len(C))
        for j, bj in enumerate(B):
            C[j + m] ^= gf.mul(coef, bj)
        if 2 * L <= i:
            L = i + 1 - L
            B = T
            b = dlt
            m = 1
        else:
            m += 1
    return C, L


def _basis(code: LinearCode) -> np.ndarray:
    if code.systematic:
        return code.generator_matrix()
    return gfm.nullspace(code.gf, code.H, code.n)


# ---- constructors ----------------------------------------------------------

def make_from_H(gf: GF, H, n=None, d=None, name=None, kind="custom-H") -> LinearCode:
    return LinearCode(gf, H, kind=kind, d=d, n=n, name=name)


def make_from_generator(gf: GF, G, d=None, name=None) -> LinearCode:
    G = gfm.as_matrix(G)
    return LinearCode(gf, gfm.nullspace(gf, G), d=d, n=G.shape[1], name=name)


def make_parity(gf: GF, n: int) -> LinearCode:
    return LinearCode(gf, np.ones((1, n), dtype=np.int64), kind="parity", d=2 if n > 1 else None,
                      cyclic=True)


def make_repetition(gf: GF, n: int) -> LinearCode:
    H = np.zeros((n - 1, n), dtype=np.int64)
    for i in range(n - 1):
        H[i, i] = 1
        H[i, n - 1] = 1
    return LinearCode(gf, H, kind="repetition", d=n, n=n, cyclic=True)


def make_whole(gf: GF, n: int) -> LinearCode:
    return LinearCode(gf, np.zeros((0, n), dtype=np.int64), kind="whole-space", d=1, n=n, cyclic=True)


def make_zero(gf: GF, n: int) -> LinearCode:
    return LinearCode(gf, gfm.identity(n), kind="zero", n=n)


def rs_points(gf: GF, n: int, variant="shortened", root_offset=0) -> list:
    """Column locators for the Reed-Solomon variants."""
    q = gf.q
    if variant == "shortened":
        if n > q - 1:
            raise ConstructionError(f"shortened RS length {n} exceeds {q - 1}")
        return [gf.exp(j) for j in range(n)]
    if variant == "extended":
        if n > q:
            raise ConstructionError(f"extended RS length {n} exceeds {q}")
        return [gf.exp(j) for j in range(n - 1)] + [_ZERO if root_offset == 0 else _INF]
    if variant == "doubly-extended":
        if n > q + 1:
            raise ConstructionError(f"doubly extended RS length {n} exceeds {q + 1}")
        if root_offset != 0:
            raise ConstructionError("doubly extended RS requires root offset 0")
        return [gf.exp(j) for j in range(n - 2)] + [_ZERO, _INF]
    raise ConstructionError(f"unknown RS variant {variant!r}")


def make_rs(gf: GF, n: int, k: int, variant="shortened", root_offset=0, name=None) -> LinearCode:
    """[n, k, n-k+1] Reed-Solomon code with rows x^(root_offset + r) of H."""
    if not 0 <= k <= n:
        raise ConstructionError("need 0 <= k <= n")
    pts = rs_points(gf, n, variant, root_offset)
    R = n - k
    H = np.zeros((R, n), dtype=np.int64)
    for j, p in enumerate(pts):
        for r in range(R):
            if p == _ZERO:
                H[r, j] = 1 if root_offset + r == 0 else 0
            elif p == _INF:
                H[r, j] = 1 if r == R - 1 else 0
            else:
                H[r, j] = gf.pow(p, root_offset + r)
    return LinearCode(gf, H, kind=f"rs-{variant}", d=R + 1, n=n, rs_points=pts,
                      rs_offset=root_offset, cyclic=(variant == "shortened" and n == gf.q - 1),
                      name=name)


def make_cyclic(gf: GF, n: int, generator, d=None, name=None) -> LinearCode:
    """Cyclic code with generator polynomial ``generator`` (low degree first)."""
    g = [int(c) for c in generator]
    while g and g[-1] == 0:
        g.pop()
    if not g:
        raise ConstructionError("zero generator polynomial")
    xn1 = [1] + [0] * (n - 1) + [1]
    _, rem = gfm.poly_divmod(gf, xn1, g)
    if rem:
        raise ConstructionError("generator does not divide x^n - 1")
    k = n - (len(g) - 1)
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i:i + len(g)] = g
    H = gfm.nullspace(gf, G)
    code = LinearCode(gf, H, kind="cyclic-from-generator", n=n, cyclic=True, generator_poly=g,
                      d=None, name=name)
    if d is not None:
        if code.field_size_k() <= EXHAUSTIVE_DISTANCE_CAP:
            code._declared_d = None
        else:
            code._declared_d = d
            code.designed = True
    return code


def make_extended(code: LinearCode, name=None) -> LinearCode:
    """Append an overall parity symbol (even-weight extension)."""
    n = code.n
    H = np.zeros((code.r + 1, n + 1), dtype=np.int64)
    H[:code.r, :n] = code.H
    H[code.r] = 1
    d = code._declared_d
    ext = LinearCode(code.gf, H, kind="custom-H", n=n + 1, name=name)
    if d is not None and ext.field_size_k() > EXHAUSTIVE_DISTANCE_CAP:
        ext._declared_d = d + (d % 2) if code.gf.q == 2 else d
        ext.designed = True
    return ext


def minimal_polynomial(base: GF, ext: GF, beta: int) -> list[int]:
    """Minimal polynomial of ``beta`` over the subfield ``base`` (low degree first)."""
    lift = Lift(base, ext)
    conj = [beta]
    x = ext.pow(beta, base.q)
    while x != beta:
        conj.append(x)
        x = ext.pow(x, base.q)
    poly = [1]
    for c in conj:
        poly = gfm.poly_mul(ext, poly, [c, 1])
    inv_phi = {int(v): i for i, v in enumerate(lift.phi)}
    try:
        return [inv_phi[c] for c in poly]
    except KeyError:
        raise ConstructionError("minimal polynomial has coefficients outside the subfield")


def bch_generator(base: GF, ext: GF, n: int, designed_distance: int, first_root=1) -> list[int]:
    """Generator of the narrow-sense BCH code of length n over ``base``."""
    if ext.order % n:
        raise ConstructionError(f"n={n} does not divide {ext.order}")
    beta = ext.exp(ext.order // n)
    g = [1]
    seen = set()
    for i in range(first_root, first_root + designed_distance - 1):
        root = ext.pow(beta, i)
        if root in seen:
            continue
        mp_roots = {root}
        x = ext.pow(root, base.q)
        while x != root:
            mp_roots.add(x)
            x = ext.pow(x, base.q)
        seen |= mp_roots
        g = gfm.poly_mul(base, g, minimal_polynomial(base, ext, root))
    return g


def make_bch(base: GF, ext: GF, n: int, designed_distance: int, first_root=1, name=None) -> LinearCode:
    g = bch_generator(base, ext, n, designed_distance, first_root)
    return make_cyclic(base, n, g, d=designed_distance, name=name)


# ---- nesting ---------------------------------------------------------------

@dataclass
class Violation:
    index: int
    witness: np.ndarray | None
    reason: str

    def __bool__(self):
        return False


class NestedFamily:
    """A chain C_{t-1} subset ... subset C_0 of codes of one length over one field."""

    def __init__(self, codes):
        self.codes = list(codes)
        res = verify_nested(self)
        if not res:
            raise ConstructionError(f"nesting fails at index {res.index}: {res.reason}")

    def __len__(self):
        return len(self.codes)

    def __getitem__(self, i):
        return self.codes[i]

    def __iter__(self):
        return iter(self.codes)


def verify_nested(family) -> bool | Violation:
    codes = list(family.codes if isinstance(family, NestedFamily) else family)
    for i in range(len(codes) - 1):
        big, small = codes[i], codes[i + 1]
        if big.n != small.n or big.gf != small.gf:
            return Violation(i, None, "length or field differs")
        if small.k >= big.k:
            return Violation(i, None, "dimensions not strictly decreasing")
        if small.k == 0:
            continue
        B = _basis(small)
        if big.r:
            bad = np.nonzero(np.any(gfm.matmul(big.gf, B, big.H.T), axis=1))[0]
            if bad.size:
                return Violation(i, B[bad[0]], "generator outside the larger code")
    return True


# ---- vertical codes ----------------------------------------------------------

class VerticalCode:
    """An [m, k, d] code whose symbols are length-w vectors over a base field.

    The symbol coordinates are split into consecutive chunks. A chunk of
    width e carries a scalar code over GF(q^e), with its coordinates mapped to
    the larger field by :class:`~eii.gf.Lift`. All chunks share one length and
    dimension, and the resulting code is linear over the base field.

    Use :meth:`interleaved` (every chunk of width 1 with the same scalar code)
    or :meth:`lifted` (a single chunk of width w).
    """

    def __init__(self, base: GF, chunks):
        chunks = [(int(e), c) for e, c in chunks]
        if not chunks:
            raise ConstructionError("a vertical code needs at least one symbol coordinate")
        m, k = chunks[0][1].n, chunks[0][1].k
        for e, c in chunks:
            if c.n != m or c.k != k:
                raise ConstructionError("chunk codes must share length and dimension")
            if c.gf.b != base.b * e:
                raise ConstructionError(f"chunk of width {e} needs GF(2^{base.b * e}), got {c.gf}")
        self.base = base
        self.chunks = chunks
        self.m = m
        self.k = k
        self.w = sum(e for e, _ in chunks)
        self._lifts = [Lift(base, c.gf) for _, c in chunks]
        # groups of adjacent width-1 chunks that share a scalar code run as one batch
        groups = []
        col = 0
        for idx, (e, c) in enumerate(chunks):
            if e == 1 and groups and groups[-1][0] == 1 and groups[-1][1] is c:
                groups[-1][3].append(col)
            else:
                groups.append([e, c, idx, [col]])
            col += e
        self._groups = groups

    @classmethod
    def interleaved(cls, code: LinearCode, w: int) -> "VerticalCode":
        return cls(code.gf, [(1, code)] * w)

    @classmethod
    def lifted(cls, code: LinearCode, base: GF) -> "VerticalCode":
        return cls(base, [(code.gf.b // base.b, code)])

    @property
    def flavor(self) -> str:
        codes = {id(c) for _, c in self.chunks}
        if all(e == 1 for e, _ in self.chunks) and len(codes) == 1:
            return "interleaved"
        if len(self.chunks) == 1:
            return "lifted"
        return "grouped"

    @property
    def scalar(self) -> LinearCode | None:
        """The scalar code of an interleaved vertical code."""
        return self.chunks[0][1] if self.flavor == "interleaved" else None

    @property
    def d(self):
        ds = [c.d for _, c in self.chunks]
        return None if any(v is None for v in ds) else min(ds)

    def __repr__(self):
        return f"<vertical {self.flavor} [{self.m},{self.k},{self.d}] over (GF({self.base.q}))^{self.w}>"

    def _split(self, sym):
        """Return per-group arrays (rows x columns) over each chunk field."""
        out = []
        for e, c, idx, cols in self._groups:
            if e == 1:
                out.append(sym[..., cols])
            else:
                c0 = cols[0]
                out.append(self._lifts[idx].to_big(sym[..., c0:c0 + e])[..., None])
        return out

    def _join(self, parts, rows):
        sym = np.zeros((rows, self.w), dtype=np.int64)
        for (e, c, idx, cols), part in zip(self._groups, parts):
            if e == 1:
                sym[:, cols] = part
            else:
                c0 = cols[0]
                sym[:, c0:c0 + e] = self._lifts[idx].to_small(part[:, 0])
        return sym

    def encode(self, data) -> np.ndarray:
        """Encode a k x w block of symbols to m x w, systematic on the first k rows."""
        data = np.asarray(data, dtype=np.int64)
        if data.shape != (self.k, self.w):
            raise ValueError(f"vertical data must be {self.k}x{self.w}, got {data.shape}")
        parts = [self._groups[i][1].encode(p.T).T for i, p in enumerate(self._split(data))]
        return self._join(parts, self.m)

    def is_codeword(self, sym) -> bool:
        sym = np.asarray(sym, dtype=np.int64)
        return all(g[1].is_codeword(p.T) for g, p in zip(self._groups, self._split(sym)))

    def erasures_recoverable(self, rows) -> bool:
        rows = _positions(rows, self.m)
        return all(g[1].erasures_recoverable(rows) for g in self._groups)

    def decode_erasures(self, sym, rows) -> np.ndarray:
        sym = np.asarray(sym, dtype=np.int64)
        rows = _positions(rows, self.m)
        if not rows:
            return sym.copy()
        parts = [g[1].decode_erasures(p.T, rows).T for g, p in zip(self._groups, self._split(sym))]
        return self._join(parts, self.m)


# ---- shared coefficient matrices ------------------------------------------

class HCoefficients:
    """Square coefficient matrix shared by the horizontal and vertical codes.

    ``window(s, w, v)`` is the s x w block starting at row v and column 0.
    """

    def __init__(self, gf: GF, h):
        h = gfm.as_matrix(h)
        if h.shape[0] != h.shape[1]:
            raise ConstructionError("coefficient matrix must be square")
        self.gf = gf
        self.h = h
        self.size = h.shape[0]
        self._codes: dict = {}

    def window(self, s: int, w: int, v: int = 0) -> np.ndarray:
        if v + s > self.size or w > self.size:
            raise ConstructionError(f"window ({s},{w},{v}) exceeds {self.size}x{self.size}")
        return self.h[v:v + s, :w]

    def code(self, s: int, w: int, check_rank=True) -> LinearCode:
        """The code with parity-check matrix H_{s,w,0}."""
        key = (s, w)
        if key not in self._codes:
            H = self.window(s, w)
            if check_rank and gfm.rank(self.gf, H) != s:
                raise ConstructionError(f"window H_{{{s},{w},0}} does not have rank {s}")
            if s == 0:
                code = make_whole(self.gf, w)
            elif s == w:
                code = make_zero(self.gf, w)
            else:
                code = make_from_H(self.gf, H, n=w)
                if self._mds_rows(s, w):
                    code._declared_d = s + 1
            self._codes[key] = code
        return self._codes[key]

    def _mds_rows(self, s, w):
        return False


class VandermondeCoefficients(HCoefficients):
    """h_{r,j} = x_j^r for distinct points x_j; every H_{s,w,0} is an MDS check matrix."""

    def __init__(self, gf: GF, points):
        if len(set(points)) != len(points):
            raise ConstructionError("points must be distinct")
        size = len(points)
        h = np.array([[gf.pow(x, r) for x in points] for r in range(size)], dtype=np.int64)
        super().__init__(gf, h)
        self.points = list(points)

    def _mds_rows(self, s, w):
        return True


def reed_muller_coefficients(nvars: int) -> HCoefficients:
    """Evaluations of the monomials in ``nvars`` binary variables, by degree.

    Row blocks of degree <= r span RM(r, nvars), so H_{s,2^nvars,0} windows
    at the block boundaries are parity checks of Reed-Muller codes. Points
    are listed by decreasing weight: the last columns are then the points of
    low weight, which form an information set of every such window.
    """
    gf = gfm.field(1)
    N = 1 << nvars
    order = sorted(range(N), key=lambda p: (-bin(p).count("1"), p))
    pts = [[(p >> i) & 1 for i in range(nvars)] for p in order]
    rows = []
    for deg in range(nvars + 1):
        for mono in combinations(range(nvars), deg):
            rows.append([int(all(pt[i] for i in mono)) for pt in pts])
    return HCoefficients(gf, np.array(rows, dtype=np.int64))


def complete_coefficients(gf: GF, top_rows, size: int) -> HCoefficients:
    """Extend independent ``top_rows`` with unit rows to an invertible matrix."""
    rows = [list(r) for r in gfm.as_matrix(top_rows)]
    if gfm.rank(gf, rows) != len(rows):
        raise ConstructionError("top rows are dependent")
    for j in range(size - 1, -1, -1):
        if len(rows) == size:
            break
        cand = rows + [[1 if c == j else 0 for c in range(size)]]
        if gfm.rank(gf, cand) == len(cand):
            rows = cand
    return HCoefficients(gf, np.array(rows, dtype=np.int64))
