"""Bounds, distance oracles, erasure simulations, burst orderings and parity placement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import gf as gfm
from .decode import decodable, recursive_decodable
from .eii import EiiCode
from .errors import ConstructionError
from .linear_codes import EXHAUSTIVE_DECODE_CAP, LinearCode


# ---- bounds ----------------------------------------------------------------

@dataclass(frozen=True)
class LrcParams:
    """An (m, n, k; h, d_0, d, q) locally recoverable code: h local parities per
    row of length n and g global parities, so k = m(n - h) - g."""

    m: int
    n: int
    h: int
    g: int
    q: int = 2
    d0: int | None = None

    def __post_init__(self):
        if not 1 <= self.h < self.n:
            raise ValueError("need 1 <= h < n")
        if not 0 <= self.g < self.m * (self.n - self.h):
            raise ValueError("need 0 <= g < m(n - h)")

    @property
    def k(self) -> int:
        return self.m * (self.n - self.h) - self.g

    @classmethod
    def from_code(cls, code: EiiCode) -> "LrcParams":
        """Read a code with u_t = n as an LRC: each row has u_0 local parities."""
        h = code.u(0)
        g = code.m * (code.n - h) - code.k
        return cls(code.m, code.n, h, g, code.gf.q, code.horizontals[0].d)


def singleton_lrc_bound(p: LrcParams) -> int:
    return math.ceil((p.g + 1) / (p.n - p.h)) * p.h + p.g + 1


def griesmer_length(q: int, K: int, d: int) -> int:
    """Smallest length allowed by the Griesmer bound for a [N, K, d] code."""
    return sum(-(-d // q ** i) for i in range(K))


def griesmer_dopt_upper(q: int, N: int, K: int) -> int:
    """Largest d with griesmer_length(q, K, d) <= N (an upper bound on d_opt)."""
    if K < 1:
        raise ValueError("K must be positive")
    d = 0
    while griesmer_length(q, K, d + 1) <= N:
        d += 1
    return d


def griesmer_kopt_upper(q: int, N: int, D: int) -> int:
    """Largest K with griesmer_length(q, K, D) <= N (an upper bound on k_opt)."""
    if D < 1:
        raise ValueError("D must be positive")
    K = 0
    while K < N and griesmer_length(q, K + 1, D) <= N:
        K += 1
    return K


@dataclass
class BoundCheck:
    bound: int
    terms: dict                         # j -> Griesmer value of d_opt[(m - j) n, k - j k*]
    lower: int | None
    verdict: str                        # met | consistent | open | violated
    note: str = "Griesmer-evaluated"


def cm_bound(p: LrcParams, kstar: int) -> int:
    """min over j of d_opt[(m - j) n, k - j k*], each term bounded by Griesmer."""
    return min(cm_bound_terms(p, kstar).values())


def cm_bound_terms(p: LrcParams, kstar: int) -> dict:
    if kstar < 1:
        raise ValueError("k* must be positive")
    top = math.ceil(p.k / kstar) - 1
    return {j: griesmer_dopt_upper(p.q, (p.m - j) * p.n, p.k - j * kstar) for j in range(top + 1)}


def bound_verdict(lower, bound) -> str:
    if lower is None:
        return "open"
    if lower == bound:
        return "met"
    if lower < bound:
        return "consistent"
    return "violated"


def check_cm_bound(code: EiiCode, kstar: int, lower=None) -> BoundCheck:
    """Compare the distance lower bound of ``code`` with the Griesmer-evaluated bound."""
    p = LrcParams.from_code(code)
    terms = cm_bound_terms(p, kstar)
    bound = min(terms.values())
    lower = code.d_lb if lower is None else lower
    return BoundCheck(bound, terms, lower, bound_verdict(lower, bound))


# ---- exhaustive distance -----------------------------------------------------

def min_distance_exhaustive(code, cap=EXHAUSTIVE_DECODE_CAP, chunk=1 << 14) -> int:
    """Minimum nonzero weight over all q^k encodings (EiiCode or LinearCode)."""
    if isinstance(code, LinearCode):
        return code.min_distance_exhaustive(cap)
    gf, k = code.gf, code.k
    if k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    total = gf.q ** k
    if total > cap:
        raise ValueError(f"q^k = {total} exceeds the exhaustive cap {cap}")
    G = code.generator_matrix
    best = code.m * code.n
    digits = gf.q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        data = (idx[:, None] // digits[None, :]) % gf.q
        words = gfm.matmul(gf, data, G)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


# ---- Monte Carlo -------------------------------------------------------------

@dataclass
class MonteCarloResult:
    mean: float
    stderr: float
    trials: int
    counts: np.ndarray = field(repr=False)


def erasures_until_failure(code: EiiCode, order, decoder="envelope", method="bisect", criterion=None) -> int:
    """Number of erasures, taken in ``order``, before the decoder first fails.

    Every decoder here succeeds on a subset of a decodable mask, so the first
    failure can be located by bisection; ``method="sequential"`` adds one
    erasure at a time instead.
    """
    m, n = code.m, code.n
    flat = np.zeros(m * n, dtype=bool)

    def ok(L):
        flat[:] = False
        flat[order[:L]] = True
        return decodable(code, flat.reshape(m, n), decoder, criterion)

    if method == "sequential":
        L = 0
        while L < m * n and ok(L + 1):
            L += 1
        return L
    lo, hi = 0, min(m * n, code.parity_count + 1)
    if ok(hi):
        return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def monte_carlo_avg_erasures(code: EiiCode, decoder="envelope", trials=1000, seed=0,
                             method="bisect", criterion=None) -> MonteCarloResult:
    """Average number of random erasures corrected before the first failure."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    counts = np.empty(trials, dtype=np.int64)
    N = code.m * code.n
    for t in range(trials):
        counts[t] = erasures_until_failure(code, rng.permutation(N), decoder, method, criterion)
    sd = float(counts.std(ddof=1)) if trials > 1 else 0.0
    return MonteCarloResult(float(counts.mean()), sd / math.sqrt(trials), trials, counts)


# ---- orderings and bursts ----------------------------------------------------

@dataclass(frozen=True)
class Ordering:
    """Transmission order: ``index[i, j]`` is the slot of symbol (i, j)."""

    index: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        idx = np.asarray(self.index, dtype=np.int64)
        if sorted(idx.ravel().tolist()) != list(range(idx.size)):
            raise ValueError("ordering must be a bijection onto 0..mn-1")
        object.__setattr__(self, "index", idx)

    @property
    def shape(self):
        return self.index.shape

    @property
    def sequence(self) -> np.ndarray:
        """Row-major flat positions in transmission order."""
        seq = np.empty(self.index.size, dtype=np.int64)
        seq[self.index.ravel()] = np.arange(self.index.size)
        return seq

    def burst(self, start: int, length: int) -> np.ndarray:
        """Mask of a cyclic burst of ``length`` slots beginning at ``start``."""
        N = self.index.size
        slots = (start + np.arange(length)) % N
        mask = np.zeros(N, dtype=bool)
        mask[self.sequence[slots]] = True
        return mask.reshape(self.shape)

    @classmethod
    def row_wise(cls, m, n):
        return cls(np.arange(m * n).reshape(m, n), "row-wise")

    @classmethod
    def diagonal(cls, m, n):
        """Slot k goes to row k mod m and column (k mod m + k div m) mod n."""
        idx = np.empty((m, n), dtype=np.int64)
        for k in range(m * n):
            i = k % m
            idx[i, (i + k // m) % n] = k
        return cls(idx, "diagonal")


def make_ordering(name, m, n) -> Ordering:
    if name == "row-wise":
        return Ordering.row_wise(m, n)
    if name == "diagonal":
        return Ordering.diagonal(m, n)
    raise ValueError(f"unknown ordering {name!r}")


def burst_erasure_ok(code: LinearCode, L: int) -> bool:
    """All n cyclic bursts of L erasures are recoverable."""
    n = code.n
    if L == 0:
        return True
    if L > n:
        return False
    return all(code.erasures_recoverable([(s + i) % n for i in range(L)]) for s in range(n))


@dataclass
class BurstResult:
    length: int
    first_failure: tuple | None         # (start, length) of the first failing burst


def bursts_ok(code: EiiCode, ordering: Ordering, L: int, decoder="envelope", criterion=None):
    """First failing start among the cyclic bursts of length L, or None."""
    for s in range(ordering.index.size):
        if not decodable(code, ordering.burst(s, L), decoder, criterion):
            return s
    return None


def max_correctable_burst(code: EiiCode, ordering: Ordering, decoder="envelope", criterion=None) -> BurstResult:
    N = code.m * code.n
    L = 0
    while L < N:
        s = bursts_ok(code, ordering, L + 1, decoder, criterion)
        if s is not None:
            return BurstResult(L, (s, L + 1))
        L += 1
    return BurstResult(L, None)


@dataclass(frozen=True)
class DeltaBound:
    delta_h: int
    delta_v: int
    delta: int
    parities: int
    row_bound: int          # using the code alone
    bound: int              # using the code or its transpose


def _delta(v):
    gaps = [b - a for a, b in zip(v, v[1:])]
    return max([1] + gaps)


def delta_bound(code: EiiCode) -> DeltaBound:
    """Largest burst any ordering can correct with the code or its transpose alone."""
    u = code.profile.u
    uv = code.profile.transpose().u
    dh, dv = _delta(u), _delta(uv)
    s = sum(u)
    d = min(dh, dv)
    return DeltaBound(dh, dv, d, s, s - dh + 1, s - d + 1)


# ---- balanced placement ------------------------------------------------------

@dataclass(frozen=True)
class PlacementMask:
    mask: np.ndarray

    @property
    def counts(self) -> np.ndarray:
        return self.mask.sum(axis=1)

    @property
    def total(self) -> int:
        return int(self.mask.sum())

    def is_balanced(self) -> bool:
        m = self.mask.shape[0]
        c, r = divmod(self.total, m)
        counts = self.counts
        return bool(np.all((counts == c) | (counts == c + 1)) and int((counts == c + 1).sum()) == r)


def placement_precondition(code: EiiCode) -> list:
    """Vertical scalar codes that fail to correct a cyclic burst of shat_{t-i} erasures."""
    bad = []
    t = code.t
    for i, V in enumerate(code.verticals):
        scalar = V.scalar
        L = code.profile.shat(t - i)
        if scalar is None or not burst_erasure_ok(scalar, L):
            bad.append(i)
    return bad


def balanced_parity_placement(code: EiiCode, check=True) -> PlacementMask:
    """Column-by-column cyclic bursts with balanced row counts.

    Column j receives v_j erasures, v_0 >= v_1 >= ... the nonzero entries of
    the transposed profile. A burst starts at the first row holding fewer
    erasures and wraps around when it runs past the bottom.
    """
    if check:
        bad = placement_precondition(code)
        if bad:
            raise ConstructionError(f"vertical codes {bad} do not correct the required bursts")
    m, n = code.m, code.n
    v = sorted((x for x in code.profile.transpose().u if x), reverse=True)
    mask = np.zeros((m, n), dtype=bool)
    r = 0
    for j, vj in enumerate(v):
        if vj <= m - r:
            mask[r:r + vj, j] = True
            r += vj
        else:
            wrap = vj - (m - r)
            mask[:wrap, j] = True
            mask[r:, j] = True
            r = wrap
        if r == m:
            r = 0
    out = PlacementMask(mask)
    if check:
        if not out.is_balanced():
            raise ConstructionError("placement is not balanced")
        if not recursive_decodable(code.transpose, mask.T):
            raise ConstructionError("placement is not decodable by the transpose code")
    return out


def report(code: EiiCode, kstar=None, exhaustive=False) -> dict:
    """Key figures of a code as a flat dict."""
    out = {
        "profile": str(code.profile),
        "levels": code.t,
        "field": f"GF({code.gf.q})",
        "m": code.m,
        "n": code.n,
        "k": code.k,
        "parities": code.parity_count,
        "d_lb": code.d_lb,
        "horizontal": [repr(C) for C in code.horizontals],
        "vertical": [repr(V) for V in code.verticals],
    }
    if exhaustive:
        out["d_exhaustive"] = min_distance_exhaustive(code)
    if kstar is not None:
        chk = check_cm_bound(code, kstar)
        out["cm_bound"] = chk.bound
        out["cm_verdict"] = chk.verdict
    return out
