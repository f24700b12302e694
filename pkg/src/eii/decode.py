"""Recursive and iterative decoding of EII arrays.

The recursive decoder works level by level. At level v every unresolved row
is decoded in C_v. If rows remain, the level-v components of the resolved
rows give a vertical codeword with the unresolved rows erased; recovering it
lets us rebuild the level-v component of every unresolved row, peel it off,
and continue at level v + 1 where the residual rows lie in C_{v+1}.

Each decoder has a mask-only twin (``*_decodable``) that follows exactly the
same control flow using rank conditions alone. Monte Carlo and burst
experiments run on the twins; the test suite checks that they agree with
the value-level decoders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eii import EiiCode
from .errors import CapabilityUnavailable, MiscorrectionDetected, Uncorrectable


@dataclass
class ReceivedArray:
    """Received symbols plus an erasure mask; masked entries are ignored."""

    values: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.values.shape != self.mask.shape:
            raise ValueError("mask and array shapes differ")


def _unpack(received, mask):
    if isinstance(received, ReceivedArray):
        return received.values.copy(), received.mask.copy()
    values = np.array(received, dtype=np.int64)
    if mask is None:
        mask = np.zeros(values.shape, dtype=bool)
    return values, np.array(mask, dtype=bool)


def _row_positions(mask_row):
    return tuple(int(j) for j in np.nonzero(mask_row)[0])


def _row_ok(C, erased, criterion):
    if criterion == "distance":
        return C.d is not None and len(erased) <= C.d - 1
    return C.erasures_recoverable(erased)


def _vertical_ok(V, rows, criterion):
    if criterion == "distance":
        return V.d is not None and len(rows) <= V.d - 1
    return V.erasures_recoverable(rows)


def _check_criterion(criterion):
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; choose from {CRITERIA}")


def _run(code: EiiCode, values, mask, errors=False, distrust=(), trace=None, criterion="rank"):
    """Shared recursion. Returns (array, resolved_rows, failed_level or None)."""
    m, n, t = code.m, code.n, code.t
    R = values.copy()
    R[mask] = 0
    acc = np.zeros_like(R)
    erased = [_row_positions(mask[i]) for i in range(m)]
    known = np.zeros(m, dtype=bool)
    distrust = set(distrust)
    for v in range(t):
        Cv = code.horizontals[v]
        for i in np.nonzero(~known)[0]:
            i = int(i)
            if errors:
                if v == 0 and i in distrust:
                    continue
                try:
                    R[i], nerr = Cv.decode_errors_erasures(R[i], erased[i])
                except Uncorrectable:
                    if trace is not None:
                        trace.append(("row-failed", v, i))
                    continue
                known[i] = True
                if trace is not None:
                    trace.append(("row", v, i, nerr))
            elif _row_ok(Cv, erased[i], criterion):
                if erased[i]:
                    R[i] = Cv.decode_erasures(R[i], erased[i])
                    if trace is not None:
                        trace.append(("row", v, i, 0))
                known[i] = True
        if known.all():
            break
        V = code.vertical_of_level(v)
        unknown = np.nonzero(~known)[0]
        if not (V.erasures_recoverable(unknown) if errors else _vertical_ok(V, unknown, criterion)):
            if trace is not None:
                trace.append(("vertical-failed", v, tuple(int(i) for i in unknown)))
            out = R ^ acc
            return out, known, v
        a, b = code.level_columns(v)
        rows_k = np.nonzero(known)[0]
        comps = np.zeros_like(R)
        if v + 1 < t:
            above = code.horizontals[v + 1]
            comps[rows_k] = R[rows_k] ^ above.encode(R[rows_k, :above.k])
        else:
            comps[rows_k] = R[rows_k]
        sym = np.zeros((m, b - a), dtype=np.int64)
        sym[rows_k] = comps[rows_k, a:b]
        sym = V.decode_erasures(sym, unknown)
        info = np.concatenate([np.zeros((len(unknown), a), dtype=np.int64), sym[unknown]], axis=1)
        comps[unknown] = Cv.encode(info)
        if trace is not None:
            trace.append(("vertical", v, tuple(int(i) for i in unknown)))
        if v == t - 1:
            R[unknown] = comps[unknown]
            known[:] = True
            break
        R ^= comps
        acc ^= comps
    return R ^ acc, known, None


def decode_erasures(code: EiiCode, received, mask=None, trace=None, criterion="rank") -> np.ndarray:
    """Recursive erasure decoding.

    With ``criterion="rank"`` a row (or a vertical codeword) is solved
    whenever its erased coordinates are determined; ``"distance"`` only
    solves up to d - 1 erasures, the guarantee of the capability profile.
    Raises :class:`Uncorrectable` carrying the partially decoded array and
    the mask of rows still unresolved.
    """
    _check_criterion(criterion)
    values, mask = _unpack(received, mask)
    out, known, failed = _run(code, values, mask, trace=trace, criterion=criterion)
    if failed is not None:
        residual = mask.copy()
        residual[known] = False
        out[residual] = values[residual]
        raise Uncorrectable(f"vertical decoding fails at level {failed}", partial=out, residual=residual)
    return out


def decode_errors_erasures(code: EiiCode, received, mask=None, distrust_rows=(), trace=None,
                           check=True) -> np.ndarray:
    """Recursive errors-and-erasures decoding.

    Rows failing bounded-distance decoding are passed on to the vertical
    stage. ``distrust_rows`` are treated as failed in the first pass, which
    lets a caller test a hypothesis about which rows were miscorrected. The
    result is membership-checked and a failure raises
    :class:`MiscorrectionDetected`.
    """
    values, mask = _unpack(received, mask)
    for C in code.horizontals:
        if C.d is None:
            raise CapabilityUnavailable("a horizontal code has no known distance")
    out, known, failed = _run(code, values, mask, errors=True, distrust=distrust_rows, trace=trace)
    if failed is not None:
        residual = mask.copy()
        residual[~known] = True
        raise Uncorrectable(f"vertical decoding fails at level {failed}", partial=out, residual=residual)
    if check:
        res = code.membership(out)
        if not res:
            raise MiscorrectionDetected(candidate=out, witness=res.witness)
    return out


def _partial(code, values, mask, criterion):
    """One recursive pass keeping whatever rows it resolved."""
    out, known, failed = _run(code, values, mask, criterion=criterion)
    residual = mask.copy()
    residual[known] = False
    out[residual] = 0
    return out, residual


def iterative_decode(code: EiiCode, received, mask=None, global_fallback=True, trace=None,
                     criterion="rank") -> np.ndarray:
    """Alternate row-wise and column-wise recursive decoding until no progress.

    If erasures remain and the code has a full parity-check matrix, finish
    with one linear solve over all erased coordinates.
    """
    _check_criterion(criterion)
    values, mask = _unpack(received, mask)
    T = code.transpose
    cur, res = values.copy(), mask.copy()
    cur[res] = 0
    while res.any():
        before = int(res.sum())
        cur, res = _partial(code, cur, res, criterion)
        if trace is not None:
            trace.append(("rows", before - int(res.sum())))
        if not res.any():
            break
        mid = int(res.sum())
        curT, resT = _partial(T, cur.T, res.T, criterion)
        cur, res = curT.T.copy(), resT.T.copy()
        if trace is not None:
            trace.append(("columns", mid - int(res.sum())))
        if int(res.sum()) == before:
            break
    if res.any() and global_fallback and code.u(code.t) == code.n:
        G = code.global_code
        flat = cur.ravel().copy()
        pos = np.nonzero(res.ravel())[0]
        if G.erasures_recoverable(pos):
            cur = G.decode_erasures(flat, pos).reshape(cur.shape)
            if trace is not None:
                trace.append(("global", len(pos)))
            res = np.zeros_like(res)
    if res.any():
        raise Uncorrectable("iterative decoding stalls", partial=cur, residual=res)
    return cur


# ---- mask-only twins ---------------------------------------------------------

def _run_mask(code: EiiCode, mask, criterion="rank"):
    """Same control flow as :func:`_run` on the mask alone: (success, resolved rows)."""
    m, t = code.m, code.t
    erased = [_row_positions(mask[i]) for i in range(m)]
    known = np.array([not e for e in erased])
    for v in range(t):
        Cv = code.horizontals[v]
        for i in np.nonzero(~known)[0]:
            if _row_ok(Cv, erased[i], criterion):
                known[i] = True
        if known.all():
            return True, known
        unknown = np.nonzero(~known)[0]
        if not _vertical_ok(code.vertical_of_level(v), unknown, criterion):
            return False, known
    return True, np.ones(m, dtype=bool)


def recursive_decodable(code: EiiCode, mask, criterion="rank") -> bool:
    return _run_mask(code, np.asarray(mask, dtype=bool), criterion)[0]


def transpose_decodable(code: EiiCode, mask, criterion="rank") -> bool:
    return _run_mask(code.transpose, np.asarray(mask, dtype=bool).T, criterion)[0]


def iterative_decodable(code: EiiCode, mask, criterion="rank", global_fallback=True) -> bool:
    res = np.array(mask, dtype=bool)
    T = code.transpose
    while res.any():
        before = int(res.sum())
        ok, known = _run_mask(code, res, criterion)
        if ok:
            return True
        res[known] = False
        ok, known = _run_mask(T, res.T, criterion)
        if ok:
            return True
        res[:, known] = False
        if int(res.sum()) == before:
            break
    if not res.any():
        return True
    if global_fallback and code.u(code.t) == code.n:
        return code.global_code.erasures_recoverable(np.nonzero(res.ravel())[0])
    return False


def row_column_decodable(code: EiiCode, mask, criterion="rank") -> bool:
    return iterative_decodable(code, mask, criterion, global_fallback=False)


def ml_decodable(code: EiiCode, mask, criterion="rank") -> bool:
    """Whether the erased coordinates are determined by the code at all."""
    return code.global_code.erasures_recoverable(np.nonzero(np.asarray(mask).ravel())[0])


CRITERIA = ("rank", "distance")

DECODERS = {
    "recursive": recursive_decodable,
    "transpose": transpose_decodable,
    "row-column": row_column_decodable,
    "iterative": iterative_decodable,
    "ml": ml_decodable,
}

# aliases: "envelope" is the recursion with distance thresholds, the decoder
# whose success region is exactly the guaranteed capability profile
ALIASES = {
    "rows-only": ("recursive", None),
    "transpose-only": ("transpose", None),
    "envelope": ("recursive", "distance"),
    "theorem2": ("recursive", "distance"),
}


def resolve_decoder(decoder: str, criterion=None) -> tuple[str, str]:
    """Map a decoder name (or alias) and optional criterion to (engine, criterion)."""
    name, implied = ALIASES.get(decoder, (decoder, None))
    if name not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}; choose from {sorted(DECODERS) + sorted(ALIASES)}")
    crit = criterion or implied or "rank"
    _check_criterion(crit)
    return name, crit


def decodable(code: EiiCode, mask, decoder="recursive", criterion=None) -> bool:
    name, crit = resolve_decoder(decoder, criterion)
    return DECODERS[name](code, mask, crit)


def decode(code: EiiCode, received, mask=None, decoder="recursive", criterion=None) -> np.ndarray:
    """Value-level decoding by name, mirroring :func:`decodable`; ``"errors"``
    selects errors-and-erasures decoding."""
    values, mask = _unpack(received, mask)
    if decoder == "errors":
        return decode_errors_erasures(code, values, mask)
    name, crit = resolve_decoder(decoder, criterion)
    if name == "recursive":
        return decode_erasures(code, values, mask, criterion=crit)
    if name == "transpose":
        return decode_erasures(code.transpose, values.T, mask.T, criterion=crit).T
    if name == "iterative":
        return iterative_decode(code, values, mask, criterion=crit)
    if name == "row-column":
        return iterative_decode(code, values, mask, global_fallback=False, criterion=crit)
    pos = np.nonzero(mask.ravel())[0]
    G = code.global_code
    if not G.erasures_recoverable(pos):
        raise Uncorrectable("erased coordinates are not determined", partial=values, residual=mask)
    return G.decode_erasures(values.ravel(), pos).reshape(values.shape)


# ---- guaranteed envelope -------------------------------------------------

def capability_profile(code: EiiCode) -> list[dict]:
    """Row budgets guaranteed by the recursive erasure decoder.

    Each tier allows ``rows`` rows (None: any number) with at most
    ``max_erasures`` erasures each (None: any number).
    """
    t = code.t
    dh = [C.d for C in code.horizontals]
    dv = [V.d for V in code.verticals]
    if any(x is None for x in dh + dv):
        raise CapabilityUnavailable("capability profile needs every component distance")
    tiers = [{"rows": None, "max_erasures": dh[0] - 1}]
    for i in range(1, t):
        tiers.append({"rows": dv[i] - dv[i - 1], "max_erasures": dh[t - i] - 1})
    tiers.append({"rows": dv[0] - 1, "max_erasures": None})
    return tiers


def pattern_within_profile(code: EiiCode, mask) -> bool:
    """Greedy assignment of rows, largest erasure count first, to budget tiers."""
    mask = np.asarray(mask, dtype=bool)
    counts = sorted((int(c) for c in mask.sum(axis=1) if c), reverse=True)
    tiers = capability_profile(code)
    inf = float("inf")
    slots = sorted(((inf if tr["max_erasures"] is None else tr["max_erasures"],
                     inf if tr["rows"] is None else tr["rows"]) for tr in tiers), reverse=True)
    slots = [[b, c] for b, c in slots]
    ti = 0
    for c in counts:
        while ti < len(slots) and slots[ti][1] == 0:
            ti += 1
        if ti == len(slots) or c > slots[ti][0]:
            # a row with fewer erasures may still fit a later, tighter tier
            placed = False
            for s in slots[ti:]:
                if s[1] > 0 and c <= s[0]:
                    s[1] -= 1
                    placed = True
                    break
            if not placed:
                return False
            continue
        slots[ti][1] -= 1
    return True
