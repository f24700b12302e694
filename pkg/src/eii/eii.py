"""Construction, encoding and membership for t-level EII codes.

An EII code on m x n arrays is the direct sum of t one-level components.
The component of level v has rows in the horizontal code C_v, zeros in its
first n - u_{v+1} columns, and the columns n - u_{v+1} .. n - u_v - 1 read
down the rows form a codeword of the vertical code V_{t-1-v}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from . import gf as gfm
from .errors import ConstructionError
from .gf import GF
from .linear_codes import (HCoefficients, LinearCode, NestedFamily, VerticalCode, make_from_H,
                           verify_nested)


@dataclass(frozen=True)
class UProfile:
    """Non-decreasing redundancy profile u of length m for rows of length n.

    ``values`` are u_0 < ... < u_t and ``mults`` are s_0, ..., s_t. When the
    largest entry of ``u`` is below n the profile is ambiguous: it may end
    with its own level (s_t > 0) or with an implicit u_t = n and s_t = 0.
    ``levels`` settles it; by default the implicit reading is used unless
    the largest entry equals n.
    """

    u: tuple
    n: int
    levels: int | None = None
    values: tuple = dc_field(init=False)
    mults: tuple = dc_field(init=False)

    def __post_init__(self):
        u = tuple(int(x) for x in self.u)
        object.__setattr__(self, "u", u)
        if not u:
            raise ConstructionError("empty profile")
        if any(b < a for a, b in zip(u, u[1:])):
            raise ConstructionError("profile must be non-decreasing")
        if u[0] < 0 or u[-1] > self.n:
            raise ConstructionError("profile entries must lie in [0, n]")
        distinct = sorted(set(u))
        D = len(distinct)
        t = self.levels
        if t is None:
            t = D - 1 if u[-1] == self.n else D
        if t == D - 1:
            values = tuple(distinct)
            mults = tuple(u.count(x) for x in distinct)
        elif t == D:
            if u[-1] >= self.n:
                raise ConstructionError("a profile ending with s_t = 0 needs entries below n")
            values = tuple(distinct) + (self.n,)
            mults = tuple(u.count(x) for x in distinct) + (0,)
        else:
            raise ConstructionError(f"profile {u} cannot have {t} levels")
        if t < 1:
            raise ConstructionError("a code needs at least one level")
        object.__setattr__(self, "levels", t)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mults", mults)

    @classmethod
    def from_multiplicities(cls, values, mults, n):
        """Build from u_0..u_t and s_0..s_t (s_t may be 0 when u_t = n)."""
        u = []
        for v, s in zip(values, mults):
            u += [v] * s
        t = len(values) - 1
        return cls(tuple(u), n, t)

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def t(self) -> int:
        return self.levels

    def shat(self, i: int) -> int:
        """Tail sum s_i + ... + s_t, with shat(t + 1) = 0."""
        return sum(self.mults[i:])

    @property
    def parity_count(self) -> int:
        return sum(s * v for s, v in zip(self.mults, self.values))

    @property
    def dimension(self) -> int:
        return self.m * self.values[-1] - self.parity_count

    def transpose(self) -> "UProfile":
        """Profile of the code on transposed arrays (requires u_t = n)."""
        if self.values[-1] != self.n:
            raise ConstructionError("transposition needs u_t = n")
        t = self.t
        out = []
        for i in range(t, -1, -1):
            prev = self.values[i - 1] if i > 0 else 0
            out += [self.shat(i)] * (self.values[i] - prev)
        return UProfile(tuple(out), self.m, t)

    def __str__(self):
        parts = []
        for v, s in zip(self.values, self.mults):
            if s:
                parts.append(f"{v}^{s}" if s > 3 else ",".join([str(v)] * s))
        return f"C({self.n},({','.join(parts)}))"


@dataclass(frozen=True)
class DataLayout:
    """Rectangular data block of each level: (row count, first column, last column + 1)."""

    blocks: tuple

    def positions(self):
        for rows, c0, c1 in self.blocks:
            for i in range(rows):
                for j in range(c0, c1):
                    yield i, j

    @property
    def size(self) -> int:
        return sum(r * (c1 - c0) for r, c0, c1 in self.blocks)

    def split(self, data):
        """Cut a flat vector of k symbols into per-level blocks."""
        data = np.asarray(data, dtype=np.int64).ravel()
        if data.size != self.size:
            raise ValueError(f"expected {self.size} data symbols, got {data.size}")
        out, pos = [], 0
        for rows, c0, c1 in self.blocks:
            w = c1 - c0
            out.append(data[pos:pos + rows * w].reshape(rows, w))
            pos += rows * w
        return out

    def extract(self, array):
        """Per-level blocks read from the data positions of an m x n array."""
        array = np.asarray(array, dtype=np.int64)
        return [array[:rows, c0:c1].copy() for rows, c0, c1 in self.blocks]

    def mask(self, m, n):
        M = np.zeros((m, n), dtype=bool)
        for rows, c0, c1 in self.blocks:
            M[:rows, c0:c1] = True
        return M


@dataclass
class Membership:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


class EiiCode:
    """A t-level EII code; build with :func:`build_eii` or :func:`build_eii_pc`."""

    def __init__(self, profile: UProfile, horizontals, verticals, hcoeffs: HCoefficients | None = None):
        self.profile = profile
        self.horizontals = list(horizontals)
        self.verticals = list(verticals)
        self.hcoeffs = hcoeffs
        self.gf: GF = self.horizontals[0].gf
        self.m = profile.m
        self.n = profile.n
        self.t = profile.t
        self._validate()

    def _validate(self):
        p, t, m, n = self.profile, self.t, self.m, self.n
        if len(self.horizontals) != t or len(self.verticals) != t:
            raise ConstructionError(f"a {t}-level code needs {t} horizontal and {t} vertical codes")
        for i, C in enumerate(self.horizontals):
            if C.gf != self.gf or C.n != n:
                raise ConstructionError(f"C_{i} has the wrong field or length")
            if C.k != n - p.values[i]:
                raise ConstructionError(f"C_{i} has dimension {C.k}, expected {n - p.values[i]}")
            if not C.systematic:
                raise ConstructionError(f"C_{i} is not systematic on its first {C.k} symbols")
        res = verify_nested(self.horizontals)
        if not res:
            raise ConstructionError(f"horizontal nesting fails at {res.index}: {res.reason}")
        for i, V in enumerate(self.verticals):
            width = p.values[t - i] - p.values[t - i - 1]
            if V.base != self.gf:
                raise ConstructionError(f"V_{i} is over the wrong base field")
            if V.m != m or V.k != m - p.shat(t - i) or V.w != width:
                raise ConstructionError(
                    f"V_{i} must be [{m},{m - p.shat(t - i)}] over width {width}, "
                    f"got [{V.m},{V.k}] width {V.w}")

    def __repr__(self):
        kind = "EII-PC" if self.pc else "EII"
        return f"<{self.t}-level {kind} {self.profile} over GF({self.gf.q}): k={self.k}, d>={self.d_lb}>"

    # ---- parameters ----------------------------------------------------

    @property
    def pc(self) -> bool:
        return self.hcoeffs is not None

    @property
    def k(self) -> int:
        return self.profile.dimension

    @property
    def parity_count(self) -> int:
        return self.m * self.n - self.k

    def u(self, i: int) -> int:
        return self.profile.values[i]

    def vertical_of_level(self, v: int) -> VerticalCode:
        return self.verticals[self.t - 1 - v]

    def level_columns(self, v: int) -> tuple[int, int]:
        """Columns carrying the vertical codeword of level v."""
        return self.n - self.u(v + 1), self.n - self.u(v)

    @property
    def d_lb(self):
        ds = []
        for i in range(self.t):
            dh = self.horizontals[i].d
            dv = self.verticals[self.t - 1 - i].d
            if dh is None or dv is None:
                return None
            ds.append(dh * dv)
        return min(ds)

    @cached_property
    def layout(self) -> DataLayout:
        blocks = []
        for v in range(self.t):
            a, b = self.level_columns(v)
            blocks.append((self.m - self.profile.shat(v + 1), a, b))
        return DataLayout(tuple(blocks))

    # ---- encoding ------------------------------------------------------

    def component(self, v: int, block) -> np.ndarray:
        """One-level component of level v: vertical encoding, then rows in C_v."""
        block = np.asarray(block, dtype=np.int64)
        V = self.vertical_of_level(v)
        sym = V.encode(block)
        a, _ = self.level_columns(v)
        info = np.concatenate([np.zeros((self.m, a), dtype=np.int64), sym], axis=1)
        return self.horizontals[v].encode(info)

    def _blocks(self, data):
        if isinstance(data, (list, tuple)) and len(data) == self.t and all(
                np.ndim(b) == 2 for b in data):
            blocks = [np.asarray(b, dtype=np.int64) for b in data]
        else:
            blocks = self.layout.split(data)
        for (rows, a, b), blk in zip(self.layout.blocks, blocks):
            if blk.shape != (rows, b - a):
                raise ValueError(f"data block of shape {blk.shape}, expected {(rows, b - a)}")
        return blocks

    def encode_direct(self, data) -> np.ndarray:
        """Direct-sum encoding; not systematic for t > 1."""
        out = np.zeros((self.m, self.n), dtype=np.int64)
        for v, blk in enumerate(self._blocks(data)):
            out ^= self.component(v, blk)
        return out

    def encode_systematic(self, data) -> np.ndarray:
        """Systematic encoding: the data appears verbatim at the layout positions.

        Levels are encoded from the top down; each lower level encodes its
        data corrected by the parity the higher levels left in its block.
        """
        blocks = self._blocks(data)
        out = np.zeros((self.m, self.n), dtype=np.int64)
        for v in range(self.t - 1, -1, -1):
            rows, a, b = self.layout.blocks[v]
            out ^= self.component(v, blocks[v] ^ out[:rows, a:b])
        return out

    def encode(self, data) -> np.ndarray:
        return self.encode_systematic(data)

    def random_codeword(self, rng) -> np.ndarray:
        return self.encode_systematic(self.gf.random(rng, self.k))

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """k x mn matrix whose rows are the systematic encodings of unit data."""
        G = np.zeros((self.k, self.m * self.n), dtype=np.int64)
        for i in range(self.k):
            e = np.zeros(self.k, dtype=np.int64)
            e[i] = 1
            G[i] = self.encode_systematic(e).ravel()
        return G

    # ---- decomposition and membership -----------------------------------

    def decompose_row(self, row) -> list[np.ndarray]:
        """Split a row of C_0 into its per-level parts, part v in C_v."""
        row = np.asarray(row, dtype=np.int64)
        if not self.horizontals[0].is_codeword(row):
            raise ValueError("row is not in C_0")
        parts = [None] * self.t
        rem = row.copy()
        for v in range(self.t - 1, 0, -1):
            kv = self.horizontals[v].k
            parts[v] = self.horizontals[v].encode(rem[:kv])
            rem ^= parts[v]
        parts[0] = rem
        return parts

    def decompose(self, array) -> list[np.ndarray]:
        """Per-level component arrays of a codeword (row-wise decomposition)."""
        array = np.asarray(array, dtype=np.int64)
        parts = [self.decompose_row(r) for r in array]
        return [np.array([p[v] for p in parts]) for v in range(self.t)]

    def membership(self, array) -> Membership:
        array = np.asarray(array, dtype=np.int64)
        if array.shape != (self.m, self.n):
            return Membership(False, ("shape", array.shape))
        C0 = self.horizontals[0]
        syn = C0.syndrome(array)
        bad = np.nonzero(np.any(syn, axis=1))[0] if syn.size else []
        if len(bad):
            return Membership(False, ("row", int(bad[0])))
        comps = self.decompose(array)
        for v in range(self.t):
            a, b = self.level_columns(v)
            if np.any(comps[v][:, :a]):
                return Membership(False, ("zero-columns", v))
            if not self.vertical_of_level(v).is_codeword(comps[v][:, a:b]):
                return Membership(False, ("vertical", v))
        return Membership(True)

    def membership_pc(self, array) -> Membership:
        """Membership through the coefficient-combination checks of an EII-PC code."""
        if not self.pc:
            raise ConstructionError("coefficient checks need an EII-PC code")
        array = np.asarray(array, dtype=np.int64)
        C0 = self.horizontals[0]
        syn = C0.syndrome(array)
        bad = np.nonzero(np.any(syn, axis=1))[0] if syn.size else []
        if len(bad):
            return Membership(False, ("row", int(bad[0])))
        p = self.profile
        top = p.shat(1)
        if top == 0:
            return Membership(True)
        combos = gfm.matmul(self.gf, self.hcoeffs.window(top, self.m, 0), array)
        for i in range(1, self.t + 1):
            for r in range(p.shat(i + 1), p.shat(i)):
                if i == self.t:
                    if np.any(combos[r]):
                        return Membership(False, ("combination", r, i))
                elif not self.horizontals[i].is_codeword(combos[r]):
                    return Membership(False, ("combination", r, i))
        return Membership(True)

    def is_codeword(self, array) -> bool:
        return bool(self.membership(array))

    # ---- parity checks and transposition ---------------------------------

    @cached_property
    def parity_check_matrix(self) -> np.ndarray:
        """Stacked Kronecker blocks acting on arrays read row by row."""
        if not self.pc or self.u(self.t) != self.n:
            raise ConstructionError("the parity-check assembly needs an EII-PC code with u_t = n")
        p, h, m, n, gf = self.profile, self.hcoeffs, self.m, self.n, self.gf
        u0 = self.u(0)
        blocks = [gfm.kronecker(gf, gfm.identity(m), h.window(u0, n, 0))]
        for i in range(1, self.t):
            blocks.append(gfm.kronecker(gf, h.window(p.mults[i], m, p.shat(i + 1)),
                                        h.window(self.u(i) - u0, n, u0)))
        blocks.append(gfm.kronecker(gf, h.window(p.mults[self.t], m, 0), gfm.identity(n)))
        return np.concatenate(blocks, axis=0)

    @cached_property
    def global_code(self) -> LinearCode:
        """The code as a plain linear code of length mn (row-major)."""
        if self.pc and self.u(self.t) == self.n:
            H = self.parity_check_matrix
        else:
            H = gfm.nullspace(self.gf, self.generator_matrix)
        return make_from_H(self.gf, H, n=self.m * self.n)

    @cached_property
    def transpose(self) -> "EiiCode":
        """The EII-PC code formed by the transposed arrays."""
        if not self.pc:
            raise ConstructionError("transposition needs an EII-PC code")
        return build_eii_pc(self.profile.transpose(), self.hcoeffs)


def build_eii(profile: UProfile, horizontals, verticals) -> EiiCode:
    """Assemble an EII code from explicit component codes.

    The number of horizontal codes fixes the number of levels when the
    profile alone is ambiguous.
    """
    if isinstance(horizontals, NestedFamily):
        horizontals = horizontals.codes
    horizontals = list(horizontals)
    if profile.t != len(horizontals):
        profile = UProfile(profile.u, profile.n, len(horizontals))
    return EiiCode(profile, horizontals, verticals)


def build_eii_pc(profile: UProfile, hcoeffs: HCoefficients) -> EiiCode:
    """EII-PC code: C_i checked by H_{u_i,n,0}, V_i interleaved from H_{shat_{t-i},m,0}."""
    p = profile
    t = p.t
    if hcoeffs.size < max(p.m, p.n):
        raise ConstructionError("coefficient matrix smaller than max(m, n)")
    horizontals = [hcoeffs.code(p.values[i], p.n) for i in range(t)]
    verticals = []
    for i in range(t):
        scalar = hcoeffs.code(p.shat(t - i), p.m)
        verticals.append(VerticalCode.interleaved(scalar, p.values[t - i] - p.values[t - i - 1]))
    return EiiCode(p, horizontals, verticals, hcoeffs=hcoeffs)
