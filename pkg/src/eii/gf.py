"""Arithmetic in GF(2^b) and dense linear algebra over it.

Field elements are plain integers in ``[0, 2^b)`` holding the polynomial-basis
coefficients ``a_0 + a_1 x + ... + a_{b-1} x^{b-1}`` with ``a_0`` as the least
significant bit. Matrices are two-dimensional numpy integer arrays; every
matrix routine takes the field as its first argument.

A small :class:`FieldElement` wrapper is provided for callers who want
operator syntax and field-mismatch checking. The library itself works on
raw integers and arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Primitive polynomials over GF(2), bit i is the coefficient of x^i.
DEFAULT_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class FieldError(ValueError):
    """Invalid field parameters or mixing elements of different fields."""


class NoSolution(ValueError):
    """The linear system is inconsistent."""


class GF:
    """The field GF(2^b) defined by a primitive modulus.

    Parameters
    ----------
    b : int
        Extension degree, 1 <= b <= 16.
    modulus : int, optional
        Degree-b polynomial over GF(2) as a bit vector. Must be primitive.
    """

    def __init__(self, b: int, modulus: int | None = None):
        if not 1 <= b <= 16:
            raise FieldError(f"extension degree {b} outside 1..16")
        if modulus is None:
            modulus = DEFAULT_MODULI[b]
        if modulus >> b != 1:
            raise FieldError(f"modulus {modulus:#x} does not have degree {b}")
        self.b = b
        self.modulus = modulus
        self.q = 1 << b
        self.order = self.q - 1

        q, order = self.q, self.order
        exp = [0] * order
        x = 1
        for i in range(order):
            if x == 1 and i > 0:
                raise FieldError(f"modulus {modulus:#x} is not primitive")
            exp[i] = x
            x <<= 1
            if x & q:
                x ^= modulus
        if x != 1:
            raise FieldError(f"modulus {modulus:#x} is not primitive")

        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        # log[0] points past the doubled table so any product with 0 reads 0.
        zero_log = 2 * q
        log[0] = zero_log
        self._exp_list = exp
        self._log_list = log
        ext = np.zeros(4 * q + 1, dtype=np.int64)
        ext[:order] = exp
        ext[order:2 * order] = exp
        self.exp_table = ext
        self.log_table = np.array(log, dtype=np.int64)

    def __repr__(self):
        return f"GF(2^{self.b}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.b, self.modulus) == (other.b, other.modulus)

    def __hash__(self):
        return hash((self.b, self.modulus))

    # ---- scalars -------------------------------------------------------

    @property
    def alpha(self) -> int:
        return self._exp_list[1 % self.order]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[(self._log_list[a] + self._log_list[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp_list[(-self._log_list[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp_list[(self._log_list[a] - self._log_list[b]) % self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp_list[(self._log_list[a] * e) % self.order]

    def exp(self, e: int) -> int:
        """alpha ** e."""
        return self._exp_list[e % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log_list[a]

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    # ---- arrays --------------------------------------------------------

    def vmul(self, a, b):
        """Elementwise product of broadcastable integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.q == 2:
            return a & b
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[(self.order - self.log_table[a]) % self.order]

    def scale(self, c: int, a):
        """Multiply every entry of ``a`` by the scalar ``c``."""
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        return self.exp_table[self.log_table[a] + self._log_list[c]]

    def random(self, rng, shape, nonzero=False):
        if nonzero:
            return rng.integers(1, self.q, size=shape, dtype=np.int64)
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


@dataclass(frozen=True)
class FieldElement:
    """A scalar tied to its field, with operator syntax."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value:#x} is not an element of {self.field}")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value:#x}"


# ---- matrices ----------------------------------------------------------

def as_matrix(A, cols: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, cols or 0)
    if A.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    return A


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(gf: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.shape[-1] != B.shape[0]:
        raise ValueError(f"dimension mismatch {A.shape} x {B.shape}")
    if gf.q == 2:
        out = (A @ B) & 1
    elif A.shape[0] * A.shape[1] * B.shape[1] <= 1 << 22:
        out = np.bitwise_xor.reduce(gf.vmul(A[:, :, None], B[None, :, :]), axis=1)
        if A.shape[1] == 0:
            out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    else:
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out ^= gf.vmul(A[:, j:j + 1], B[j:j + 1, :])
    return out[:, 0] if vec else out


def rref(gf: GF, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry at or below the current row,
    scanning rows in increasing index.
    """
    R = as_matrix(A).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = gf.scale(gf.inv(piv), R[r])
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit] ^= gf.vmul(col[hit, None], R[r][None, :])
        pivots.append(c)
        r += 1
    return R, pivots


def rank(gf: GF, A) -> int:
    A = as_matrix(A)
    if A.size == 0:
        return 0
    return len(rref(gf, A)[1])


def solve(gf: GF, A, y) -> tuple[np.ndarray, bool]:
    """Solve ``A x = y``.

    Returns a solution (free variables set to zero) and a flag that is True
    when the solution is unique. Raises :class:`NoSolution` if inconsistent.
    """
    A = as_matrix(A)
    y = np.asarray(y, dtype=np.int64)
    if y.shape[0] != A.shape[0]:
        raise ValueError("dimension mismatch")
    aug = np.concatenate([A, y.reshape(A.shape[0], -1)], axis=1)
    R, piv = rref(gf, aug)
    n = A.shape[1]
    if piv and piv[-1] >= n:
        raise NoSolution("inconsistent system")
    x = np.zeros((n,) + y.shape[1:], dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n:] if y.ndim > 1 else R[i, n]
    return x, len(piv) == n


def inverse(gf: GF, A) -> np.ndarray:
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("matrix is not square")
    R, piv = rref(gf, np.concatenate([A, identity(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise NoSolution("matrix is singular")
    return R[:, n:]


def nullspace(gf: GF, A, cols: int | None = None) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` as the rows of a matrix."""
    A = as_matrix(A, cols)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, piv = rref(gf, A)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, c in enumerate(piv):
            N[i, c] = R[r, f]  # characteristic 2: -x == x
    return N


def row_basis(gf: GF, A) -> np.ndarray:
    """Independent rows spanning the row space of ``A``."""
    A = as_matrix(A)
    if A.shape[0] == 0:
        return A
    R, piv = rref(gf, A)
    return R[:len(piv)]


def kronecker(gf: GF, A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    out = gf.vmul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def poly_eval(gf: GF, coeffs, x: int) -> int:
    """Evaluate ``sum coeffs[i] x^i``."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = gf.mul(acc, x) ^ int(c)
    return acc


def poly_mul(gf: GF, a, b) -> list[int]:
    if not len(a) or not len(b):
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= gf.mul(x, y)
    return out


def poly_divmod(gf: GF, a, b) -> tuple[list[int], list[int]]:
    a = [int(v) for v in a]
    b = [int(v) for v in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = gf.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 1)
    rem = a[:]
    for i in range(len(a) - len(b), -1, -1):
        c = gf.mul(rem[i + len(b) - 1], lead_inv)
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] ^= gf.mul(c, y)
    rem = rem[:len(b) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


class Lift:
    """GF(q)-linear bijection between (GF(q))^e and GF(q^e).

    The small field is embedded in the large one by sending its primitive
    element to a root of its modulus; the large field is then spanned over
    the embedded copy by ``1, g, ..., g^{e-1}`` with ``g`` the large field's
    primitive element. For q = 2 this is the plain polynomial basis, i.e. the
    bits of the integer representation.
    """

    def __init__(self, small: GF, big: GF):
        if big.b % small.b:
            raise FieldError(f"{big} is not an extension of {small}")
        self.small = small
        self.big = big
        self.e = e = big.b // small.b
        q = small.q
        # embedding of the small field
        if small.q == 2:
            phi = np.array([0, 1], dtype=np.int64)
        elif e == 1:
            phi = np.arange(q, dtype=np.int64)
        else:
            beta = None
            for cand in range(2, big.q):
                acc = 0
                for bit in range(small.b, -1, -1):
                    acc = big.mul(acc, cand) ^ ((small.modulus >> bit) & 1)
                if acc == 0:
                    beta = cand
                    break
            if beta is None:
                raise FieldError("no root of the small modulus in the large field")
            phi = np.zeros(q, dtype=np.int64)
            for lg in range(small.order):
                phi[small.exp(lg)] = big.pow(beta, lg)
        self.phi = phi
        idx = np.arange(big.q, dtype=np.int64)
        out = np.zeros(big.q, dtype=np.int64)
        for i in range(e):
            digit = (idx // q ** i) % q
            out ^= big.vmul(phi[digit], big.exp(i))
        if len(np.unique(out)) != big.q:
            raise FieldError("lift is not a bijection")
        self._to_big = out
        self._to_small = np.empty(big.q, dtype=np.int64)
        self._to_small[out] = idx

    def to_big(self, symbols) -> np.ndarray:
        """Map an array ``(..., e)`` of small-field digits to big-field values."""
        symbols = np.asarray(symbols, dtype=np.int64)
        weights = self.small.q ** np.arange(self.e, dtype=np.int64)
        return self._to_big[symbols @ weights]

    def to_small(self, values) -> np.ndarray:
        """Inverse of :meth:`to_big`; returns shape ``(..., e)``."""
        values = np.asarray(values, dtype=np.int64)
        idx = self._to_small[values]
        q = self.small.q
        return np.stack([(idx // q ** i) % q for i in range(self.e)], axis=-1)


_FIELDS: dict[tuple[int, int], GF] = {}


def field(b: int, modulus: int | None = None) -> GF:
    """Cached field constructor."""
    if modulus is None:
        modulus = DEFAULT_MODULI.get(b)
    key = (b, modulus)
    if key not in _FIELDS:
        _FIELDS[key] = GF(b, modulus)
    return _FIELDS[key]
