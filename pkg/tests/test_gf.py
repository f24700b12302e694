import numpy as np
import pytest
from hypothesis import given, strategies as st

from eii import gf as gfm
from eii.gf import GF, FieldError, Lift, NoSolution, field
from oracles import clmul_mod, rank_bruteforce_gf2

DEGREES = st.sampled_from([1, 2, 3, 4, 5, 8])


@st.composite
def field_and_elems(draw, count=3):
    b = draw(DEGREES)
    F = field(b)
    xs = [draw(st.integers(0, F.q - 1)) for _ in range(count)]
    return F, xs


@given(field_and_elems())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, 1) == a and F.add(a, 0) == a and F.add(a, a) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@pytest.mark.parametrize("b", [2, 3, 4, 8])
def test_mul_matches_carryless_reduction(b):
    F = field(b)
    rng = np.random.default_rng(b)
    for a, c in rng.integers(0, F.q, size=(300, 2)):
        assert F.mul(int(a), int(c)) == clmul_mod(int(a), int(c), b, F.modulus)


def test_alpha_powers_cycle():
    F = field(4)
    assert F.alpha == 2
    assert F.exp(15) == 1
    assert sorted(F.exp(i) for i in range(15)) == list(range(1, 16))
    assert F.pow(F.alpha, 4) == 0b0011          # x^4 = x + 1
    assert F.log(F.exp(7)) == 7


def test_bad_moduli_rejected():
    with pytest.raises(FieldError):
        GF(4, 0x1F)            # x^4+x^3+x^2+x+1 is irreducible but not primitive
    with pytest.raises(FieldError):
        GF(4, 0x7)
    with pytest.raises(FieldError):
        GF(17)


def test_element_wrapper():
    F = field(3)
    a, b = F.element(3), F.element(5)
    assert int(a * b) == F.mul(3, 5)
    assert int(a / b * b) == 3
    with pytest.raises(FieldError):
        a + field(4).element(1)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2 ** 31))
def test_rank_gf2_against_bruteforce(r, c, seed):
    A = np.random.default_rng(seed).integers(0, 2, size=(r, c))
    assert gfm.rank(field(1), A) == rank_bruteforce_gf2(A)


@given(st.integers(1, 5), st.integers(0, 2 ** 31))
def test_solve_and_inverse(n, seed):
    F = field(4)
    rng = np.random.default_rng(seed)
    A = F.random(rng, (n, n))
    x = F.random(rng, n)
    y = gfm.matmul(F, A, x[:, None])[:, 0]
    sol, unique = gfm.solve(F, A, y)
    assert np.array_equal(gfm.matmul(F, A, sol[:, None])[:, 0], y)
    if gfm.rank(F, A) == n:
        assert unique and np.array_equal(sol, x)
        Ai = gfm.inverse(F, A)
        assert np.array_equal(gfm.matmul(F, A, Ai), gfm.identity(n))
    else:
        assert not unique


def test_inconsistent_system():
    F = field(2)
    with pytest.raises(NoSolution):
        gfm.solve(F, [[1, 1], [1, 1]], [1, 0])


@given(st.integers(0, 2 ** 31))
def test_nullspace_is_orthogonal(seed):
    F = field(3)
    rng = np.random.default_rng(seed)
    A = F.random(rng, (3, 6))
    N = gfm.nullspace(F, A)
    assert N.shape[0] == 6 - gfm.rank(F, A)
    assert not gfm.matmul(F, A, N.T).any()


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2 ** 31))
def test_kronecker_acts_on_row_read_matrix(m0, n0, m1, n1, seed):
    # (A x B) applied to C read row by row equals A C B^T read row by row
    F = field(4)
    rng = np.random.default_rng(seed)
    A, B, C = F.random(rng, (m0, n0)), F.random(rng, (m1, n1)), F.random(rng, (n0, n1))
    lhs = gfm.matmul(F, gfm.kronecker(F, A, B), C.reshape(-1, 1))[:, 0]
    rhs = gfm.matmul(F, gfm.matmul(F, A, C), B.T).ravel()
    assert np.array_equal(lhs, rhs)
    # entrywise form: u_{r m1 + v} = sum_w a_{r,w} sum_j b_{v,j} c_{w,j}
    r, v = m0 - 1, m1 - 1
    acc = 0
    for w in range(n0):
        inner = 0
        for j in range(n1):
            inner ^= F.mul(int(B[v, j]), int(C[w, j]))
        acc ^= F.mul(int(A[r, w]), inner)
    assert lhs[r * m1 + v] == acc


@pytest.mark.parametrize("small,big", [(1, 4), (2, 4), (2, 8), (4, 8), (3, 3)])
def test_lift_is_linear_bijection(small, big):
    S, B = field(small), field(big)
    L = Lift(S, B)
    rng = np.random.default_rng(0)
    x, y = S.random(rng, (50, L.e)), S.random(rng, (50, L.e))
    c = S.random(rng, 50)
    assert np.array_equal(L.to_small(L.to_big(x)), x)
    lhs = L.to_big(x ^ S.vmul(c[:, None], y))
    rhs = L.to_big(x) ^ B.vmul(L.phi[c], L.to_big(y))
    assert np.array_equal(lhs, rhs)


def test_binary_lift_is_bit_basis():
    L = Lift(field(1), field(4))
    assert L.to_big([0, 0, 0, 1]) == 8
    assert list(L.to_small(5)) == [1, 0, 1, 0]
