import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from ssbim import _kernels as K

P = 67108859


def sympy_rref(A, p):
    M = DomainMatrix([[GF(p)(int(x)) for x in row] for row in A], A.shape, GF(p))
    R, piv = M.rref()
    rows = [[int(x) % p for x in row] for row in R.to_list()[: len(piv)]]
    return np.array(rows, dtype=np.int64).reshape(len(piv), A.shape[1]), np.array(piv, dtype=np.int64)


mats = st.integers(1, 7).flatmap(
    lambda m: st.integers(1, 7).flatmap(lambda n: arrays(np.int64, (m, n), elements=st.integers(0, 4)))
)


@settings(max_examples=80, deadline=None)
@given(mats, st.sampled_from([2, 5, 101, P]))
def test_rref_matches_sympy(A, p):
    R, piv = K.rref(A % p, p)
    R2, piv2 = sympy_rref(A % p, p)
    assert np.array_equal(piv, piv2)
    assert np.array_equal(R % p, R2)
    assert K.rank(A % p, p) == piv.size


@settings(max_examples=40, deadline=None)
@given(mats)
def test_numpy_path_matches_active_backend(A):
    F = A.astype(np.float64)
    piv_np = K._echelon_numpy(F.copy(), P, True)
    R, piv = K.rref(A, P)
    assert np.array_equal(piv_np, piv)


@settings(max_examples=60, deadline=None)
@given(mats)
def test_nullspace_left(A):
    N = K.nullspace_left(A, P)
    assert N.shape[0] == A.shape[0] - K.rank(A, P)
    assert not np.any(K.matmul(N, A, P)) if N.size else True


def test_solve_left():
    rng = np.random.default_rng(1)
    B = rng.integers(0, P, size=(3, 6))
    X = rng.integers(0, P, size=(4, 3))
    T = K.matmul(X, B, P)
    assert np.array_equal(K.solve_left(B, T, P), X)
    with pytest.raises(ValueError):
        K.solve_left(B, T + np.eye(4, 6, dtype=np.int64), P)


@pytest.mark.parametrize("inner", [3, 50, 4000])
def test_matmul_exact(inner):
    rng = np.random.default_rng(inner)
    A = rng.integers(0, P, size=(3, inner))
    B = rng.integers(0, P, size=(inner, 2))
    expect = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(inner)) % P for j in range(2)] for i in range(3)]
    assert K.matmul(A, B, P).tolist() == expect


def test_edge_cases():
    assert K.rank(np.zeros((0, 3), dtype=np.int64), P) == 0
    assert K.nullspace_left(np.zeros((2, 0), dtype=np.int64), P).tolist() == [[1, 0], [0, 1]]
    assert K.inv_mod(3, 7) == 5
    with pytest.raises(ZeroDivisionError):
        K.inv_mod(7, 7)
    with pytest.raises(ValueError):
        K.rank(np.ones((1, 1), dtype=np.int64), 1 << 27)
    assert K.BACKEND in ("numba", "numpy")
