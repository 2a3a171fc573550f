"""Dense linear algebra over prime fields GF(p), p < 2**26.

Matrices are int64 arrays holding residues in ``[0, p)``.  Elimination runs
on a float64 copy: with ``p < 2**26`` every product of two residues is below
``2**52`` and therefore exact, and ``x - floor(x / p) * p`` reduces it.

The elimination kernels are compiled with numba when it is importable and
``SSBIM_DISABLE_NUMBA`` is unset (or ``0``).  Otherwise a vectorised numpy
implementation with identical results is used.  ``BACKEND`` records which.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 1 << 26

_disabled = os.environ.get("SSBIM_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

try:  # pragma: no cover - exercised through BACKEND
    if _disabled:
        raise ImportError("numba disabled by SSBIM_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "MAX_PRIME",
    "echelon_pivots",
    "rref",
    "rank",
    "nullspace_left",
    "solve_left",
    "matmul",
    "inv_mod",
]


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod p")
    return pow(a, p - 2, p)


# ---------------------------------------------------------------- numpy path


def _echelon_numpy(A: np.ndarray, p: int, reduce: bool) -> np.ndarray:
    """In-place elimination on float64 ``A``; returns pivot columns."""
    m, n = A.shape
    pf = float(p)
    pinv = 1.0 / pf
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k], c:] = A[[k, r], c:]
        inv = float(pow(int(A[r, c]), p - 2, p))
        row = A[r, c:] * inv
        row -= np.floor(row * pinv) * pf
        A[r, c:] = row
        lo = 0 if reduce else r + 1
        f = A[lo:, c].copy()
        if not reduce:
            sel = np.flatnonzero(f)
        else:
            f[r - lo] = 0.0
            sel = np.flatnonzero(f)
        if sel.size:
            rows = sel + lo
            block = A[rows, c:] - np.outer(f[sel], row)
            block -= np.floor(block * pinv) * pf
            A[rows, c:] = block
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _echelon_numba(A, p, reduce):  # pragma: no cover - compiled
        m, n = A.shape
        pf = float(p)
        pinv = 1.0 / pf
        piv = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = -1
            for i in range(r, m):
                if A[i, c] != 0.0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(c, n):
                    t = A[r, j]
                    A[r, j] = A[k, j]
                    A[k, j] = t
            b = int(A[r, c])
            e = p - 2
            inv = 1
            while e:
                if e & 1:
                    inv = inv * b % p
                b = b * b % p
                e >>= 1
            fi = float(inv)
            for j in range(c, n):
                x = A[r, j] * fi
                A[r, j] = x - np.floor(x * pinv) * pf
            lo = 0 if reduce else r + 1
            for i in range(lo, m):
                if i == r:
                    continue
                f = A[i, c]
                if f != 0.0:
                    for j in range(c, n):
                        x = A[i, j] - f * A[r, j]
                        A[i, j] = x - np.floor(x * pinv) * pf
            piv[r] = c
            r += 1
        return piv[:r].copy()


def _run(A: np.ndarray, p: int, reduce: bool) -> tuple[np.ndarray, np.ndarray]:
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"prime {p} outside supported range [2, 2**26)")
    F = np.ascontiguousarray(A, dtype=np.float64).copy()
    if F.size == 0:
        return F, np.zeros(0, dtype=np.int64)
    if HAS_NUMBA:
        piv = _echelon_numba(F, int(p), bool(reduce))
    else:
        piv = _echelon_numpy(F, int(p), bool(reduce))
    return F, piv


def echelon_pivots(A: np.ndarray, p: int) -> np.ndarray:
    """Pivot columns of a row echelon form of ``A`` mod ``p``.

    Columns are processed left to right, so the rank of any column prefix
    ``A[:, :c]`` equals ``count(pivots < c)``.
    """
    return _run(A, p, reduce=False)[1]


def rank(A: np.ndarray, p: int) -> int:
    return int(echelon_pivots(A, p).size)


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    F, piv = _run(A, p, reduce=True)
    return F[: piv.size].astype(np.int64), piv


def nullspace_left(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : x @ A = 0 mod p}``."""
    m, n = A.shape
    if m == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, piv = rref(np.ascontiguousarray(A.T), p)
    free = np.setdiff1d(np.arange(m), piv, assume_unique=True)
    K = np.zeros((free.size, m), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        if piv.size:
            K[i, piv] = (-R[:, f]) % p
    return K


def solve_left(B: np.ndarray, T: np.ndarray, p: int) -> np.ndarray:
    """``X`` with ``X @ B = T`` for ``B`` of full row rank; ``ValueError`` if inconsistent."""
    r = B.shape[0]
    if T.shape[0] == 0:
        return np.zeros((0, r), dtype=np.int64)
    if r == 0:
        if np.any(T % p):
            raise ValueError("target outside the row space")
        return np.zeros((T.shape[0], 0), dtype=np.int64)
    R, piv = rref(np.hstack([B.T, T.T]) % p, p)
    if piv.size < r or np.any(piv[:r] != np.arange(r)) or piv.size > r:
        raise ValueError("target outside the row space or rows dependent")
    return np.ascontiguousarray(R[:r, r:].T)


_SPLIT = 13  # residues < 2**26 split into two 13-bit halves


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` through float64 BLAS with exact split products."""
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    Bf = B.astype(np.float64)
    inner = A.shape[1]
    if inner * float(p) * float(p) < 2.0**53:
        out = A.astype(np.float64) @ Bf
        return np.fmod(out, p).astype(np.int64)
    if inner * float(1 << _SPLIT) * float(p) >= 2.0**53:
        # huge inner dimension: chunk it
        step = max(1, int(2.0**53 / (float(1 << _SPLIT) * p)) - 1)
        acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for s in range(0, inner, step):
            acc = (acc + matmul(A[:, s : s + step], B[s : s + step], p)) % p
        return acc
    lo = (A & ((1 << _SPLIT) - 1)).astype(np.float64)
    hi = (A >> _SPLIT).astype(np.float64)
    plo = np.fmod(lo @ Bf, p).astype(np.int64)
    phi = np.fmod(hi @ Bf, p).astype(np.int64)
    return (phi * (1 << _SPLIT) + plo) % p
