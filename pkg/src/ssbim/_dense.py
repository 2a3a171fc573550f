"""Dense modular data for ``R = Sym(V)``: monomial tables, symmetric powers,
multiplication matrices and the ``W``-action, all over ``F_p``.

Polynomials of total degree ``k`` are int64 row vectors indexed by
:func:`ssbim.realization.monomials` order.  A linear map ``A`` (rows = images
of basis vectors) acts on such vectors by right multiplication with
``sym_power(A, k)``.

Realizations over ``Q`` are evaluated in ``F_P`` for the fixed prime
``DEFAULT_PRIME``.  All data are integral, and a rank mod ``P`` can only drop
below the rational rank when ``P`` divides every maximal minor, so results
are rational ranks up to that (tested) event.  ``SECOND_PRIME`` exists for
cross-checks.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _kernels as K
from .realization import monomials

__all__ = ["DEFAULT_PRIME", "SECOND_PRIME", "Monomials", "DenseRing"]

DEFAULT_PRIME = 67108859  # largest prime below 2**26
SECOND_PRIME = 67108837


class Monomials:
    """Monomial bookkeeping for ``n`` variables."""

    def __init__(self, n: int):
        self.n = n
        self._mons: dict[int, list[tuple[int, ...]]] = {}
        self._index: dict[int, dict[tuple[int, ...], int]] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}
        self._first: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def mons(self, k: int) -> list[tuple[int, ...]]:
        if k not in self._mons:
            self._mons[k] = monomials(self.n, k) if k >= 0 else []
            self._index[k] = {m: i for i, m in enumerate(self._mons[k])}
        return self._mons[k]

    def index(self, k: int) -> dict[tuple[int, ...], int]:
        self.mons(k)
        return self._index[k]

    def dim(self, k: int) -> int:
        return len(self.mons(k))

    def mult_index(self, a: int, b: int) -> np.ndarray:
        """``T[i, j]`` = index in degree ``a+b`` of ``mon_a[i] * mon_b[j]``."""
        key = (a, b)
        if key not in self._mult:
            ma, mb, idx = self.mons(a), self.mons(b), self.index(a + b)
            T = np.empty((len(ma), len(mb)), dtype=np.int64)
            for i, x in enumerate(ma):
                for j, y in enumerate(mb):
                    T[i, j] = idx[tuple(p + q for p, q in zip(x, y))]
            self._mult[key] = T
        return self._mult[key]

    def first_split(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """For each degree-``k`` monomial: its first variable ``i`` and the index of ``m / x_i``."""
        if k not in self._first:
            lower = self.index(k - 1)
            var = np.empty(self.dim(k), dtype=np.int64)
            rest = np.empty(self.dim(k), dtype=np.int64)
            for t, m in enumerate(self.mons(k)):
                i = next(j for j, a in enumerate(m) if a)
                var[t] = i
                rest[t] = lower[m[:i] + (m[i] - 1,) + m[i + 1 :]]
            self._first[k] = (var, rest)
        return self._first[k]


def mul_matrix(mono: Monomials, f: np.ndarray, a: int, b: int, p: int) -> np.ndarray:
    """Matrix of ``g -> g f`` from degree ``b`` to ``a + b`` (``f`` of degree ``a``)."""
    T = mono.mult_index(a, b)  # (dim_a, dim_b)
    out = np.zeros((mono.dim(b), mono.dim(a + b)), dtype=np.int64)
    nz = np.flatnonzero(f)
    if nz.size:
        rows = np.broadcast_to(np.arange(mono.dim(b)), (nz.size, mono.dim(b)))
        vals = np.broadcast_to(f[nz][:, None], rows.shape)
        np.add.at(out, (rows, T[nz]), vals)
        out %= p
    return out


def sym_power(A: np.ndarray, k: int, src: Monomials, dst: Monomials, p: int) -> np.ndarray:
    """``Sym^k`` of the row map ``A`` (``src.n x dst.n``), degree ``k`` to ``k``."""
    if k == 0:
        return np.ones((1, 1), dtype=np.int64)
    prev = sym_power(A, k - 1, src, dst, p)
    var, rest = src.first_split(k)
    out = np.zeros((src.dim(k), dst.dim(k)), dtype=np.int64)
    for i in range(src.n):
        sel = np.flatnonzero(var == i)
        if sel.size:
            Mi = mul_matrix(dst, A[i] % p, 1, k - 1, p)
            out[sel] = K.matmul(prev[rest[sel]], Mi, p)
    return out


class DenseRing:
    """``F_p`` data of a realization used by the section layer."""

    def __init__(self, real, p: int):
        self.real = real
        self.W = real.W
        self.p = int(p)
        self.n = real.dim
        self.mono = Monomials(self.n)
        F = real.field
        red = lambda x: F.reduce_mod(x, self.p)  # noqa: E731
        self.alpha = np.array([[red(x) for x in a] for a in real.alpha], dtype=np.int64).reshape(-1, self.n)
        self.delta = np.array([[red(x) for x in real.delta(s)] for s in range(self.W.rank)], dtype=np.int64).reshape(
            -1, self.n
        )
        self._gen = [
            np.array([[red(x) for x in row] for row in real.gen_matrix(s)], dtype=np.int64).reshape(self.n, self.n)
            for s in range(self.W.rank)
        ]
        self._wmat: dict[int, np.ndarray] = {0: np.eye(self.n, dtype=np.int64)}
        self._act: dict[tuple[int, int], np.ndarray] = {}
        self._mulcache: dict[tuple, np.ndarray] = {}

    # ---------------------------------------------------------------- shapes

    def dim(self, k: int) -> int:
        return self.mono.dim(k) if k >= 0 else 0

    # ---------------------------------------------------------------- W-action

    def wmatrix(self, w: int) -> np.ndarray:
        """Row matrix of ``w`` on ``V`` mod p; ``M_{ys} = M_s M_y``."""
        if w not in self._wmat:
            word = self.W.word(w)
            prev = self.wmatrix(self.W.element(word[:-1]))
            self._wmat[w] = K.matmul(self._gen[word[-1]], prev, self.p)
        return self._wmat[w]

    def act_matrix(self, w: int, k: int) -> np.ndarray:
        key = (int(w), k)
        if key not in self._act:
            self._act[key] = sym_power(self.wmatrix(w), k, self.mono, self.mono, self.p)
        return self._act[key]

    def act(self, w: int, f: np.ndarray, k: int) -> np.ndarray:
        """``w(f)`` for ``f`` (or rows of ``f``) of degree ``k``."""
        return K.matmul(np.atleast_2d(f), self.act_matrix(w, k), self.p).reshape(np.shape(f))

    # ---------------------------------------------------------------- products

    def mul_matrix(self, f: np.ndarray, a: int, b: int, key=None) -> np.ndarray:
        """``g -> g f`` from degree ``b`` to ``a + b``; ``key`` enables caching."""
        if key is not None:
            ck = (key, a, b)
            if ck not in self._mulcache:
                self._mulcache[ck] = mul_matrix(self.mono, np.asarray(f) % self.p, a, b, self.p)
            return self._mulcache[ck]
        return mul_matrix(self.mono, np.asarray(f) % self.p, a, b, self.p)

    def multiply(self, f: np.ndarray, a: int, g: np.ndarray, b: int) -> np.ndarray:
        return K.matmul(np.atleast_2d(g), self.mul_matrix(f, a, b), self.p).reshape(-1)

    def linear(self, vec) -> np.ndarray:
        return np.asarray(vec, dtype=np.int64) % self.p

    def one(self) -> np.ndarray:
        return np.ones(1, dtype=np.int64)

    # ---------------------------------------------------------------- invariants

    def invariants(self, S0, k: int) -> np.ndarray:
        """Rows spanning ``(R^{W_{S0}})`` in total degree ``k`` (mod p)."""
        return _invariants(self, frozenset(S0), k)

    def restriction(self, lam: np.ndarray, k: int) -> np.ndarray:
        """Matrix of restriction to the hyperplane ``lam = 0``; kernel = ``lam * R_{k-1}``."""
        return _restriction(self, tuple(int(x) for x in lam), k)

    # ---------------------------------------------------------------- conversion

    def from_mpoly(self, f, k: int) -> np.ndarray:
        F = self.real.field
        return np.array([F.reduce_mod(c, self.p) for c in f.to_vector(k)], dtype=np.int64)

    def __hash__(self) -> int:
        return id(self)


@lru_cache(maxsize=None)
def _invariants(ring: DenseRing, S0: frozenset, k: int) -> np.ndarray:
    N = ring.dim(k)
    if not S0:
        return np.eye(N, dtype=np.int64)
    blocks = []
    for s in sorted(S0):
        M = ring.act_matrix(ring.W.mul_gen(0, s), k).copy()
        M[np.arange(N), np.arange(N)] -= 1
        blocks.append(M % ring.p)
    return K.nullspace_left(np.hstack(blocks), ring.p)


@lru_cache(maxsize=None)
def _restriction(ring: DenseRing, lam: tuple[int, ...], k: int) -> np.ndarray:
    p, n = ring.p, ring.n
    j = next(i for i, c in enumerate(lam) if c % p)
    inv = pow(lam[j], p - 2, p)
    # substitute x_j = -(1/c) sum_{i != j} lam_i x_i, landing in n-1 variables
    A = np.zeros((n, max(n - 1, 0)), dtype=np.int64)
    cols = [i for i in range(n) if i != j]
    for c, i in enumerate(cols):
        A[i, c] = 1
        A[j, c] = (-lam[i] * inv) % p
    return sym_power(A, k, ring.mono, Monomials(n - 1), p)
