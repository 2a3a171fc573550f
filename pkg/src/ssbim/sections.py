"""Graded section models of (singular) Soergel bimodules.

A model ``M`` lives inside ``(+)_slots R``: every slot carries a component
(a coset ``W_{S0} x``, stored as its minimal representative) and a section of
degree ``d`` assigns to each slot a homogeneous polynomial of total degree
``(d + offset) / 2``.  Degreewise bases are computed lazily over ``F_p`` by a
``provider`` callback and cached; ``truncation`` (if set) caps the degrees that
may be requested.

Values of a section at slot ``x`` are coordinates for the *right* ``R``-action,
so the left action of ``f`` on the ``x`` component is multiplication by
``x~^{-1}(f)`` and convolution with ``B_s`` reads
``(z * beta)_{ux} = x^{-1}(z_u) beta_x``.

Models built from generators (standard modules, Bott-Samelson modules and
their push/pull images) record a free right basis, which ``hom_space`` uses to
parametrize morphisms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from ._dense import DenseRing
from .coxeter import ConfigError, ElementId, WindowError
from .hecke import HeckeAlgebra, HeckeElt, LaurentPoly
from .parabolic import ParabolicElt, ParabolicModule
from .realization import MPoly, Realization

__all__ = [
    "TruncationError",
    "StabilizationError",
    "FreenessError",
    "PreconditionError",
    "Generator",
    "SectionModule",
    "standard_module",
    "bs_module",
    "bott_samelson",
    "tensor_bs",
    "pushforward",
    "pullback",
    "restrict_closed",
    "quotient_to",
    "graded_rank",
    "default_window",
    "subquotient_grk",
    "corestriction_grk",
    "character",
    "support",
    "DualCharacterData",
    "dual_character_data",
    "structure_algebra",
    "tensor_image",
    "relative_generators",
    "SplittingReport",
    "longest_splitting",
    "HomSpace",
    "hom_space",
    "hom_grk",
    "hom_window",
    "module_to_json",
]


class TruncationError(WindowError):
    """A degree beyond the model's truncation was requested."""


class StabilizationError(WindowError):
    """The graded-rank candidate did not stabilize inside the window."""


class FreenessError(ArithmeticError):
    """A Hilbert series is not a nonnegative multiple of that of ``R``."""


class PreconditionError(ConfigError):
    """GKM or freeness hypotheses fail for the realization."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


# ---------------------------------------------------------------- model type


@dataclass(frozen=True)
class Generator:
    """A right-basis element: section degree and values ``(nslots, dim R_k)``."""

    degree: int
    values: np.ndarray


Provider = Callable[["SectionModule", int], np.ndarray]


class SectionModule:
    """Lazily computed degreewise section spaces.

    ``basis(d)`` has shape ``(rows, nslots, dim R_k)`` with ``k = (d + offset)/2``;
    rows are linearly independent.
    """

    def __init__(
        self,
        ring: DenseRing,
        S0: Iterable[int],
        slots: Sequence[int],
        offset: int,
        provider: Provider | None = None,
        *,
        generators: Sequence[Generator] | None = None,
        bound: int | None = None,
        truncation: int | None = None,
        paths: Sequence[tuple[int, ...]] | None = None,
        label: str = "",
    ):
        self.ring = ring
        self.W = ring.W
        self.p = ring.p
        self.S0 = frozenset(S0)
        self.slots = tuple(ElementId(int(x)) for x in slots)
        self.offset = int(offset)
        self.generators = list(generators) if generators is not None else None
        if provider is None:
            if self.generators is None:
                raise ValueError("need a provider or generators")
            provider = _free_provider
        self._provider = provider
        if bound is None:
            bound = max((abs(g.degree) for g in self.generators), default=0) if self.generators else self.offset
        self.bound = int(bound)
        self.truncation = truncation
        self.paths = tuple(paths) if paths is not None else None
        self.label = label
        self._cache: dict[int, np.ndarray] = {}
        self._rels: dict[tuple[bytes, int], list] = {}

    # ---------------------------------------------------------------- shape

    @property
    def nslots(self) -> int:
        return len(self.slots)

    def kdeg(self, d: int) -> int | None:
        t = d + self.offset
        return t // 2 if t >= 0 and t % 2 == 0 else None

    def dimk(self, d: int) -> int:
        k = self.kdeg(d)
        return 0 if k is None else self.ring.dim(k)

    @property
    def min_degree(self) -> int:
        return -self.offset

    def degrees(self, D: int) -> range:
        return range(self.min_degree, D + 1, 2)

    def components(self) -> list[ElementId]:
        return sorted(set(self.slots))

    def slots_of(self, comps: Iterable[int]) -> list[int]:
        cs = set(int(c) for c in comps)
        return [i for i, x in enumerate(self.slots) if x in cs]

    def columns(self, slot_ids: Sequence[int], d: int) -> np.ndarray:
        dk = self.dimk(d)
        if not len(slot_ids) or not dk:
            return np.zeros(0, dtype=np.int64)
        return (np.asarray(slot_ids, dtype=np.int64)[:, None] * dk + np.arange(dk)).reshape(-1)

    # ---------------------------------------------------------------- data

    def basis(self, d: int) -> np.ndarray:
        if self.truncation is not None and d > self.truncation:
            raise TruncationError(f"degree {d} beyond truncation {self.truncation} of {self.label or 'model'}")
        if d not in self._cache:
            k = self.kdeg(d)
            if k is None:
                B = np.zeros((0, self.nslots, 0), dtype=np.int64)
            else:
                B = np.asarray(self._provider(self, d), dtype=np.int64) % self.p
                width = self.nslots * self.ring.dim(k)
                B = B.reshape(B.size // width if width else 0, self.nslots, self.ring.dim(k))
            B.setflags(write=False)
            self._cache[d] = B
        return self._cache[d]

    def flat(self, d: int) -> np.ndarray:
        B = self.basis(d)
        return B.reshape(B.shape[0], B.shape[1] * B.shape[2])

    def dim(self, d: int) -> int:
        return int(self.basis(d).shape[0])

    def hilbert(self, D: int) -> dict[int, int]:
        return {d: self.dim(d) for d in self.degrees(D)}

    def layout(self, d: int) -> list[tuple[int, int, int]]:
        """For free models: ``(generator index, first row, multiplier degree)`` blocks of ``basis(d)``."""
        if self.generators is None:
            raise ValueError("model has no recorded generators")
        out, start = [], 0
        for j, g in enumerate(self.generators):
            t = d - g.degree
            if t >= 0 and t % 2 == 0:
                out.append((j, start, t // 2))
                start += self.ring.dim(t // 2)
        return out

    def with_truncation(self, D: int | None) -> "SectionModule":
        M = self._clone()
        M.truncation = D
        return M

    def _clone(self) -> "SectionModule":
        M = SectionModule.__new__(SectionModule)
        M.__dict__.update(self.__dict__)
        M._rels = {}  # clones may regroup slots, which changes the left action
        return M

    # ---------------------------------------------------------------- actions

    def twisted_left(self, Z: np.ndarray, d: int, f: np.ndarray, a: int) -> np.ndarray:
        """``(f z)_x = x~^{-1}(f) z_x`` on degree-``d`` rows ``Z`` of shape ``(r, nslots, dim R_k)``."""
        ring = self.ring
        r, n, dk = Z.shape
        k = self.kdeg(d)
        out = np.zeros((r, n, ring.dim(k + a)), dtype=np.int64)
        fkey = f.tobytes()
        for x in set(self.slots):
            sel = self.slots_of([x])
            t = int(self.W.inverse(x))
            Mx = ring.mul_matrix(ring.act(t, f, a), a, k, key=("tw", t, fkey, a))
            out[:, sel, :] = K.matmul(Z[:, sel, :].reshape(-1, dk), Mx, self.p).reshape(r, len(sel), ring.dim(k + a))
        return out

    def right_mul(self, Z: np.ndarray, d: int, f: np.ndarray, a: int) -> np.ndarray:
        ring = self.ring
        r, n, dk = Z.shape
        k = self.kdeg(d)
        Mf = ring.mul_matrix(f, a, k)
        return K.matmul(Z.reshape(-1, dk), Mf, self.p).reshape(r, n, Mf.shape[1])

    def __repr__(self) -> str:
        S0 = ",".join(str(s) for s in sorted(self.S0))
        return f"SectionModule({self.label or '?'}, S0={{{S0}}}, slots={self.nslots}, offset={self.offset})"


def _free_provider(M: SectionModule, d: int) -> np.ndarray:
    ring = M.ring
    k = M.kdeg(d)
    blocks = []
    for j, _start, m in M.layout(d):
        g = M.generators[j]
        kg = k - m
        T = ring.mono.mult_index(kg, m)  # (dim kg, dim m)
        dm = ring.dim(m)
        out = np.zeros((dm, M.nslots, ring.dim(k)), dtype=np.int64)
        rows = np.arange(dm)[:, None, None]
        cols = np.arange(M.nslots)[None, :, None]
        out[rows, cols, T.T[:, None, :]] = g.values[None, :, :]
        blocks.append(out)
    if not blocks:
        return np.zeros((0, M.nslots, ring.dim(k)), dtype=np.int64)
    return np.concatenate(blocks)


# ---------------------------------------------------------------- constructors


def _ring(obj) -> DenseRing:
    if isinstance(obj, DenseRing):
        return obj
    if isinstance(obj, Realization):
        return obj.dense()
    raise TypeError("expected a Realization or DenseRing")


def standard_module(real, w: int = 0, S0: Iterable[int] = ()) -> SectionModule:
    """``R_w``: one component, generated by ``1`` in degree 0."""
    ring = _ring(real)
    S0 = frozenset(S0)
    w = ring.W.coset_rep(w, S0)
    g = Generator(0, np.ones((1, 1), dtype=np.int64))
    return SectionModule(ring, S0, [w], 0, generators=[g], bound=0, paths=[()], label=f"R_{ring.W.name(w)}")


def _convolve(M: SectionModule, Z: np.ndarray, d: int, s: int, beta: str) -> np.ndarray:
    """Rows ``z * beta`` for ``beta`` in ``{'1', 'delta', 'left_delta'}``.

    ``'1'``: image of ``1(x)1``; ``'delta'``: of ``delta(x)1`` = (delta, s delta);
    ``'left_delta'``: of ``1(x)delta`` = (delta, delta).
    """
    ring = M.ring
    r, n, dk = Z.shape
    k = M.kdeg(d)
    sZ = K.matmul(Z.reshape(-1, dk), ring.act_matrix(ring.W.mul_gen(0, s), k), M.p).reshape(r, n, dk)
    if beta == "1":
        out = np.empty((r, 2 * n, dk), dtype=np.int64)
        out[:, 0::2] = Z
        out[:, 1::2] = sZ
        return out
    dl = ring.delta[s]
    other = ring.act(ring.W.mul_gen(0, s), dl, 1) if beta == "delta" else dl
    out = np.empty((r, 2 * n, ring.dim(k + 1)), dtype=np.int64)
    out[:, 0::2] = K.matmul(Z.reshape(-1, dk), ring.mul_matrix(dl, 1, k), M.p).reshape(r, n, ring.dim(k + 1))
    out[:, 1::2] = K.matmul(sZ.reshape(-1, dk), ring.mul_matrix(other, 1, k), M.p).reshape(r, n, ring.dim(k + 1))
    return out


def tensor_bs(M: SectionModule, s: int, *, use_generators: bool = True) -> SectionModule:
    """``M (x)_R B_s``: slot ``x`` splits into ``x`` and ``x s``.

    With recorded generators the result is free on ``g * (1(x)1)`` (degree
    ``deg g - 1``) and ``g * (delta(x)1)`` (degree ``deg g + 1``).  Otherwise
    degree ``d`` is spanned by ``M_{d+1} * (1(x)1)`` and ``M_{d-1} * (1(x)delta)``.
    """
    W = M.W
    slots = []
    for x in M.slots:
        slots += [x, W.coset_rep(W.mul_gen(x, s), M.S0)]
    paths = None
    if M.paths is not None:
        paths = [q for pth in M.paths for q in (pth + (0,), pth + (1,))]
    label = f"{M.label}*B{s + 1}" if M.label else f"B{s + 1}"
    trunc = None if M.truncation is None else M.truncation - 1
    if M.generators is not None and use_generators:
        gens = []
        for g in M.generators:
            Z = g.values[None]
            gens.append(Generator(g.degree - 1, _convolve(M, Z, g.degree, s, "1")[0]))
            gens.append(Generator(g.degree + 1, _convolve(M, Z, g.degree, s, "delta")[0]))
        return SectionModule(
            M.ring, M.S0, slots, M.offset + 1, generators=gens, truncation=trunc, paths=paths, label=label
        )

    def provide(N: SectionModule, d: int) -> np.ndarray:
        parts = []
        if M.kdeg(d + 1) is not None:
            parts.append(_convolve(M, M.basis(d + 1), d + 1, s, "1"))
        if M.kdeg(d - 1) is not None and M.dim(d - 1):
            parts.append(_convolve(M, M.basis(d - 1), d - 1, s, "left_delta"))
        parts = [q for q in parts if q.shape[0]]
        if not parts:
            return np.zeros((0, N.nslots, N.dimk(d)), dtype=np.int64)
        return np.concatenate(parts)

    return SectionModule(
        M.ring, M.S0, slots, M.offset + 1, provide, bound=M.bound + 1, truncation=trunc, paths=paths, label=label
    )


def bott_samelson(real, word: Sequence[int], S0: Iterable[int] = ()) -> SectionModule:
    """``pi_*`` of ``B_{s_1} (x) ... (x) B_{s_l}`` (plain BS module for ``S0 = {}``)."""
    M = standard_module(real, 0)
    for s in word:
        M = tensor_bs(M, s)
    M.label = "BS(" + ",".join(str(s + 1) for s in word) + ")"
    return pushforward(M, S0) if S0 else M


def bs_module(real, s: int) -> SectionModule:
    """``B_s = R (x)_{R^s} R (1)``."""
    M = tensor_bs(standard_module(real, 0), s)
    M.label = f"B{s + 1}"
    return M


# ---------------------------------------------------------------- push / pull


def pushforward(M: SectionModule, S0: Iterable[int]) -> SectionModule:
    """Same sections, components regrouped along ``W_{S1}\\W -> W_{S0}\\W``."""
    S0 = frozenset(S0)
    if not M.S0 <= S0:
        raise ValueError("pushforward needs S0 containing the module's parabolic")
    if not M.W.parabolic_is_finite(S0):
        raise ValueError("W_{S0} must be finite")
    N = M._clone()
    N.S0 = S0
    N.slots = tuple(M.W.coset_rep(x, S0) for x in M.slots)
    N._provider = lambda _N, d, _M=M: _M.basis(d)
    N._cache = {}
    if S0 != M.S0:
        N.label = f"pi*{M.label}" if M.label else "pi*"
    return N


def relative_generators(real, S1: Iterable[int], S0: Iterable[int]) -> list[tuple[np.ndarray, int]]:
    """Free generators ``(vector, poly degree)`` of ``R^{W_{S1}}`` over ``R^{W_{S0}}``.

    Chosen degreewise as complements of the ideal generated by positive-degree
    ``W_{S0}``-invariants.  Raises ``PreconditionError`` if the count does not
    match ``[W_{S0}:W_{S1}]`` with the expected degrees.
    """
    ring = _ring(real)
    S1, S0 = frozenset(S1), frozenset(S0)
    return _relative_generators(ring, S1, S0)


_REL_CACHE: dict[tuple[int, frozenset, frozenset], list[tuple[np.ndarray, int]]] = {}


def _relative_generators(ring: DenseRing, S1: frozenset, S0: frozenset) -> list[tuple[np.ndarray, int]]:
    key = (id(ring), S1, S0)
    if key in _REL_CACHE:
        return _REL_CACHE[key]
    W = ring.W
    if not S1 <= S0:
        raise ValueError("S1 must be contained in S0")
    reps = [u for u in W.min_coset_reps(S1) if set(W.word(u)) <= S0]
    expected: dict[int, int] = {}
    for u in reps:
        expected[W.length(u)] = expected.get(W.length(u), 0) + 1
    gens: list[tuple[np.ndarray, int]] = []
    top = max(expected)
    for k in range(top + 1):
        cand = ring.invariants(S1, k)
        ideal = []
        for a in range(1, k + 1):
            F = ring.invariants(S0, a)
            G = ring.invariants(S1, k - a)
            if F.shape[0] and G.shape[0]:
                for f in F:
                    ideal.append(K.matmul(G, ring.mul_matrix(f, a, k - a), ring.p))
        I = np.concatenate(ideal) if ideal else np.zeros((0, ring.dim(k)), dtype=np.int64)
        stack = np.concatenate([I, cand])
        piv = K.echelon_pivots(np.ascontiguousarray(stack.T), ring.p)
        new = [cand[i - I.shape[0]] for i in piv if i >= I.shape[0]]
        if len(new) != expected.get(k, 0):
            raise PreconditionError(
                "invariants are not free over the larger parabolic",
                {"degree": 2 * k, "found": len(new), "expected": expected.get(k, 0)},
            )
        gens += [(g, k) for g in new]
    _REL_CACHE[key] = gens
    return gens


def pullback(M: SectionModule, S1: Iterable[int]) -> SectionModule:
    """``R^{W_{S1}} (x)_{R^{W_{S0}}} M`` as sections ``y -> y~^{-1}(f) z_{pi(y)}``."""
    S1 = frozenset(S1)
    if S1 == M.S0:
        return M
    if not S1 <= M.S0:
        raise ValueError("pullback needs S1 contained in the module's parabolic")
    ring, W = M.ring, M.W
    rel = _relative_generators(ring, S1, M.S0)
    fib = [u for u in W.min_coset_reps(S1) if set(W.word(u)) <= M.S0]
    slots, src = [], []
    for i, x in enumerate(M.slots):
        for u in fib:
            slots.append(W.coset_rep(W.mul(u, x), S1))
            src.append(i)
    src_arr = np.array(src, dtype=np.int64)
    twists = [W.inverse(y) for y in slots]

    def lift(Z: np.ndarray, d: int, f: np.ndarray, a: int) -> np.ndarray:
        r, _, dk = Z.shape
        k = M.kdeg(d)
        out = np.empty((r, len(slots), ring.dim(k + a)), dtype=np.int64)
        fkey = f.tobytes()
        for j, (i, t) in enumerate(zip(src_arr, twists)):
            tf = ring.act(t, f, a)
            out[:, j, :] = K.matmul(Z[:, i, :], ring.mul_matrix(tf, a, k, key=("tw", int(t), fkey, a)), ring.p)
        return out

    label = f"pi^*{M.label}" if M.label else "pi^*"
    trunc = None if M.truncation is None else M.truncation
    if M.generators is not None:
        gens = []
        for f, a in rel:
            for g in M.generators:
                gens.append(Generator(g.degree + 2 * a, lift(g.values[None], g.degree, f, a)[0]))
        return SectionModule(ring, S1, slots, M.offset, generators=gens, truncation=trunc, label=label)

    def provide(N: SectionModule, d: int) -> np.ndarray:
        parts = [lift(M.basis(d - 2 * a), d - 2 * a, f, a) for f, a in rel if M.kdeg(d - 2 * a) is not None]
        parts = [q for q in parts if q.shape[0]]
        if not parts:
            return np.zeros((0, N.nslots, N.dimk(d)), dtype=np.int64)
        return np.concatenate(parts)

    extra = 2 * max((a for _, a in rel), default=0)
    return SectionModule(ring, S1, slots, M.offset, provide, bound=M.bound + extra, truncation=trunc,
                         label=label)


# ---------------------------------------------------------------- M_I and M^I


def restrict_closed(M: SectionModule, I: Iterable[int]) -> SectionModule:
    """``M_I``: sections vanishing outside ``I``, restricted to the ``I`` slots."""
    I = set(int(x) for x in I)
    keep = M.slots_of(I)
    out = [i for i in range(M.nslots) if i not in set(keep)]

    def provide(N: SectionModule, d: int) -> np.ndarray:
        B = M.basis(d)
        if not out:
            return B[:, keep]
        F = M.flat(d)
        cols = M.columns(out, d)
        if cols.size == 0:
            return B[:, keep]
        Kn = K.nullspace_left(np.ascontiguousarray(F[:, cols]), M.p)
        if Kn.shape[0] == 0:
            return np.zeros((0, len(keep), B.shape[2]), dtype=np.int64)
        return K.matmul(Kn, F, M.p).reshape(-1, M.nslots, B.shape[2])[:, keep]

    paths = [M.paths[i] for i in keep] if M.paths is not None else None
    return SectionModule(M.ring, M.S0, [M.slots[i] for i in keep], M.offset, provide, bound=M.bound,
                         truncation=M.truncation, paths=paths, label=f"{M.label}_I")


def quotient_to(M: SectionModule, I: Iterable[int]) -> SectionModule:
    """``M^I``: image of the projection onto the ``I`` slots."""
    I = set(int(x) for x in I)
    keep = M.slots_of(I)

    def provide(N: SectionModule, d: int) -> np.ndarray:
        B = M.basis(d)
        P = np.ascontiguousarray(B[:, keep].reshape(B.shape[0], len(keep) * B.shape[2]))
        if P.size == 0:
            return np.zeros((0, len(keep), B.shape[2]), dtype=np.int64)
        R, _ = K.rref(P, M.p)
        return R.reshape(-1, len(keep), B.shape[2])

    paths = [M.paths[i] for i in keep] if M.paths is not None else None
    return SectionModule(M.ring, M.S0, [M.slots[i] for i in keep], M.offset, provide, bound=M.bound,
                         truncation=M.truncation, paths=paths, label=f"{M.label}^I")


# ---------------------------------------------------------------- graded ranks


def default_window(bound: int, n: int) -> int:
    """Top degree ``D`` used when none is given; see the decisions ledger."""
    return bound + 2 * n + 2


def graded_rank(dims: dict[int, int], n: int, D: int) -> LaurentPoly:
    """``grk`` from a Hilbert function known for all degrees ``<= D``.

    ``P(t) = H(t) (1 - t^2)^n``; the coefficients of ``P`` in ``(D - 2n, D]``
    must vanish (the candidate is then constant over the last ``2n`` degrees).
    Returns ``sum_d P_d v^{-d}``.
    """
    if not dims or all(c == 0 for c in dims.values()):
        return LaurentPoly()
    lo = min(d for d, c in dims.items() if c)
    binom = [(-1) ** j * math.comb(n, j) for j in range(n + 1)]
    P: dict[int, int] = {}
    for d in range(lo, D + 1):
        c = sum(b * dims.get(d - 2 * j, 0) for j, b in enumerate(binom))
        if c:
            P[d] = c
    tail = {d: c for d, c in P.items() if d > D - 2 * n}
    if tail:
        raise StabilizationError(f"graded rank not stable below D={D}: tail {tail}")
    if any(c < 0 for c in P.values()):
        raise FreenessError(f"negative graded-rank coefficient: {P}")
    return LaurentPoly({-d: c for d, c in P.items()})


def _group_slots(M: SectionModule, order: Sequence[int]) -> list[list[int]]:
    return [M.slots_of([x]) for x in order]


def _prefix_ranks(M: SectionModule, d: int, groups: Sequence[Sequence[int]]) -> list[int]:
    F = M.flat(d)
    if F.shape[0] == 0:
        return [0] * len(groups)
    dk = M.dimk(d)
    perm = np.concatenate([M.columns(g, d) for g in groups]) if groups else np.zeros(0, dtype=np.int64)
    piv = K.echelon_pivots(np.ascontiguousarray(F[:, perm]), M.p)
    bounds = np.cumsum([len(g) * dk for g in groups])
    return [int(np.count_nonzero(piv < b)) for b in bounds]


def _chain_grks(M: SectionModule, order: Sequence[int], D: int) -> dict[int, LaurentPoly]:
    groups = _group_slots(M, order)
    incs: dict[int, dict[int, int]] = {x: {} for x in order}
    for d in M.degrees(D):
        pr = _prefix_ranks(M, d, groups)
        prev = 0
        for x, r in zip(order, pr):
            incs[x][d] = r - prev
            prev = r
    n = M.ring.n
    return {x: graded_rank(incs[x], n, D) for x in order}


def _window(M: SectionModule, D: int | None) -> int:
    return default_window(M.bound, M.ring.n) if D is None else D


def subquotient_grk(M: SectionModule, w: int, D: int | None = None) -> LaurentPoly:
    """``grk(M_{>=w} / M_{>w})`` from ranks of projections to ``{x not>= w}`` and ``{x not> w}``."""
    D = _window(M, D)
    W = M.W
    w = int(w)
    comps = M.components()
    not_geq = [x for x in comps if not W.bruhat_leq(w, x)]
    rest = [x for x in comps if x != w and W.bruhat_leq(w, x)]
    groups = [M.slots_of(not_geq), M.slots_of([w]), M.slots_of(rest)]
    dims = {}
    for d in M.degrees(D):
        pr = _prefix_ranks(M, d, groups)
        dims[d] = pr[1] - pr[0]
    return graded_rank(dims, M.ring.n, D)


def corestriction_grk(M: SectionModule, w: int, D: int | None = None) -> LaurentPoly:
    """``grk(M^w)``: rank of the projection onto the ``w`` component alone."""
    D = _window(M, D)
    groups = [M.slots_of([w])]
    dims = {d: _prefix_ranks(M, d, groups)[0] for d in M.degrees(D)}
    return graded_rank(dims, M.ring.n, D)


def _target(M: SectionModule, coeffs: dict[int, LaurentPoly]) -> HeckeElt | ParabolicElt:
    H = HeckeAlgebra.of(M.W)
    if not M.S0:
        return H.elt(coeffs)
    return ParabolicModule.of(H, M.S0).elt(coeffs)


def character(M: SectionModule, D: int | None = None) -> HeckeElt | ParabolicElt:
    """``sum_w v^{l(w)} grk(M_{>=w}/M_{>w}) (1 (x) H_w)`` via one ascending chain per degree."""
    D = _window(M, D)
    order = M.components()  # ids are a linear extension of the Bruhat order
    grks = _chain_grks(M, order, D)
    return _target(M, {x: g.shift(M.W.length(x)) for x, g in grks.items() if g})


def support(M: SectionModule, D: int | None = None) -> list[ElementId]:
    """Components with nonzero generic rank."""
    D = _window(M, D)
    grks = _chain_grks(M, M.components(), D)
    return [ElementId(x) for x, g in grks.items() if sum(c for _, c in g.items())]


@dataclass
class DualCharacterData:
    """``ch`` from stalk subquotients and ``barch`` from the costalk chain."""

    ch: HeckeElt | ParabolicElt
    barch: HeckeElt | ParabolicElt
    costalk: HeckeElt | None = None
    window: int = 0


def dual_character_data(M: SectionModule, D: int | None = None) -> DualCharacterData:
    """Both character families.

    ``barch`` uses the descending chain, whose increments are the ranks of
    ``M^{>=w} -> M^{>w}`` kernels; conjugating each and weighting by
    ``v^{l(w)}`` gives the character of the dual.  For ``S0 = {}`` the extra
    ``costalk`` field is ``sum_w v^{-l(w)} grk(M^w) H_w``.
    """
    D = _window(M, D)
    W = M.W
    order = M.components()
    up = _chain_grks(M, order, D)
    down = _chain_grks(M, order[::-1], D)
    ch = _target(M, {x: g.shift(W.length(x)) for x, g in up.items() if g})
    barch = _target(M, {x: g.bar().shift(W.length(x)) for x, g in down.items() if g})
    costalk = None
    if not M.S0:
        costalk = _target(
            M, {x: g.shift(-W.length(x)) for x in order if (g := corestriction_grk(M, x, D))}
        )
    return DualCharacterData(ch, barch, costalk, D)


# ---------------------------------------------------------------- structure algebra


def _check_gkm(real: Realization, S0: frozenset) -> None:
    ok, witness = real.gkm_check(S0)
    if not ok:
        raise PreconditionError("GKM condition fails", {"gkm": witness})


def structure_algebra(real: Realization, S0: Iterable[int], prime: int | None = None) -> SectionModule:
    """``Z_{S0}``: tuples ``(z_w)_{w in W_{S0}}`` with ``z_w = z_{wt} mod alpha_t``."""
    S0 = frozenset(S0)
    if not real.W.parabolic_is_finite(S0):
        raise ValueError("W_{S0} must be finite")
    _check_gkm(real, S0)
    ring = real.dense(prime)
    W = ring.W
    elems = W.parabolic_elements(S0)
    pos = {int(w): i for i, w in enumerate(elems)}
    roots = {
        int(t): np.array([real.field.reduce_mod(c, ring.p) for c in a], dtype=np.int64)
        for t, a in real.reflection_roots(S0).items()
    }
    edges = []
    for w in elems:
        for t, a in roots.items():
            wt = int(W.mul(w, t))
            if int(w) < wt:
                edges.append((pos[int(w)], pos[wt], a))

    def provide(N: SectionModule, d: int) -> np.ndarray:
        k = N.kdeg(d)
        dk = ring.dim(k)
        nW = len(elems)
        if not edges:
            return np.eye(nW * dk, dtype=np.int64).reshape(-1, nW, dk)
        blocks = []
        for i, j, a in edges:
            Rst = ring.restriction(a, k)
            B = np.zeros((nW * dk, Rst.shape[1]), dtype=np.int64)
            B[i * dk : (i + 1) * dk] = Rst
            B[j * dk : (j + 1) * dk] = (-Rst) % ring.p
            blocks.append(B)
        A = np.hstack(blocks)
        Kn = K.nullspace_left(A, ring.p) if A.shape[1] else np.eye(nW * dk, dtype=np.int64)
        return Kn.reshape(-1, nW, dk)

    return SectionModule(ring, (), elems, 0, provide, bound=0, label=f"Z_{{{','.join(str(s + 1) for s in sorted(S0))}}}")


def tensor_image(real: Realization, S0: Iterable[int], prime: int | None = None) -> SectionModule:
    """Image of ``R (x)_{R^{W_{S0}}} R`` under ``f (x) g -> (w^{-1}(f) g)_w``."""
    S0 = frozenset(S0)
    ring = real.dense(prime)
    W = ring.W
    elems = W.parabolic_elements(S0)
    gens = []
    for f, a in _relative_generators(ring, frozenset(), S0):
        vals = np.stack([ring.act(W.inverse(w), f, a) for w in elems])
        gens.append(Generator(2 * a, vals))
    return SectionModule(ring, (), elems, 0, generators=gens, label="R(x)R")


# ---------------------------------------------------------------- splitting


@dataclass
class SplittingReport:
    """Outcome of the longest-element splitting construction (exact)."""

    S0: tuple[int, ...]
    word: tuple[int, ...]
    z0: dict[str, str]
    intermediate_ok: list[bool]
    in_structure_algebra: list[bool]
    p_w0_is_one: bool
    phi_psi_identity: bool
    phi_u: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(self.intermediate_ok)
            and all(self.in_structure_algebra)
            and self.p_w0_is_one
            and self.phi_psi_identity
        )

    def to_json(self) -> dict:
        return {
            "S0": list(self.S0),
            "word": list(self.word),
            "z0": self.z0,
            "intermediate_ok": self.intermediate_ok,
            "in_structure_algebra": self.in_structure_algebra,
            "p_w0_is_one": self.p_w0_is_one,
            "phi_psi_identity": self.phi_psi_identity,
            "phi_u": self.phi_u,
        }


def _in_structure_algebra(real: Realization, S0: frozenset, z: dict[int, MPoly]) -> bool:
    W = real.W
    roots = real.reflection_roots(S0)
    for w, zw in z.items():
        for t, a in roots.items():
            wt = int(W.mul(w, t))
            diff = zw - z[wt]
            if diff.is_zero():
                continue
            try:
                diff.divide_linear(real.linear(a))
            except ArithmeticError:
                return False
    return True


def longest_splitting(real: Realization, S0: Iterable[int], word: Sequence[int] | None = None) -> SplittingReport:
    """Exact check of the splitting ``R (x)_{R^{W_{S0}}} R  ->  BS(w_{S0})  ->  R (x) R``.

    ``phi_0(1) = z^0`` with ``z^0_e = prod_i s_1...s_{i-1}(alpha_{s_i})`` and zero
    elsewhere; ``phi_l = Psi_{s_l} o phi_{l-1}`` on ``u_l = u_{l-1} (x) 1 (x) 1``
    where ``Psi_s(z)_w = (z_w - s(z_{ws})) / alpha_s``.
    """
    S0 = frozenset(S0)
    W = real.W
    if not W.parabolic_is_finite(S0):
        raise ValueError("W_{S0} must be finite")
    w0 = W.longest_element(S0)
    word = tuple(W.word(w0)) if word is None else tuple(word)
    if W.element(word) != w0 or len(word) != W.length(w0):
        raise ValueError("word must be reduced for the longest element")
    elems = [int(w) for w in W.parabolic_elements(S0)]
    one = real.poly({(0,) * real.dim: 1})
    zero = real.poly()

    def tail_product(l: int) -> MPoly:
        out = one
        for i in range(l, len(word)):
            out = out * real.act(word[l:i], real.root(word[i]))
        return out

    z = {w: zero for w in elems}
    z[0] = tail_product(0)
    z0 = {W.name(w): repr(c) for w, c in sorted(z.items())}
    inter, inside = [], [_in_structure_algebra(real, S0, z)]
    for l, s in enumerate(word, start=1):
        alpha = real.root(s)
        z = {w: (z[w] - real.act((s,), z[int(W.mul_gen(w, s))])).divide_linear(alpha) for w in elems}
        inside.append(_in_structure_algebra(real, S0, z))
        inter.append(z[int(W.element(word[:l]))] == tail_product(l))
    p_w0 = z[int(w0)] == one
    identity = all(z[w] == one for w in elems)
    return SplittingReport(
        S0=tuple(sorted(S0)),
        word=word,
        z0=z0,
        intermediate_ok=inter,
        in_structure_algebra=inside,
        p_w0_is_one=p_w0,
        phi_psi_identity=identity,
        phi_u={W.name(w): repr(c) for w, c in sorted(z.items())},
    )


# ---------------------------------------------------------------- morphisms


def _separating_invariants(M: SectionModule, N: SectionModule) -> list[tuple[np.ndarray, int]]:
    """Invariants of ``W_{S0}`` whose twists separate the components of ``M`` and ``N``.

    For ``S0 = {}`` this is a basis of ``V``.
    """
    ring, W = M.ring, M.W
    if not M.S0:
        return [(np.eye(ring.n, dtype=np.int64)[i], 1) for i in range(ring.n)]
    comps = sorted(set(M.slots) | set(N.slots))
    chosen: list[tuple[np.ndarray, int]] = []
    pending = {(x, y) for i, x in enumerate(comps) for y in comps[i + 1 :]}
    a = 1
    while pending:
        if a > 2 * (W.length(W.longest_element(M.S0)) + 2):
            raise PreconditionError("no separating invariants found")
        for f in ring.invariants(M.S0, a):
            tw = {x: ring.act(W.inverse(x), f, a) for x in comps}
            hit = {(x, y) for x, y in pending if np.any(tw[x] != tw[y])}
            if hit:
                chosen.append((f, a))
                pending -= hit
        a += 1
    return chosen


@dataclass
class HomSpace:
    """Degree-``n`` morphisms of a free model into a model.

    ``images[j]`` has shape ``(dim, nslots_N, dim R_k)``: the image of generator
    ``j`` under each basis morphism.
    """

    degree: int
    dim: int
    images: list[np.ndarray]
    unknowns: int
    constraints: int


def _gen_relations(M: SectionModule, f: np.ndarray, a: int) -> list[dict[int, tuple[np.ndarray, int]]]:
    """``f g_k = sum_j g_j r_{kj}``; returns ``r_{kj}`` as (vector, poly degree)."""
    key = (f.tobytes(), a)
    if key in M._rels:
        return M._rels[key]
    out = []
    for g in M.generators:
        d = g.degree + 2 * a
        fg = M.twisted_left(g.values[None], g.degree, f, a).reshape(1, -1)
        X = K.solve_left(M.flat(d), fg, M.p)[0]
        rel = {}
        for j, start, m in M.layout(d):
            vec = X[start : start + M.ring.dim(m)]
            if np.any(vec):
                rel[j] = (vec, m)
        out.append(rel)
    M._rels[key] = out
    return out


def hom_space(M: SectionModule, N: SectionModule, n: int, *, with_images: bool = True) -> HomSpace:
    """Bimodule morphisms ``M -> N`` of degree ``n``.

    Unknowns are the images of the free right generators of ``M``; the
    constraints are left-linearity against invariants separating components,
    ``sum_j A(g_j) r_{kj}(f) = f A(g_k)``.
    """
    if M.generators is None:
        raise ValueError("source model must record free generators")
    if M.S0 != N.S0:
        raise ValueError("models over different parabolics")
    p = M.p
    ring = M.ring
    gens = M.generators
    targets = [N.basis(g.degree + n) if N.kdeg(g.degree + n) is not None else None for g in gens]
    sizes = [0 if t is None else t.shape[0] for t in targets]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(offsets[-1])
    if total == 0:
        return HomSpace(n, 0, [np.zeros((0, N.nslots, N.dimk(g.degree + n)), dtype=np.int64) for g in gens], 0, 0)
    cols = []
    for f, a in _separating_invariants(M, N):
        rels = _gen_relations(M, f, a)
        for k, rel in enumerate(rels):
            d_out = gens[k].degree + 2 * a + n
            if N.kdeg(d_out) is None:
                continue
            width = N.nslots * N.dimk(d_out)
            if width == 0:
                continue
            block = np.zeros((total, width), dtype=np.int64)
            for j, (r, m) in rel.items():
                if sizes[j]:
                    block[offsets[j] : offsets[j + 1]] += N.right_mul(targets[j], gens[j].degree + n, r, m).reshape(sizes[j], width)
            if sizes[k]:
                block[offsets[k] : offsets[k + 1]] -= N.twisted_left(targets[k], gens[k].degree + n, f, a).reshape(sizes[k], width)
            cols.append(block % p)
    A = np.hstack(cols) if cols else np.zeros((total, 0), dtype=np.int64)
    if A.shape[1] == 0:
        Kn = np.eye(total, dtype=np.int64)
    else:
        Kn = K.nullspace_left(np.ascontiguousarray(A), p)
    images = []
    if with_images:
        for j, t in enumerate(targets):
            if sizes[j]:
                C = Kn[:, offsets[j] : offsets[j + 1]]
                images.append(K.matmul(C, t.reshape(sizes[j], -1), p).reshape(Kn.shape[0], N.nslots, t.shape[2]))
            else:
                images.append(np.zeros((Kn.shape[0], N.nslots, N.dimk(gens[j].degree + n)), dtype=np.int64))
    return HomSpace(n, int(Kn.shape[0]), images, total, A.shape[1])


def hom_window(M: SectionModule, N: SectionModule) -> tuple[int, int]:
    L = M.bound + N.bound
    return -L, L + 2 * M.ring.n + 2


def hom_grk(M: SectionModule, N: SectionModule, D: int | None = None) -> LaurentPoly:
    """``grk Hom(M, N)`` with ``grk = sum_n (free generators in degree n) v^{-n}``."""
    lo, top = hom_window(M, N)
    D = top if D is None else D
    dims = {n: hom_space(M, N, n, with_images=False).dim for n in range(lo, D + 1)}
    return graded_rank(dims, M.ring.n, D)


# ---------------------------------------------------------------- export


def module_to_json(M: SectionModule, D: int) -> dict:
    """Canonical JSON: components, shift, window and per-degree basis matrices."""
    W = M.W
    mono = M.ring.mono
    degrees = {}
    for d in M.degrees(D):
        B = M.basis(d)
        if not B.shape[0]:
            continue
        k = M.kdeg(d)
        degrees[str(d)] = {
            "monomials": [list(m) for m in mono.mons(k)],
            "rows": [[str(int(x)) for x in row] for row in B.reshape(B.shape[0], -1)],
        }
    return {
        "label": M.label,
        "parabolic": [W.labels[s] for s in sorted(M.S0)],
        "components": [W.name(x) for x in M.slots],
        "shift": M.offset,
        "D": D,
        "field": f"Fp:{M.p}",
        "degrees": degrees,
    }
