"""The spherical right module ``triv_{S0} (x)_{H_{S0}} H`` with basis ``1 (x) H_{w-}``.

Cosets ``W_{S0} \\ W`` are identified with their minimal representatives.  The
right action is implemented directly from Deodhar's trichotomy; the
projection ``p`` from ``H`` gives an independent second route that the tests
compare against.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .coxeter import ElementId
from .hecke import HeckeAlgebra, HeckeElt, LaurentPoly, _axpy

__all__ = ["ParabolicModule", "ParabolicElt", "TriangularityError"]

_ONE = LaurentPoly(1)
_VINV = LaurentPoly({-1: 1})
_VINV_MINUS_V = LaurentPoly({-1: 1, 1: -1})


class TriangularityError(ValueError):
    """Raised when a basis is not unitriangular or elimination leaves a residue."""


@dataclass(eq=False)
class ParabolicElt:
    module: "ParabolicModule"
    terms: dict[int, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {int(x): LaurentPoly(c) for x, c in self.terms.items() if c}
        for x in self.terms:
            if x not in self.module.coset_index:
                raise ValueError(f"{self.module.W.name(x)} is not a minimal coset representative")

    def __getitem__(self, x: int) -> LaurentPoly:
        return self.terms.get(x, LaurentPoly())

    def items(self) -> list[tuple[ElementId, LaurentPoly]]:
        return [(ElementId(x), self.terms[x]) for x in sorted(self.terms)]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ParabolicElt") -> "ParabolicElt":
        if not isinstance(other, ParabolicElt):
            return NotImplemented
        if other.module is not self.module:
            raise ValueError("elements of different parabolic modules")
        out = dict(self.terms)
        for x, c in other.terms.items():
            _axpy(out, x, c)
        return ParabolicElt(self.module, out)

    def __neg__(self) -> "ParabolicElt":
        return ParabolicElt(self.module, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other: "ParabolicElt") -> "ParabolicElt":
        return self + (-other)

    def __mul__(self, other) -> "ParabolicElt":
        if isinstance(other, HeckeElt):
            return self.module.act(self, other)
        if isinstance(other, (int, LaurentPoly)):
            c = LaurentPoly(other)
            return ParabolicElt(self.module, {x: a * c for x, a in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "ParabolicElt":
        if isinstance(other, (int, LaurentPoly)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParabolicElt):
            return NotImplemented
        return self.module is other.module and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> list[list]:
        W = self.module.W
        return [[list(W.word(x)), c.to_json()] for x, c in self.items()]

    def to_named_json(self) -> dict[str, dict[str, int]]:
        W = self.module.W
        return {W.name(x): c.to_json() for x, c in self.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        W = self.module.W
        return " + ".join(f"({c})*1@H[{W.name(x)}]" for x, c in self.items())


class ParabolicModule:
    """``triv_{S0} (x) H`` for a finite standard parabolic ``W_{S0}``."""

    def __init__(self, hecke: HeckeAlgebra, S0: Iterable[int]):
        self.H = hecke
        self.W = hecke.W
        self.S0 = frozenset(S0)
        if not self.W.parabolic_is_finite(self.S0):
            raise ValueError("parabolic subgroup must be finite")
        self.cosets: list[ElementId] = self.W.min_coset_reps(self.S0)
        self.coset_index = {int(w): i for i, w in enumerate(self.cosets)}
        self._case: dict[tuple[int, int], tuple[str, int]] = {}
        self._kl_cache: dict[int, ParabolicElt] = {}
        self._bar_cache: dict[int, dict[int, LaurentPoly]] = {}

    @classmethod
    def of(cls, hecke: HeckeAlgebra, S0: Iterable[int]) -> "ParabolicModule":
        """Shared instance per ``(hecke, S0)``."""
        key = frozenset(S0)
        if key not in hecke._parabolic:
            hecke._parabolic[key] = cls(hecke, key)
        return hecke._parabolic[key]

    # ---------------------------------------------------------------- basics

    def elt(self, terms: Mapping[int, int | LaurentPoly] | None = None) -> ParabolicElt:
        return ParabolicElt(self, {x: LaurentPoly(c) for x, c in (terms or {}).items()})

    def basis(self, w: int) -> ParabolicElt:
        """``1 (x) H_{w-}``; ``w`` must be a minimal representative."""
        return ParabolicElt(self, {int(w): _ONE})

    @property
    def unit(self) -> ParabolicElt:
        return self.basis(0)

    def coset_of(self, w: int) -> ElementId:
        return self.W.coset_rep(w, self.S0)

    # ---------------------------------------------------------------- action

    def _deodhar(self, w: int, s: int) -> tuple[str, int]:
        key = (w, s)
        if key not in self._case:
            self._case[key] = (self.W.deodhar_case(w, s, self.S0), int(self.W.mul_gen(w, s)))
        return self._case[key]

    def _act_gen(self, terms: Mapping[int, LaurentPoly], s: int) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for w, c in terms.items():
            case, ws = self._deodhar(w, s)
            if case == "a":
                _axpy(out, ws, c)
            elif case == "b":
                _axpy(out, ws, c)
                _axpy(out, w, c * _VINV_MINUS_V)
            else:
                _axpy(out, w, c * _VINV)
        return out

    def act_gen(self, m: ParabolicElt, s: int) -> ParabolicElt:
        return ParabolicElt(self, self._act_gen(m.terms, s))

    def act(self, m: ParabolicElt, h: HeckeElt) -> ParabolicElt:
        """Right action ``m * h``."""
        out: dict[int, LaurentPoly] = {}
        memo: dict[tuple[int, ...], dict[int, LaurentPoly]] = {(): dict(m.terms)}
        for x, c in h.terms.items():
            word = self.W.word(x)
            k = len(word)
            while word[:k] not in memo:
                k -= 1
            cur = memo[word[:k]]
            for i in range(k, len(word)):
                cur = self._act_gen(cur, word[i])
                memo[word[: i + 1]] = cur
            for y, d in cur.items():
                _axpy(out, y, d * c)
        return ParabolicElt(self, out)

    # ---------------------------------------------------------------- p and i

    def p_map(self, h: HeckeElt) -> ParabolicElt:
        """``H_{u w-} -> v^{-l(u)} (1 (x) H_{w-})``."""
        out: dict[int, LaurentPoly] = {}
        for x, c in h.terms.items():
            u, wm = self.W.coset_decomposition(x, self.S0)
            _axpy(out, wm, c.shift(-self.W.length(u)))
        return ParabolicElt(self, out)

    def i_map(self, m: ParabolicElt) -> HeckeElt:
        """``1 (x) H_{w-} -> (sum_u v^{-l(u)} H_u) H_{w-}``."""
        H = self.H
        ch = H.elt({u: LaurentPoly.monomial(-self.W.length(u)) for u in self.W.parabolic_elements(self.S0)})
        out = H.elt()
        for w, c in m.terms.items():
            out = out + H.mul(ch, H.H(w)) * c
        return out

    # ---------------------------------------------------------------- bar, pairing

    def _bar_basis(self, w: int) -> dict[int, LaurentPoly]:
        if w not in self._bar_cache:
            self._bar_cache[w] = self.p_map(self.H.bar(self.H.H(w))).terms
        return self._bar_cache[w]

    def bar(self, m: ParabolicElt) -> ParabolicElt:
        out: dict[int, LaurentPoly] = {}
        for w, c in m.terms.items():
            cb = c.bar()
            for y, d in self._bar_basis(w).items():
                _axpy(out, y, d * cb)
        return ParabolicElt(self, out)

    def pairing(self, m: ParabolicElt, n: ParabolicElt) -> LaurentPoly:
        nb = self.bar(n)
        out = LaurentPoly()
        for x, a in m.terms.items():
            if x in nb.terms:
                out = out + (a * nb.terms[x]).bar()
        return out

    # ---------------------------------------------------------------- KL-type basis

    def kl(self, w: int) -> ParabolicElt:
        """The bar-invariant element in ``1 (x) H_{w-} + sum_{y<w} v Z[v] (1 (x) H_{y-})``."""
        w = int(w)
        if w in self._kl_cache:
            return self._kl_cache[w]
        if w not in self.coset_index:
            raise ValueError("kl expects a minimal coset representative")
        terms = dict(self.p_map(self.H.kl(w)).terms)
        cur = w
        while True:
            lower = [y for y in terms if y < cur]
            if not lower:
                break
            y = cur = max(lower)
            h = terms[y]
            if h.min_degree > 0:
                continue
            q = LaurentPoly({k: c for k, c in h.items() if k <= 0}) + LaurentPoly(
                {-k: c for k, c in h.items() if k < 0}
            )
            for z, d in self.kl(y).terms.items():
                _axpy(terms, z, -(d * q))
        out = ParabolicElt(self, terms)
        self._kl_cache[w] = out
        return out

    def decompose(self, m: ParabolicElt, basis: Mapping[int, ParabolicElt]) -> dict[int, LaurentPoly]:
        """Coefficients of ``m`` in a unitriangular basis, eliminating from the top."""
        W = self.W
        for y, b in basis.items():
            if b[y] != _ONE or any(not W.bruhat_leq(z, y) for z in b.terms):
                raise TriangularityError(f"basis element at {W.name(y)} is not unitriangular")
        rest = dict(m.terms)
        out: dict[int, LaurentPoly] = {}
        while rest:
            y = max(rest)
            if y not in basis:
                raise TriangularityError(f"residue at {W.name(y)} has no basis element")
            c = rest[y]
            out[y] = c
            for z, d in basis[y].terms.items():
                _axpy(rest, z, -(d * c))
        return dict(sorted(out.items()))

    def kl_decomposition(self, m: ParabolicElt) -> dict[int, LaurentPoly]:
        return self.decompose(m, {y: self.kl(y) for y in self.cosets if y <= max(m.terms, default=0)})

