"""Hecke algebra of a Coxeter system over Z[v, v^-1].

Normalisation: ``H_s^2 = 1 + (v^-1 - v) H_s``, so ``(H_s - v^-1)(H_s + v) = 0``,
``H_s^-1 = H_s + v - v^-1`` and the Kazhdan-Lusztig element is ``b_s = H_s + v``.

Elements are finitely supported maps ``ElementId -> LaurentPoly``.  The product
is the bilinear extension of right multiplication by simple generators.  For
finite groups :meth:`HeckeAlgebra.structure_constants` exposes the same
product as a dense integer tensor, used to check associativity in bulk.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .coxeter import CoxeterSystem, ElementId, WindowError

__all__ = ["LaurentPoly", "HeckeElt", "HeckeAlgebra", "v"]


class LaurentPoly:
    """Integer Laurent polynomial in ``v`` with no stored zero coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            self._c: dict[int, int] = {}
        elif isinstance(coeffs, LaurentPoly):
            self._c = dict(coeffs._c)
        elif isinstance(coeffs, Mapping):
            self._c = {int(k): int(c) for k, c in coeffs.items() if c}
        else:
            c = int(coeffs)
            self._c = {0: c} if c else {}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out._c = d
        return out

    # -- inspection
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(sorted(self._c.items()))

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_degree(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_degree(self) -> int:
        return max(self._c) if self._c else 0

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def __call__(self, x):
        return sum(c * x**k for k, c in self._c.items())

    # -- arithmetic
    def __add__(self, other) -> "LaurentPoly":
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self._c)
        for k, c in other._c.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (HeckeElt,)):
            return NotImplemented
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        d: dict[int, int] = {}
        for k1, c1 in self._c.items():
            for k2, c2 in other._c.items():
                k = k1 + k2
                d[k] = d.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have inverses")
            ((k, c),) = self._c.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly({-k * (-n): c ** (-n)})
        out = LaurentPoly(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-k: c for k, c in self._c.items()})

    def __eq__(self, other) -> bool:
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    # -- io
    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): int(c) for k, c in obj.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, c in sorted(self._c.items()):
            mon = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if not mon:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mon}")
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{c:+d}{mon}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, np.integer)):
        return LaurentPoly(int(x))
    return NotImplemented


v = LaurentPoly.monomial(1)
_ONE = LaurentPoly(1)
_VINV_MINUS_V = LaurentPoly({-1: 1, 1: -1})
_V_MINUS_VINV = LaurentPoly({-1: -1, 1: 1})

Scalar = Union[int, LaurentPoly]


@dataclass(eq=False)
class HeckeElt:
    """``sum_x terms[x] H_x``; zero terms are never stored."""

    algebra: "HeckeAlgebra"
    terms: dict[int, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {int(x): LaurentPoly(c) for x, c in self.terms.items() if c}

    def __getitem__(self, x: int) -> LaurentPoly:
        return self.terms.get(x, LaurentPoly())

    def coeff(self, x: int) -> LaurentPoly:
        return self[x]

    def support(self) -> list[ElementId]:
        return [ElementId(x) for x in sorted(self.terms)]

    def items(self) -> list[tuple[ElementId, LaurentPoly]]:
        return [(ElementId(x), self.terms[x]) for x in sorted(self.terms)]

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "HeckeElt") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("elements of different Hecke algebras")

    def __add__(self, other) -> "HeckeElt":
        if isinstance(other, (int, LaurentPoly)):
            other = self.algebra.one * other
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._same(other)
        return HeckeElt(self.algebra, _add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.algebra, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other) -> "HeckeElt":
        return self + (-other)

    def __rsub__(self, other) -> "HeckeElt":
        return (-self) + other

    def __mul__(self, other) -> "HeckeElt":
        if isinstance(other, HeckeElt):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, np.integer, LaurentPoly)):
            c = LaurentPoly(other)
            return HeckeElt(self.algebra, {x: a * c for x, a in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "HeckeElt":
        if isinstance(other, (int, np.integer, LaurentPoly)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = self.algebra.one * other
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover - rarely needed
        return hash(frozenset(self.terms.items()))

    def bar(self) -> "HeckeElt":
        return self.algebra.bar(self)

    def to_json(self) -> list[list]:
        W = self.algebra.W
        return [[list(W.word(x)), c.to_json()] for x, c in self.items()]

    def to_named_json(self) -> dict[str, dict[str, int]]:
        W = self.algebra.W
        return {W.name(x): c.to_json() for x, c in self.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        W = self.algebra.W
        return " + ".join(f"({c})*H[{W.name(x)}]" for x, c in self.items())


def _add(a: Mapping[int, LaurentPoly], b: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
    out = dict(a)
    for x, c in b.items():
        s = out[x] + c if x in out else c
        if s:
            out[x] = s
        else:
            out.pop(x, None)
    return out


def _axpy(out: dict[int, LaurentPoly], x: int, c: LaurentPoly) -> None:
    if x in out:
        s = out[x] + c
        if s:
            out[x] = s
        else:
            del out[x]
    elif c:
        out[x] = c


class HeckeAlgebra:
    """The Hecke algebra of ``W`` with standard basis ``H_w``.

    Caches (``bar`` images of basis elements, KL basis) are write-once.
    """

    def __init__(self, W: CoxeterSystem):
        self.W = W
        self._parabolic: dict = {}
        self._bar_cache: dict[int, dict[int, LaurentPoly]] = {0: {0: _ONE}}
        self._kl_cache: dict[int, HeckeElt] = {}
        self._tensor: tuple[np.ndarray, int] | None = None

    @classmethod
    def of(cls, W: CoxeterSystem) -> "HeckeAlgebra":
        """Shared instance attached to ``W``."""
        H = W.__dict__.get("_hecke")
        if H is None:
            H = W.__dict__["_hecke"] = cls(W)
        return H

    # ---------------------------------------------------------------- basics

    def elt(self, terms: Mapping[int, Scalar] | None = None) -> HeckeElt:
        return HeckeElt(self, {x: LaurentPoly(c) for x, c in (terms or {}).items()})

    def H(self, w: int | Iterable[int]) -> HeckeElt:
        """Standard basis element; ``w`` may be an id or a reduced word."""
        if not isinstance(w, (int, np.integer)):
            word = tuple(w)
            if not self.W.is_reduced(word):
                raise ValueError(f"word {word} is not reduced")
            w = self.W.element(word)
        return HeckeElt(self, {int(w): _ONE})

    @property
    def one(self) -> HeckeElt:
        return self.H(0)

    def gen(self, s: int) -> HeckeElt:
        return self.H(self.W.mul_gen(0, s))

    def parse(self, text: str) -> HeckeElt:
        """``H_w`` for a word such as ``"s1s2"`` or ``"e"``."""
        return self.H(self.W.element(self.W.parse_word(text)))

    # ---------------------------------------------------------------- products

    def _right_gen(self, terms: Mapping[int, LaurentPoly], s: int) -> dict[int, LaurentPoly]:
        W = self.W
        out: dict[int, LaurentPoly] = {}
        for x, c in terms.items():
            xs = W.mul_gen(x, s)
            _axpy(out, xs, c)
            if W.length(xs) < W.length(x):
                _axpy(out, x, c * _VINV_MINUS_V)
        return out

    def _left_gen(self, s: int, terms: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        W = self.W
        out: dict[int, LaurentPoly] = {}
        for x, c in terms.items():
            sx = W.gen_mul(s, x)
            _axpy(out, sx, c)
            if W.length(sx) < W.length(x):
                _axpy(out, x, c * _VINV_MINUS_V)
        return out

    def mul_gen(self, h: HeckeElt, s: int) -> HeckeElt:
        """``h * H_s``."""
        return HeckeElt(self, self._right_gen(h.terms, s))

    def gen_mul(self, s: int, h: HeckeElt) -> HeckeElt:
        """``H_s * h``."""
        return HeckeElt(self, self._left_gen(s, h.terms))

    def _times_basis(self, terms: Mapping[int, LaurentPoly], ys: Iterable[int]) -> dict[int, dict[int, LaurentPoly]]:
        """``terms * H_y`` for every requested ``y``, sharing word prefixes."""
        W = self.W
        memo: dict[tuple[int, ...], dict[int, LaurentPoly]] = {(): dict(terms)}
        out = {}
        for y in ys:
            word = W.word(y)
            k = len(word)
            while word[:k] not in memo:
                k -= 1
            cur = memo[word[:k]]
            for i in range(k, len(word)):
                cur = self._right_gen(cur, word[i])
                memo[word[: i + 1]] = cur
            out[y] = cur
        return out

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """Bilinear extension of ``H_w H_s = H_ws`` (up) or ``H_ws + (v^-1 - v) H_w`` (down)."""
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("foreign Hecke element")
        prods = self._times_basis(a.terms, sorted(b.terms))
        out: dict[int, LaurentPoly] = {}
        for y, c in b.terms.items():
            for x, d in prods[y].items():
                _axpy(out, x, d * c)
        return HeckeElt(self, out)

    def structure_constants(self) -> tuple[np.ndarray, int]:
        """Dense tensor ``T[x, y, w, k + off]`` = coefficient of ``v^k H_w`` in ``H_x H_y``.

        Built independently of :meth:`mul` by vectorised generator steps on
        whole columns.  Only for finite groups.
        """
        if self._tensor is not None:
            return self._tensor
        W = self.W
        if not W.is_finite:
            raise WindowError("structure tensor needs a finite group")
        n = W.size
        L = max(W.length(w) for w in W.elements())
        width = 2 * L + 1
        T = np.zeros((n, n, n, width), dtype=np.int64)
        idx = np.arange(n)
        T[idx, 0, idx, L] = 1
        perm = np.array([[W.mul_gen(x, s) for x in range(n)] for s in range(W.rank)])
        down = np.array([[W.length(perm[s, x]) < W.length(x) for x in range(n)] for s in range(W.rank)])
        for y in range(1, n):
            word = W.word(y)
            s = word[-1]
            prev = T[:, W.element(word[:-1])]  # (x, u, k)
            cur = np.zeros_like(prev)
            cur[:, perm[s]] = prev  # H_u H_s contributes H_{us}
            d = down[s]
            src = prev[:, d]
            # (v^-1 - v) c(v): coefficient of v^k is c_{k+1} - c_{k-1}
            cur[:, d, :-1] += src[:, :, 1:]
            cur[:, d, 1:] -= src[:, :, :-1]
            T[:, y] = cur
        self._tensor = (T, L)
        return self._tensor

    def tensor_to_elt(self, vec: np.ndarray, offset: int) -> HeckeElt:
        terms = {}
        for w in np.flatnonzero(vec.any(axis=1)):
            terms[int(w)] = LaurentPoly({int(k) - offset: int(c) for k, c in enumerate(vec[w]) if c})
        return HeckeElt(self, terms)

    # ---------------------------------------------------------------- involutions

    def _bar_basis(self, x: int) -> dict[int, LaurentPoly]:
        cache = self._bar_cache
        if x in cache:
            return cache[x]
        W = self.W
        word = W.word(x)
        prev = self._bar_basis(W.element(word[:-1]))
        # bar(H_x) = bar(H_x') (H_s + v - v^-1)
        out = self._right_gen(prev, word[-1])
        for y, c in prev.items():
            _axpy(out, y, c * _V_MINUS_VINV)
        cache[x] = out
        return out

    def bar(self, h: HeckeElt) -> HeckeElt:
        out: dict[int, LaurentPoly] = {}
        for x, c in h.terms.items():
            cb = c.bar()
            for y, d in self._bar_basis(x).items():
                _axpy(out, y, d * cb)
        return HeckeElt(self, out)

    def omega(self, h: HeckeElt) -> HeckeElt:
        """``sum a_x H_x  ->  sum bar(a_x) H_x^{-1}``, with ``H_x^{-1} = bar(H_{x^-1})``."""
        out: dict[int, LaurentPoly] = {}
        for x, c in h.terms.items():
            cb = c.bar()
            for y, d in self._bar_basis(self.W.inverse(x)).items():
                _axpy(out, y, d * cb)
        return HeckeElt(self, out)

    # ---------------------------------------------------------------- KL basis

    def kl(self, w: int) -> HeckeElt:
        """Kazhdan-Lusztig element ``b_w``: bar-invariant, in ``H_w + sum v Z[v] H_y``."""
        w = int(w)
        if w in self._kl_cache:
            return self._kl_cache[w]
        W = self.W
        if w == 0:
            b = self.one
        else:
            word = W.word(w)
            s = word[-1]
            prev = self.kl(W.element(word[:-1]))
            terms = self._right_gen(prev.terms, s)
            for y, c in prev.terms.items():
                _axpy(terms, y, c * v)
            cur = w
            while True:
                lower = [y for y in terms if y < cur]
                if not lower:
                    break
                y = cur = max(lower)
                h = terms[y]
                if h.min_degree > 0:
                    continue
                q = LaurentPoly({k: c for k, c in h.items() if k <= 0})
                q = q + LaurentPoly({-k: c for k, c in h.items() if k < 0})
                for z, d in self.kl(y).terms.items():
                    _axpy(terms, z, -(d * q))
            b = HeckeElt(self, terms)
        self._kl_cache[w] = b
        return b

    # ---------------------------------------------------------------- forms

    def triv(self, h: HeckeElt) -> LaurentPoly:
        out = LaurentPoly()
        for x, c in h.terms.items():
            out = out + c.shift(-self.W.length(x))
        return out

    def pairing(self, m: HeckeElt, n: HeckeElt) -> LaurentPoly:
        """``<m, n> = sum_x bar(a_x b_x)`` with ``m = sum a_x H_x`` and ``bar(n) = sum b_x H_x``."""
        nb = self.bar(n)
        out = LaurentPoly()
        for x, a in m.terms.items():
            if x in nb.terms:
                out = out + (a * nb.terms[x]).bar()
        return out
