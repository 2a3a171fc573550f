"""Coxeter systems: enumeration, length, Bruhat order, parabolic cosets.

Elements are enumerated breadth first.  Each element carries the full set of
its reduced words, closed under braid moves, which by Matsumoto's theorem is
exactly the set of reduced expressions.  Ids follow ``(length, ShortLex)``
order of the canonical (lexicographically least) reduced word, so id ``0`` is
the identity and ``x < y`` in Bruhat order implies ``id(x) < id(y)``.

Infinite groups are handled inside a length window ``length_cap``; products
that leave the window raise :class:`WindowError`.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NewType

__all__ = [
    "ElementId",
    "CoxeterSystem",
    "WindowError",
    "ConfigError",
    "braid_closure",
]

ElementId = NewType("ElementId", int)

INF = math.inf
_MAX_ELEMENTS = 200_000


class ConfigError(ValueError):
    """Malformed input (Coxeter matrix, realization, word, label)."""


class WindowError(RuntimeError):
    """A computation needed data outside the enumerated length window."""


def _alternating(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if i % 2 == 0 else t for i in range(m))


def braid_closure(word: Sequence[int], mat: Sequence[Sequence[float]]) -> frozenset[tuple[int, ...]]:
    """All words reachable from ``word`` by braid moves (not by ``ss = e``)."""
    start = tuple(word)
    seen = {start}
    todo = [start]
    while todo:
        w = todo.pop()
        n = len(w)
        for i in range(n - 1):
            s, t = w[i], w[i + 1]
            if s == t:
                continue
            m = mat[s][t]
            if m == INF or i + m > n:
                continue
            m = int(m)
            if w[i : i + m] == _alternating(s, t, m):
                nw = w[:i] + _alternating(t, s, m) + w[i + m :]
                if nw not in seen:
                    seen.add(nw)
                    todo.append(nw)
    return frozenset(seen)


def _check_matrix(mat: Sequence[Sequence[float]]) -> list[list[float]]:
    n = len(mat)
    out: list[list[float]] = []
    for i, row in enumerate(mat):
        if len(row) != n:
            raise ConfigError("Coxeter matrix must be square")
        r = []
        for j, m in enumerate(row):
            if m is None or m == INF or (isinstance(m, str) and m.lower() in ("inf", "infinity", "oo")):
                m = INF
            elif isinstance(m, bool) or not float(m).is_integer():
                raise ConfigError(f"invalid Coxeter matrix entry {m!r}")
            else:
                m = int(m)
            if i == j and m != 1:
                raise ConfigError("diagonal of Coxeter matrix must be 1")
            if i != j and m != INF and m < 2:
                raise ConfigError("off-diagonal Coxeter entries must be >= 2 or infinite")
            r.append(m)
        out.append(r)
    for i in range(n):
        for j in range(n):
            if out[i][j] != out[j][i]:
                raise ConfigError("Coxeter matrix must be symmetric")
    return out


@dataclass
class CoxeterSystem:
    """A Coxeter system ``(W, S)`` enumerated up to ``length_cap``.

    ``matrix[i][j]`` is the order of ``s_i s_j``; use ``math.inf`` or ``None``
    for infinite order.  With ``length_cap=None`` the group must be finite.
    """

    matrix: list[list[float]]
    labels: tuple[str, ...] = ()
    length_cap: int | None = None
    _words: list[frozenset[tuple[int, ...]]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.matrix = _check_matrix(self.matrix)
        n = len(self.matrix)
        if not self.labels:
            self.labels = tuple(f"s{i + 1}" for i in range(n))
        self.labels = tuple(self.labels)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise ConfigError("need one distinct label per generator")
        if any(lab == "e" or not lab for lab in self.labels):
            raise ConfigError("'e' is reserved for the identity")
        self._enumerate()

    # ------------------------------------------------------------ enumeration

    def _enumerate(self) -> None:
        n = self.rank
        cap = self.length_cap
        words: list[frozenset[tuple[int, ...]]] = [frozenset({()})]
        canon: list[tuple[int, ...]] = [()]
        right: list[list[int]] = [[-1] * n]
        index: dict[tuple[int, ...], int] = {(): 0}
        level = [0]
        length = 0
        self.truncated = False
        while level:
            if cap is not None and length >= cap:
                self.truncated = any(
                    not any(w[-1] == s for w in words[x]) for x in level for s in range(n)
                ) if length > 0 else n > 0
                break
            found: dict[tuple[int, ...], tuple[frozenset, list[tuple[int, int]]]] = {}
            owner: dict[tuple[int, ...], tuple[int, ...]] = {}
            for x in level:
                descents = {w[-1] for w in words[x] if w}
                for s in range(n):
                    if s in descents:
                        continue
                    cand = canon[x] + (s,)
                    hit = owner.get(cand)
                    if hit is None:
                        ws = braid_closure(cand, self.matrix)
                        hit = min(ws)
                        found[hit] = (ws, [])
                        owner.update(dict.fromkeys(ws, hit))
                    found[hit][1].append((x, s))
            nxt = []
            for key in sorted(found):
                ws, preds = found[key]
                i = len(words)
                words.append(ws)
                canon.append(key)
                right.append([-1] * n)
                index[key] = i
                for x, s in preds:
                    right[x][s] = i
                    right[i][s] = x
                nxt.append(i)
            if len(words) > _MAX_ELEMENTS:
                raise ConfigError("group too large; pass a smaller length_cap")
            level = nxt
            length += 1
            if cap is None and length > 400:
                raise ConfigError("group appears infinite; pass length_cap")
        self._words = words
        self._canon = canon
        self._right = right
        self._index = index
        self._length = [len(c) for c in canon]
        self._inverse = [index[min(tuple(reversed(w)) for w in ws)] for ws in words]
        self._left = [
            [self._inv_or_missing(self._right[self._inverse[x]][s]) for s in range(n)]
            for x in range(len(words))
        ]

    def _inv_or_missing(self, x: int) -> int:
        return -1 if x < 0 else self._inverse[x]

    # ------------------------------------------------------------ basics

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def size(self) -> int:
        """Number of enumerated elements."""
        return len(self._canon)

    @property
    def is_finite(self) -> bool:
        return not self.truncated

    def __len__(self) -> int:
        return self.size

    @property
    def identity(self) -> ElementId:
        return ElementId(0)

    def elements(self) -> range:
        return range(self.size)

    def length(self, w: int) -> int:
        return self._length[w]

    def word(self, w: int) -> tuple[int, ...]:
        """Canonical (ShortLex least) reduced word."""
        return self._canon[w]

    def reduced_words(self, w: int) -> frozenset[tuple[int, ...]]:
        return self._words[w]

    def name(self, w: int) -> str:
        return "".join(self.labels[s] for s in self._canon[w]) or "e"

    def inverse(self, w: int) -> ElementId:
        return ElementId(self._inverse[w])

    def _step(self, table: list[list[int]], w: int, s: int) -> ElementId:
        r = table[w][s]
        if r < 0:
            raise WindowError(f"{self.name(w)} times {self.labels[s]} leaves the length window")
        return ElementId(r)

    def mul_gen(self, w: int, s: int) -> ElementId:
        """``w * s``."""
        return self._step(self._right, w, s)

    def gen_mul(self, s: int, w: int) -> ElementId:
        """``s * w``."""
        return self._step(self._left, w, s)

    def mul(self, x: int, y: int) -> ElementId:
        for s in self._canon[y]:
            x = self.mul_gen(x, s)
        return ElementId(x)

    def element(self, word: Iterable[int]) -> ElementId:
        """Element represented by a (not necessarily reduced) word."""
        w = 0
        for s in word:
            w = self.mul_gen(w, self._gen(s))
        return ElementId(w)

    def _gen(self, s: int) -> int:
        if not 0 <= s < self.rank:
            raise ConfigError(f"generator index {s} out of range")
        return s

    def is_reduced(self, word: Iterable[int]) -> bool:
        """Exchange condition: every letter must increase the length."""
        w = 0
        for s in word:
            s = self._gen(s)
            if self.has_right_descent(w, s):
                return False
            w = self.mul_gen(w, s)
        return True

    def has_right_descent(self, w: int, s: int) -> bool:
        return any(u[-1] == s for u in self._words[w] if u)

    def has_left_descent(self, w: int, s: int) -> bool:
        return any(u[0] == s for u in self._words[w] if u)

    def right_descents(self, w: int) -> frozenset[int]:
        return frozenset(u[-1] for u in self._words[w] if u)

    def left_descents(self, w: int) -> frozenset[int]:
        return frozenset(u[0] for u in self._words[w] if u)

    # ------------------------------------------------------------ parsing

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Parse ``"s1,s2"``, ``"s1s2"``, ``"1,2"`` or ``"e"`` into indices."""
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        if "," in text or " " in text:
            parts = [t for t in text.replace(" ", ",").split(",") if t]
            return tuple(self._parse_label(t) for t in parts)
        out = []
        rest = text
        labels = sorted(enumerate(self.labels), key=lambda kv: -len(kv[1]))
        while rest:
            for i, lab in labels:
                if rest.startswith(lab):
                    out.append(i)
                    rest = rest[len(lab) :]
                    break
            else:
                raise ConfigError(f"cannot parse word {text!r}")
        return tuple(out)

    def _parse_label(self, tok: str) -> int:
        if tok in self.labels:
            return self.labels.index(tok)
        if tok.isdigit() and 1 <= int(tok) <= self.rank:
            return int(tok) - 1
        raise ConfigError(f"unknown generator {tok!r}")

    def parse_subset(self, text: str | None) -> frozenset[int]:
        if text is None or text.strip() in ("", "-", "none", "empty"):
            return frozenset()
        return frozenset(self._parse_label(t) for t in text.replace(" ", ",").split(",") if t)

    # ------------------------------------------------------------ Bruhat order

    @cached_property
    def _below(self) -> list[int]:
        below = [1]
        for y in range(1, self.size):
            s = self._canon[y][-1]
            ys = self._right[y][s]
            b = below[ys]
            acc = b
            bits = b
            while bits:
                low = bits & -bits
                x = low.bit_length() - 1
                xs = self._right[x][s]
                if xs >= 0:
                    acc |= 1 << xs
                bits ^= low
            below.append(acc)
        return below

    def bruhat_leq(self, x: int, y: int) -> bool:
        return bool(self._below[y] >> x & 1)

    def bruhat_interval(self, x: int, y: int) -> list[ElementId]:
        return [ElementId(z) for z in range(x, y + 1) if self.bruhat_leq(x, z) and self.bruhat_leq(z, y)]

    def bruhat_below(self, y: int) -> list[ElementId]:
        b = self._below[y]
        return [ElementId(x) for x in range(y + 1) if b >> x & 1]

    # ------------------------------------------------------------ reflections

    @cached_property
    def reflections(self) -> list[ElementId]:
        """Reflections ``w s w^-1`` inside the window, ascending by id."""
        out = set()
        for w in range(self.size):
            for s in range(self.rank):
                try:
                    out.add(self.mul(self.mul_gen(w, s), self._inverse[w]))
                except WindowError:
                    pass
        return [ElementId(t) for t in sorted(out)]

    # ------------------------------------------------------------ parabolics

    def parabolic_elements(self, S0: Iterable[int]) -> list[ElementId]:
        S0 = frozenset(S0)
        return [ElementId(w) for w in range(self.size) if set(self._canon[w]) <= S0]

    def parabolic_is_finite(self, S0: Iterable[int]) -> bool:
        """Whether ``W_{S0}`` is finite; decided inside the window."""
        S0 = frozenset(S0)
        for w in self.parabolic_elements(S0):
            for s in S0:
                if self._right[w][s] < 0:
                    return False
        return True

    def longest_element(self, S0: Iterable[int] | None = None) -> ElementId:
        S0 = frozenset(range(self.rank)) if S0 is None else frozenset(S0)
        if not self.parabolic_is_finite(S0):
            raise WindowError("parabolic subgroup is infinite or exceeds the window")
        return max(self.parabolic_elements(S0), key=lambda w: self._length[w])

    def coset_decomposition(self, w: int, S0: Iterable[int]) -> tuple[ElementId, ElementId]:
        """``w = u * w_min`` with ``u`` in ``W_{S0}`` and ``w_min`` minimal in ``W_{S0} w``."""
        S0 = frozenset(S0)
        u = 0
        changed = True
        while changed:
            changed = False
            for s in sorted(S0):
                if self.has_left_descent(w, s):
                    w = self._left[w][s]
                    u = self._right[u][s]
                    changed = True
                    break
        return ElementId(u), ElementId(w)

    def coset_rep(self, w: int, S0: Iterable[int]) -> ElementId:
        return self.coset_decomposition(w, S0)[1]

    def is_min_rep(self, w: int, S0: Iterable[int]) -> bool:
        return not any(self.has_left_descent(w, s) for s in S0)

    def min_coset_reps(self, S0: Iterable[int]) -> list[ElementId]:
        S0 = frozenset(S0)
        return [ElementId(w) for w in range(self.size) if self.is_min_rep(w, S0)]

    def max_coset_rep(self, w_min: int, S0: Iterable[int]) -> ElementId:
        """``w_+ = w_{S0} w_-``, the longest element of the coset."""
        return self.mul(self.longest_element(S0), w_min)

    def deodhar_case(self, w: int, s: int, S0: Iterable[int]) -> str:
        """Classify ``w s`` for a minimal representative ``w``.

        ``"a"``: ``ws`` minimal and longer; ``"b"``: ``ws`` minimal and shorter;
        ``"c"``: ``ws`` not minimal, in which case ``ws = t w`` with ``t`` in ``S0``.
        """
        ws = self.mul_gen(w, s)
        if not self.is_min_rep(ws, S0):
            return "c"
        return "a" if self._length[ws] > self._length[w] else "b"
