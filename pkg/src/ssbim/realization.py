"""Realizations ``(V, alpha_s, alpha_s^vee)`` and the polynomial ring ``R = Sym(V)``.

Exact arithmetic happens over sympy's ``QQ`` or ``GF(p)`` domains.  Polynomials
(:class:`MPoly`) are dictionaries from exponent tuples (over the basis of
``V``) to field elements; ``deg V = 2``, so a polynomial of total degree ``k``
has internal degree ``2k``.

Conventions: ``s(lam) = lam - <lam, alpha_s^vee> alpha_s`` and the action of a
word ``s_1 ... s_k`` is ``s_1(s_2(... s_k(lam)))``.  A linear map is stored by
rows, row ``i`` being the image of ``e_i``.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .coxeter import ConfigError, CoxeterSystem, ElementId

__all__ = [
    "Field",
    "MPoly",
    "Realization",
    "RealizationError",
    "cartan_matrix",
    "standard_realization",
]


# ---------------------------------------------------------------------- fields


@dataclass(frozen=True)
class Field:
    """``Q`` (``char == 0``) or ``F_p``."""

    char: int = 0

    def __post_init__(self) -> None:
        if self.char and not _is_prime(self.char):
            raise ConfigError(f"{self.char} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"(?:Fp:|GF\(?|F_?)(\d+)\)?", t)
        if not m:
            raise ConfigError(f"unknown field {text!r}; use Q or Fp:p")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else f"Fp:{self.char}"

    @cached_property
    def dom(self):
        return QQ if self.char == 0 else GF(self.char, symmetric=False)

    @property
    def zero(self):
        return self.dom.zero

    @property
    def one(self):
        return self.dom.one

    def __call__(self, x: Any):
        """Convert ints, ``Fraction`` or strings ``"p/q"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, float):
            if not x.is_integer():
                raise ConfigError(f"non-exact number {x!r}; use a 'p/q' string")
            x = int(x)
        if isinstance(x, Fraction):
            return self.dom.convert(x.numerator) / self.dom.convert(x.denominator)
        if self.dom.of_type(x):
            return x
        return self.dom.convert(x)

    def to_fraction(self, x) -> Fraction:
        if self.char:
            return Fraction(int(x))
        return Fraction(int(x.numerator), int(x.denominator))

    def to_str(self, x) -> str:
        f = self.to_fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def reduce_mod(self, x, p: int) -> int:
        """Image of ``x`` in ``F_p`` (``p`` must not divide denominators)."""
        if self.char:
            if self.char != p:
                raise ValueError("cannot change characteristic")
            return int(x) % p
        f = self.to_fraction(x)
        if f.denominator % p == 0:
            raise ArithmeticError(f"denominator of {f} vanishes mod {p}")
        return f.numerator * pow(f.denominator, -1, p) % p


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------- polynomials


def monomials(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``k`` in ``n`` variables, graded lex (``x0^k`` first)."""
    if n == 0:
        return [()] if k == 0 else []
    if n == 1:
        return [(k,)]
    out = []
    for a in range(k, -1, -1):
        for rest in monomials(n - 1, k - a):
            out.append((a,) + rest)
    return out


class MPoly:
    """Polynomial in ``dim V`` variables with coefficients in a :class:`Field`."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: Field, n: int, terms: Mapping[tuple[int, ...], Any] | None = None):
        self.field = field
        self.n = n
        dom = field.dom
        self.terms: dict[tuple[int, ...], Any] = {}
        for e, c in (terms or {}).items():
            c = field(c)
            if c != dom.zero:
                self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, field: Field, n: int, terms: dict) -> "MPoly":
        out = cls.__new__(cls)
        out.field, out.n, out.terms = field, n, terms
        return out

    @classmethod
    def constant(cls, field: Field, n: int, c: Any = 1) -> "MPoly":
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def linear(cls, field: Field, vec: Sequence[Any]) -> "MPoly":
        n = len(vec)
        return cls(field, n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(vec)})

    @classmethod
    def from_vector(cls, field: Field, n: int, k: int, vec: Sequence[Any]) -> "MPoly":
        return cls(field, n, dict(zip(monomials(n, k), vec)))

    def to_vector(self, k: int) -> list:
        idx = {m: i for i, m in enumerate(monomials(self.n, k))}
        out = [self.field.zero] * len(idx)
        for e, c in self.terms.items():
            if e not in idx:
                raise ValueError("polynomial is not homogeneous of the requested degree")
            out[idx[e]] = c
        return out

    # -- structure
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Internal degree ``2 * (total degree)``; ``-1`` for zero."""
        return 2 * max(sum(e) for e in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def _check(self, other: "MPoly") -> None:
        if other.field != self.field or other.n != self.n:
            raise ValueError("incompatible polynomials")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(self.field, self.n, other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        d = dict(self.terms)
        zero = self.field.zero
        for e, c in other.terms.items():
            s = d.get(e, zero) + c
            if s != zero:
                d[e] = s
            else:
                d.pop(e, None)
        return MPoly._raw(self.field, self.n, d)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.field, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = self.field(other)
            if c == self.field.zero:
                return MPoly._raw(self.field, self.n, {})
            return MPoly._raw(self.field, self.n, {e: a * c for e, a in self.terms.items()})
        self._check(other)
        zero = self.field.zero
        d: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, zero) + c1 * c2
        return MPoly._raw(self.field, self.n, {e: c for e, c in d.items() if c != zero})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.constant(self.field, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.field == other.field and self.n == other.n and self.terms == other.terms
        if isinstance(other, int):
            return self == MPoly.constant(self.field, self.n, other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Ring map sending variable ``i`` to ``images[i]``."""
        if not images:
            return self
        out = MPoly._raw(self.field, images[0].n, {})
        powers: dict[tuple[int, int], MPoly] = {}

        def pw(i: int, a: int) -> MPoly:
            if (i, a) not in powers:
                powers[(i, a)] = MPoly.constant(self.field, images[0].n) if a == 0 else pw(i, a - 1) * images[i]
            return powers[(i, a)]

        for e, c in self.terms.items():
            term = MPoly.constant(self.field, images[0].n, c)
            for i, a in enumerate(e):
                if a:
                    term = term * pw(i, a)
            out = out + term
        return out

    def divide_linear(self, lam: "MPoly") -> "MPoly":
        """Exact quotient ``self / lam`` for a linear form ``lam``; raises if inexact."""
        self._check(lam)
        if lam.is_zero() or any(sum(e) != 1 for e in lam.terms):
            raise ValueError("divisor must be a nonzero linear form")
        j = min(e.index(1) for e in lam.terms)
        unit = tuple(int(i == j) for i in range(self.n))
        c = lam.terms[unit]
        mu = lam - MPoly._raw(self.field, self.n, {unit: c})
        # expand self = sum_k f_k x_j^k with f_k free of x_j
        parts: dict[int, dict] = {}
        for e, a in self.terms.items():
            parts.setdefault(e[j], {})[e[:j] + (0,) + e[j + 1 :]] = a
        if not parts:
            return MPoly._raw(self.field, self.n, {})
        K = max(parts)
        xj = MPoly._raw(self.field, self.n, {unit: self.field.one})
        inv_c = self.field.one / c
        q: dict[int, MPoly] = {}
        prev = MPoly._raw(self.field, self.n, {})
        for k in range(K, 0, -1):
            fk = MPoly._raw(self.field, self.n, parts.get(k, {}))
            qk = (fk - mu * prev) * inv_c
            q[k - 1] = qk
            prev = qk
        f0 = MPoly._raw(self.field, self.n, parts.get(0, {}))
        if f0 - mu * prev != MPoly._raw(self.field, self.n, {}):
            raise ArithmeticError("polynomial is not divisible by the linear form")
        out = MPoly._raw(self.field, self.n, {})
        for k, qk in q.items():
            out = out + qk * (xj**k)
        return out

    def to_json(self) -> list[list]:
        return [[list(e), self.field.to_str(c)] for e, c in sorted(self.terms.items(), reverse=True)]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0]))):
            mon = "*".join(f"x{i}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a)
            cs = self.field.to_str(c)
            parts.append(cs if not mon else (mon if cs == "1" else f"{cs}*{mon}"))
        return " + ".join(parts)


# ---------------------------------------------------------------------- realizations


class RealizationError(ConfigError):
    """Realization axioms violated; ``diagnostics`` names each failed axiom."""

    def __init__(self, diagnostics: list[dict[str, Any]]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d["message"] for d in diagnostics))


def _mat_mul(F: Field, A: list[list], B: list[list]) -> list[list]:
    zero = F.zero
    return [
        [sum((A[i][k] * B[k][j] for k in range(len(B))), zero) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


@dataclass
class Realization:
    """A realization of a Coxeter system over ``Q`` or ``F_p``.

    ``alpha[s]`` is a vector in ``V`` and ``alpha_check[s]`` a row functional.
    Construction validates the axioms and raises :class:`RealizationError`.
    """

    field: Field
    coxeter: CoxeterSystem
    alpha: list[list]
    alpha_check: list[list]
    name: str = ""
    _dense: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        F = self.field
        r = self.coxeter.rank
        if len(self.alpha) != r or len(self.alpha_check) != r:
            raise RealizationError([{"axiom": "shape", "message": "need one root and coroot per generator"}])
        n = len(self.alpha[0]) if r else 0
        if any(len(a) != n for a in self.alpha) or any(len(a) != n for a in self.alpha_check):
            raise RealizationError([{"axiom": "shape", "message": "roots and coroots must have length dim_V"}])
        self.alpha = [[F(x) for x in a] for a in self.alpha]
        self.alpha_check = [[F(x) for x in a] for a in self.alpha_check]
        diags = self.validate()
        if diags:
            raise RealizationError(diags)

    # ---------------------------------------------------------------- basics

    @property
    def dim(self) -> int:
        return len(self.alpha[0]) if self.alpha else 0

    @property
    def W(self) -> CoxeterSystem:
        return self.coxeter

    def pair(self, lam: Sequence[Any], s: int):
        """``<lam, alpha_s^vee>``."""
        return sum((a * b for a, b in zip(lam, self.alpha_check[s])), self.field.zero)

    @cached_property
    def pairings(self) -> list[list]:
        """``pairings[t][s] = <alpha_t, alpha_s^vee>``."""
        return [[self.pair(self.alpha[t], s) for s in range(self.W.rank)] for t in range(self.W.rank)]

    def gen_matrix(self, s: int) -> list[list]:
        n, F = self.dim, self.field
        return [
            [(F.one if i == j else F.zero) - self.alpha_check[s][i] * self.alpha[s][j] for j in range(n)]
            for i in range(n)
        ]

    def matrix(self, w: int | Sequence[int]) -> list[list]:
        """Row matrix of ``w`` acting on ``V``; ``M_{xy} = M_y M_x``."""
        word = self.W.word(w) if isinstance(w, int) else tuple(w)
        n, F = self.dim, self.field
        M = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        for s in word:
            M = _mat_mul(F, self.gen_matrix(s), M)
        return M

    def act_vector(self, w: int | Sequence[int], lam: Sequence[Any]) -> list:
        M = self.matrix(w)
        return [sum((lam[i] * M[i][j] for i in range(self.dim)), self.field.zero) for j in range(self.dim)]

    def validate(self) -> list[dict[str, Any]]:
        F, W = self.field, self.W
        out: list[dict[str, Any]] = []
        for s in range(W.rank):
            lab = W.labels[s]
            if self.pair(self.alpha[s], s) != F(2):
                out.append({"axiom": "pairing_two", "generator": lab, "message": f"<alpha,alpha_check> != 2 for {lab}"})
            if all(x == F.zero for x in self.alpha[s]):
                out.append({"axiom": "root_nonzero", "generator": lab, "message": f"alpha_{lab} is zero"})
            if all(x == F.zero for x in self.alpha_check[s]):
                out.append(
                    {"axiom": "coroot_surjective", "generator": lab, "message": f"alpha_check_{lab} is not surjective"}
                )
        if out:
            return out
        for s, t in combinations(range(W.rank), 2):
            m = W.matrix[s][t]
            if m == math.inf:
                continue
            w1 = tuple(s if i % 2 == 0 else t for i in range(int(m)))
            w2 = tuple(t if i % 2 == 0 else s for i in range(int(m)))
            if self.matrix(w1) != self.matrix(w2):
                out.append(
                    {
                        "axiom": "braid_relation",
                        "generators": [W.labels[s], W.labels[t]],
                        "message": f"braid relation of order {int(m)} fails for {W.labels[s]},{W.labels[t]}",
                    }
                )
        return out

    # ---------------------------------------------------------------- polynomials

    def poly(self, terms: Mapping[tuple[int, ...], Any] | None = None) -> MPoly:
        return MPoly(self.field, self.dim, terms)

    def linear(self, vec: Sequence[Any]) -> MPoly:
        return MPoly.linear(self.field, [self.field(x) for x in vec])

    def variable(self, i: int) -> MPoly:
        return self.linear([int(i == j) for j in range(self.dim)])

    def root(self, s: int) -> MPoly:
        return self.linear(self.alpha[s])

    def delta(self, s: int) -> list:
        """``(1/c) e_i`` for the first ``i`` with ``c = <e_i, alpha_s^vee> != 0``."""
        for i, c in enumerate(self.alpha_check[s]):
            if c != self.field.zero:
                return [self.field.one / c if j == i else self.field.zero for j in range(self.dim)]
        raise RealizationError([{"axiom": "coroot_surjective", "message": "no delta"}])

    def act(self, w: int | Sequence[int], f: MPoly) -> MPoly:
        M = self.matrix(w)
        return f.substitute([self.linear(row) for row in M])

    def demazure(self, s: int, f: MPoly) -> MPoly:
        """``(f - s(f)) / alpha_s``; exact division or an ``ArithmeticError``."""
        return (f - self.act((s,), f)).divide_linear(self.root(s))

    # ---------------------------------------------------------------- reflections, GKM

    def reflection_roots(self, S0: Iterable[int] | None = None) -> dict[ElementId, list]:
        """``t -> alpha_t = w(alpha_s)`` for the first ``(w, s)`` with ``t = w s w^-1``."""
        W = self.W
        S0 = frozenset(range(W.rank)) if S0 is None else frozenset(S0)
        out: dict[ElementId, list] = {}
        elems = W.parabolic_elements(S0) if W.parabolic_is_finite(S0) else None
        if elems is None:
            raise ValueError("W_{S0} must be finite")
        for w in elems:
            for s in sorted(S0):
                t = W.mul(W.mul_gen(w, s), W.inverse(w))
                if t not in out:
                    out[t] = self.act_vector(w, self.alpha[s])
        return dict(sorted(out.items()))

    def gkm_check(self, S0: Iterable[int] | None = None) -> tuple[bool, dict[str, Any] | None]:
        """Pairwise linear independence of reflection roots in ``W_{S0}``."""
        roots = self.reflection_roots(S0)
        items = list(roots.items())
        for (t1, a1), (t2, a2) in combinations(items, 2):
            if _proportional(self.field, a1, a2):
                return False, {
                    "t1": self.W.name(t1),
                    "t2": self.W.name(t2),
                    "alpha_t1": [self.field.to_str(x) for x in a1],
                    "alpha_t2": [self.field.to_str(x) for x in a2],
                }
        return True, None

    # ---------------------------------------------------------------- invariants

    def _sym_rows(self, w: Sequence[int], k: int) -> list[list]:
        mons = monomials(self.dim, k)
        images = [self.linear(row) for row in self.matrix(tuple(w))]
        return [MPoly(self.field, self.dim, {m: 1}).substitute(images).to_vector(k) for m in mons]

    def invariants_basis(self, S0: Iterable[int], d: int) -> list[MPoly]:
        """Basis of ``(R^{W_{S0}})_d`` (internal degree ``d``) as a joint kernel."""
        S0 = sorted(frozenset(S0))
        if d < 0 or d % 2:
            return []
        k = d // 2
        mons = monomials(self.dim, k)
        N = len(mons)
        if not S0:
            return [MPoly(self.field, self.dim, {m: 1}) for m in mons]
        dom = self.field.dom
        cols = []
        for s in S0:
            rows = self._sym_rows((s,), k)
            cols.append([[rows[i][j] - (dom.one if i == j else dom.zero) for j in range(N)] for i in range(N)])
        # joint left kernel of the horizontally stacked (s - id): right kernel of its transpose
        A = [[cols[b][i][j] for i in range(N)] for b in range(len(S0)) for j in range(N)]
        K = DomainMatrix(A, (len(A), N), dom).nullspace()
        basis = K.to_list() if K.shape[0] else []
        return [MPoly.from_vector(self.field, self.dim, k, vec) for vec in basis]

    def freeness_check(self, S0: Iterable[int], D: int) -> tuple[bool, dict[str, Any]]:
        """Hilbert identity ``dim R_d = sum_w dim (R^{W_{S0}})_{d - 2 l(w)}`` for ``d <= D``."""
        S0 = frozenset(S0)
        W = self.W
        lengths = [W.length(w) for w in W.parabolic_elements(S0)]
        inv = [len(self.invariants_basis(S0, 2 * k)) for k in range(D // 2 + 1)]
        details = {}
        ok = True
        for k in range(D // 2 + 1):
            lhs = math.comb(self.dim + k - 1, k) if self.dim else int(k == 0)
            rhs = sum(inv[k - l] for l in lengths if k - l >= 0)
            details[str(2 * k)] = [lhs, rhs]
            ok &= lhs == rhs
        return ok, details

    # ---------------------------------------------------------------- dense data

    def dense(self, prime: int | None = None):
        """Modular dense ring data for section computations (cached)."""
        from ._dense import DenseRing, DEFAULT_PRIME

        p = prime if prime is not None else (self.field.char or DEFAULT_PRIME)
        if self.field.char and p != self.field.char:
            raise ValueError("prime must equal the field characteristic")
        if p not in self._dense:
            self._dense[p] = DenseRing(self, p)
        return self._dense[p]

    # ---------------------------------------------------------------- config IO

    def to_config(self) -> dict[str, Any]:
        W = self.W
        mat = [[None if m == math.inf else int(m) for m in row] for row in W.matrix]
        return {
            "name": self.name,
            "field": self.field.name,
            "dim_V": self.dim,
            "generators": list(W.labels),
            "coxeter_matrix": mat,
            "alpha": [[self.field.to_str(x) for x in a] for a in self.alpha],
            "alpha_check": [[self.field.to_str(x) for x in a] for a in self.alpha_check],
            "length_cap": W.length_cap,
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.to_config(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @classmethod
    def from_config(cls, cfg: Mapping[str, Any], field_override: str | None = None,
                    length_cap: int | None = None) -> "Realization":
        try:
            F = Field.parse(field_override or str(cfg.get("field", "Q")))
            mat = cfg["coxeter_matrix"] if "coxeter_matrix" in cfg else cfg["matrix"]
            labels = tuple(cfg.get("generators") or ())
            cap = length_cap if length_cap is not None else cfg.get("length_cap")
            W = CoxeterSystem(mat, labels, cap)
            alpha = cfg["alpha"]
            check = cfg["alpha_check"]
        except KeyError as exc:
            raise ConfigError(f"missing config key {exc}") from None
        dim = cfg.get("dim_V")
        if dim is not None and any(len(a) != int(dim) for a in list(alpha) + list(check)):
            raise RealizationError([{"axiom": "shape", "message": "vectors do not match dim_V"}])
        return cls(F, W, [list(a) for a in alpha], [list(a) for a in check], str(cfg.get("name", "")))


def _proportional(F: Field, a: Sequence[Any], b: Sequence[Any]) -> bool:
    """Whether ``a`` and ``b`` are linearly dependent."""
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] * b[j] - a[j] * b[i] != F.zero:
                return False
    return True


# ---------------------------------------------------------------------- standard realizations


def cartan_matrix(kind: str) -> tuple[list[list[int]], list[list[int]]]:
    """(Cartan matrix, Coxeter matrix) for ``A_n``, ``B_n``, ``C_n``, ``D_n``, ``G2``/``I2(6)`` and products ``X x Y``."""
    parts = [p.strip() for p in re.split(r"[x×]", kind.replace(" ", "")) if p.strip()]
    if len(parts) > 1:
        blocks = [cartan_matrix(p) for p in parts]
        n = sum(len(c) for c, _ in blocks)
        C = [[0] * n for _ in range(n)]
        M = [[2] * n for _ in range(n)]
        off = 0
        for c, m in blocks:
            k = len(c)
            for i in range(k):
                for j in range(k):
                    C[off + i][off + j] = c[i][j]
                    M[off + i][off + j] = m[i][j]
            off += k
        return C, M
    kind = parts[0]
    if kind in ("G2", "I2(6)"):
        C = [[2, -1], [-3, 2]]
    elif kind == "I2(4)":
        C = [[2, -2], [-1, 2]]
    elif kind == "I2(3)":
        C = [[2, -1], [-1, 2]]
    else:
        m = re.fullmatch(r"([ABCD])(\d+)", kind)
        if not m:
            raise ConfigError(f"unknown Cartan type {kind!r}")
        t, n = m.group(1), int(m.group(2))
        if n < 1 or (t in "BC" and n < 2) or (t == "D" and n < 4):
            raise ConfigError(f"unsupported rank for type {kind}")
        C = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        if t == "B":
            C[n - 2][n - 1] = -2
        elif t == "C":
            C[n - 1][n - 2] = -2
        elif t == "D":
            C[n - 2][n - 1] = C[n - 1][n - 2] = 0
            C[n - 3][n - 1] = C[n - 1][n - 3] = -1
    n = len(C)
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    M = [[1 if i == j else order[C[i][j] * C[j][i]] for j in range(n)] for i in range(n)]
    return C, M


def standard_realization(kind: str, field: str | Field = "Q", length_cap: int | None = None) -> Realization:
    """Cartan realization: ``V`` has basis the simple roots, ``alpha_check_s`` is row ``s`` of the Cartan matrix."""
    C, M = cartan_matrix(kind)
    F = field if isinstance(field, Field) else Field.parse(field)
    n = len(C)
    W = CoxeterSystem(M, (), length_cap)
    alpha = [[int(i == j) for j in range(n)] for i in range(n)]
    return Realization(F, W, alpha, [list(row) for row in C], name=kind)
