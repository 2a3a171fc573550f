"""Theorem-checking suites that bind Hecke-side predictions to section models.

Every check returns a :class:`CheckReport`.  A corpus is a list of
:class:`CorpusEntry` (realization, words, parabolics); :func:`run_corpus`
expands it into checks in a fixed order, so reports are reproducible byte for
byte.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .coxeter import CoxeterSystem
from .hecke import HeckeAlgebra, HeckeElt, LaurentPoly
from .parabolic import ParabolicModule, TriangularityError
from .realization import Realization, cartan_matrix, standard_realization
from .sections import (
    SectionModule,
    StabilizationError,
    FreenessError,
    bott_samelson,
    character,
    corestriction_grk,
    dual_character_data,
    hom_grk,
    hom_space,
    longest_splitting,
    pullback,
    pushforward,
    quotient_to,
    restrict_closed,
    structure_algebra,
    subquotient_grk,
    tensor_bs,
    tensor_image,
)

__all__ = [
    "CheckReport",
    "CorpusEntry",
    "CHECK_NAMES",
    "default_corpus",
    "corpus_window",
    "gate",
    "check_hecke_axioms",
    "check_categorification",
    "check_hom_formula",
    "check_hom_suite",
    "check_classification_char",
    "check_classification_suite",
    "check_classification_pullback",
    "check_duality",
    "check_duality_suite",
    "check_structure_algebra",
    "check_splitting",
    "check_adjunction",
    "check_functoriality",
    "check_projectivity",
    "run_corpus",
    "reports_to_json",
]


@dataclass
class CheckReport:
    """Outcome of one check.  ``fail`` carries a witness, ``skipped`` a reason."""

    name: str
    status: str
    witness: Any = None
    window: int | None = None
    reason: str | None = None
    context: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")
        if self.status == "skipped" and not self.reason:
            raise ValueError("a skipped report needs a reason")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict[str, Any]:
        out = {"name": self.name, "status": self.status, "window": self.window, "witness": self.witness}
        if self.reason is not None:
            out["reason"] = self.reason
        out.update(self.context)
        return out


def _names(W: CoxeterSystem, S0: Iterable[int]) -> list[str]:
    return [W.name(W.mul_gen(0, s)) for s in sorted(S0)]


def _ctx(real: Realization | None, S0: Iterable[int] = (), words: Sequence[Sequence[int]] | None = None,
         W: CoxeterSystem | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if real is not None:
        W = real.W
        out["type"] = real.name
        out["field"] = real.field.name
        out["config_hash"] = real.config_hash()
    out["S0"] = _names(W, S0) if W is not None else sorted(S0)
    if words is not None:
        out["words"] = ["".join(W.name(W.mul_gen(0, s)) for s in w) or "e" for w in words]
    return out


def _pass(name: str, witness: Any, window: int | None, ctx: dict) -> CheckReport:
    return CheckReport(name, "pass", witness, window, None, ctx)


def _verdict(name: str, failures: list, summary: Any, window: int | None, ctx: dict) -> CheckReport:
    if failures:
        return CheckReport(name, "fail", {"failures": failures[:5], "count": len(failures)}, window, None, ctx)
    return _pass(name, summary, window, ctx)


def _guard(name: str, window: int | None, ctx: dict, fn: Callable[[], CheckReport]) -> CheckReport:
    """Run ``fn``; window trouble and freeness signals become failing reports."""
    try:
        return fn()
    except (StabilizationError, FreenessError, TriangularityError) as exc:
        return CheckReport(name, "fail", {"error": type(exc).__name__, "message": str(exc)}, window, None, ctx)


def corpus_window(max_len: int, dim_v: int) -> int:
    """``D = 2 * (max word length) + 2 * dim V + 4``."""
    return 2 * max_len + 2 * dim_v + 4


def _word_str(W: CoxeterSystem, word: Sequence[int]) -> str:
    return "".join(W.name(W.mul_gen(0, s)) for s in word) or "e"


# ---------------------------------------------------------------- gating


def gate(real: Realization, S0: Iterable[int] = ()) -> str | None:
    """Reason to skip section-level checks, or ``None``."""
    W = real.W
    if not W.is_finite:
        return "section checks need a finite Coxeter group"
    ok, witness = real.gkm_check()
    if not ok:
        return f"GKM condition fails: alpha_{witness['t1']} and alpha_{witness['t2']} are proportional"
    S0 = frozenset(S0)
    D = 2 * W.length(W.longest_element(S0)) + 2
    fine, _ = real.freeness_check(S0, D)
    if not fine:
        return "R is not free over the invariants of W_{S0}"
    return None


# ---------------------------------------------------------------- Hecke axioms


def check_hecke_axioms(W: CoxeterSystem, label: str = "") -> CheckReport:
    """Associativity on all basis triples (structure tensor), quadratic relation, bar^2, omega^2."""
    H = HeckeAlgebra.of(W)
    ctx = {"type": label, "S0": []}
    T, L = H.structure_constants()
    n, width = W.size, T.shape[-1]
    failures = []
    # the tensor agrees with mul on all pairs
    for x in range(n):
        for y in range(n):
            if H.mul(H.H(x), H.H(y)) != H.tensor_to_elt(T[x, y], L):
                failures.append({"tensor_vs_mul": [W.name(x), W.name(y)]})
                break
    Tf = T.astype(np.float64)
    full = 2 * width - 1
    lhs = np.zeros((n, n, n, n, full))
    rhs = np.zeros((n, n, n, n, full))
    flat = Tf.reshape(n, n * n * width)  # (w, (z, u, k))
    for a in range(width):
        # (H_x H_y) H_z: sum_w T[x,y,w,a] T[w,z,u,k]
        part = (Tf[:, :, :, a].reshape(n * n, n) @ flat).reshape(n, n, n, n, width)
        lhs[..., a : a + width] += part
        # H_x (H_y H_z): sum_w T[y,z,w,a] T[x,w,u,k]
        part = np.einsum("yzw,xwuk->xyzuk", Tf[:, :, :, a], Tf, optimize=True)
        rhs[..., a : a + width] += part
    bad = np.argwhere(np.any(lhs != rhs, axis=(-1, -2)))
    for x, y, z in bad[:5]:
        failures.append({"associativity": [W.name(x), W.name(y), W.name(z)]})
    one = H.one
    vinv = LaurentPoly({-1: 1})
    vv = LaurentPoly({1: 1})
    for s in range(W.rank):
        Hs = H.gen(s)
        q = H.mul(Hs - one * vinv, Hs + one * vv)
        if not q.is_zero():
            failures.append({"quadratic": W.name(W.mul_gen(0, s)), "value": q.to_named_json()})
    for x in range(n):
        h = H.H(x) * LaurentPoly({2: 1, -1: 3}) + H.H(W.inverse(x))
        if H.bar(H.bar(h)) != h:
            failures.append({"bar_squared": W.name(x)})
        if H.omega(H.omega(h)) != h:
            failures.append({"omega_squared": W.name(x)})
    summary = {"elements": n, "triples": n ** 3, "max_length": L}
    return _verdict("hecke-axioms", failures, summary, None, ctx)


# ---------------------------------------------------------------- categorification


def _hecke_product(H: HeckeAlgebra, word: Sequence[int]) -> HeckeElt:
    out = H.one
    for s in word:
        out = H.mul(out, H.kl(H.W.mul_gen(0, s)))
    return out


def check_categorification(real: Realization, S0: Iterable[int], words: Sequence[Sequence[int]],
                           D: int | None = None) -> CheckReport:
    """``ch(pi_* BS) = p(ch(BS))`` and ``ch(pi_* BS (x) B_s) = ch(pi_* BS) ch(B_s)`` per word."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0, words)
    reason = gate(real, S0)
    if reason:
        return CheckReport("categorification", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0) + 1
    D = corpus_window(max_len, real.dim) if D is None else D

    def run() -> CheckReport:
        H = HeckeAlgebra.of(W)
        PM = ParabolicModule.of(H, S0)
        failures = []
        for word in words:
            base = bott_samelson(real, word)
            ch0 = character(base, D)
            if ch0 != _hecke_product(H, word):
                failures.append({"word": _word_str(W, word), "ch_BS": ch0.to_named_json()})
            M = pushforward(base, S0)
            chM = character(M, D)
            pch = PM.p_map(ch0) if S0 else ch0
            if chM != pch:
                failures.append({"word": _word_str(W, word), "push": chM.to_named_json(), "p_ch": pch.to_named_json()})
            for s in range(W.rank):
                lhs = character(tensor_bs(M, s), D)
                rhs = PM.act(chM, H.kl(W.mul_gen(0, s))) if S0 else H.mul(chM, H.kl(W.mul_gen(0, s)))
                if lhs != rhs:
                    failures.append({"word": _word_str(W, word), "s": W.name(W.mul_gen(0, s)),
                                     "lhs": lhs.to_named_json(), "rhs": rhs.to_named_json()})
        return _verdict("categorification", failures, {"words": len(words), "checks": len(words) * (2 + W.rank)},
                        D, ctx)

    return _guard("categorification", D, ctx, run)


# ---------------------------------------------------------------- hom formula


def _pairing(M: SectionModule, a, b) -> LaurentPoly:
    H = HeckeAlgebra.of(M.W)
    if not M.S0:
        return H.pairing(a, b)
    return ParabolicModule.of(H, M.S0).pairing(a, b)


def check_hom_formula(M: SectionModule, N: SectionModule, D: int | None = None) -> CheckReport:
    """``grk Hom(M, N) = <ch M, ch N>``; hom spaces by degreewise solves, the pairing as oracle."""
    ctx = {"S0": _names(M.W, M.S0), "M": M.label, "N": N.label}

    def run() -> CheckReport:
        g = hom_grk(M, N, D)
        pr = _pairing(M, character(M, D), character(N, D))
        if g != pr:
            return CheckReport("hom-formula", "fail", {"hom_grk": g.to_json(), "pairing": pr.to_json()}, D, None, ctx)
        return _pass("hom-formula", {"grk": g.to_json()}, D, ctx)

    return _guard("hom-formula", D, ctx, run)


def check_hom_suite(real: Realization, S0: Iterable[int], words: Sequence[Sequence[int]],
                    D: int | None = None) -> CheckReport:
    """Hom formula for all ordered pairs of models ``pi_* BS(word)``."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0, words)
    reason = gate(real, S0)
    if reason:
        return CheckReport("hom-formula", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0)
    D = corpus_window(max_len, real.dim) if D is None else D

    def run() -> CheckReport:
        mods = [bott_samelson(real, w, S0) for w in words]
        chs = [character(M, D) for M in mods]
        failures, values = [], {}
        for (i, M), (j, N) in itertools.product(enumerate(mods), repeat=2):
            g = hom_grk(M, N, D)
            pr = _pairing(M, chs[i], chs[j])
            key = f"{_word_str(W, words[i])}|{_word_str(W, words[j])}"
            if g != pr:
                failures.append({"pair": key, "hom_grk": g.to_json(), "pairing": pr.to_json()})
            elif i <= 3 and j <= 3:
                values[key] = g.to_json()
        return _verdict("hom-formula", failures, {"pairs": len(mods) ** 2, "sample": values}, D, ctx)

    return _guard("hom-formula", D, ctx, run)


# ---------------------------------------------------------------- classification


def check_classification_char(H: HeckeAlgebra, S0: Iterable[int], w: int) -> dict | None:
    """Decompose ``p(b_{w-})`` in the parabolic KL basis; ``None`` if all conditions hold."""
    PM = ParabolicModule.of(H, S0)
    W = H.W
    w = int(W.coset_rep(w, S0))
    m = PM.p_map(H.kl(w))
    try:
        coeffs = PM.kl_decomposition(m)
    except TriangularityError as exc:
        return {"coset": W.name(w), "error": str(exc)}
    problems = []
    if max(coeffs) != w or coeffs[w] != LaurentPoly(1):
        problems.append("top coefficient is not 1")
    if any(not c.has_nonnegative_coefficients() for c in coeffs.values()):
        problems.append("negative coefficient")
    if problems:
        return {"coset": W.name(w), "problems": problems,
                "coefficients": {W.name(y): c.to_json() for y, c in coeffs.items()}}
    return None


def check_classification_suite(real: Realization, S0: Iterable[int], max_length: int = 3) -> CheckReport:
    """All cosets with ``l(w-) <= max_length``; characteristic 0 only."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0)
    if real.field.char:
        return CheckReport("classification-char", "skipped", None, None,
                           "indecomposable characters need not be KL-type in positive characteristic", ctx)
    H = HeckeAlgebra.of(W)
    cosets = [w for w in W.min_coset_reps(S0) if W.length(w) <= max_length]
    failures = [f for w in cosets if (f := check_classification_char(H, S0, w)) is not None]
    sample = {}
    PM = ParabolicModule.of(H, S0)
    for w in cosets[:6]:
        sample[W.name(w)] = {W.name(y): c.to_json() for y, c in PM.kl_decomposition(PM.p_map(H.kl(w))).items()}
    return _verdict("classification-char", failures, {"cosets": len(cosets), "sample": sample}, None, ctx)


def check_classification_pullback(real: Realization, S0: Iterable[int], max_length: int = 3) -> CheckReport:
    """Character shadow of pulling indecomposables back to ``S1 < S0``.

    ``ch(pi_* BS(w-)) = sum_y c_y b^{S0}_y`` predicts
    ``ch(pi^* pi_* BS(w-)) = sum_y c_y v^{l(w_S1) - l(w_S0)} b^{S1}_{y1+}`` with ``y1+``
    the ``S1``-coset of the longest element of ``y``.  Characteristic 0 only.
    """
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0)
    if real.field.char:
        return CheckReport("classification-pullback", "skipped", None, None,
                           "indecomposable characters need not be KL-type in positive characteristic", ctx)
    reason = gate(real, S0)
    if reason:
        return CheckReport("classification-pullback", "skipped", None, None, reason, ctx)
    H = HeckeAlgebra.of(W)
    P0 = ParabolicModule.of(H, S0)
    cosets = [w for w in P0.cosets if W.length(w) <= max_length]
    smaller = [frozenset(c) for r in range(len(S0)) for c in itertools.combinations(sorted(S0), r)]

    def run() -> CheckReport:
        failures, count = [], 0
        for w in cosets:
            M = bott_samelson(real, W.word(w), S0)
            coeffs = P0.kl_decomposition(character(M))
            for S1 in smaller:
                shift = W.length(W.longest_element(S1)) - W.length(W.longest_element(S0))
                target = ParabolicModule.of(H, S1) if S1 else None
                pred: dict[int, LaurentPoly] = {}
                for y, c in coeffs.items():
                    y1 = W.coset_rep(W.max_coset_rep(y, S0), S1)
                    b = target.kl(y1) if target is not None else H.kl(y1)
                    for z, d in b.terms.items():
                        pred[z] = pred.get(z, LaurentPoly()) + (d * c).shift(shift)
                pred = {z: c for z, c in pred.items() if c}
                got = character(pullback(M, S1))
                count += 1
                if got.terms != pred:
                    failures.append({"coset": W.name(w), "S1": _names(W, S1),
                                     "pullback": got.to_named_json(),
                                     "predicted": {W.name(z): c.to_json() for z, c in sorted(pred.items())}})
        return _verdict("classification-pullback", failures, {"cases": count}, None, ctx)

    return _guard("classification-pullback", None, ctx, run)


# ---------------------------------------------------------------- duality


def check_duality(M: SectionModule, D: int | None = None) -> CheckReport:
    """``barch(M) = bar(ch(M))``, ``bar ch(M (x) B_s) = barch(M) ch(B_s)``, and the costalk lemma for ``S0 = {}``."""
    ctx = {"S0": _names(M.W, M.S0), "M": M.label}

    def run() -> CheckReport:
        return _duality_failures(M, D, ctx)

    return _guard("duality", D, ctx, run)


def _bar(M: SectionModule, x):
    H = HeckeAlgebra.of(M.W)
    return H.bar(x) if not M.S0 else ParabolicModule.of(H, M.S0).bar(x)


def _times_bs(M: SectionModule, x, s: int):
    H = HeckeAlgebra.of(M.W)
    b = H.kl(M.W.mul_gen(0, s))
    return H.mul(x, b) if not M.S0 else ParabolicModule.of(H, M.S0).act(x, b)


def _duality_failures(M: SectionModule, D: int | None, ctx: dict, tensor: bool = True) -> CheckReport:
    W = M.W
    data = dual_character_data(M, D)
    failures = []
    if data.barch != _bar(M, data.ch):
        failures.append({"M": M.label, "ch": data.ch.to_named_json(), "barch": data.barch.to_named_json()})
    if data.costalk is not None:
        if data.costalk != data.ch:
            failures.append({"M": M.label, "costalk": data.costalk.to_named_json(), "ch": data.ch.to_named_json()})
        for w in M.components():
            a = corestriction_grk(M, w, D)
            b = subquotient_grk(M, w, D).shift(2 * W.length(w))
            if a != b:
                failures.append({"M": M.label, "lemma_at": W.name(w), "grk_costalk": a.to_json(),
                                 "shifted_stalk": b.to_json()})
    if tensor:
        for s in range(W.rank):
            Ms = tensor_bs(M, s)
            lhs = _bar(M, character(Ms, D))
            rhs = _times_bs(M, data.barch, s)
            if lhs != rhs:
                failures.append({"M": M.label, "s": W.name(W.mul_gen(0, s)), "lhs": lhs.to_named_json(),
                                 "rhs": rhs.to_named_json()})
    return _verdict("duality", failures, {"ch": data.ch.to_named_json()}, data.window, ctx)


def check_duality_suite(real: Realization, S0: Iterable[int], words: Sequence[Sequence[int]],
                        D: int | None = None) -> CheckReport:
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0, words)
    reason = gate(real, S0)
    if reason:
        return CheckReport("duality", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0) + 1
    D = corpus_window(max_len, real.dim) if D is None else D

    def run() -> CheckReport:
        failures = []
        for word in words:
            M = bott_samelson(real, word, S0)
            rep = _duality_failures(M, D, {})
            if rep.status == "fail":
                failures += rep.witness["failures"]
        return _verdict("duality", failures, {"models": len(words)}, D, ctx)

    return _guard("duality", D, ctx, run)


# ---------------------------------------------------------------- structure algebra


def check_structure_algebra(real: Realization, S0: Iterable[int], D: int | None = None) -> CheckReport:
    """Congruence space equals the image of ``R (x)_{R^{W_{S0}}} R`` and has the predicted Hilbert series."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0)
    ok, witness = real.gkm_check(S0)
    if not ok:
        return CheckReport("structure-algebra", "skipped", None, None,
                           f"GKM condition fails for W_S0: alpha_{witness['t1']} and alpha_{witness['t2']}", ctx)
    reason = gate(real, S0)
    if reason:
        return CheckReport("structure-algebra", "skipped", None, None, reason, ctx)
    lens = [W.length(u) for u in W.parabolic_elements(S0)]
    D = 2 * max(lens) + 2 * real.dim + 4 if D is None else D
    Z = structure_algebra(real, S0)
    T = tensor_image(real, S0)
    p = Z.p
    n = real.dim
    failures, dims = [], {}
    for d in range(0, D + 1, 2):
        a, b = Z.flat(d), T.flat(d)
        r = K.rank(np.vstack([a, b]), p)
        expect = sum(_dim_r(n, (d - 2 * l) // 2) for l in lens if d >= 2 * l)
        dims[str(d)] = a.shape[0]
        if not (a.shape[0] == b.shape[0] == r == expect):
            failures.append({"degree": d, "congruence": a.shape[0], "image": b.shape[0], "joint": r,
                             "predicted": expect})
    return _verdict("structure-algebra", failures, {"dims": dims}, D, ctx)


def _dim_r(n: int, k: int) -> int:
    from math import comb

    return comb(n + k - 1, k) if k >= 0 else 0


def check_splitting(real: Realization, S0: Iterable[int]) -> CheckReport:
    """Exact longest-element splitting: ``p_{w0}(phi(u)) = 1`` and ``phi o psi = id``."""
    S0 = frozenset(S0)
    ctx = _ctx(real, S0)
    reason = gate(real, S0)
    if reason:
        return CheckReport("splitting", "skipped", None, None, reason, ctx)
    rep = longest_splitting(real, S0)
    ctx["word"] = _word_str(real.W, rep.word)
    summary = {"p_w0_is_one": rep.p_w0_is_one, "phi_psi_identity": rep.phi_psi_identity,
               "steps": len(rep.word), "z0_e": rep.z0.get("e")}
    if not rep.ok:
        return CheckReport("splitting", "fail", rep.to_json(), None, None, ctx)
    return _pass("splitting", summary, None, ctx)


# ---------------------------------------------------------------- adjunction / functoriality


def _same_span(A: np.ndarray, B: np.ndarray, p: int) -> bool:
    if A.shape != B.shape:
        return False
    if A.shape[0] == 0:
        return True
    return K.rank(np.vstack([A, B]), p) == K.rank(A, p) == A.shape[0]


def _closed_sets(W: CoxeterSystem, comps: Sequence[int]) -> list[list[int]]:
    """Down-sets ``{x <= w}`` within ``comps`` together with their complements' partners."""
    out = []
    for w in comps:
        I = [x for x in comps if W.bruhat_leq(x, w)]
        if I not in out:
            out.append(I)
    return out


def check_adjunction(real: Realization, S0: Iterable[int], words: Sequence[Sequence[int]],
                     D: int | None = None) -> CheckReport:
    """``dim Hom(pi^* M, N)_n = dim Hom(M, pi_* N)_n`` for ``M = pi_* BS(u)`` and ``N = BS(w)``."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0, words)
    reason = gate(real, S0)
    if reason:
        return CheckReport("adjunction", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0)
    D = corpus_window(max_len, real.dim) if D is None else D
    failures, count = [], 0
    for u, w in itertools.product(words, repeat=2):
        M = bott_samelson(real, u, S0)
        N = bott_samelson(real, w)
        left = pullback(M, ())
        right = pushforward(N, S0)
        lo = -(left.bound + N.bound)
        a = [hom_space(left, N, n, with_images=False).dim for n in range(lo, D + 1)]
        b = [hom_space(M, right, n, with_images=False).dim for n in range(lo, D + 1)]
        count += 1
        if a != b:
            failures.append({"M": _word_str(W, u), "N": _word_str(W, w), "from": lo, "pullback_side": a,
                             "pushforward_side": b})
    return _verdict("adjunction", failures, {"pairs": count}, D, ctx)


def check_functoriality(real: Realization, S0: Iterable[int], words: Sequence[Sequence[int]],
                        D: int | None = None) -> CheckReport:
    """``pi_*(M)_I = pi_*(M_{pi^-1 I})``, the same for ``M^I``, and ``pi^*(M)_{pi^-1 I} = pi^*(M_I)``."""
    S0 = frozenset(S0)
    W = real.W
    ctx = _ctx(real, S0, words)
    reason = gate(real, S0)
    if reason:
        return CheckReport("functoriality", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0)
    D = corpus_window(max_len, real.dim) if D is None else D
    p = real.dense().p
    failures, count = [], 0
    for word in words:
        base = bott_samelson(real, word)
        M = pushforward(base, S0)
        for I in _closed_sets(W, M.components()):
            pre = [x for x in base.components() if W.coset_rep(x, S0) in I]
            pairs = [
                ("sub", restrict_closed(M, I), pushforward(restrict_closed(base, pre), S0)),
                ("quotient", quotient_to(M, I), pushforward(quotient_to(base, pre), S0)),
            ]
            if S0:
                back = pullback(M, ())
                fiber = [y for y in back.components() if W.coset_rep(y, S0) in I]
                pairs.append(("pullback", restrict_closed(back, fiber), pullback(restrict_closed(M, I), ())))
            for kind, A, B in pairs:
                count += 1
                for d in A.degrees(D):
                    if not _same_span(A.flat(d), B.flat(d), p):
                        failures.append({"word": _word_str(W, word), "I": [W.name(x) for x in I], "kind": kind,
                                         "degree": d})
                        break
    return _verdict("functoriality", failures, {"comparisons": count}, D, ctx)


def check_projectivity(real: Realization, words: Sequence[Sequence[int]], D: int | None = None) -> CheckReport:
    """``Hom(M, N_I) -> Hom(M, N_I / N_{I - w})`` is onto for closed ``I`` with maximal ``w``."""
    W = real.W
    ctx = _ctx(real, (), words)
    reason = gate(real)
    if reason:
        return CheckReport("projectivity", "skipped", None, None, reason, ctx)
    max_len = max((len(w) for w in words), default=0)
    D = corpus_window(max_len, real.dim) if D is None else D
    p = real.dense().p
    failures, count = [], 0
    for u, v_ in itertools.product(words, repeat=2):
        M, N = bott_samelson(real, u), bott_samelson(real, v_)
        lo = -(M.bound + N.bound)
        for w in N.components():
            I = [x for x in N.components() if W.bruhat_leq(x, w)]
            NI = restrict_closed(N, I)
            Q = quotient_to(NI, [w])
            keep = NI.slots_of([w])
            for n in range(lo, D + 1):
                hs = hom_space(M, NI, n)
                hq = hom_space(M, Q, n, with_images=False)
                count += 1
                if hs.dim:
                    rows = np.hstack([im[:, keep, :].reshape(hs.dim, -1) for im in hs.images])
                    r = K.rank(rows, p)
                else:
                    r = 0
                if r != hq.dim:
                    failures.append({"M": _word_str(W, u), "N": _word_str(W, v_), "w": W.name(w), "degree": n,
                                     "image": r, "target": hq.dim})
    return _verdict("projectivity", failures, {"maps": count}, D, ctx)


# ---------------------------------------------------------------- corpus


CHECK_NAMES = (
    "hecke-axioms",
    "categorification",
    "hom-formula",
    "classification-char",
    "classification-pullback",
    "duality",
    "structure-algebra",
    "splitting",
    "adjunction",
    "functoriality",
    "projectivity",
)

_SPLIT_TYPES = {"A1", "A1xA1", "A2", "B2"}


@dataclass
class CorpusEntry:
    """One realization and the word families exercised on it."""

    kind: str
    field: str = "Q"
    max_len: int = 4
    hom_len: int | None = None  # words for the hom formula (None: no hom checks)
    adj_len: int = 2
    adj_rank: int | None = None  # cap on |S0| for adjunction (None: no cap)
    func_len: int | None = None  # words for functoriality (None: max_len)
    parabolics: list[tuple[int, ...]] | None = None  # None: every finite subset
    hecke: bool = False
    config: dict | None = None

    def realization(self) -> Realization:
        if self.config is not None:
            return Realization.from_config(self.config, field_override=None if self.field == "config" else self.field)
        return standard_realization(self.kind, self.field)

    def words(self, max_len: int | None = None) -> list[tuple[int, ...]]:
        r = self.realization().W.rank
        top = self.max_len if max_len is None else max_len
        return [w for l in range(top + 1) for w in itertools.product(range(r), repeat=l)]


def default_corpus() -> list[CorpusEntry]:
    return [
        CorpusEntry("A1"),
        CorpusEntry("A1xA1"),
        CorpusEntry("A2", hom_len=3, hecke=True),
        CorpusEntry("B2", hom_len=3, hecke=True),
        CorpusEntry("I2(6)", hecke=True),
        CorpusEntry("A3", max_len=3, adj_len=1, adj_rank=2, func_len=2, hecke=True),
        CorpusEntry("A2", field="Fp:5", hom_len=3),
        CorpusEntry("G2", field="Fp:3", max_len=2, hom_len=1),
    ]


def _parabolics(W: CoxeterSystem, entry: CorpusEntry) -> list[frozenset[int]]:
    if entry.parabolics is not None:
        return [frozenset(S) for S in entry.parabolics]
    subsets = [frozenset(c) for r in range(W.rank + 1) for c in itertools.combinations(range(W.rank), r)]
    return [S for S in subsets if W.parabolic_is_finite(S)]


def _parabolic_type(real: Realization, S0: frozenset) -> str:
    """Coarse type label of ``W_{S0}`` (enough to select splitting cases)."""
    W = real.W
    S = sorted(S0)
    if not S:
        return ""
    m = W.matrix
    comps: list[list[int]] = []
    for s in S:
        for c in comps:
            if any(m[s][t] != 2 for t in c):
                c.append(s)
                break
        else:
            comps.append([s])
    labels = []
    for c in comps:
        size = len(W.parabolic_elements(c))
        if len(c) == 1:
            labels.append("A1")
        elif len(c) == 2:
            mm = m[c[0]][c[1]]
            labels.append({3: "A2", 4: "B2", 6: "G2"}.get(mm, f"I2({mm})"))
        else:
            labels.append(f"rank{len(c)}:{size}")
    return "x".join(sorted(labels))


def run_corpus(entries: Sequence[CorpusEntry] | None = None, only: Iterable[str] | None = None,
               types: Iterable[str] | None = None, progress: Callable[[str], None] | None = None) -> list[CheckReport]:
    """Expand the corpus into reports, in a fixed deterministic order."""
    entries = list(default_corpus() if entries is None else entries)
    only = set(only) if only else None
    types = set(types) if types else None
    for name in only or ():
        if name not in CHECK_NAMES:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    want = lambda name: only is None or name in only  # noqa: E731
    reports: list[CheckReport] = []
    for entry in entries:
        if types is not None and entry.kind not in types:
            continue
        real = entry.realization()
        W = real.W
        if progress:
            progress(f"{entry.kind} over {real.field.name}")
        if entry.hecke and want("hecke-axioms") and real.field.char == 0:
            reports.append(check_hecke_axioms(W, real.name))
        words = entry.words()
        for S0 in _parabolics(W, entry):
            if want("categorification"):
                reports.append(check_categorification(real, S0, words))
            if want("duality"):
                reports.append(check_duality_suite(real, S0, words))
            if want("hom-formula") and entry.hom_len is not None:
                reports.append(check_hom_suite(real, S0, entry.words(entry.hom_len)))
            if want("classification-char") and S0 and W.is_finite:
                reports.append(check_classification_suite(real, S0))
            if want("classification-pullback") and S0 and W.is_finite:
                reports.append(check_classification_pullback(real, S0, min(entry.max_len, 3)))
            if S0 and want("structure-algebra"):
                reports.append(check_structure_algebra(real, S0))
            if S0 and want("splitting") and _parabolic_type(real, S0) in _SPLIT_TYPES:
                reports.append(check_splitting(real, S0))
            if S0 and want("adjunction") and (entry.adj_rank is None or len(S0) <= entry.adj_rank):
                reports.append(check_adjunction(real, S0, entry.words(entry.adj_len)))
            if want("functoriality"):
                fwords = words if entry.func_len is None else entry.words(entry.func_len)
                reports.append(check_functoriality(real, S0, fwords))
        if want("projectivity") and entry.hom_len is not None:
            reports.append(check_projectivity(real, entry.words(min(entry.hom_len, 2))))
    return reports


def reports_to_json(reports: Sequence[CheckReport]) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=1, ensure_ascii=True) + "\n"
