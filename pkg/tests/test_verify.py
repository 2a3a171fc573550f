import json

import pytest

from ssbim.hecke import HeckeAlgebra
from ssbim.realization import standard_realization
from ssbim.sections import bott_samelson, bs_module, pushforward, standard_module
from ssbim import verify as V

from conftest import coxeter


def test_report_invariants():
    with pytest.raises(ValueError):
        V.CheckReport("x", "fail")
    with pytest.raises(ValueError):
        V.CheckReport("x", "skipped")
    with pytest.raises(ValueError):
        V.CheckReport("x", "maybe")
    r = V.CheckReport("x", "skipped", reason="because", context={"type": "A2"})
    assert r.ok and r.to_json()["type"] == "A2"


def test_corpus_window():
    assert V.corpus_window(4, 2) == 16


def test_gate():
    assert V.gate(standard_realization("A2")) is None
    reason = V.gate(standard_realization("G2", "Fp:3"))
    assert reason and "GKM" in reason


def test_hecke_axioms():
    assert V.check_hecke_axioms(coxeter("B2"), "B2").status == "pass"


@pytest.mark.parametrize("S0", [(), (0,), (0, 1)])
def test_categorification(real_A2, S0):
    words = [(), (1,), (0, 0), (1, 0)]
    rep = V.check_categorification(real_A2, S0, words)
    assert rep.status == "pass", rep.witness


def test_hom_formula(real_A2):
    B = bs_module(real_A2, 0)
    assert V.check_hom_formula(B, B).status == "pass"
    assert V.check_hom_formula(standard_module(real_A2), B).status == "pass"
    Bp = pushforward(B, {0})
    assert V.check_hom_formula(Bp, Bp).status == "pass"


def test_classification_char():
    H = HeckeAlgebra.of(coxeter("B2"))
    W = H.W
    for S0 in ({0}, {1}, {0, 1}):
        for w in W.min_coset_reps(S0):
            assert V.check_classification_char(H, S0, w) is None
    assert V.check_classification_suite(standard_realization("A2", "Fp:5"), {0}).status == "skipped"


@pytest.mark.parametrize("kind", ["A2", "B2"])
def test_classification_pullback(kind):
    real = standard_realization(kind)
    for S0 in [(0,), (1,), (0, 1)]:
        rep = V.check_classification_pullback(real, S0)
        assert rep.status == "pass", rep.witness
    assert V.check_classification_pullback(standard_realization("A2", "Fp:5"), (0,)).status == "skipped"


def test_duality(real_A2):
    assert V.check_duality(bs_module(real_A2, 0)).status == "pass"
    assert V.check_duality(standard_module(real_A2)).status == "pass"
    M = pushforward(bott_samelson(real_A2, (1, 0)), {0})
    assert V.check_duality(M).status == "pass"


@pytest.mark.parametrize("S0", [(0,), (0, 1)])
def test_structure_and_splitting(real_A2, S0):
    assert V.check_structure_algebra(real_A2, S0).status == "pass"
    assert V.check_splitting(real_A2, S0).status == "pass"


def test_adjunction_functoriality_projectivity(real_A2):
    words = [(), (0,), (1, 0)]
    assert V.check_adjunction(real_A2, {0}, words).status == "pass"
    assert V.check_functoriality(real_A2, {1}, words).status == "pass"
    assert V.check_projectivity(real_A2, words).status == "pass"


def test_parabolic_type():
    real = standard_realization("A3")
    assert V._parabolic_type(real, frozenset({0, 2})) == "A1xA1"
    assert V._parabolic_type(real, frozenset({0, 1})) == "A2"
    assert V._parabolic_type(standard_realization("B2"), frozenset({0, 1})) == "B2"


def test_gkm_violation_skips():
    entry = V.CorpusEntry("G2", field="Fp:3", max_len=1, hom_len=1)
    reports = V.run_corpus([entry])
    assert reports
    section_checks = [r for r in reports if r.name != "hecke-axioms"]
    assert all(r.status == "skipped" for r in section_checks)
    assert all("GKM" in r.reason for r in section_checks if not r.name.startswith("classification"))


def test_small_corpus_deterministic():
    entry = V.CorpusEntry("A1xA1", max_len=2, hom_len=1, adj_len=1, hecke=True)
    a = V.reports_to_json(V.run_corpus([entry]))
    b = V.reports_to_json(V.run_corpus([entry]))
    assert a == b
    data = json.loads(a)
    assert {r["status"] for r in data} == {"pass"}
    names = {r["name"] for r in data}
    assert {"categorification", "duality", "structure-algebra", "splitting", "functoriality"} <= names


def test_only_filter_and_unknown():
    entry = V.CorpusEntry("A1", max_len=1)
    reps = V.run_corpus([entry], only=["structure-algebra"])
    assert {r.name for r in reps} == {"structure-algebra"}
    with pytest.raises(ValueError):
        V.run_corpus([entry], only=["nope"])
