"""Acceptance criteria 1-10 at exact tolerance.

The default corpus is run once through ``ssbim verify`` (session fixture);
criteria 2-9 read that report, criterion 10 runs the CLI a second time and
compares bytes.  Each criterion records one PASS/FAIL line, printed in the
terminal summary.
"""

import time

import pytest

from ssbim import verify as V
from ssbim.cli import main

from conftest import coxeter

pytestmark = pytest.mark.slow

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}"


@pytest.fixture(scope="session")
def corpus_run(tmp_path_factory):
    path = tmp_path_factory.mktemp("verify") / "report.json"
    t0 = time.time()
    code = main(["verify", "--output", str(path)])
    elapsed = time.time() - t0
    import json

    return {"code": code, "bytes": path.read_bytes(), "reports": json.loads(path.read_text()), "elapsed": elapsed}


def select(reports, name, **ctx):
    out = [r for r in reports if r["name"] == name]
    for k, v in ctx.items():
        out = [r for r in out if (r.get(k) in v if isinstance(v, (set, tuple, list)) else r.get(k) == v)]
    return out


def failing(reports):
    return [(r["name"], r.get("type"), r.get("field"), r.get("S0"), r["witness"]) for r in reports if r["status"] != "pass"]


Q_TYPES = ("A1", "A1xA1", "A2", "B2", "I2(6)", "A3")


def test_criterion_1_hecke_axioms():
    t0 = time.time()
    reps = [V.check_hecke_axioms(coxeter(k), k) for k in ("A2", "B2", "I2(6)", "A3")]
    elapsed = time.time() - t0
    ok = all(r.status == "pass" for r in reps) and elapsed < 60
    record(1, ok, f"Hecke axioms on A2, B2, I2(6), A3 in {elapsed:.1f}s (target < 60s)")
    assert ok, [r.witness for r in reps if r.status != "pass"]


def test_criterion_2_categorification(corpus_run):
    reps = select(corpus_run["reports"], "categorification", field="Q")
    types = {r["type"] for r in reps}
    bad = failing(reps)
    ok = not bad and types == set(Q_TYPES)
    record(2, ok, f"categorification: {len(reps)} (type, S0) cases over Q, {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_3_hom_formula(corpus_run):
    reps = select(corpus_run["reports"], "hom-formula", field="Q", type=("A2", "B2"))
    pairs = sum(r["witness"]["pairs"] for r in reps if r["status"] == "pass")
    bad = failing(reps)
    ok = not bad and len(reps) == 8
    record(3, ok, f"hom formula: {pairs} model pairs in A2/B2 (words <= 3, all S0), {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_4_structure_algebra(corpus_run):
    reps = select(corpus_run["reports"], "structure-algebra", field="Q")
    bad = failing(reps)
    ok = not bad and len(reps) > 0
    record(4, ok, f"structure algebra = tensor image, Hilbert series as predicted: {len(reps)} (type, S0), {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_5_splitting(corpus_run):
    reps = select(corpus_run["reports"], "splitting", field="Q")
    kinds = {V._parabolic_type(V.standard_realization(r["type"]), frozenset(
        V.standard_realization(r["type"]).W.parse_subset(",".join(r["S0"])))) for r in reps}
    bad = failing(reps)
    ok = not bad and {"A1", "A1xA1", "A2", "B2"} <= kinds
    record(5, ok, f"longest-element splitting exact for {sorted(kinds)}: {len(reps)} cases, {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_6_duality(corpus_run):
    reps = select(corpus_run["reports"], "duality", field="Q")
    bad = failing(reps)
    ok = not bad and {r["type"] for r in reps} == set(Q_TYPES)
    record(6, ok, f"barch = bar(ch) and the costalk lemma: {len(reps)} (type, S0) suites, {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_7_classification(corpus_run):
    reps = select(corpus_run["reports"], "classification-char", field="Q", type=("A2", "B2", "A3"))
    pulls = select(corpus_run["reports"], "classification-pullback", field="Q")
    bad = failing(reps) + failing(pulls)
    ok = not bad and {r["type"] for r in reps} == {"A2", "B2", "A3"} and len(pulls) > 0
    record(7, ok, f"parabolic KL decompositions unitriangular and positive: {len(reps)} (type, S0); "
                  f"pullback shadow {len(pulls)}; {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_8_adjunction_functoriality(corpus_run):
    reps = [r for name in ("adjunction", "functoriality", "projectivity")
            for r in select(corpus_run["reports"], name, field="Q")]
    bad = failing(reps)
    ok = not bad and {r["name"] for r in reps} == {"adjunction", "functoriality", "projectivity"}
    record(8, ok, f"adjunction dims, pushforward/pullback vs M_I, M^I, projectivity: {len(reps)} reports, {len(bad)} failing")
    assert ok, bad[:3]


def test_criterion_9_positive_characteristic(corpus_run):
    reports = corpus_run["reports"]
    f5 = [r for r in reports if r.get("type") == "A2" and r.get("field") == "Fp:5"]
    classification = {"classification-char", "classification-pullback"}
    f5_checks = [r for r in f5 if r["name"] not in classification]
    f5_cls = [r for r in f5 if r["name"] in classification]
    f5_ok = f5_checks and all(r["status"] == "pass" for r in f5_checks)
    f5_ok = f5_ok and all(r["status"] == "skipped" for r in f5_cls)
    f5_names = {r["name"] for r in f5_checks}
    g2 = [r for r in reports if r.get("type") == "G2" and r.get("field") == "Fp:3"]
    g2_ok = g2 and all(r["status"] == "skipped" and r.get("reason") for r in g2)
    ok = bool(f5_ok and g2_ok) and {"categorification", "duality", "hom-formula", "structure-algebra",
                                    "splitting", "adjunction", "functoriality", "projectivity"} <= f5_names
    record(9, ok, f"A2 over F5: {len(f5_checks)} reports pass, {len(f5_cls)} classification skipped; G2 over F3 (GKM fails): {len(g2)} reports skipped")
    assert f5_ok, failing(f5_checks)[:3]
    assert g2_ok, [(r["name"], r["status"]) for r in g2 if r["status"] != "skipped"]
    assert ok


def test_criterion_10_determinism(corpus_run, tmp_path):
    path = tmp_path / "again.json"
    code = main(["verify", "--output", str(path)])
    same = path.read_bytes() == corpus_run["bytes"]
    ok = same and code == corpus_run["code"] == 0
    record(10, ok, f"two `verify` runs byte-identical ({len(corpus_run['bytes'])} bytes), exit codes {corpus_run['code']}/{code}")
    assert ok
