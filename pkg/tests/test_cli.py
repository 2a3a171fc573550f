import json

import pytest

from ssbim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expect",
    [
        (["hecke", "mul", "s1", "s1"], {"e": {"0": 1}, "s1": {"-1": 1, "1": -1}}),
        (["hecke", "kl", "e"], {"e": {"0": 1}}),
        (["hecke", "triv", "s1s2"], {"-2": 1}),
        (["hecke", "bar", "s1"], {"e": {"-1": -1, "1": 1}, "s1": {"0": 1}}),
        (["hecke", "pairing", "b:s1", "b:s1"], {"-2": 1, "0": 1}),
        (["hecke", "kl", "s2", "--S0", "s1"], {"e": {"1": 1}, "s2": {"0": 1}}),
        (["sections", "char", "--word", "s1"], {"s1": {"0": 1}, "e": {"1": 1}}),
        (["sections", "grk", "--word", "s1", "--at", "e"], {"1": 1}),
        (["sections", "hom-grk", "--word", "s1"], {"0": 1, "-2": 1}),
        (["sections", "char", "--word", "s2,s1", "--S0", "s1"], {"e": {"0": 1, "2": 1}, "s2": {"1": 1}, "s2s1": {"0": 1}}),
    ],
)
def test_payloads(capsys, argv, expect):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == expect


def test_splitting(capsys):
    code, out, _ = run(capsys, "sections", "splitting", "--S0", "s1,s2")
    assert code == 0
    assert json.loads(out)["phi_psi_identity"] is True


def test_structure_algebra_and_modules(capsys, tmp_path):
    code, out, _ = run(capsys, "sections", "structure-algebra", "--S0", "s1", "--max-degree", "6")
    assert code == 0 and json.loads(out)["equal"] is True
    target = tmp_path / "bs.json"
    code, _, _ = run(capsys, "sections", "build-bs", "--word", "s1,s2", "--max-degree", "3", "--output", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["components"] and data["D"] == 3
    code, out, _ = run(capsys, "sections", "pullback", "--word", "s2", "--S0", "s1", "--max-degree", "3")
    assert code == 0 and sorted(json.loads(out)["components"]) == ["e", "s1", "s1s2", "s2"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "hecke", "mul", "s1")[0] == 2
    assert run(capsys, "hecke", "kl", "s9")[0] == 2
    assert run(capsys, "sections", "hom-grk", "--word", "s1", "--type", "G2", "--field", "Fp:3")[0] == 2
    assert run(capsys, "sections", "grk", "--word", "s1")[0] == 2
    bad = tmp_path / "cfg.json"
    bad.write_text(json.dumps({"coxeter_matrix": [[1, 3], [3, 1]], "alpha": [[1, 0], [0, 1]],
                               "alpha_check": [[3, -1], [-1, 2]]}))
    code, _, err = run(capsys, "hecke", "kl", "e", "--config", str(bad))
    assert code == 2 and "pairing_two" in err
    assert run(capsys, "hecke", "kl", "e", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_window_error(capsys):
    code, _, err = run(capsys, "sections", "char", "--word", "s1,s2", "--max-degree", "1")
    assert code == 3 and "window" in err


def test_verify_filtered(capsys, tmp_path):
    target = tmp_path / "rep.json"
    code, _, err = run(capsys, "verify", "--only", "structure-algebra", "--type", "B2", "--output", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert {r["name"] for r in data} == {"structure-algebra"}
    assert {r["type"] for r in data} == {"B2"}
    meta = json.loads((tmp_path / "rep.json.meta.json").read_text())
    assert meta["failed"] == 0 and "pass=" in err
