import json
import subprocess
import sys

import pytest

from verba.cli import main
from verba.corpus import corpus_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_check_s3_filters_fire_first(capsys, tmp_path):
    table = tmp_path / "s3.json"
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(q[p[x]] for x in range(3))] for q in perms] for p in perms]
    table.write_text(json.dumps({"label": "S3", "table": rows}))
    code, doc, err = run(capsys, "check", table)
    assert code == 0
    assert doc["verdict"] == "achiral" and doc["method"] == "aut-inverse"
    assert doc["tool_version"] and "elapsed" in doc["stats"]
    assert "achiral" in err


def test_check_family_semidirect(capsys, tmp_path):
    code, doc, _ = run(capsys, "check", corpus_path("family-63"))
    assert code == 0 and doc["verdict"] == "chiral" and doc["method"] == "family-witness"
    report = tmp_path / "r.json"
    report.write_text(json.dumps(doc))
    code, res, _ = run(capsys, "verify", report, corpus_path("family-63"))
    assert code == 0 and res["ok"]


def test_check_exhaustive_abelian(capsys):
    code, doc, _ = run(capsys, "check", corpus_path("abelian-2x2"), "--exhaustive")
    assert doc["verdict"] == "achiral" and doc["method"] == "neumann-exhaustive"


def test_check_filters_only_unknown(capsys):
    code, doc, _ = run(capsys, "check", corpus_path("family-80"), "--filters-only")
    # family verification still applies to semidirect files
    assert code == 0 and doc["verdict"] == "chiral"


def test_check_caps_produce_unknown(capsys, tmp_path):
    from verba.constructions import semidirect_cyclic
    G = semidirect_cyclic(7, 9, 2)
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"label": "t63", "table": G.table.tolist()}))
    code, doc, _ = run(capsys, "check", f, "--map-cap", 100)
    assert code == 0 and doc["verdict"] == "unknown"


def test_wgroup(capsys, tmp_path):
    code, doc, err = run(capsys, "wgroup", corpus_path("dihedral-6"), "-d", 2)
    assert doc["word_map_group_order"] == 972 and "972" in err
    code, doc, _ = run(capsys, "wgroup", corpus_path("cyclic-2"), "-d", 1, "--dump", tmp_path / "m.tsv")
    assert doc["word_map_group_order"] == 2
    assert len((tmp_path / "m.tsv").read_text().splitlines()) == 2


def test_wgroup_truncation_notice(capsys):
    code, doc, err = run(capsys, "wgroup", corpus_path("dihedral-20"), "--map-cap", 1000)
    assert code == 0 and doc["truncated"] and doc["word_map_group_order"] is None
    assert "truncated" in err


def test_image(capsys):
    code, doc, _ = run(capsys, "image", corpus_path("dihedral-6"), "--word", "[x,y]")
    assert doc["size"] == 3 and doc["closed"]
    code, doc, _ = run(capsys, "image", corpus_path("family-63"), "--word", "x^3 [x,y] [x^-1,y]^2")
    assert not doc["closed"] and doc["violator"] is not None
    code, doc, _ = run(capsys, "image", corpus_path("quaternion-8"), "--word", "x")
    assert doc["size"] == 8


def test_family(capsys):
    code, doc, _ = run(capsys, "family", "--q", 7, "--pr", 9, "--phi", 2)
    assert code == 0 and doc["verdict"] == "chiral"
    code, doc, err = run(capsys, "family", "--q", 7, "--pr", 9, "--phi", 3)
    assert code == 2 and doc is None and "does not divide" in err


def test_nilpotent_commands(capsys):
    code, doc, _ = run(capsys, "nilpotent", "n23-verify", "--random", 50)
    assert code == 0 and doc["failures"] == 0
    code, doc, _ = run(capsys, "nilpotent", "n23-verify", "--instance", 1, 1, 0, 0)
    assert doc["results"][0]["matrix"] == [1, 0, 0, -1]
    code, doc, _ = run(capsys, "nilpotent", "n32-congruence", "--p", 5)
    assert code == 0 and doc["ok"]
    code, _, _ = run(capsys, "nilpotent", "n32-congruence", "--p", 2)
    assert code == 2
    code, doc, _ = run(capsys, "nilpotent", "n32-search", "--p", 3, "--moduli", "27,9,3,3,3")
    assert doc["outcome"] == "found" and doc["u"] == [26, 0, 0, 0, 0]
    code, _, err = run(capsys, "nilpotent", "n32-search", "--p", 3, "--moduli", "27,9")
    assert code == 2


def test_verify_tampered(capsys, tmp_path):
    code, doc, _ = run(capsys, "check", corpus_path("family-63"))
    doc["certificate"]["element"] = 5
    report = tmp_path / "bad.json"
    report.write_text(json.dumps(doc))
    code, res, err = run(capsys, "verify", report, corpus_path("family-63"))
    assert code == 1 and not res["ok"] and "mismatch" in err


def test_verify_aut_inverse(capsys, tmp_path):
    code, doc, _ = run(capsys, "check", corpus_path("symmetric-4"))
    report = tmp_path / "r.json"
    report.write_text(json.dumps(doc))
    code, res, _ = run(capsys, "verify", report, corpus_path("symmetric-4"))
    assert code == 0 and res["ok"]
    code, _, _ = run(capsys, "verify", report, corpus_path("cyclic-24"))
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent.json"],
    ["image", "{corpus}", "--word", "x^"],
    ["nilpotent", "n32-search", "--p", "4"],
])
def test_input_errors(capsys, argv):
    argv = [a.replace("{corpus}", str(corpus_path("cyclic-3"))) for a in argv]
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2


def test_env_cap_respected(capsys, monkeypatch):
    monkeypatch.setenv("VERBA_MAP_CAP", "50")
    code, doc, _ = run(capsys, "wgroup", corpus_path("dihedral-6"))
    assert doc["truncated"]
    code, doc, _ = run(capsys, "wgroup", corpus_path("dihedral-6"), "--map-cap", 5000)
    assert not doc["truncated"]


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "verba.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "verba" in out.stdout
