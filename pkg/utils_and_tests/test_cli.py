"""
End-to-end tests of the heffter.py command line: exit codes and outputs
"""
import shutil

import pytest

import heffter
from certificates import parse_certificate, read_certificate, verify_certificate


def run(capsys, *argv):
    code = heffter.main([*argv, "--quiet"])
    return code, capsys.readouterr().out


def test_verify_golden(capsys, golden_path):
    code, out = run(capsys, "verify", golden_path("f71_extended.cert"))
    assert code == 0
    assert "✓ VALID space" in out
    assert "density: 13/17" in out


def test_verify_structured(capsys, golden_path):
    code, out = run(capsys, "verify", golden_path("z41_space.cert"), "--structured")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["valid=true", "kind=configuration", "v=20"]
    assert "density=9/19" in lines


def test_verify_wrong_kind_is_a_parameter_error(capsys, golden_path):
    code, _ = run(capsys, "verify", golden_path("ruler67.cert"), "--kind", "space")
    assert code == 2


def test_verify_invalid_and_unreadable(capsys, tmp_path, golden_path):
    text = open(golden_path("ruler67.cert"), encoding="utf-8").read()
    bad = tmp_path / "bad.cert"
    bad.write_text(text.replace("block 1 10 56", "block 1 10 4"), encoding="utf-8")
    code, out = run(capsys, "verify", str(bad))
    assert code == 1
    assert "H3" in out

    broken = tmp_path / "broken.cert"
    broken.write_text(text[:-1], encoding="utf-8")
    assert run(capsys, "verify", str(broken))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.cert"))[0] == 2


def test_verify_corpus(capsys, golden_path):
    code, out = run(capsys, "verify", "--corpus", golden_path(""))
    assert code == 0
    assert "7 valid, 0 invalid, 0 unreadable" in out


def test_verify_corpus_changed_only(capsys, tmp_path, golden_path, monkeypatch):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for name in ("ruler67.cert", "ruler211.cert"):
        shutil.copy(golden_path(name), corpus / name)
    monkeypatch.setattr(heffter, "CORPUS_SCAN_CACHE", str(tmp_path / "scan.json"))
    code, out = run(capsys, "verify", "--corpus", str(corpus), "--changed-only")
    assert code == 0 and "2 valid" in out
    code, out = run(capsys, "verify", "--corpus", str(corpus), "--changed-only")
    assert code == 0 and "0 valid" in out


@pytest.mark.parametrize("name, golden", [
    ("z41", "z41_space.cert"),
    ("f71", "f71_space.cert"),
    ("f71-extended", "f71_extended.cert"),
])
def test_construct_builtins_match_golden(capsys, golden_path, name, golden):
    code, out = run(capsys, "construct", name)
    assert code == 0
    with open(golden_path(golden), encoding="utf-8") as f:
        assert parse_certificate(out).classes == parse_certificate(f.read()).classes


def test_construct_net163_with_matrix(capsys, tmp_path):
    matrix = tmp_path / "m.txt"
    out_path = tmp_path / "net.cert"
    code, _ = run(capsys, "construct", "net163", "-o", str(out_path), "--matrix", str(matrix))
    assert code == 0
    report = verify_certificate(read_certificate(str(out_path)))
    assert report.valid and report.kind == "net"
    assert matrix.read_text().splitlines()[0] == "1 2 160 142 119 84 36 128 143"


def test_construct_ag211_coefficient_matrix(capsys):
    code, out = run(capsys, "construct", "ag211", "-o", "/dev/null", "--matrix", "-")
    assert code == 0
    first = out.splitlines()[0].split()
    assert first[0] == "10000" and first[1] == "01000"


def test_construct_partial_partition(capsys):
    code, out = run(capsys, "construct", "partial-partition", "--q", "211", "--sizes", "3,5,7")
    assert code == 0
    assert verify_certificate(parse_certificate(out)).valid


@pytest.mark.parametrize("argv", [
    ["construct", "partial-partition", "--q", "211", "--sizes", "3,3,35"],
    ["construct", "partial-partition", "--q", "41", "--sizes", "5,4"],
    ["construct", "net", "--q", "73", "--x", "1", "--y", "1"],
    ["search", "ruler", "--q", "72", "--k", "3"],
])
def test_bad_parameters_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_construct_develop_with_invalid_packing_exits_1(capsys):
    code, _ = run(capsys, "construct", "develop", "--q", "71", "--rulers", "1,25,49,43,24;1,25,49,43,24")
    assert code == 1


def test_construct_develop_extend(capsys):
    code, out = run(capsys, "construct", "develop", "--q", "71", "--rulers", "1,24,25,43,49",
                    "--rho", "49", "--extend")
    assert code == 0
    cert = parse_certificate(out)
    assert cert.params == {'rho': "49"}
    assert [name for name, _ in cert.classes][-1] == "C"


def test_search_ruler(capsys):
    code, out = run(capsys, "search", "ruler", "--q", "67", "--k", "3")
    assert code == 0
    assert verify_certificate(parse_certificate(out)).valid
    assert run(capsys, "search", "ruler", "--q", "43", "--k", "3")[0] == 3


def test_search_ruler_all(capsys):
    code, out = run(capsys, "search", "ruler", "--q", "151", "--k", "5", "--all", "--threads", "1")
    assert code == 0
    assert "equivalence classes: 26" in out
    assert "normalized rulers: 130" in out


def test_search_packing(capsys):
    code, out = run(capsys, "search", "packing", "--q", "151", "--k", "5", "--n", "2")
    assert code == 0
    assert verify_certificate(parse_certificate(out)).valid


def test_search_bound(capsys):
    code, out = run(capsys, "search", "bound", "--k", "5", "--n", "1")
    assert code == 0
    assert "below: yes" in out
    assert "25031" in out


def test_search_ruler_table(capsys):
    code, out = run(capsys, "search", "ruler-table")
    assert code == 0
    assert "misprint in the printed table" in out
    assert "MISMATCH" not in out


def test_search_inequivalent_with_checkpoint(capsys, tmp_path):
    checkpoint = tmp_path / "cp.json"
    csv_path = tmp_path / "table.csv"
    code, out = run(capsys, "search", "inequivalent", "--k", "3", "--qmax", "200",
                    "--checkpoint", str(checkpoint), "--csv", str(csv_path))
    assert code == 0
    assert checkpoint.exists()
    assert csv_path.read_text().splitlines()[0] == "k,q,count,reference"
    code, again = run(capsys, "search", "inequivalent", "--k", "3", "--qmax", "200",
                      "--checkpoint", str(checkpoint))
    assert code == 0 and again == out


def test_cycles_derive_and_orthogonal(capsys, tmp_path, golden_path):
    base = tmp_path / "f71_cycles.cert"
    code, _ = run(capsys, "cycles", "derive", golden_path("f71_space.cert"), "-o", str(base))
    assert code == 0
    assert read_certificate(str(base)).kind == "basecycles"
    code, out = run(capsys, "cycles", "orthogonal", str(base), "--compact")
    assert code == 0
    assert "10 of 10 pairs orthogonal" in out


def test_cycles_materialize(capsys, tmp_path, golden_path):
    target = tmp_path / "cycles.txt"
    code, _ = run(capsys, "cycles", "derive", golden_path("f71_space.cert"), "-o", "/dev/null",
                  "--materialize", str(target))
    assert code == 0
    assert len((tmp_path / "cycles.P1.txt").read_text().splitlines()) == 497


def test_cycles_sts_check(capsys):
    code, out = run(capsys, "cycles", "sts-check", "--v", "9")
    assert code == 0
    assert "super-orthogonal pairs: 0" in out


@pytest.mark.parametrize("argv", [
    ["search", "netseed", "--q", "163", "--strategy", "randomized", "--limit", "10"],
    ["cycles", "sts-search", "--v", "7", "--attempts", "1"],
])
def test_randomized_searches_need_a_seed(capsys, argv):
    assert run(capsys, *argv)[0] == 2
