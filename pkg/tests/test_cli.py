import json
import subprocess
import sys

import pytest

from dnquad.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--quad", "-1,7,64,119", "--n", "848")
    assert code == 0
    assert out.startswith("OK")
    roots = out.split("roots")[1]
    assert len(roots.split(",")) == 6


def test_verify_fail_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--quad", "1,2,3", "--n", "1")
    assert code == 2
    assert "FAIL" in out and "= 3" in out


def test_verify_json_multiple_n(capsys):
    code, out, _ = run(capsys, "verify", "--quad", "-1,7,64,119", "--n", "128", "--n", "848", "--json")
    assert code == 0
    objs = [json.loads(l) for l in out.splitlines()]
    assert [o["n"] for o in objs] == ["128", "848"]
    assert all(o["ok"] for o in objs)


def test_malformed_quad_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--quad", "1,1,3", "--n", "1")
    assert code == 1
    assert "repeated" in err


def test_bad_arguments_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--quad", "1,x", "--n", "1"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["nosuchcommand"])
    assert info.value.code == 1


def test_secondn(capsys):
    code, out, _ = run(capsys, "secondn", "--quad", "175,231,300,396", "--x-from", "-100000", "--x-to", "0", "--json")
    assert code == 0
    ns = json.loads(out)["ns"]
    assert {"-16400", "-40400"} <= set(ns)


def test_secondn_exclude_zero(capsys):
    _, out, _ = run(capsys, "secondn", "--quad", "1,4,169,1024", "--x-from", "0", "--x-to", "100000",
                    "--exclude-zero", "--json")
    assert json.loads(out)["ns"] == ["6720"]


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--quad", "-4,28,256,476", "--n", "2048", "--n", "13568")
    assert code == 0
    assert out.strip() == "{-1, 7, 64, 119} / {128, 848}"


def test_family_commands(capsys):
    _, out, _ = run(capsys, "family", "d0", "--r", "2")
    assert out.startswith("{1, 36, 529, 1024} / {0, 60480}")
    _, out, _ = run(capsys, "family", "dnfam", "--a", "3", "--k", "2", "--json")
    assert json.loads(out)["raw_quad"] == ["3", "6", "23", "55"]
    _, out, _ = run(capsys, "family", "prop1", "--v", "3", "--w", "-1", "--json")
    obj = json.loads(out)
    assert obj["canonical_quad"] == ["-1", "7", "64", "119"] and obj["ns"] == ["2048", "13568"]
    code, out, _ = run(capsys, "family", "curve", "--r-from", "-3", "--r-to", "3")
    assert code == 0 and out.count("OK") == 7


def test_family_degenerate_is_usage_error(capsys):
    code, _, err = run(capsys, "family", "prop1", "--v", "3", "--w", "1")
    assert code == 1 and "excluded" in err
    code, _, _ = run(capsys, "family", "d0", "--r", "1")
    assert code == 1
    code, _, _ = run(capsys, "family", "curve")
    assert code == 1


def test_scan_cli(tmp_path, capsys):
    out = tmp_path / "s.jsonl"
    code, text, _ = run(capsys, "scan", "--n-from", "6192", "--n-to", "6192", "--m-max", "3000", "--k-max", "300",
                        "--l-max", "100000", "--x-from", "-100000", "--x-to", "100000", "--out", str(out), "--audit")
    assert code == 0
    assert "processed 1 n values" in text
    recs = [json.loads(l) for l in out.read_text().splitlines()]
    assert any(r["quad"] == ["-189", "-133", "27", "32"] and "8352" in r["n2s"] for r in recs)
    assert (tmp_path / "s.jsonl.ckpt").read_text() == "6192\n"


def test_scan_cli_invalid_config(tmp_path, capsys):
    code, _, _ = run(capsys, "scan", "--n-from", "5", "--n-to", "1", "--out", str(tmp_path / "x"))
    assert code == 1
    code, _, _ = run(capsys, "scan", "--n-from", "1", "--n-to", "1", "--k-max", "0", "--out", str(tmp_path / "x"))
    assert code == 1


def test_scan_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, _ = run(capsys, "scan", "--n-from", "1", "--n-to", "1", "--m-max", "50", "--k-max", "10",
                     "--l-max", "100", "--out", str(blocker / "out.jsonl"))
    assert code == 2


def test_workers_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DNQUAD_WORKERS", "nope")
    code, _, err = run(capsys, "scan", "--n-from", "1", "--n-to", "2", "--out", str(tmp_path / "x"))
    assert code == 1 and "DNQUAD_WORKERS" in err
    monkeypatch.setenv("DNQUAD_WORKERS", "2")
    code, _, _ = run(capsys, "scan", "--n-from", "1", "--n-to", "4", "--m-max", "200", "--k-max", "30",
                     "--l-max", "1000", "--x-from", "-100", "--x-to", "100", "--out", str(tmp_path / "y"),
                     "--include-single")
    assert code == 0
    assert (tmp_path / "y").read_text().count("\n") > 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dnquad", "verify", "--quad", "1,3,8,120", "--n", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "roots 2, 3, 11, 5, 19, 31" in r.stdout
