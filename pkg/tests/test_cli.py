import json
import os
import subprocess
import sys
from pathlib import Path

from winshift.cli import main

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_winshift_text_rows(capsys):
    code, out = run(capsys, "winshift", "--subst", "tm", "--length", "10")
    assert code == 0
    assert out == "◇111111112\n◇211111112\n"


def test_winshift_json(capsys):
    code, out = run(capsys, "winshift", "--subst", "tm", "--length", "14", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 2
    assert obj["irreducible"] == ["11111111111112", "21111111111112"]


def test_winshift_table(capsys):
    code, out = run(capsys, "winshift", "--subst", "tm", "--table", "4..5")
    assert code == 0
    assert out.splitlines() == ["4: ◇112", "4: ◇212", "5: ◇1112"]


def test_syncdelay_text_and_json(capsys):
    code, out = run(capsys, "syncdelay", "--subst", "ex42")
    assert code == 0
    assert out.startswith("L = 5\n")
    code, out = run(capsys, "syncdelay", "--subst", "tm", "--format", "json")
    obj = json.loads(out)
    assert obj["L"] == 4
    assert obj["witness"] == "010"
    assert obj["offsets_of_witness"] == [0, 1]


def test_classify_round_trip(capsys, tmp_path):
    emitted = tmp_path / "subst.json"
    code, _ = run(capsys, "classify", "--subst", "ex42", "--emit", str(emitted))
    assert code == 0
    code, out = run(capsys, "classify", "--subst", str(emitted), "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["images"] == [[0, 0, 1], [1, 2, 0], [2, 0, 1]]
    assert obj["flags"]["left_marked"] and not obj["flags"]["right_marked"]


def test_fixedpoint_and_language(capsys):
    code, out = run(capsys, "fixedpoint", "--subst", "tm", "--length", "16")
    assert (code, out) == (0, "0110100110010110\n")
    code, out = run(capsys, "language", "--subst", "tm", "--length", "2")
    assert out.splitlines() == ["00", "01", "10", "11"]


def test_winset_membership_and_dot(capsys, tmp_path):
    code, out = run(capsys, "winset", "--subst", "tm", "--length", "4")
    assert code == 0
    assert "2212" in out and "count = 10" in out
    dot = tmp_path / "tree.dot"
    code, out = run(
        capsys, "winset", "--subst", "tm", "--length", "4",
        "--choice-seq", "2212", "--export-dot", str(dot),
    )
    assert code == 0 and out == "win\n"
    text = dot.read_text()
    assert text.startswith("digraph strategy {")
    assert 'label="ε"' in text
    code, out = run(
        capsys, "winset", "--subst", "tm", "--length", "5", "--choice-seq", "22112",
    )
    assert code == 0 and out == "lose\n"


def test_complexity_csv(capsys):
    code, out = run(capsys, "complexity", "--subst", "tm", "--upto", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,delta,f,method"
    assert lines[1] == "0,1,1,direct"
    assert lines[5] == "4,4,10,direct"


def test_delta_methods(capsys):
    code, out = run(capsys, "delta", "--subst", "ex42", "--n", "14", "--method", "direct")
    assert (code, out) == (0, "5\n")
    code, _ = run(capsys, "delta", "--subst", "ex42", "--n", "6", "--method", "recurrence")
    assert code == 1  # domain error: not marked


def test_gtm_commands(capsys):
    code, out = run(capsys, "gtm", "--b", "2", "--m", "2", "syncdelay", "--verify")
    assert code == 0 and out == "L = 4\nverify: ok\n"
    code, out = run(capsys, "gtm", "--b", "2", "--m", "3", "winshift", "--length", "5", "--verify")
    assert code == 0
    assert out.splitlines()[:2] == ["◇1112", "◇1113"]
    code, out = run(capsys, "gtm", "--b", "2", "--m", "2", "word", "--length", "6")
    assert (code, out) == (0, "011010\n")


def test_gtm_periodic_is_domain_error(capsys):
    code, _ = run(capsys, "gtm", "--b", "3", "--m", "2", "delta", "--n", "3")
    assert code == 1


def test_usage_errors(capsys):
    assert main(["winshift", "--subst", "tm"]) == 2  # no --length/--table
    assert main(["nonsense"]) == 2
    assert main(["verify"]) == 2


def test_verify_command(capsys):
    code, out = run(capsys, "verify", "--subst", "tm", "--depth", "8")
    assert code == 0
    assert "overall: pass" in out
    code, out = run(capsys, "verify", "--b", "2", "--m", "3", "--depth", "8")
    assert code == 0
    assert "gtm-closed-forms" in out


def test_gtm_verify_mismatch_is_exit_3(capsys, monkeypatch):
    import winshift.cli as cli

    monkeypatch.setattr(cli.cx, "delta_direct", lambda subst, n: -1)
    code, out = run(capsys, "gtm", "--b", "2", "--m", "2", "delta", "--n", "4", "--verify")
    assert code == 3
    assert "VERIFY FAIL" in out


def test_sync_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("WINSHIFT_SYNC_CAP", "2")
    code, _ = run(capsys, "syncdelay", "--subst", "tm")
    assert code == 1  # cap exceeded before the true delay 4


def test_output_determinism(capsys):
    first = run(capsys, "winshift", "--subst", "gtm:3,3", "--length", "9", "--format", "json")
    second = run(capsys, "winshift", "--subst", "gtm:3,3", "--length", "9", "--format", "json")
    assert first == second


def test_module_entry_point_smoke():
    env = dict(os.environ, PYTHONPATH=SRC)
    proc = subprocess.run(
        [sys.executable, "-m", "winshift", "syncdelay", "--subst", "tm"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("L = 4")
