import json
import subprocess
import sys

import pytest

from shadowjones import builders as B
from shadowjones.cli import EXIT_INFINITE, EXIT_INPUT, main
from shadowjones.shadow import load_shadow


def run(capsys, *argv):
    code = main(["--threads", "1", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jones_unknot(capsys):
    assert run(capsys, "jones", "unknot", "7") == (0, "1\n", "")


def test_jones_trefoil_pretty_and_json(capsys):
    code, out, _ = run(capsys, "jones", "trefoil-collapsed", "2")
    assert code == 0 and out.strip() == "-t^(5/4) - t^(-3/4) + t^(-7/4)"
    code, out, _ = run(capsys, "--format", "json", "jones", "trefoil-collapsed", "2")
    assert json.loads(out)["d"] == 2


def test_universal_even_colour_vanishes(capsys):
    assert run(capsys, "jones", "universal-1", "4")[1] == "0\n"


def test_numeric_output(capsys):
    code, out, _ = run(capsys, "--format", "csv", "jones", "universal-1", "5", "--numeric", "5")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "d,r,status,log_mag,phase" and row.startswith("5,5,ok,")


def test_build_round_trip(capsys, tmp_path):
    out = tmp_path / "t.json"
    assert run(capsys, "--output", str(out), "build", "trefoil-diagram")[0] == 0
    assert load_shadow(out) == B.trefoil_diagram_shadow()
    diagram = tmp_path / "d.json"
    diagram.write_text(json.dumps(B.trefoil_diagram().to_json()))
    code, text, _ = run(capsys, "build", "from-diagram", str(diagram))
    assert code == 0 and json.loads(text) == B.trefoil_diagram_shadow().to_json()


def test_build_universal_needs_count(capsys):
    assert run(capsys, "build", "universal")[0] == EXIT_INPUT
    code, text, _ = run(capsys, "build", "universal", "2")
    assert code == 0 and len(json.loads(text)["vertices"]) == 2


def test_vcscan_rows(capsys):
    code, out, _ = run(capsys, "vcscan", "1", "9")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "d,status,log_mag,a_d,target,gap"
    assert [line.split(",")[0] for line in lines[1:]] == ["3", "5", "7", "9"]


def test_vcscan_engines_agree(capsys):
    _, closed, _ = run(capsys, "vcscan", "1", "7")
    _, summed, _ = run(capsys, "vcscan", "1", "7", "--engine", "statesum")
    a = [float(x.split(",")[3]) for x in closed.strip().splitlines()[1:]]
    b = [float(x.split(",")[3]) for x in summed.strip().splitlines()[1:]]
    assert a == pytest.approx(b, rel=1e-12)


def test_bad_input_exit_code(capsys, tmp_path):
    data = B.unknot_shadow().to_json()
    data["regions"][0]["euler"] = 5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, _, err = run(capsys, "jones", str(bad), "2")
    assert code == EXIT_INPUT and "error" in err
    assert run(capsys, "jones", "no-such-shadow", "2")[0] == EXIT_INPUT


def test_infinite_shadow_exit_code(capsys, tmp_path):
    closed = tmp_path / "closed.json"
    closed.write_text(json.dumps({"regions": [{"id": "S", "euler": 2, "gleam_twice": 0}]}))
    assert run(capsys, "jones", str(closed), "2")[0] == EXIT_INFINITE


def test_precision_floor():
    with pytest.raises(SystemExit):
        main(["--precision", "20", "jones", "unknot", "2"])


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "shadowjones.cli", "--threads", "1", "jones", "unknot", "3"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "1\n"
