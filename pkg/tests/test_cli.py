"""Reports and the command-line surface: determinism, exit codes, rendering."""

import json
import subprocess
import sys

from equivar.cli import main, run_index, run_verify
from equivar.modelfile import load_builtin
from equivar.report import (
    CONVENTIONS,
    LATEX,
    TEXT,
    render_frame_value,
    report_from_json,
    report_status,
    report_to_json,
)

BAD_MOMENT_DOC = {
    "name": "flat-moment",
    "manifoldDim": 1,
    "parameters": ["X"],
    "generators": [
        {"name": "deta", "parity": "odd", "formDegree": 1,
         "kind": "frameForm", "frame": "tau", "slot": 1},
        {"name": "u1", "parity": "even", "formDegree": 2,
         "kind": "closedArgument", "frame": "tau", "slot": 1},
    ],
    "dTable": {},
    "iotaTable": {},
    "frames": [
        {"frameId": "tau", "rank": 1, "slots": ["deta"],
         "momentSamples": [[[0]]], "split": ["0"]},
    ],
}


def test_report_round_trip():
    rep = run_verify(load_builtin("s1-on-s1"), seed=3, frame_trials=4)
    assert report_from_json(report_to_json(rep)) == rep
    assert report_status(rep) == "pass"


def test_reports_carry_conventions_block():
    for rep in (run_verify(load_builtin("hopf")), run_index("hopf")):
        assert rep["conventions"] == CONVENTIONS
        assert set(CONVENTIONS) == {"twoPiPolicy", "fourierSign", "orientationRule"}


def test_render_closed_and_display_forms():
    m = load_builtin("t2-on-t2")
    assert render_frame_value(m, "tau", TEXT, display=False) == \
        "-deta1*deta2*delta0(u1,u2)"
    assert render_frame_value(m, "tau", TEXT, display=True) == \
        "-deta1*deta2*delta0(f[tau])"
    latex = render_frame_value(m, "tau", LATEX, display=False)
    assert "\\wedge" in latex and "\\delta_0" in latex

    mh = load_builtin("hopf")
    assert render_frame_value(mh, "conn", TEXT) == \
        "psi*delta0(f[conn]) + psi*delta0^(1)(f[conn])*Psi"


def test_verify_exit_zero(capsys):
    assert main(["verify", "s1-on-s1", "--frame-trials", "3"]) == 0
    out = capsys.readouterr().out
    assert "[pass] tau:closedness" in out
    assert out.strip().endswith("verify s1-on-s1: pass")


def test_verify_failure_exit_one(tmp_path, capsys):
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(BAD_MOMENT_DOC), encoding="utf-8")
    assert main(["verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert "[fail] tau:transversality" in out
    assert "witness" in out


def test_error_exit_two(tmp_path, capsys):
    assert main(["index", "no-such-example"]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["verify", str(bad)]) == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 3


def test_index_report_written(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["index", "cp1-dolbeault", "--twist", "2",
                 "--max-degree", "8", "--json", str(out)]) == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert rep["command"] == "index"
    assert rep["twist"] == 2
    assert rep["maxDegree"] == 8
    assert rep["conventions"]["fourierSign"].startswith("delta_0")
    capsys.readouterr()


def test_seeded_reports_are_byte_identical(tmp_path):
    outs = []
    for i in (1, 2):
        p = tmp_path / f"r{i}.json"
        cmd = [sys.executable, "-m", "equivar.cli", "verify", "t2-on-t2",
               "--seed", "7", "--frame-trials", "20", "--json", str(p)]
        r = subprocess.run(cmd, capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_max_degree_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("EQUIVAR_MAX_DEGREE", "24")
    out = tmp_path / "rep.json"
    assert main(["index", "hopf", "--json", str(out)]) == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert rep["maxDegree"] == 24
    capsys.readouterr()


def test_render_command(capsys):
    assert main(["render", "t2-on-t2"]) == 0
    assert capsys.readouterr().out == "tau: -deta1*deta2*delta0(f[tau])\n"
    assert main(["render", "hopf", "--format", "latex", "--frame", "conn"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("conn: ") and "\\delta_0" in out


def test_index_all_examples_exit_zero(capsys):
    for name in ("torus-zero", "cp1-dolbeault", "cp1-l2", "hopf", "s3-contact"):
        assert main(["index", name]) == 0, name
    capsys.readouterr()


def test_index_report_round_trip():
    rep = run_index("s3-contact", max_degree=12)
    assert report_from_json(report_to_json(rep)) == rep
