"""Command-line behavior: payloads, exit codes, determinism.

Most cases drive cli.main() in-process and parse what it printed; one
subprocess test covers the python -m entry point.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from grade3 import catalog
from grade3.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_member_example(capsys):
    code, payload = run_json(capsys, "member", "--demo", "sl2",
                             "--g", "[[2,1],[1,1]]")
    assert code == 0
    assert payload == {"member": True}


def test_member_false(capsys):
    code, payload = run_json(capsys, "member", "--demo", "sl2",
                             "--g", "[[0,1],[-1,0]]")
    assert code == 0
    assert payload == {"member": False}


def test_factor_error_example(capsys):
    code, payload = run_json(capsys, "factor", "--demo", "sl2",
                             "--g", "[[0,1],[-1,0]]")
    assert code == 1
    assert payload["error"] == "NotInOpenCell"
    assert "detail" in payload


def test_grade_example(capsys):
    code, payload = run_json(capsys, "grade", "--demo", "sl2")
    assert code == 0
    assert payload == {"dims": [1, 1, 1]}


def test_factor_payload(capsys):
    code, payload = run_json(capsys, "factor", "--demo", "sl2",
                             "--g", "[[2,1],[1,1]]")
    assert code == 0
    np.testing.assert_allclose(payload["x_plus"], [0.0, 1.0, 0.0], atol=1e-10)
    np.testing.assert_allclose(payload["x_minus"], [0.0, 0.0, 1.0], atol=1e-10)
    assert payload["order"] == "+0-"
    assert payload["residual"] <= 1e-9


def test_factor_mirrored_order(capsys):
    code, payload = run_json(capsys, "factor", "--demo", "sl2",
                             "--g", "[[2,1],[1,1]]", "--order=-0+")
    assert code == 0
    np.testing.assert_allclose(payload["x_plus"], [0.0, 0.5, 0.0], atol=1e-10)


def test_polar_payload(capsys):
    code, payload = run_json(capsys, "polar", "--demo", "sl2",
                             "--g", "[[2,1],[1,1]]")
    assert code == 0
    assert set(payload) == {"g0", "x", "residual"}


def test_usage_errors(capsys):
    # missing input source
    code, _, err = run_cli(capsys, "member", "--demo", "sl2")
    assert code == 2 and "g" in err
    # malformed inline JSON
    code, _, err = run_cli(capsys, "member", "--demo", "sl2", "--g", "[[2,")
    assert code == 2 and "malformed" in err
    # wrong shape for the representation
    code, _, err = run_cli(capsys, "member", "--demo", "sl2",
                           "--g", "[[1,0,0],[0,1,0],[0,0,1]]")
    assert code == 2


def test_unknown_verb_and_suite():
    with pytest.raises(SystemExit) as exc:
        main(["conjugate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuch"])
    assert exc.value.code == 2


def test_verify_verb(capsys):
    code, payload = run_json(capsys, "verify", "grading", "--samples", "25")
    assert code == 0
    assert payload["pass"] is True
    assert payload["suite"] == "grading"


def test_demo_names_all_work(capsys):
    for name in catalog.DEMO_NAMES:
        code, payload = run_json(capsys, "demo", name, "--json")
        assert code == 0
        assert payload["entry"]["name"] == name
        assert payload["example"]["member"] is True


def test_byte_identical_output(capsys):
    _, out1, _ = run_cli(capsys, "demo", "sl2", "--seed", "3")
    _, out2, _ = run_cli(capsys, "demo", "sl2", "--seed", "3")
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "verify", "cones", "--samples", "20", "--json")
    _, out4, _ = run_cli(capsys, "verify", "cones", "--samples", "20", "--json")
    assert out3 == out4


def test_compact_and_pretty_agree(capsys):
    _, pretty, _ = run_cli(capsys, "grade", "--demo", "poincare3")
    _, compact, _ = run_cli(capsys, "grade", "--demo", "poincare3", "--json")
    assert "\n" not in compact.strip()
    assert json.loads(pretty) == json.loads(compact)


def test_env_tolerance(capsys, monkeypatch):
    rot = "[[0,1],[-1,0]]"
    monkeypatch.setenv("GRADE3_TOL", "10")
    code, payload = run_json(capsys, "member", "--demo", "sl2", "--g", rot)
    assert code == 0 and payload == {"member": True}
    # explicit flag beats the environment
    code, payload = run_json(capsys, "member", "--demo", "sl2", "--g", rot,
                             "--tol", "1e-9")
    assert code == 0 and payload == {"member": False}
    monkeypatch.setenv("GRADE3_TOL", "banana")
    code, _, err = run_cli(capsys, "member", "--demo", "sl2", "--g", rot)
    assert code == 2 and "GRADE3_TOL" in err


def test_file_input(capsys, tmp_path):
    entry = catalog.get_entry("sl2")
    doc = {
        "algebra": entry.algebra.to_json(),
        "h": [float(v) for v in entry.h],
        "cone": entry.cone.to_json(),
        "g": [[2.0, 1.0], [1.0, 1.0]],
    }
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(doc))
    code, payload = run_json(capsys, "member", "--file", str(path))
    assert code == 0 and payload == {"member": True}
    code, payload = run_json(capsys, "grade", "--file", str(path))
    assert code == 0 and payload == {"dims": [1, 1, 1]}


def test_file_missing(capsys):
    code, _, err = run_cli(capsys, "member", "--file", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


def test_modular_random(capsys):
    code, payload = run_json(capsys, "modular", "--random", "3")
    assert code == 0
    assert payload["roundtrip_gap"] <= 1e-8
    assert payload["pair"]["delta"]["rows"] == 3


def test_modular_file(capsys, tmp_path):
    doc = {"basis": [{"re": [1.0, 0.0], "im": [0.0, 0.0]},
                     {"re": [0.0, 0.0], "im": [0.0, 1.0]}]}
    path = tmp_path / "subspace.json"
    path.write_text(json.dumps(doc))
    code, payload = run_json(capsys, "modular", "--file", str(path))
    assert code == 0
    np.testing.assert_allclose(
        np.array(payload["pair"]["delta"]["re"]).reshape(2, 2), np.eye(2),
        atol=1e-10)


def test_modular_nonstandard_is_domain_error(capsys, tmp_path):
    doc = {"basis": [{"re": [1.0, 0.0]}, {"re": [2.0, 0.0]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, payload = run_json(capsys, "modular", "--file", str(path))
    assert code == 1
    assert payload["error"] == "NotStandard"


def test_monotone_random_and_file(capsys, tmp_path):
    code, payload = run_json(capsys, "monotone", "--random", "4",
                             "--samples", "30")
    assert code == 0 and payload["ok"] is True
    doc = {"a": [[2.0, 0.0], [0.0, 2.0]], "b": [[1.0, 0.0], [0.0, 1.0]]}
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(doc))
    code, payload = run_json(capsys, "monotone", "--file", str(path))
    assert code == 1
    assert payload["error"] == "PreconditionViolated"


def test_roots_demos(capsys):
    code, payload = run_json(capsys, "roots", "--demo", "sl2", "--x0", "[1.0]")
    assert code == 0
    assert payload["datum"]["types"] == ["noncompact_simple", "noncompact_simple"]
    assert payload["c_max_generators"] == [[1.0]]
    code, payload = run_json(capsys, "roots", "--demo", "su2")
    assert code == 0
    assert payload["datum"]["types"] == ["compact", "compact"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "grade3", "grade", "--demo", "sl2", "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"dims": [1, 1, 1]}
