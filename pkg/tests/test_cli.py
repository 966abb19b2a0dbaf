import json
import subprocess
import sys

import pytest

from hopf_algebroid.cli import load_config, main


def write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


AB2 = {"quasigroup": {"kind": "abelian", "n": 2}, "algebra_r": "base"}
QG5_DUAL = {"quasigroup": {"kind": "builtin_qg5"}, "algebra_r": "dual"}


@pytest.mark.parametrize("cfg", [{"quasigroup": {"kind": "builtin_qg5"}}, {"quasigroup": {"kind": "abelian", "n": 5}}])
def test_validate_ok(tmp_path, cfg):
    assert main(["validate", write(tmp_path, cfg)]) == 0


def test_validate_broken_table(tmp_path, capsys):
    cfg = {"quasigroup": {"kind": "table", "table": [[0, 1], [0, 1]]}}
    assert main(["validate", write(tmp_path, cfg), "--format", "json"]) == 1
    out = json.loads(capsys.readouterr().out)
    latin = next(c for c in out["checks"] if c["id"] == "validate/latin")
    assert latin["status"] == "fail" and latin["witness"]["kind"] == "column"


@pytest.mark.parametrize("text", ['{"quasigroup": ', '{"quasigroup": {"kind": "octonions"}}',
                                  '{"quasigroup": {"kind": "abelian", "n": 2}, "colour": 1}',
                                  '{"quasigroup": {"kind": "abelian", "n": 2}, "pi": [0, 0]}'])
def test_input_errors(tmp_path, text, capsys):
    assert main(["validate", write(tmp_path, text)]) == 2
    assert "input error" in capsys.readouterr().err


def test_parse_error_has_location(tmp_path):
    with pytest.raises(ValueError, match=r"cfg.json:1:\d+"):
        load_config(write(tmp_path, '{"quasigroup": }'))


def test_check_sigma_dual_annotation(tmp_path):
    out = tmp_path / "out"
    assert main(["check-sigma", write(tmp_path, QG5_DUAL), "--output-dir", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["radical_dim"] == 1
    assert any("is not a weak Hopf algebra" in a for a in report["annotations"])
    assert json.loads((out / "sigma.json").read_text())["X"] == 5


def test_check_sigma_corrupted(tmp_path, capsys):
    cfg = dict(AB2, corrupt={"entry": [0, 1, 0, 0], "values": [[1], [0]]})
    assert main(["check-sigma", write(tmp_path, cfg), "--format", "json"]) == 1
    out = json.loads(capsys.readouterr().out)
    left = next(c for c in out["checks"] if c["id"] == "sigma/left-rho-T")
    assert len(left["witness"]["indices"]) == 4


def test_verify_selected_suites_qg5(tmp_path):
    cfg = {"quasigroup": {"kind": "builtin_qg5"}}
    args = ["verify", write(tmp_path, cfg), "--suite", "sigma", "--suite", "rigidity", "--suite", "epsilon-kills",
            "--output-dir", str(tmp_path / "o")]
    assert main(args) == 0
    assert (tmp_path / "o" / "rigidity.json").exists()


def test_verify_bound_too_small(tmp_path):
    args = ["verify", write(tmp_path, AB2), "--degree-bound", "1", "--suite", "rigid-identities"]
    assert main(args) == 3


def test_verify_writes_certificates(tmp_path):
    out = tmp_path / "o"
    args = ["verify", write(tmp_path, AB2), "--suite", "rigid-identities", "--output-dir", str(out)]
    assert main(args) == 0
    report = json.loads((out / "report.json").read_text())
    refs = [c["certificate"] for c in report["checks"] if "certificate" in c]
    assert refs and all((out / r).exists() for r in refs)
    assert report["bounds"] == {"D": 4}


def test_report_is_deterministic(tmp_path):
    cfg = write(tmp_path, AB2)
    outs = []
    for k, threads in enumerate(("1", "3")):
        out = tmp_path / f"o{k}"
        main(["verify", cfg, "--suite", "hopf", "--suite", "bialgebroid-axioms", "--threads", threads,
              "--seed", "4", "--output-dir", str(out)])
        outs.append((out / "report.json").read_bytes())
    assert outs[0] == outs[1]


def test_gf_mode(tmp_path):
    args = ["verify", write(tmp_path, AB2), "--field", "gf:2147483647", "--suite", "rigid-identities"]
    assert main(args) == 0


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "hopf_algebroid", "validate", write(tmp_path, AB2)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "overall: pass" in res.stdout
