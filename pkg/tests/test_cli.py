import json
import subprocess
import sys

import pytest

from orbiteq.catalog import write_fixtures
from orbiteq.cli import main
from orbiteq.io import normalize, read_json


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    write_fixtures(d)
    return d


@pytest.mark.parametrize("argv,code", [
    (["verify", "action", "shift_F2.json"], 0),
    (["verify", "action", "shift_GM.json"], 0),
    (["verify", "freeness", "shift_GM.json"], 0),
    (["verify", "groupoid_axioms", "shift_F2.json"], 0),
    (["verify", "csoe", "csoe_phi2.json", "--depth", "5"], 0),
    (["verify", "shift_coe", "shift_coe_identity.json"], 0),
    (["verify", "group_cocycle", "group_cocycle_odometer.json"], 0),
    (["verify", "action", "noncommuting_F2.json"], 1),
    (["verify", "action", "collapse_F2.json"], 1),
    (["verify", "freeness", "dup_F2.json"], 1),
    (["verify", "csoe", "csoe_corrupt.json"], 1),
    (["verify", "shift_coe", "shift_coe_wrong.json"], 1),
    (["verify", "coe", "coe_missing_entry.json"], 2),
    (["verify", "group_cocycle", "group_cocycle_shift.json"], 2),
    (["verify", "action", "missing.json"], 2),
    (["verify", "action", "shallow_F2.json"], 3),
])
def test_exit_codes(fx, argv, code, capsys):
    argv = argv[:2] + [str(fx / argv[2])] + argv[3:]
    assert main(argv) == code


def test_refuted_report_has_witness(fx, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "shift_coe", str(fx / "shift_coe_wrong.json"), "--out", str(out)]) == 1
    rep = read_json(out)["payload"]
    assert rep["status"] == "refuted"
    bad = [c for c in rep["checks"] if c["status"] == "refuted"][0]
    assert bad["witness"]["word"] == "001"


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["verify", "action", str(p)]) == 2


def test_bad_argument_value(fx):
    with pytest.raises(SystemExit) as ei:
        main(["verify", "action", str(fx / "shift_F2.json"), "--depth", "0"])
    assert ei.value.code == 2


def _report_bytes(fx, tmp_path, monkeypatch, env, flag, tag):
    out = tmp_path / f"{tag}.json"
    if env is None:
        monkeypatch.delenv("ORBITEQ_THREADS", raising=False)
    else:
        monkeypatch.setenv("ORBITEQ_THREADS", env)
    argv = ["verify", "csoe", str(fx / "csoe_phi2.json"), "--depth", "4", "--out", str(out)]
    if flag:
        argv += ["--parallelism", flag]
    assert main(argv) == 0
    return out.read_bytes()


def test_reports_deterministic(fx, tmp_path, monkeypatch):
    runs = [(None, None), ("1", None), ("8", None), (None, "auto"), (None, "3"), ("2", "5")]
    outs = {_report_bytes(fx, tmp_path, monkeypatch, env, flag, i) for i, (env, flag) in enumerate(runs)}
    assert len(outs) == 1


def test_convert_roundtrip(fx, tmp_path):
    coe = tmp_path / "coe.json"
    back = tmp_path / "back.json"
    assert main(["convert", "shift_to_semigroup", str(fx / "shift_coe_identity.json"), "--out", str(coe)]) == 0
    assert main(["convert", "semigroup_to_shift", str(coe), "--out", str(back)]) == 0
    assert json.dumps(normalize(read_json(back)), sort_keys=True) == \
        json.dumps(read_json(fx / "shift_coe_identity.json"), sort_keys=True)


def test_convert_embeds_reports(fx, tmp_path):
    out = tmp_path / "coe.json"
    assert main(["convert", "csoe_to_coe", str(fx / "csoe_phi2.json"), "--out", str(out)]) == 0
    rep = read_json(out)["report"]["payload"]["reports"]
    assert rep["source"]["status"] == "verified" and rep["target"]["status"] == "verified"


def test_convert_refuses_bad_source(fx, tmp_path, capsys):
    out = tmp_path / "x.json"
    assert main(["convert", "csoe_to_coe", str(fx / "csoe_corrupt.json"), "--out", str(out)]) == 1
    assert not out.exists()
    assert "nothing written" in capsys.readouterr().err


def test_convert_wrong_form(fx):
    assert main(["convert", "group_to_semigroup", str(fx / "shift_coe_identity.json")]) == 2


def test_inspect(fx, capsys):
    assert main(["inspect", "--brief", str(fx / "csoe_phi2.json")]) == 0
    out = capsys.readouterr().out
    assert "csoe" in out and "csoe_phi2" in out


def test_console_entry(fx):
    r = subprocess.run([sys.executable, "-m", "orbiteq", "verify", "action", str(fx / "shift_F2.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "verified" in r.stdout
