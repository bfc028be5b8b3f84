import json
import subprocess
import sys

import pytest

from artifact.cli import RunConfig, build_parser, cmd_compute, dump, framing_name, main
from artifact.homfly_oracle import homfly_unreduced_series
from artifact.rouquier import parse_braid


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_trefoil(capsys):
    code, out, _ = run(["compute", "--braid", "1,1,1", "--qmax", "16"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["doubled"] is True
    assert doc["components"] == [[1, 2]]
    assert doc["permutation"] == [2, 1]
    assert doc["framing"] == [{"component": 1, "self_writhe": 3, "shift": "-3*pi'(lambda_1)"}]
    series = homfly_unreduced_series(parse_braid("1,1,1"), 16)
    assert {(q, a): c for q, a, c in doc["euler_characteristic"]} == series
    assert all(doc["checks"].values())
    assert set(doc["witt"]) == {"L_0", "L_1", "L_2", "L_3"}


def test_compute_is_byte_deterministic(capsys):
    args = ["compute", "--braid", "1,-2", "--qmax", "6"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b
    assert a == dump(json.loads(a))


def test_unknot_and_unlink(capsys):
    code, out, _ = run(["compute", "--braid", "", "--strands", "1", "--qmax", "6"], capsys)
    assert code == 0
    assert json.loads(out)["poincare"][0] == [0, 1, -1, 1]
    _, r2, _ = run(["compute", "--braid", "1,-1", "--qmax", "8"], capsys)
    _, ident, _ = run(["compute", "--braid", "", "--strands", "2", "--qmax", "8"], capsys)
    assert json.loads(r2)["poincare"] == json.loads(ident)["poincare"]


def test_reps(capsys):
    code, out, _ = run(["compute", "--braid", "1,1", "--qmax", "6", "--reps", "1,2"], capsys)
    assert code == 0
    assert json.loads(out)["lambda"]["lambda_2"]["strand"] == 2
    code, _, err = run(["compute", "--braid", "1,1", "--qmax", "6", "--reps", "2,1"], capsys)
    assert code == 2 and "not on component" in err


def test_config_validation():
    w = parse_braid("1")
    with pytest.raises(ValueError):
        RunConfig(w, q_max=5)
    with pytest.raises(ValueError):
        RunConfig(w, witt_max=7)
    doc, ok = cmd_compute(RunConfig(w, q_max=4, witt_max=1, fmt="table"))
    assert ok and doc["truncation"]["operator_padding"] == 2


def test_bad_braid(capsys):
    code, _, err = run(["compute", "--braid", "1,x"], capsys)
    assert code == 2 and "cannot parse" in err


def test_table_and_homfly(capsys):
    code, out, _ = run(["compute", "--braid", "1", "--qmax", "4", "--format", "table"], capsys)
    assert code == 0 and "[PASS] euler_matches_oracle" in out
    code, out, _ = run(["homfly", "--braid", "1,1,1"], capsys)
    assert code == 0 and out.strip() == "-v^4 + v^2*z^2 + 2*v^2"


def test_verify_command(capsys):
    code, out, _ = run(["verify", "--suite", "witt"], capsys)
    assert code == 0 and "checks passed" in out
    code, out, _ = run(["verify", "--suite", "chi", "--format", "json"], capsys)
    assert code == 0 and all(c["passed"] for c in json.loads(out)["checks"])


def test_framing_names():
    assert framing_name(2, 0) == "0"
    assert framing_name(1, -2) == "+2*pi'(lambda_1)"


def test_parser_and_module_entry():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--suite", "bogus"])
    res = subprocess.run([sys.executable, "-m", "artifact", "homfly", "--braid", "1,1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()
