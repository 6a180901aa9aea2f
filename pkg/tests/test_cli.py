import json
from pathlib import Path

import pytest

from kanlift.cli import main

INST = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lift_lower_preorder(capsys):
    code, out, _ = run(capsys, "lift", INST / "chain2.json", "--check-closed-form", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["closed_form_agrees"] is True
    assert doc["lifted"]["tag"] == "PRE"
    assert doc["lifted"]["carrier"] == [[], ["0"], ["1"], ["0", "1"]]
    assert doc["lifted"]["matrix"][1] == [0, 1, 1, 1]


def test_lift_topology_and_param_file(capsys):
    code, out, _ = run(capsys, "lift", INST / "sierpinski.json", "--param", "lower-vietoris",
                       "--check-closed-form")
    assert code == 0 and "closed form agrees: true" in out
    a, first, _ = run(capsys, "lift", INST / "chain2.json", "--json")
    b, second, _ = run(capsys, "lift", INST / "chain2.json", "--json",
                       "--param-file", INST / "lower_pre_param.json")
    assert a == b == 0
    assert json.loads(first)["lifted"] == json.loads(second)["lifted"]


def test_output_is_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        code, out, _ = run(capsys, "lift", INST / "sierpinski.json", "--param",
                           "upper-vietoris", "--json", "--out", target)
        assert code == 0
        assert target.read_text() == out
        outs.append(out)
    assert outs[0] == outs[1]


def test_param_tag_mismatch_exit_code(capsys):
    assert run(capsys, "lift", INST / "sierpinski.json", "--param", "convex")[0] == 3


def test_simulation_verdicts_for_two_point_example(capsys):
    rel = INST / "eq2.json"
    assert run(capsys, "check", "sim2", INST / "kv1.json", INST / "kv2.json", "--relation", rel)[0] == 0
    assert run(capsys, "check", "sim2", INST / "kv2.json", INST / "kv3.json", "--relation", rel)[0] == 0
    code, out, _ = run(capsys, "check", "sim2", INST / "kv1.json", INST / "kv3.json",
                       "--relation", rel, "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["holds"] is False
    assert doc["witness"] == {"V": [0], "W": [0], "action": "*", "pair": [0, 0],
                              "lhs": "1/2", "rhs": "1/3"}


def test_exhaustive_flag_agrees(capsys):
    rel = INST / "eq2.json"
    code, _, _ = run(capsys, "check", "sim2", INST / "kv1.json", INST / "kv3.json",
                     "--relation", rel, "--exhaustive")
    assert code == 1


def test_single_lmp_and_bisim(capsys):
    rel = INST / "eq2.json"
    assert run(capsys, "check", "sim1", INST / "kv1.json", "--relation", rel)[0] == 0
    assert run(capsys, "check", "bisim", INST / "kv1.json", INST / "kv1.json",
               "--relation", rel)[0] == 0
    assert run(capsys, "check", "bisim", INST / "kv1.json", INST / "kv3.json",
               "--relation", rel)[0] == 1


def test_action_mismatch_exit_code(capsys):
    code, _, err = run(capsys, "check", "bisim", INST / "kv1.json",
                       INST / "kv1_other_action.json", "--relation", INST / "eq2.json")
    assert code == 3 and "ActionMismatch" in err


def test_wrong_arity_is_input_error(capsys):
    assert run(capsys, "check", "sim2", INST / "kv1.json", "--relation", INST / "eq2.json")[0] == 2


def test_kantorovich_verb(capsys):
    code, out, _ = run(capsys, "kantorovich", INST / "two_point_metric.json", "a=1", "b=1",
                       "--certificate", "--oracle", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["distance"] == "1/2" and doc["certified"] and doc["oracle_agrees"]
    assert doc["f"] == {"a": "1/2", "b": "0"}
    code, out, _ = run(capsys, "kantorovich", INST / "two_point_metric.json",
                       "a=1/2,b=1/2", "a=1/2,b=1/2")
    assert code == 0 and out.strip() == "0"


def test_invalid_rational(capsys):
    code, _, err = run(capsys, "kantorovich", INST / "bad_rational.json", "a=1", "b=1")
    assert code == 2 and "invalid rational" in err
    code, _, err = run(capsys, "kantorovich", INST / "two_point_metric.json", "a=1/0", "b=1")
    assert code == 2 and "invalid rational" in err


def test_bad_files(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "lift", broken)[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"format_version": 2, "kind": "preorder", "payload": {}}))
    assert run(capsys, "lift", wrong)[0] == 2
    assert run(capsys, "lift", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "lift", INST / "kv1.json")[0] == 2


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonexistent"])
    assert exc.value.code == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "comonad-laws", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and all(c["passed"] for c in doc["checks"])


def test_density_lift_verb(capsys):
    code, out, _ = run(capsys, "density-lift", INST / "pred_x.json", "--param",
                       INST / "product_param.json", "--direct", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["lifted"]["members"] == [["x", "a"]] and doc["direct_agrees"]


def test_stream_member_verb(capsys):
    args = ["stream-member", INST / "pred_x.json", "--param", INST / "stream_param_01.json"]
    code, out, _ = run(capsys, *args, "--cycle", "x,y", "--json")
    assert code == 0 and json.loads(out)["member"] is True
    assert run(capsys, *args, "--cycle", "y,x")[0] == 1
    assert run(capsys, *args, "--prefix", "x,y,x", "--cycle", "y,x")[0] == 0
    assert run(capsys, *args, "--cycle", "z")[0] == 2
