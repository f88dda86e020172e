import json

import pytest

from krh.algebra_io import algebra_to_dict
from krh.builtins import group_algebra
from krh.cli import main
from krh.field import field


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_check_algebra_builtin(capsys):
    code, out, _ = run(capsys, "check-algebra", "--builtin", "group_Zn:2")
    assert code == 0 and "PASS" in out


def test_check_algebra_h4_includes_ribbon(capsys):
    code, doc = run_json(capsys, "check-algebra", "--builtin", "sweedler_h4")
    assert code == 0
    assert set(doc["sections"]) == {"hopf", "quasitriangular", "ribbon"}


def test_corrupted_file_fails_with_witness(tmp_path, capsys):
    doc = algebra_to_dict(group_algebra(2))
    doc["mult"] = [e for e in doc["mult"] if not (e["i"] == 1 and e["j"] == 1)]
    doc["mult"].append({"i": 1, "j": 1, "k": 1, "coeff": "1"})
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out = run_json(capsys, "check-algebra", "--algebra", str(p))
    assert code == 1
    fails = [r for r in out["sections"]["hopf"]["results"] if not r["passed"]]
    assert fails and "witness" in fails[0]


def test_unparseable_file_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    code, _, err = run(capsys, "check-algebra", "--algebra", str(p))
    assert code == 2 and "line 1" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", "--tangle", "std:curl")[0] == 2
    assert run(capsys, "eval", "--builtin", "nope", "--tangle", "std:curl")[0] == 2
    assert run(capsys, "eval", "--builtin", "sweedler_h4", "--algebra", "x.json")[0] == 2
    assert run(capsys, "eval", "--builtin", "sweedler_h4", "--tangle", "/no/such/file")[0] == 2


def test_tangle_parse_error_exit_2(tmp_path, capsys):
    p = tmp_path / "t.tgl"
    p.write_text("tangle 1 -> 1\nover@0\n")
    code, _, err = run(capsys, "eval", "--builtin", "sweedler_h4", "--tangle", str(p))
    assert code == 2 and "line 2" in err


def test_integral_h4(capsys):
    code, doc = run_json(capsys, "integral", "--builtin", "sweedler_h4")
    assert doc["support"] == ["gx"]
    assert code == 1  # Sweedler's algebra is not unimodular


def test_integral_uq_passes(capsys):
    code, doc = run_json(capsys, "integral", "--builtin", "uq_sl2_prime_q4")
    assert code == 0 and doc["report"]["passed"]


def test_whitney_identity(capsys):
    code, doc = run_json(capsys, "whitney", "--tangle", "std:identity")
    assert code == 0 and doc["total"] == 0


def test_eval_curl(capsys):
    code, out, _ = run(capsys, "eval", "--builtin", "uq_sl2_prime_q4", "--tangle", "std:curl")
    assert code == 0 and "a(T) = 1 + K^2FE" in out


def test_invariant_empty_file(tmp_path, capsys):
    p = tmp_path / "empty.tgl"
    p.write_text("")
    code, doc = run_json(capsys, "invariant", "--builtin", "uq_sl2_prime_q4", "--tangle", str(p))
    assert code == 0 and doc["INV"] == "1"


def test_invariant_plus_one_unknot(tmp_path, capsys):
    p = tmp_path / "u.tgl"
    p.write_text("tangle 0 -> 0\ncup@0\nover@0\ncap@0\n")
    code, doc = run_json(capsys, "invariant", "--builtin", "uq_sl2_prime_q4", "--tangle", str(p))
    assert doc["INV"] == "1"


def test_invariant_undefined_exit_1(capsys):
    code, _, err = run(capsys, "invariant", "--builtin", "sweedler_h4", "--tangle", "std:trefoil")
    assert code == 1 and "undefined" in err


def test_json_scalars_roundtrip(capsys):
    _, doc = run_json(capsys, "invariant", "--builtin", "uq_sl2_prime_q4", "--tangle", "std:trefoil")
    f = field(4)
    for key in ("TR", "INV", "lambda_v", "lambda_v_inv"):
        assert str(f.parse(doc[key])) == doc[key]


def test_central_with_tree(capsys):
    code, doc = run_json(
        capsys, "central", "--builtin", "uq_sl2_prime_q4", "--tangle", "std:trefoil_string", "--prove-tree", "2,4,5"
    )
    assert code == 0
    assert doc["trace"]["ordering"] == "(1,21),(22,(23,31),32),33"
    assert doc["certificate"]["central"]


def test_central_bad_tree_exit_2(capsys):
    code, _, _ = run(capsys, "central", "--builtin", "uq_sl2_prime_q4", "--tangle", "std:trefoil_string", "--prove-tree", "1")
    assert code == 2


def test_moves_fuzz(capsys):
    code, doc = run_json(capsys, "moves-fuzz", "--iters", "200", "--max-crossings", "8", "--seed", "7")
    assert code == 0 and doc["violations"] == 0 and doc["checked"] > 0


@pytest.mark.parametrize(
    "argv",
    [
        ("moves-fuzz", "--iters", "20", "--seed", "3"),
        ("invariant", "--builtin", "uq_sl2_prime_q4", "--tangle", "std:hopf_link"),
        ("central", "--builtin", "sweedler_h4", "--tangle", "std:encircled_strand"),
    ],
)
def test_deterministic_output(argv, capsys):
    a = run(capsys, *argv, "--format", "json")
    b = run(capsys, *argv, "--format", "json")
    assert a == b
