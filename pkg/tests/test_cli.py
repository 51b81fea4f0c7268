import json
from fractions import Fraction

import pytest

from petersonring.cli import main
from petersonring.peterson import build_presentation, peterson_generator
from petersonring.verify import run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--threads", "1")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_json_n2(capsys):
    code, data = run_json(capsys, "verify", "--n", "2", "--degree-bound", "8")
    assert code == 0
    assert data["status"] == "pass"
    assert data["equivariant_series"] == [1, 2, 2, 2, 2]
    assert data["ordinary_series"] == [1, 1, 0, 0, 0]
    assert [c["name"] for c in data["checks"]] == [
        "fixed_points",
        "relations_restrict_to_zero",
        "equivariant_series",
        "ordinary_series",
        "regular_sequence_identity",
        "quadratic_system_cross_check",
        "restriction_injective",
    ]


def test_verify_output_independent_of_threads(capsys):
    _, one, _ = run(capsys, "verify", "--n", "4", "--json", "--threads", "1")
    _, four, _ = run(capsys, "verify", "--n", "4", "--json", "--threads", "4")
    assert one == four


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "1"],
    ["verify", "--n", "x"],
    ["verify", "--n", "3", "--degree-bound", "7"],
    ["verify"],
    ["hilbert", "--n", "3", "--equivariant", "--ordinary"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_small_degree_bound_rejected(capsys):
    code, _, err = run(capsys, "verify", "--n", "3", "--degree-bound", "2")
    assert code == 2 and "error" in err


def test_verify_detects_fault():
    ring = build_presentation(3)
    bad = ring.with_generator(0, peterson_generator(3, 1, ring.variables, half=Fraction(1, 3)))
    report = run_verify(3, ring=bad)
    assert report.exit_code == 1
    assert not report.check("relations_restrict_to_zero").passed


def test_fixed_points(capsys):
    code, data = run_json(capsys, "fixed-points", "--n", "3")
    assert code == 0
    assert {"subset": [1], "one_line": [1, 3, 2]} in data["points"]
    assert len(data["points"]) == 4
    code, out, _ = run(capsys, "fixed-points", "--n", "3")
    assert "132" in out


@pytest.mark.parametrize("flag, expected", [("--equivariant", [1, 3, 4, 4, 4, 4, 4]), ("--ordinary", [1, 2, 1, 0, 0, 0, 0])])
def test_hilbert(capsys, flag, expected):
    code, data = run_json(capsys, "hilbert", "--n", "3", flag)
    assert code == 0 and data["match"]
    assert data["series"]["coefficients"] == expected


def test_hilbert_lex(capsys):
    code, data = run_json(capsys, "hilbert", "--n", "4", "--order", "lex", "--degree-bound", "8")
    assert code == 0 and data["series"]["coefficients"] == [1, 4, 7, 8, 8]


def test_restrict(capsys):
    code, data = run_json(capsys, "restrict", "--n", "3", "--class", "xi_2")
    assert code == 0
    assert [(v["one_line"], v["value"]) for v in data["values"]] == [
        ([3, 2, 1], "2*t"), ([1, 3, 2], "t"), ([2, 1, 3], "0"), ([1, 2, 3], "0"),
    ]
    code, out, _ = run(capsys, "restrict", "--n", "3", "--class", "xi_1*(xi_1 - 1/2*xi_2 - t)")
    assert code == 0 and all(line.rstrip().endswith("0") for line in out.strip().splitlines())


def test_restrict_unknown_variable(capsys):
    code, _, err = run(capsys, "restrict", "--n", "3", "--class", "xi_1 + xi_3")
    assert code == 2
    assert "xi_3" in err and "7" in err


def test_regseq_peterson(capsys):
    code, data = run_json(capsys, "regseq", "--n", "5")
    assert code == 0
    assert data["only_origin"] and data["criterion"]["holds"] and data["dimension_zero"]
    code, data = run_json(capsys, "regseq", "--n", "2")
    assert code == 0 and data["trivial"]


def test_regseq_system_file(tmp_path, capsys):
    path = tmp_path / "sys.json"
    path.write_text(json.dumps({"q": 2, "a": ["1"], "b": ["1"]}))
    code, data = run_json(capsys, "regseq", "--system", str(path))
    assert code == 1
    assert data["criterion"]["failing_pair"] == [1, 1]
    assert not data["only_origin"]
    code, out, _ = run(capsys, "regseq", "--system", str(path))
    assert "(1, 1)" in out


def test_regseq_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "regseq", "--system", str(path))
    assert code == 2 and "cannot load" in err
    code, _, _ = run(capsys, "regseq", "--system", str(tmp_path / "missing.json"))
    assert code == 2


def test_regseq_branch_cap(capsys):
    code, _, err = run(capsys, "regseq", "--n", "6", "--branch-cap", "3")
    assert code == 2 and "cap" in err


def test_groebner(tmp_path, capsys):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"variables": ["x", "y", "z"], "generators": ["x - y", "y - z"]}))
    code, data = run_json(capsys, "groebner", "--ideal", str(path), "--order", "lex")
    assert code == 0 and sorted(data["basis"]) == ["x - z", "y - z"]


def test_groebner_parse_error(tmp_path, capsys):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"variables": ["x", "y"], "generators": ["x**y"]}))
    code, _, err = run(capsys, "groebner", "--ideal", str(path))
    assert code == 2 and "generator 0" in err


def test_groebner_zero_ideal(tmp_path, capsys):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"variables": ["x"], "generators": ["x - x"]}))
    code, out, _ = run(capsys, "groebner", "--ideal", str(path))
    assert code == 0 and "zero ideal" in out
