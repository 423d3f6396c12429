"""End-to-end runs of the command line front end.

Every test calls main() in process and checks the three-way exit
contract: 0 for a definite answer (Refuted included), 2 for an honest
Unknown, 1 for input the tool refuses to interpret.
"""

import json
from pathlib import Path

import pytest

from qperiods.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def fx(name):
    return str(FIXTURES / name)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# definite answers, text mode

def test_period_reports_dimension_and_relation_basis(capsys):
    code, out, _ = run(["period", fx("a2_P1.json")], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "period space dimension: 3 (ambient 4, relations 1)"
    assert lines[1] == "relation 0:"
    assert [row.split() for row in lines[2:4]] == [["0", "0"], ["1", "0"]]


def test_endo_reports_dimension(capsys):
    code, out, _ = run(["endo", fx("a2_P1.json")], capsys)
    assert code == 0
    assert out.startswith("endomorphism-side space dimension: 4")


def test_depth_certified_exits_zero(capsys):
    code, out, _ = run(["depth", fx("a2_P1.json"), "--k", "2"], capsys)
    assert code == 0
    assert "per-stage dimensions: 3, 3" in out
    assert "certified against the full space: yes" in out


def test_depth_not_yet_stable_exits_two(capsys):
    code, out, _ = run(["depth", fx("loop2_reg.json"), "--k", "1"], capsys)
    assert code == 2
    assert "certified against the full space: no" in out


def test_certify_refuted_is_a_definite_answer(capsys):
    code, out, _ = run(
        ["certify", fx("a2_P1.json"), "--weights", fx("a2_weights.json")],
        capsys)
    assert code == 0
    assert out.splitlines()[0] == "verdict: Refuted"
    assert "dimension 4 exceeds the period space dimension 3" in out
    assert "[DimGap]" in out


def test_certify_certified_prints_derivation_tree(capsys):
    code, out, _ = run(
        ["certify", fx("a2_P1S2.json"), "--weights", fx("a2_weights.json")],
        capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "verdict: Certified"
    rules = [line.strip().split("]")[0] + "]"
             for line in lines if "]" in line]
    assert rules == ["[Iso]", "[SatPrincipal]", "[Semisimple]", "[Semisimple]"]


def test_certify_unknown_exits_two(capsys):
    code, out, _ = run(
        ["certify", fx("loop2_reg.json"),
         "--weights", fx("loop2_weights.json")],
        capsys)
    assert code == 2
    assert out.splitlines()[0] == "verdict: Unknown"


def test_realize_success_names_the_power(capsys):
    code, out, _ = run(
        ["realize", fx("a2_P1.json"), "--relation", fx("a2_relation.json")],
        capsys)
    assert code == 0
    assert out.splitlines()[0] == "realized inside a power: M^1"


def test_realize_non_relation_is_unknown(tmp_path, capsys):
    path = tmp_path / "not_a_relation.json"
    path.write_text(json.dumps({"matrix": [["1", "0"], ["0", "0"]]}))
    code, out, _ = run(
        ["realize", fx("a2_P1.json"), "--relation", str(path)], capsys)
    assert code == 2
    assert out.splitlines()[0] == "not realized: unknown"


def test_eval_failing_point_still_exits_zero(capsys):
    code, out, _ = run(
        ["eval", fx("a2_P1.json"), "--comparison", fx("a2_cmp_u1.json")],
        capsys)
    assert code == 0
    assert "verdict: the point fails" in out
    assert "kernel on the quotient: 2" in out
    assert "kernel vector realizations: realized, unknown, unknown" in out


def test_eval_generic_point_holds(capsys):
    code, out, _ = run(
        ["eval", fx("a2_P1.json"), "--comparison", fx("a2_cmp_generic.json")],
        capsys)
    assert code == 0
    assert "verdict: the point holds" in out
    assert "kernel on the quotient: 0" in out


def test_lift_reports_universal_dimension(capsys):
    code, out, _ = run(
        ["lift", fx("a3_seq.json"), "--target", fx("a3_target.json")],
        capsys)
    assert code == 0
    assert out.splitlines()[0] == "universal lift dimension: 4 (target dimension 2)"
    assert "w0:2, wm1:1, wm2:1" in out


def test_onemotive_flags_give_graded_dimensions(capsys):
    code, out, _ = run(["onemotive", "--g", "1", "--l", "1", "--m", "1"],
                       capsys)
    assert code == 0
    assert "graded period dimensions: 6, 4, 1 (total 11)" in out
    assert "matrix model agrees: yes" in out


def test_onemotive_input_file(capsys):
    code, out, _ = run(["onemotive", "--input", fx("gauss_input.json")],
                       capsys)
    assert code == 0
    assert "graded period dimensions: 4, 4, 2 (total 10)" in out


def test_baker_prints_the_bare_count(capsys):
    code, out, _ = run(["baker", "--x", "1", "--l", "2", "--n", "0"], capsys)
    assert code == 0
    assert out == "4\n"


# refused input, exit 1

def test_parse_error_names_file_and_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{broken")
    code, out, err = run(["period", str(path)], capsys)
    assert code == 1
    assert out == ""
    assert err.startswith(f"qperiods period: {path}:1:")


def test_missing_file_is_refused(capsys):
    code, _, err = run(["period", "no_such_file.json"], capsys)
    assert code == 1
    assert "module file does not exist" in err


def test_validation_error_names_the_offender(tmp_path, capsys):
    path = tmp_path / "bad_module.json"
    data = json.loads(Path(fx("a2_P1.json")).read_text())
    data["algebra"] = fx("a2.json")
    data["maps"]["no_such_arrow"] = [["0", "0"]]
    path.write_text(json.dumps(data))
    code, _, err = run(["period", str(path)], capsys)
    assert code == 1
    assert "no_such_arrow" in err


def test_onemotive_rejects_mixed_flag_styles(capsys):
    code, _, err = run(
        ["onemotive", "--g", "1", "--l", "1", "--m", "1",
         "--input", fx("gauss_input.json")],
        capsys)
    assert code == 1
    assert "either --input or all of --g --l --m" in err


def test_baker_range_violation(capsys):
    code, _, err = run(["baker", "--x", "1", "--l", "2", "--n", "5"], capsys)
    assert code == 1
    assert "0 <= 5 <= 2" in err


def test_depth_rejects_non_positive_k(capsys):
    code, _, err = run(["depth", fx("a2_P1.json"), "--k", "0"], capsys)
    assert code == 1
    assert "--k must be positive" in err


def test_no_command_prints_usage(capsys):
    code, _, err = run([], capsys)
    assert code == 1
    assert "usage: qperiods" in err


# json mode

def test_json_reports_carry_their_exit_code(capsys):
    cases = [
        (["period", fx("a2_P1.json")], 0),
        (["certify", fx("a2_P1.json"), "--weights", fx("a2_weights.json")], 0),
        (["certify", fx("loop2_reg.json"),
          "--weights", fx("loop2_weights.json")], 2),
        (["baker", "--x", "1", "--l", "2", "--n", "0"], 0),
    ]
    for argv, expected in cases:
        code, out, _ = run(["--format", "json"] + argv, capsys)
        assert code == expected
        report = json.loads(out)
        assert report["exit_code"] == expected
        assert report["command"] == argv[0]


def test_json_period_report_contents(capsys):
    _, out, _ = run(["--format", "json", "period", fx("a2_P1.json")], capsys)
    report = json.loads(out)
    assert report["dim"] == 3
    assert report["ambient_dim"] == 4
    assert report["relation_basis"] == [[["0", "0"], ["1", "0"]]]


def test_json_keys_are_sorted(capsys):
    _, out, _ = run(
        ["--format", "json", "eval", fx("a2_P1.json"),
         "--comparison", fx("a2_cmp_u1.json")],
        capsys)
    decoder = json.JSONDecoder(object_pairs_hook=list)
    pairs = decoder.decode(out)
    keys = [k for k, _ in pairs]
    assert keys == sorted(keys)


def test_json_error_paths_still_write_stderr(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{broken")
    code, out, err = run(["--format", "json", "period", str(path)], capsys)
    assert code == 1
    assert out == ""
    assert str(path) in err


def test_repeated_runs_are_byte_identical(capsys):
    commands = [
        ["--format", "json", "period", fx("a2_P1.json")],
        ["--format", "json", "certify", fx("a2_P1S2.json"),
         "--weights", fx("a2_weights.json")],
        ["--format", "json", "eval", fx("a2_P1.json"),
         "--comparison", fx("a2_cmp_u1.json")],
        ["eval", fx("a2_P1.json"), "--comparison", fx("a2_cmp_generic.json")],
    ]
    for argv in commands:
        first = run(argv, capsys)
        second = run(argv, capsys)
        assert first == second


def test_emit_schema_is_valid_json(capsys):
    code, out, _ = run(["--emit-schema"], capsys)
    assert code == 0
    schemas = json.loads(out)
    assert sorted(schemas) == [
        "algebra", "comparison", "graded-input", "module",
        "partition", "relation", "sequence", "target",
    ]


def test_console_entry_point_is_wired():
    import qperiods.cli
    assert callable(qperiods.cli.main)
