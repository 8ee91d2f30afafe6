import json
from fractions import Fraction
from pathlib import Path

import pytest

from germcalc.cli import format_germ_file, main, parse_germ_file, run
from germcalc.errors import ParseError, ValidationError

PLT_GERM = '{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"1/2"}'
GRAPH = '{"kind":"dual_graph","chain":[3,2],"branches":[[1,"1"],[2,"2/3"]]}'
GLUED = ('{"kind":"glued","glue_ok":true,"components":['
         '{"n":2,"q":1,"conductor":"1","side":"3/4"},'
         '{"n":4,"q":1,"conductor":"1","side":"1/2"}]}')


def write(tmp_path, text, name="germ.json"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_parse_valid_cyclic_quotient():
    gf = parse_germ_file(PLT_GERM)
    assert gf.kind == "cyclic_quotient"
    assert gf.germ.n == 5 and gf.germ.side_coeff == Fraction(1, 2)


def test_parse_rejects_non_coprime():
    with pytest.raises(ValidationError):
        parse_germ_file('{"kind":"cyclic_quotient","n":4,"q":2,"conductor":"1","side":"0"}')


def test_parse_valid_dual_graph():
    gf = parse_germ_file(GRAPH)
    assert gf.kind == "dual_graph"
    assert gf.graph.selfints == (3, 2)
    assert gf.graph.branch_coeffs_at(1) == [Fraction(2, 3)]


def test_parse_rejects_malformed_json():
    with pytest.raises(ParseError) as err:
        parse_germ_file('{"kind": "cyclic_quotient", ')
    assert err.value.line is not None and err.value.column is not None


@pytest.mark.parametrize("text", [PLT_GERM, GRAPH, GLUED])
def test_format_parse_roundtrip(text):
    gf = parse_germ_file(text)
    assert parse_germ_file(format_germ_file(gf)) == gf


def test_classify_command(tmp_path, capsys):
    assert main(["classify", write(tmp_path, PLT_GERM)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["tag"] == "PLT_CHAIN"
    assert out["gamma"] == "1/10"
    assert out["cartier_index"] == 10


def test_discrepancy_command(tmp_path, capsys):
    assert main(["discrepancy", write(tmp_path, GRAPH)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lc_class"] == "PLT"
    assert len(out["discrepancies"]) == 2


def test_residue_command(tmp_path, capsys):
    assert main(["residue", write(tmp_path, PLT_GERM), "--m-max", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["residue_table"]) == 3
    assert all(row["surjective"] for row in out["residue_table"])


def test_glue_command(tmp_path, capsys):
    assert main(["glue", write(tmp_path, GLUED)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["glue_consistent"] is True
    assert out["differents"] == ["7/8", "7/8"]
    assert out["restriction"]["equal"] is False
    assert out["case"] == "TWO_COMPONENT_PLT"


def test_residue_command_on_plt_graph(tmp_path, capsys):
    # slope read off the matched chain: gamma = (1 - 2/3) / 5 = 1/15
    assert main(["residue", write(tmp_path, GRAPH), "--m-max", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [row["source_exponent"] for row in out["residue_table"]] == [1, 1, 1, 1]
    assert all(row["surjective"] for row in out["residue_table"])


def test_residue_command_rejects_center_graph(tmp_path, capsys):
    cyclic = '{"kind":"dual_graph","chain":[2,2],"branches":[[1,"1"],[2,"1"]]}'
    assert main(["residue", write(tmp_path, cyclic)]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "NotApplicable"


def test_glue_command_flags_extrapolated_degree(tmp_path, capsys):
    assert main(["glue", write(tmp_path, GLUED), "--m", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert "extrapolated" in out["flags"]
    assert out["restriction"]["m"] == 3


def test_failure_m_command(capsys):
    assert main(["failure-m", "--coeffs", "1/2,1/3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["m"] == 5


def test_stdcoeff_command(capsys):
    assert main(["stdcoeff", "--c", "3/5", "--m", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"bracket_ok": True, "c": "3/5", "hypothesis_ok": False,
                   "m": 4, "standard": False}


def test_run_wrapper(capsys):
    assert run("failure-m", ["--coeffs", "1/2,1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["m"] == 1


def test_stdin_input(tmp_path, capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(PLT_GERM))
    assert main(["classify", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["tag"] == "PLT_CHAIN"


def test_exit_code_two_on_parse_failure(tmp_path, capsys):
    assert main(["classify", write(tmp_path, "{not json")]) == 2
    err = json.loads(capsys.readouterr().out)["error"]
    assert err["type"] == "ParseError"
    assert err["line"] == 1


def test_exit_code_one_on_validation_failure(tmp_path, capsys):
    bad = '{"kind":"cyclic_quotient","n":4,"q":2,"conductor":"1","side":"0"}'
    assert main(["classify", write(tmp_path, bad)]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "BadParameters"


def test_exit_code_one_on_glue_mismatch(tmp_path, capsys):
    bad = ('{"kind":"glued","glue_ok":true,"components":['
           '{"n":2,"q":1,"conductor":"1","side":"3/4"},'
           '{"n":4,"q":1,"conductor":"1","side":"7/8"}]}')
    assert main(["classify", write(tmp_path, bad)]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "GlueMismatch"


FUZZ_INPUTS = [
    "",
    "[]",
    "null",
    '"germ"',
    "{}",
    '{"kind":"unknown"}',
    '{"kind":"cyclic_quotient"}',
    '{"kind":"cyclic_quotient","n":"5","q":2}',
    '{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"0.5","side":"0"}',
    '{"kind":"cyclic_quotient","n":5,"q":2,"conductor":"1","side":"1/0"}',
    '{"kind":"cyclic_quotient","n":-1,"q":1,"conductor":"1","side":"0"}',
    '{"kind":"dual_graph","chain":[3,"2"]}',
    '{"kind":"dual_graph","chain":[3],"branches":[[2,"1"]]}',
    '{"kind":"dual_graph","chain":[3],"branches":[[0,"1"]]}',
    '{"kind":"dual_graph","chain":[3],"forks":[[5,2]]}',
    '{"kind":"dual_graph","chain":[0]}',
    '{"kind":"glued","components":[]}',
    '{"kind":"glued","components":[{"n":2,"q":1}],"glue_ok":"yes"}',
    '{"kind": "cyclic_quotient", "n": 5, "q": 2, ',
    '{"kind":"cyclic_quotient","n":5,"q":2,"conductor_coeff":"1"}',
    '{"kind":"dual_graph","chain":[2],"edges":[[1,2]]}',
]


@pytest.mark.parametrize("text", FUZZ_INPUTS)
def test_fuzzed_malformed_inputs_never_exit_zero(tmp_path, capsys, text):
    code = main(["report", write(tmp_path, text)])
    capsys.readouterr()
    assert code in (1, 2)


def test_missing_file_is_a_parse_failure(capsys):
    assert main(["classify", "/nonexistent/germ.json"]) == 2
    capsys.readouterr()


def test_report_modification_bookkeeping(tmp_path, capsys):
    assert main(["report", write(tmp_path, PLT_GERM)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["modification"] == {"extracted_coeff": "9/10",
                                   "extracted_discrepancy": "-9/10",
                                   "perturbed": False}
    fork = ('{"kind":"dual_graph","chain":[2],"forks":[[1,2],[1,2]],'
            '"branches":[[1,"1"]]}')
    assert main(["report", write(tmp_path, fork, "fork.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["modification"]["extracted_curves"] == [1]
    assert out["modification"]["kept_curves"] == [2, 3]
    assert out["modification"]["perturbed"] is True
    assert "perturbed" in out["flags"]


def test_reports_are_deterministic(tmp_path, capsys):
    path = write(tmp_path, GLUED)
    assert main(["report", path]) == 0
    first = capsys.readouterr().out
    assert main(["report", path]) == 0
    second = capsys.readouterr().out
    assert first.encode() == second.encode()


def test_report_echo_reparses_to_input(tmp_path, capsys):
    for text in (PLT_GERM, GRAPH, GLUED):
        path = write(tmp_path, text)
        assert main(["report", path]) == 0
        echoed = json.loads(capsys.readouterr().out)["input"]
        assert parse_germ_file(json.dumps(echoed)) == parse_germ_file(text)


def test_glue_report_flags_q_mismatch(tmp_path, capsys):
    pair = ('{"kind":"glued","glue_ok":true,"components":['
            '{"n":4,"q":1,"conductor":"1","side":"1/2"},'
            '{"n":4,"q":3,"conductor":"1","side":"1/2"}]}')
    assert main(["glue", write(tmp_path, pair)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == "TWO_COMPONENT_PLT"
    assert "q-mismatch" in out["flags"]


def test_report_numeric_fields_reproducible(tmp_path, capsys):
    # every numeric field in a report must be recomputable from the echo
    from fractions import Fraction as F

    from germcalc.dualgraph import boundary_coefficients, cartier_index
    from germcalc.germs import classify_lc_germ, resolution_graph

    for text in (PLT_GERM, GRAPH):
        assert main(["report", write(tmp_path, text)]) == 0
        rep = json.loads(capsys.readouterr().out)
        gf = parse_germ_file(json.dumps(rep["input"]))
        g = resolution_graph(gf.germ) if gf.kind == "cyclic_quotient" else gf.graph
        assert rep["discrepancies"] == [str(-b) for b in boundary_coefficients(g)]
        assert rep["cartier_index"] == cartier_index(g)
        cls = classify_lc_germ(g)
        assert rep["classification"]["gamma"] == str(cls.gamma)
        assert F(rep["different"]) == 1 - cls.gamma


def test_verbose_summary_on_stderr(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert main(["--verbose", "classify", write(tmp_path, PLT_GERM)]) == 0
    captured = capsys.readouterr()
    assert "PLT_CHAIN" in captured.err
