import json

from topkat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decide_exit_codes(capsys):
    code, out, _ = run(capsys, "decide", "--tests", "b", "b + !b", "1")
    assert code == 0 and out == "equivalent\n"
    code, out, _ = run(capsys, "decide", "--tests", "", "p", "q")
    assert code == 1 and out.startswith("not equivalent\nwitness: ")


def test_leq_checks_first_arg_dominates_second(capsys):
    code, out, _ = run(capsys, "leq", "--tests", "", "p T p T", "p T")
    assert code == 1 and "witness: [] p []" in out
    code, out, _ = run(capsys, "leq", "--tests", "", "p T", "p T p T")
    assert code == 0 and out == "provable\n"


def test_json_mode_is_versioned(capsys):
    code, out, _ = run(capsys, "leq", "--json", "--tests", "", "T", "p")
    assert code == 0
    payload = json.loads(out)
    assert payload["v"] == 1 and payload["verdict"] == "provable"
    code, out, _ = run(capsys, "decide", "--json", "--tests", "", "p", "q")
    payload = json.loads(out)
    assert payload["verdict"] == "not-equivalent"
    assert payload["witness"] == "[] p []"
    assert payload["side"] in ("left", "right")


def test_cod_geq_json_countermodel_schema(capsys):
    code, out, _ = run(capsys, "cod-geq", "--json", "--tests", "b", "p b", "p")
    assert code == 1
    payload = json.loads(out)
    model = payload["countermodel"]
    assert set(model) == {"carrier", "relations", "violating_point", "witness", "side"}
    assert model["side"] == "right"
    assert len(model["carrier"]) == len(model["witness"].split()) // 2 + 1
    assert "__top__" in model["relations"]


def test_undeclared_identifier_with_explicit_actions(capsys):
    code, _, err = run(capsys, "decide", "--tests", "", "--actions", "p", "p", "q")
    assert code == 2 and "undeclared" in err


def test_actions_are_inferred_in_first_occurrence_order(capsys):
    code, out, _ = run(capsys, "reduce", "--tests", "", "T q p")
    assert code == 0 and out == "(q + p + __top__)* q p\n"


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--tests", "b", "p*", "[b] p [!b]")
    assert code == 0 and out == "member\n"
    code, out, _ = run(capsys, "member", "--tests", "b", "p b", "[b] p [!b]")
    assert code == 1 and out == "not member\n"


def test_lang_sorted_output(capsys):
    code, out, _ = run(capsys, "lang", "--tests", "b", "--max-actions", "0", "1")
    assert code == 0 and out == "[!b]\n[b]\n"


def test_file_input(tmp_path, capsys):
    path = tmp_path / "terms.txt"
    path.write_text("p*\n1 + p p*\n", encoding="utf-8")
    code, out, _ = run(capsys, "decide", "--tests", "", "--file", str(path))
    assert code == 0 and out == "equivalent\n"
    code, _, err = run(capsys, "decide", "--tests", "", "--file", str(path), "p*")
    assert code == 2 and "not both" in err


def test_triple_file(tmp_path, capsys):
    path = tmp_path / "specs.txt"
    path.write_text("hoare {b} p {1}\nincorrectness [1] p [1]\n", encoding="utf-8")
    code, out, _ = run(capsys, "triple", "--file", str(path), "--tests", "b")
    assert code == 1
    assert out == "line 1: hoare provable\nline 2: incorrectness not provable\n"
    code, out, _ = run(capsys, "triple", "--file", str(path), "--tests", "b",
                       "--direction", "as-printed", "--json")
    payload = json.loads(out)
    assert [r["verdict"] for r in payload["results"]] == ["provable", "provable"]


def test_search_modes_and_seed_echo(capsys):
    code, out, _ = run(capsys, "search", "--kind", "leq", "--max-states", "2",
                       "--exhaustive", "--tests", "", "p T p", "p")
    assert code == 0 and out == "no countermodel\n"
    code, out, _ = run(capsys, "search", "--kind", "leq", "--max-states", "2",
                       "--samples", "50", "--seed", "5", "--json",
                       "--tests", "", "q", "p")
    payload = json.loads(out)
    assert payload["seed"] == 5
    assert code in (0, 1)
    code, _, err = run(capsys, "search", "--kind", "leq", "--samples", "10",
                       "--tests", "", "p", "q")
    assert code == 2 and "--seed" in err
    code, _, err = run(capsys, "search", "--kind", "leq", "--tests", "", "p", "q")
    assert code == 2 and "search mode" in err


def test_search_ceiling_exit_code(capsys):
    code, _, err = run(capsys, "search", "--kind", "leq", "--max-states", "3",
                       "--exhaustive", "--ceiling", "1000", "--tests", "",
                       "p q r", "p")
    assert code == 3 and "ceiling" in err


def test_rule_subcommand(capsys):
    code, out, _ = run(capsys, "rule", "sequencing", "1", "1", "1", "p", "p",
                       "--exhaustive", "--max-states", "2", "--tests", "")
    assert code == 0 and out == "no refutation found (budget exhaustive n<=2)\n"
    code, _, err = run(capsys, "rule", "sequencing", "1", "1", "--exhaustive",
                       "--tests", "")
    assert code == 2 and "5 terms" in err


def test_usage_errors(capsys):
    assert run(capsys, "decide", "--tests", "", "p")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    code, _, err = run(capsys, "decide", "--tests", "b,b", "b", "b")
    assert code == 2


def test_identical_invocations_are_byte_identical(capsys):
    first = run(capsys, "cod-geq", "--json", "--tests", "b,c", "p b", "p c + q")
    second = run(capsys, "cod-geq", "--json", "--tests", "b,c", "p b", "p c + q")
    assert first == second
