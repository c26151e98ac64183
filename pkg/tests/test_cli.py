import json

import pytest

from smartvote.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def rows(report):
    return {(tuple(r["outcome"]), tuple(r["certificate"])) for r in report["results"]}


def test_validate_fixtures(capsys):
    assert run_json(capsys, "validate", "fixtures/table1")["languages"] == ["Bool[2]"]
    assert run_json(capsys, "validate", "fixtures/table3")["languages"] == ["Liquid[2]", "Liquid*[2]"]


def test_validate_self_delegation(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "domain": ["0", "1"],
        "agents": ["a", "b"],
        "ballots": {
            "a": [{"delegates": ["a"], "fn": {"kind": "id", "of": "a"}}, {"vote": "1"}],
            "b": [{"vote": "0"}],
        },
    }))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    assert json.loads(out)["violations"]["a"][0]["condition"] == "ii"


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "no/such/file.json")
    assert code == 1 and "no such file" in err


def test_unravel_fig1_du(capsys):
    report = run_json(capsys, "unravel", "fixtures/fig1", "--procedure", "du")
    assert rows(report) == {(tuple("010010"), (1, 1, 1, 2, 2, 1))}


def test_unravel_table4_ru_all_branches(capsys):
    report = run_json(capsys, "unravel", "fixtures/table4", "-p", "ru", "--all-branches")
    assert rows(report) == {
        (tuple("1111"), (3, 1, 1, 2)), (tuple("0001"), (1, 3, 1, 2)),
        (tuple("1111"), (2, 1, 3, 2)), (tuple("1111"), (1, 2, 3, 2)),
    }


def test_unravel_remark4_minsum(capsys):
    report = run_json(capsys, "unravel", "fixtures/remark4", "-p", "minsum")
    assert rows(report) == {(("*", "*", "1"), (1, 1, 1))}


def test_unravel_rule_and_dot(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    report = run_json(capsys, "unravel", "table3", "-p", "minsum", "--liquid", "--rule", "rmaj", "--dot", str(dot))
    assert rows(report) == {(tuple("1111") + ("0",), (1, 2, 1, 1, 1))}
    assert dot.read_text().startswith("digraph")


def test_seeded_output_is_byte_identical(capsys):
    _, first, _ = run(capsys, "unravel", "table4", "-p", "dru", "--seed", "11", "--trace")
    _, second, _ = run(capsys, "unravel", "table4", "-p", "dru", "--seed", "11", "--trace")
    assert first == second


def test_liquid_flag_on_bool_profile(capsys):
    code, _, _ = run(capsys, "unravel", "table1", "-p", "minsum", "--liquid")
    assert code == 2


def test_cap_exit_code(capsys):
    code, _, _ = run(capsys, "unravel", "table4", "-p", "minmax", "--cap", "3")
    assert code == 3


def test_compare_table1(capsys):
    report = run_json(capsys, "compare", "table1", "minsum", "minmax")
    assert report["minsum"]["objective"] == 6
    assert report["minmax"]["objective"] == 2


def test_compare_all_table4(capsys):
    report = run_json(capsys, "compare", "table4")
    assert set(report) == {"u", "du", "ru", "dru", "minsum", "minmax"}
    assert rows(report["u"]) == {(tuple("1011"), (3, 3, 3, 2))}
    code, out, _ = run(capsys, "compare", "table4", "--pretty")
    assert code == 0 and "minmax" in out


def test_compare_unknown_procedure(capsys):
    code, _, _ = run(capsys, "compare", "table4", "bogus")
    assert code == 1


def test_axioms_guru_table5(capsys):
    report = run_json(capsys, "axioms", "table5", "--axiom", "guru", "--rule", "rmaj", "--procedure", "u")
    a = report["agents"]["a"]
    assert not a["holds"]
    ce = a["counterexamples"][0]
    assert ce["abstainer"] == "b" and ce["before"] == list("110010")


def test_generate_and_enumerate(tmp_path, capsys):
    out = tmp_path / "p.json"
    assert main(["generate", "--kind", "random", "--n", "4", "--seed", "3", "-o", str(out)]) == 0
    capsys.readouterr()
    assert run_json(capsys, "validate", str(out))["valid"]
    listed = run_json(capsys, "enumerate", str(out))
    assert listed


def test_generate_reductions(tmp_path, capsys):
    edges = tmp_path / "g.txt"
    edges.write_text("a b\nb c\nc a\n")
    profile = run_json(capsys, "generate", "--kind", "fvs", "--input", str(edges), "--k", "1")
    assert profile["agents"] == ["a", "b", "c"]
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 1\n1 2 0\n")
    profile = run_json(capsys, "generate", "--kind", "cnf", "--input", str(cnf))
    assert profile["agents"][:2] == ["x", "y"]


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and "table4" in out.split()
    assert run_json(capsys, "fixtures", "remark4")["agents"] == ["a", "b", "c"]


def test_usage_errors_exit_nonzero(capsys):
    with pytest.raises(SystemExit):
        main(["unravel", "table4", "-p", "nope"])
