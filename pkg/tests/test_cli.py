import json

from shapeforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_abstract_pi_chain(capsys):
    code, out, _ = run(capsys, "abstract", "--level", "pi",
                       "--in", "...((((...)..((...))))..)")
    assert code == 0
    assert out.strip() == "[[][]]"


def test_abstract_levels(capsys):
    code, out, _ = run(capsys, "abstract", "--level", "island", "--in", "((...)....)")
    assert (code, out.strip()) == (0, "((_)_)")
    code, out, _ = run(capsys, "abstract", "--level", "pi-prime", "--in", "((...)....)")
    assert (code, out.strip()) == (0, "[[_]_]")


def test_bijection_encode2_base_case(capsys):
    code, out, _ = run(capsys, "bijection", "encode2", "--path", "")
    assert code == 0
    assert out.strip() == "()"


def test_bijection_round_trip(capsys):
    code, out, _ = run(capsys, "bijection", "encode2", "--path", "UBURDD")
    assert out.strip() == "(()((())()()))"
    code, out, _ = run(capsys, "bijection", "decode2", "--in", "(()((())()()))")
    assert out.strip() == "UBURDD"
    code, out, _ = run(capsys, "bijection", "decode1", "--path", "[][]")
    assert out.strip() == "H"


def test_validate_ok_and_errors(capsys):
    code, out, _ = run(capsys, "validate", "--in", "((...))")
    assert code == 0 and out.strip() == "valid"
    code, _, err = run(capsys, "validate", "--in", "()")
    assert code == 1
    assert "AdjacentPair" in err
    code, _, err = run(capsys, "validate", "--in", "((..)")
    assert code == 1
    assert "UnbalancedBrackets" in err


def test_usage_error_exits_two(capsys):
    code, _, err = run(capsys, "abstract", "--in", "...")
    assert code == 2
    code, _, err = run(capsys, "nonsense")
    assert code == 2
    code, _, err = run(capsys, "validate")
    assert code == 2
    assert "--in" in err
    code, _, err = run(capsys, "asymptotics", "--target", "pi_r0",
                       "--lambda", "4", "--nu", "60")
    assert code == 2
    assert "--r0" in err
    code, _, err = run(capsys, "count", "catalan")
    assert code == 2


def test_analyze_json_schema(capsys):
    code, out, _ = run(capsys, "analyze", "--in", "..((...))((...))..",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "shapeforge/1"
    assert doc["counts"]["hairpins"] == 2
    assert doc["counts"]["external_components"] == 2
    assert doc["counts"]["tails"] == 2


def test_count_families(capsys):
    code, out, _ = run(capsys, "count", "catalan", "--n", "10")
    assert (code, out.strip()) == (0, "16796")
    code, out, _ = run(capsys, "count", "motzkin", "--n", "7")
    assert (code, out.strip()) == (0, "127")
    code, out, _ = run(capsys, "count", "islands", "--ell", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "hairpins,islands,count"
    assert sum(int(line.split(",")[2]) for line in lines[1:]) == 6
    code, out, _ = run(capsys, "count", "level0", "--n", "4", "--format", "csv")
    assert out.strip().splitlines()[1:] == ["0,3", "1,2", "2,3", "3,0", "4,1"]


def test_distribution_csv_shape(capsys):
    code, out, _ = run(capsys, "distribution", "level0", "--n", "100",
                       "--r0-max", "8", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r0,exact,asymptotic,deviation"
    assert len(lines) == 10
    code, out2, _ = run(capsys, "distribution", "level0", "--n", "100",
                        "--r0-max", "8", "--format", "csv")
    assert out == out2  # byte-deterministic


def test_distribution_pi(capsys):
    code, out, _ = run(capsys, "distribution", "pi", "--lambda", "4",
                       "--nu", "60", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "shapeforge/1"
    assert len(doc["rows"]) == 9


def test_verify_single_and_all(capsys):
    code, out, _ = run(capsys, "verify", "touchard", "--n", "6")
    assert code == 0
    assert "touchard: pass" in out
    code, out, _ = run(capsys, "verify", "coker1", "--n", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["reports"][0]["status"] == "pass"
    code, _, err = run(capsys, "verify", "not_an_identity")
    assert code == 2  # argparse rejects unknown choices


def test_asymptotics_zeta(capsys):
    code, out, _ = run(capsys, "asymptotics", "--target", "zeta",
                       "--lambda", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert 0.7562 <= doc["zeta"] <= 0.7564
    assert abs(doc["expected_r0"] - 1.316) < 2e-3


def test_asymptotics_ratio(capsys):
    code, out, _ = run(capsys, "asymptotics", "--target", "motzkin_number",
                       "--n", "200", "--format", "json")
    doc = json.loads(out)
    assert 0.95 <= doc["ratio"] <= 1.05


def test_compatible_counts_command(capsys):
    code, out, _ = run(capsys, "compatible", "--lambda", "4", "--nu", "10",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["total"] == 2
    code, out, _ = run(capsys, "compatible", "--lambda", "4", "--nu", "10",
                       "--r0-max", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "r0,count"
    assert len(lines) == 4


def test_guard_env_override(monkeypatch, capsys):
    code, _, err = run(capsys, "compatible", "--lambda", "4", "--nu", "2001")
    assert code == 1
    assert "ResourceGuardExceeded" in err
    monkeypatch.setenv("SHAPEFORGE_MAX_N", "5000")
    from shapeforge.cli import _guard
    assert _guard(2000) == 5000
    monkeypatch.setenv("SHAPEFORGE_MAX_N", "10")
    assert _guard(2000) == 2000  # never lowers a guard


def test_domain_error_is_one_line_naming_invariant(capsys):
    code, out, err = run(capsys, "bijection", "decode1", "--in", "[[]]")
    assert code == 1
    assert out == ""
    assert err.count("\n") == 1
    assert "DirectlyNested" in err
