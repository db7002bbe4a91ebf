import json

import pytest

from frey2.cli import (
    EXIT_ASSERTION,
    EXIT_DEGENERATE,
    EXIT_NOT_COVERED,
    EXIT_OK,
    EXIT_USAGE,
    generate_table,
    main,
    parse_r_range,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_r_range():
    assert parse_r_range("3..7") == [3, 5, 7]
    assert parse_r_range("5") == [5]
    from frey2.cli import CliError

    with pytest.raises(CliError):
        parse_r_range("4..5")
    with pytest.raises(CliError):
        parse_r_range("3..23")


def test_verify_exit_zero_with_documented_mismatches(capsys):
    code, out, _ = run(capsys, "verify", "--r", "3..5")
    assert code == EXIT_OK
    assert "DOCUMENTED-MISMATCH" in out
    assert "0 failures" in out


def test_verify_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--r", "4..5")
    assert code == EXIT_USAGE
    assert "odd prime" in err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--r", "3", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["failures"] == 0
    statuses = {c["check"]: c["status"] for c in doc["checks"] if c["r"] in (3, None)}
    assert statuses["identity f+2 = (x+2)h(-x)^2"] == "pass"
    assert statuses["identity f-2 = (x-2)h(-x)^2 (printed form)"] == "documented-mismatch"
    assert statuses["closed-form discriminant C_plus"] == "documented-mismatch"
    assert statuses["closed-form discriminant C_zs"] == "pass"


def test_classify_json(capsys):
    code, out, _ = run(
        capsys, "classify", "--signature", "ppr-even", "--r", "5", "--t", "1/32",
        "--format", "json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["conductor_exponent"] == 0
    assert doc["t"] == "1/32"
    assert doc["signature"] == "ppr-even"


def test_classify_degenerate_exit(capsys):
    code, _, err = run(capsys, "classify", "--signature", "35p", "--t", "1")
    assert code == EXIT_DEGENERATE
    assert "degenerate" in err


def test_classify_not_covered_exit(capsys):
    code, out, _ = run(capsys, "classify", "--signature", "rrp", "--r", "3", "--t", "6")
    assert code == EXIT_NOT_COVERED
    assert "not_covered" in out


def test_classify_oracle_mode(capsys):
    code, out, _ = run(
        capsys, "classify", "--signature", "ppr-odd", "--r", "3", "--t", "1/16",
        "--mode", "oracle", "--format", "json",
    )
    assert code == EXIT_OK
    assert json.loads(out)["conductor_exponent"] == 0


def test_reduce_35p_vneg(capsys):
    code, out, _ = run(capsys, "reduce", "--pipeline", "35p-vneg")
    assert code == EXIT_OK
    assert "y^2 + y*(x^3 + 1) = x + 1" in out
    assert "nodal, 2 node(s)" in out


def test_reduce_odd_good(capsys):
    code, out, _ = run(
        capsys, "reduce", "--pipeline", "odd-good", "--z", "1", "--s", "7/4", "--r", "3"
    )
    assert code == EXIT_OK
    assert "y^2 + y = x^3 - 3*x - 2" in out
    assert "discriminant valuation: 0" in out


def test_reduce_ppr_even_vneg(capsys):
    code, out, _ = run(capsys, "reduce", "--pipeline", "ppr-even-vneg", "--r", "5")
    assert code == EXIT_OK
    assert "smooth" in out


def test_reduce_odd_good_not_covered(capsys):
    code, _, err = run(
        capsys, "reduce", "--pipeline", "odd-good", "--z", "1", "--s", "1", "--r", "3"
    )
    assert code == EXIT_NOT_COVERED


def test_reduce_unknown_pipeline(capsys):
    code, _, err = run(capsys, "reduce", "--pipeline", "bogus")
    assert code == EXIT_USAGE


def test_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "table", "--r", "3", "--grid-exponents", "4..7", "--format", "json"
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert json.dumps(doc, indent=2) == out.rstrip("\n")


def test_table_deterministic(capsys):
    a = run(capsys, "table", "--r", "3", "--grid-exponents=-5..7")
    b = run(capsys, "table", "--r", "3", "--grid-exponents=-5..7")
    assert a == b
    assert a[0] == EXIT_OK


def test_table_conflicts_annotated(capsys):
    code, out, _ = run(
        capsys, "table", "--r", "3", "--grid-exponents=-7..4", "--format", "json"
    )
    doc = json.loads(out)
    conflicts = [r for r in doc["rows"] if r.get("conflict")]
    assert conflicts, "expected ppr-odd printed-vs-oracle conflicts on this grid"
    assert all(r["signature"] == "ppr-odd" for r in conflicts)
    non_odd = [r for r in doc["rows"] if r["signature"] != "ppr-odd" and "oracle_agrees" in r]
    assert non_odd and all(r["oracle_agrees"] for r in non_odd)


def test_out_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "classify", "--signature", "rrp", "--r", "3", "--t", "16",
        "--format", "json", "--out", str(path),
    )
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(path.read_text())["conductor_exponent"] == 0


def test_generate_table_grid_exponent_listing():
    rows = generate_table([3], -9, 9, with_oracle=False)
    ppr_even = [r for r in rows if r["signature"] == "ppr-even"]
    vals = sorted({r["valuation"] for r in ppr_even})
    assert vals == [v for v in range(-9, 10) if v != 0]
