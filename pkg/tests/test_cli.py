# Command-line tests
import cmath
import json
import math

import pytest

from api.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, complex_arg, float_list_arg, run
from api.utils import parse_csv, parse_json

# 60 e^{i pi/4}: far beyond the overflow guard
OVERFLOW_Z = "--z=42.42640687119285,42.42640687119285"


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_eval_gaussian_anchor(capsys):
    code, out = invoke(capsys, "eval", "--alpha", "2", "--beta", "0", "--z", "0,0")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["command"] == "eval"
    assert payload["schema_version"] == "1"
    row = payload["rows"][0]
    assert row["value"]["re"] == pytest.approx(0.6266570687, abs=1e-10)
    assert row["value"]["im"] == pytest.approx(0.6266570687, abs=1e-10)
    assert row["representation"] == "rotate_half"
    assert payload["header"]["generator"].startswith("flosc-transform")
    assert payload["summary"]["closed_form"]["re"] == pytest.approx(0.6266570687, abs=1e-10)


def test_expand_real_axis(capsys):
    code, out = invoke(capsys, "expand", "--alpha", "2", "--case", "real-axis", "--terms", "1")
    assert code == EXIT_OK
    record = parse_json(out)
    assert record.summary["case_tag"] == "ray_pos_real"
    by_kind = {(row["kind"], row["index"]): row for row in record.rows}
    assert by_kind[("algebraic", 0)]["coefficient"] == pytest.approx(-1j)
    assert by_kind[("exp_series", 0)]["coefficient"] == pytest.approx(cmath.exp(0.25j * math.pi) * math.sqrt(math.pi))
    assert by_kind[("exp_growth", 0)]["coefficient"] == pytest.approx(-0.25j)
    assert by_kind[("exp_growth", 0)]["exponent"] == pytest.approx(-2.0)


def test_expand_by_angle_with_negative_theta(capsys):
    code, out = invoke(capsys, "expand", "--alpha", "2", "--theta=-1.5", "--terms", "2")
    assert code == EXIT_OK
    record = parse_json(out)
    assert record.summary["case_tag"] == "sector1"
    assert [row["kind"] for row in record.rows] == ["algebraic", "algebraic"]


def test_invalid_alpha_is_a_usage_error(capsys):
    code, out = invoke(capsys, "eval", "--alpha", "1", "--z", "0")
    assert code == EXIT_USAGE
    assert out == ""


@pytest.mark.parametrize("argv", [
    ["eval", "--alpha", "2"],
    ["eval", "--alpha", "2", "--z", "1,2,3"],
    ["expand", "--alpha", "2", "--case", "sector2", "--terms", "2"],
    ["expand", "--alpha", "2", "--case", "real-axis", "--terms", "0"],
    ["demo-mueger", "--alpha", "1", "--s", "2"],
    ["bounds", "--alpha", "2", "--C", "1", "--xs", "2,1"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, out = invoke(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_numeric_failure_exit_code(capsys):
    code, out = invoke(capsys, "eval", "--alpha", "2", OVERFLOW_Z)
    assert code == EXIT_NUMERIC
    assert out == ""


def test_help_exits_cleanly(capsys):
    code, out = invoke(capsys, "--help")
    assert code == EXIT_OK
    assert "--z=-1,0.5" in out


def test_negative_point_attached_to_its_option(capsys):
    code, out = invoke(capsys, "eval", "--alpha", "2", "--z=-1,0")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["params"]["z"] == {"re": -1.0, "im": 0.0}
    assert payload["rows"][0]["value"] == pytest.approx(payload["summary"]["closed_form"], abs=1e-8)


def test_csv_and_json_carry_the_same_record(capsys):
    argv = ["expand", "--alpha", "2.5", "--beta=-0.5,0.25", "--case", "real-axis", "--terms", "3"]
    _, json_out = invoke(capsys, "--format", "json", *argv)
    _, csv_out = invoke(capsys, "--format", "csv", *argv)
    assert csv_out.startswith("# schema_version=1\n# command=expand\n")
    assert parse_csv(csv_out) == parse_json(json_out)


def test_no_header_is_deterministic(capsys):
    argv = ["--no-header", "eval", "--alpha", "3", "--beta", "0.5", "--z", "1,-2"]
    _, first = invoke(capsys, *argv)
    _, second = invoke(capsys, *argv)
    assert first == second
    assert "header" not in json.loads(first)


def test_bounds_csv(capsys):
    code, out = invoke(capsys, "--format", "csv", "bounds", "--alpha", "2", "--C", "1", "--xs", "1,2,4")
    assert code == EXIT_OK
    record = parse_csv(out)
    assert record.command == "bounds"
    assert len(record.rows) == 12
    assert {row["side"] for row in record.rows} == {"positive", "negative"}
    assert record.summary["negative_predicted_exponent"] == pytest.approx(-1.0)


def test_compare_with_workers(capsys):
    code, out = invoke(capsys, "--workers", "2", "compare", "--alpha", "2", "--theta=-1.5707963267948966",
                       "--radii", "5,7,10", "--terms", "1")
    assert code == EXIT_OK
    record = parse_json(out)
    assert [row["radius"] for row in record.rows] == [5.0, 7.0, 10.0]
    assert record.summary["predicted_slope"] == pytest.approx(-3.0)


def test_demo_tauberian(capsys):
    code, out = invoke(capsys, "demo-tauberian", "--kappa", "1", "--xs", "5,10,20")
    assert code == EXIT_OK
    record = parse_json(out)
    assert record.command == "demo-tauberian"
    assert record.summary["predicted_slope"] == pytest.approx(-3.0)
    assert len(record.rows) == 3


def test_argument_types():
    assert complex_arg("-0.5,1") == -0.5 + 1j
    assert float_list_arg("1, 2.5,4") == [1.0, 2.5, 4.0]
