# Output record and serializer tests
import json
import math

import pytest
from pydantic import ValidationError

from api.utils import parse_csv, parse_json, render, to_csv, to_json
from models.response import OutputRecord, decode_cell


@pytest.fixture
def record():
    return OutputRecord(
        command="compare",
        params={"alpha": 2.0, "beta": -0.5 + 0.25j, "radii": [5.0, 10.0], "tol": None},
        rows=[
            {"radius": 5.0, "oracle": 0.2 - 0.01j, "normalized_error": 0.97, "relative": False},
            {"radius": 10.0, "oracle": None, "normalized_error": math.nan, "relative": True},
        ],
        summary={"fitted_slope": None, "predicted_slope": -3.0, "case_tag": "sector1"},
        header={"generator": "flosc-transform test"},
    )


def test_non_finite_cells_become_null(record):
    assert record.rows[1]["normalized_error"] is None
    assert decode_cell({"re": 1.0, "im": float("inf")}) is None
    assert decode_cell([{"re": 1.0, "im": 2.0}, float("nan")]) == [1 + 2j, None]


def test_json_round_trip(record):
    text = to_json(record)
    payload = json.loads(text)
    assert payload["params"]["beta"] == {"re": -0.5, "im": 0.25}
    assert payload["rows"][1]["normalized_error"] is None
    assert parse_json(text) == record


def test_json_omits_missing_header(record):
    bare = record.model_copy(update={"header": None})
    assert "header" not in json.loads(to_json(bare))
    assert parse_json(to_json(bare)).header is None


def test_csv_layout(record):
    lines = to_csv(record).splitlines()
    assert lines[:2] == ["# schema_version=1", "# command=compare"]
    assert lines[4] == "# generator=flosc-transform test"
    assert lines[5] == "radius,oracle_re,oracle_im,normalized_error,relative"
    assert lines[6] == "5.0,0.2,-0.01,0.97,false"
    assert lines[7] == "10.0,,,,true"


def test_csv_round_trip(record):
    assert parse_csv(to_csv(record)) == record


def test_csv_without_rows():
    empty = OutputRecord(command="compare", params={"radii": []}, summary={"fitted_slope": None})
    assert parse_csv(to_csv(empty)) == empty


def test_csv_needs_provenance_lines():
    with pytest.raises(ValueError):
        parse_csv("radius\n1.0\n")


def test_render_formats(record):
    assert render(record, "json") == to_json(record)
    assert render(record, "csv") == to_csv(record)
    with pytest.raises(ValueError):
        render(record, "xml")


def test_unknown_schema_version_is_rejected():
    with pytest.raises(ValidationError):
        OutputRecord(schema_version="2", command="eval")
