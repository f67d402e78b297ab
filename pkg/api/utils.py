# Serializers for OutputRecord (JSON and CSV)
import csv
import io
import json
import logging
import re
from typing import Any, Dict, List, Literal

from models.response import OutputRecord

logger = logging.getLogger(__name__)

OutputFormat = Literal["json", "csv"]

_INT_PATTERN = re.compile(r"^-?\d+$")


def to_json(record: OutputRecord) -> str:
    """
    Serialize a record as indented JSON, complex numbers as {"re", "im"}.
    The header is omitted when absent.
    """
    payload = record.model_dump(mode="json")
    if payload.get("header") is None:
        payload.pop("header", None)
    return json.dumps(payload, indent=2) + "\n"


def parse_json(text: str) -> OutputRecord:
    return OutputRecord.model_validate(json.loads(text))


def _complex_columns(rows: List[Dict[str, Any]], columns: List[str]) -> List[str]:
    return [c for c in columns if any(isinstance(row.get(c), complex) for row in rows)]


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    if _INT_PATTERN.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        return text


def _compact(value: Any) -> str:
    return json.dumps(value, separators=(",", ":"))


def to_csv(record: OutputRecord) -> str:
    """
    Serialize a record as CSV: ``# key=value`` provenance lines, then a
    header row and one line per row. A complex column ``name`` becomes the
    column pair ``name_re``, ``name_im``.
    """
    encoded = record.model_dump(mode="json")
    buffer = io.StringIO()
    buffer.write(f"# schema_version={record.schema_version}\n")
    buffer.write(f"# command={record.command}\n")
    buffer.write(f"# params={_compact(encoded['params'])}\n")
    buffer.write(f"# summary={_compact(encoded['summary'])}\n")
    if record.header:
        for key, value in record.header.items():
            buffer.write(f"# {key}={value}\n")

    if record.rows:
        columns = list(record.rows[0].keys())
        complex_columns = set(_complex_columns(record.rows, columns))
        names: List[str] = []
        for column in columns:
            names += [f"{column}_re", f"{column}_im"] if column in complex_columns else [column]

        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(names)
        for row in record.rows:
            cells: List[str] = []
            for column in columns:
                value = row.get(column)
                if column in complex_columns:
                    cells += ["", ""] if value is None else [repr(float(value.real)), repr(float(value.imag))]
                else:
                    cells.append(_format_cell(value))
            writer.writerow(cells)
    return buffer.getvalue()


def parse_csv(text: str) -> OutputRecord:
    """
    Inverse of ``to_csv``

    Raises:
        ValueError: If the provenance lines are missing or malformed
    """
    lines = text.splitlines()
    meta: Dict[str, str] = {}
    body_start = 0
    for body_start, line in enumerate(lines):
        if not line.startswith("# "):
            break
        key, sep, value = line[2:].partition("=")
        if not sep:
            raise ValueError(f"Malformed provenance line: {line!r}")
        meta[key] = value
    else:
        body_start = len(lines)

    for key in ("schema_version", "command", "params", "summary"):
        if key not in meta:
            raise ValueError(f"CSV output lacks the '{key}' line")

    rows: List[Dict[str, Any]] = []
    reader = csv.reader(io.StringIO("\n".join(lines[body_start:])))
    names = next(reader, None)
    if names:
        pairs = {n[:-3] for n in names if n.endswith("_re") and f"{n[:-3]}_im" in names}
        for cells in reader:
            raw = dict(zip(names, cells))
            row: Dict[str, Any] = {}
            for name in names:
                if name.endswith("_re") and name[:-3] in pairs:
                    base = name[:-3]
                    re_text, im_text = raw[name], raw[f"{base}_im"]
                    row[base] = None if re_text == "" else complex(float(re_text), float(im_text))
                elif name.endswith("_im") and name[:-3] in pairs:
                    continue
                else:
                    row[name] = _parse_cell(raw[name])
            rows.append(row)

    header = {k: v for k, v in meta.items() if k not in ("schema_version", "command", "params", "summary")}
    return OutputRecord(
        schema_version=meta["schema_version"],
        command=meta["command"],
        params=json.loads(meta["params"]),
        rows=rows,
        summary=json.loads(meta["summary"]),
        header=header or None,
    )


def render(record: OutputRecord, fmt: OutputFormat = "json") -> str:
    """Serialize a record in the requested format"""
    if fmt == "csv":
        return to_csv(record)
    if fmt != "json":
        raise ValueError(f"Unknown output format {fmt!r}")
    return to_json(record)
