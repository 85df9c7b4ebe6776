"""File ingestion and report serialization.

Input formats:

* ``.xyz``   -- standard XYZ: atom count, comment line, then "El x y z".
* ``.csv``   -- one point per row, uniform arity, no header.
* complex text -- one simplex per line, ``value v0 v1 ... vk`` with the
  leading filtration value optional (defaults to 0); ``#`` starts a comment.
  Missing faces are completed at the smallest value of their cofaces.

Reports serialize to JSON (schema below) or CSV, deterministically.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import warnings

from .simplicial import FilteredComplex, PointCloud, Simplex


class FileFormatError(ValueError):
    """Malformed input file."""


def parse_xyz(path: str) -> PointCloud:
    """Read a standard XYZ file: count, comment, then one atom per line."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FileFormatError(f"{path}: empty file")
    try:
        count = int(lines[0].strip())
    except ValueError:
        raise FileFormatError(f"{path}: first line must be the atom count") from None
    if count < 1:
        raise FileFormatError(f"{path}: atom count must be >= 1, got {count}")
    body = lines[2:]
    atoms = [ln for ln in body if ln.strip()]
    if len(atoms) != count:
        raise FileFormatError(
            f"{path}: declared {count} atoms but found {len(atoms)} atom lines"
        )
    labels, coords = [], []
    for ln in atoms:
        parts = ln.split()
        if len(parts) < 4:
            raise FileFormatError(f"{path}: malformed atom line {ln!r}")
        labels.append(parts[0])
        try:
            coords.append([float(x) for x in parts[1:4]])
        except ValueError:
            raise FileFormatError(f"{path}: unparsable coordinate in {ln!r}") from None
    return PointCloud(coords, tuple(labels))


def parse_points(path: str) -> PointCloud:
    """Read a CSV of coordinates, one point per row."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise FileFormatError(
                    f"{path}:{lineno}: non-numeric field in {row!r}"
                ) from None
    if not rows:
        raise FileFormatError(f"{path}: no points found")
    arity = len(rows[0])
    for i, r in enumerate(rows, start=1):
        if len(r) != arity:
            raise FileFormatError(
                f"{path}: ragged rows ({arity} vs {len(r)} fields at data row {i})"
            )
    return PointCloud(rows)


def _parse_complex_line(path: str, lineno: int, tokens: list[str]):
    value = 0.0
    start = 0
    try:
        int(tokens[0])
    except ValueError:
        try:
            value = float(tokens[0])
        except ValueError:
            raise FileFormatError(
                f"{path}:{lineno}: leading token {tokens[0]!r} is neither a vertex "
                "id nor a filtration value"
            ) from None
        start = 1
    ids = []
    for tok in tokens[start:]:
        try:
            ids.append(int(tok))
        except ValueError:
            raise FileFormatError(
                f"{path}:{lineno}: vertex id {tok!r} is not an integer"
            ) from None
    if not ids:
        raise FileFormatError(f"{path}:{lineno}: no vertex ids on line")
    try:
        return Simplex(ids), value
    except ValueError as exc:
        raise FileFormatError(f"{path}:{lineno}: {exc}") from None


def parse_complex(path: str) -> FilteredComplex:
    """Read an explicit filtered complex, completing missing faces.

    A face that is absent from the file is added at the minimum filtration
    value over its cofaces (with a warning); explicitly non-monotone values
    are an error.
    """
    explicit: dict[Simplex, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            s, v = _parse_complex_line(path, lineno, line.split())
            if s in explicit:
                raise FileFormatError(f"{path}:{lineno}: duplicate simplex {s}")
            explicit[s] = v
    if not explicit:
        raise FileFormatError(f"{path}: no simplices found")
    values = dict(explicit)
    added = 0
    max_dim = max(s.dim for s in values)
    for dim in range(max_dim, 0, -1):
        for s in [t for t in values if t.dim == dim]:
            v = values[s]
            for f in s.faces():
                fv = values.get(f)
                if fv is None:
                    values[f] = v
                    added += 1
                elif f in explicit and fv > v:
                    raise FileFormatError(
                        f"{path}: face {f} has value {fv} later than its coface "
                        f"{s} at {v}"
                    )
                elif fv > v:
                    values[f] = v
    if added:
        warnings.warn(
            f"{path}: completed {added} missing faces at their cofaces' values",
            stacklevel=2,
        )
    return FilteredComplex(values.items())


def serialize_complex(K: FilteredComplex) -> str:
    """Inverse of parse_complex for round-tripping complexes."""
    lines = [f"{v!r} {' '.join(map(str, s))}" for s, v in K.items()]
    return "\n".join(lines) + "\n"


# -- reports --------------------------------------------------------------

REPORT_SCHEMA = {
    "type": "object",
    "required": ["meta", "critical_values", "channels"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["N", "dims", "stages", "input", "tool_version"],
            "properties": {
                "N": {"type": "integer", "minimum": 2},
                "dims": {"type": "array", "items": {"type": "integer"}},
                "stages": {"type": "array", "items": {"type": "integer"}},
                "input": {"type": "string"},
                "tool_version": {"type": "string"},
            },
        },
        "critical_values": {"type": "array", "items": {"type": "number"}},
        "channels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "q", "betti", "zero_count", "lambda1", "diagram"],
                "properties": {
                    "n": {"type": "integer"},
                    "q": {"type": "integer"},
                    "betti": {"type": "array", "items": {"type": "integer"}},
                    "zero_count": {
                        "type": ["array", "null"],
                        "items": {"type": "integer"},
                    },
                    "lambda1": {
                        "type": ["array", "null"],
                        "items": {"type": "number"},
                    },
                    "lambda_max": {
                        "type": ["array", "null"],
                        "items": {"type": "number"},
                    },
                    "mean_positive": {
                        "type": ["array", "null"],
                        "items": {"type": "number"},
                    },
                    "diagram": {
                        "type": ["array", "null"],
                        "items": {
                            "type": "array",
                            "minItems": 3,
                            "maxItems": 3,
                        },
                    },
                },
            },
        },
    },
}


def report_to_json(result, meta: dict) -> str:
    channels = []
    for ch in result.channels:
        diagram = None
        if ch.diagram is not None:
            diagram = [
                [b, None if math.isinf(d) else d, m] for b, d, m in ch.diagram
            ]
        channels.append(
            {
                "n": ch.n,
                "q": ch.q,
                "betti": list(ch.betti),
                "zero_count": None if ch.zero_count is None else list(ch.zero_count),
                "lambda1": None if ch.lambda1 is None else list(ch.lambda1),
                "lambda_max": None if ch.lambda_max is None else list(ch.lambda_max),
                "mean_positive": (
                    None if ch.mean_positive is None else list(ch.mean_positive)
                ),
                "diagram": diagram,
            }
        )
    doc = {
        "meta": meta,
        "critical_values": list(result.critical_values),
        "channels": channels,
    }
    return json.dumps(doc, indent=2) + "\n"


def report_to_csv(result, eigen: bool) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["r"]
    for ch in result.channels:
        tag = f"{ch.n}_{ch.q}"
        header.append(f"betti_{tag}")
        if eigen:
            header.extend(
                [f"zero_{tag}", f"lambda1_{tag}", f"lambdamax_{tag}", f"meanpos_{tag}"]
            )
    writer.writerow(header)
    for i, r in enumerate(result.critical_values):
        row = [repr(float(r))]
        for ch in result.channels:
            row.append(str(ch.betti[i]))
            if eigen:
                row.append(str(ch.zero_count[i]))
                row.append(repr(ch.lambda1[i]))
                row.append(repr(ch.lambda_max[i]))
                row.append(repr(ch.mean_positive[i]))
        writer.writerow(row)
    return buf.getvalue()


def distances_to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def distances_to_csv(doc: dict) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "wasserstein_r", "wasserstein", "bottleneck"])
    for row in doc["dimensions"]:
        writer.writerow(
            [
                str(row["n"]),
                repr(float(doc["meta"]["wasserstein_r"])),
                repr(row["wasserstein"]) if row["wasserstein"] is not None else "inf",
                repr(row["bottleneck"]) if row["bottleneck"] is not None else "inf",
            ]
        )
    return buf.getvalue()
