"""CSV datasets and JSON reports.

CSV layout: one point per row, feature columns followed by a label column
holding 1 or -1. An optional header row is recognised by a non-numeric first
field. Blank lines are skipped; LF and CRLF line endings are both accepted.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from dataclasses import fields, is_dataclass
from typing import IO

import numpy as np

from .core import DataSet
from .exceptions import DatasetFormatError

# plain decimal notation only; float() alone would also take "nan", "inf" and "1_0"
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _is_number(field: str) -> bool:
    return bool(_NUMBER.match(field))


def _read_text(source) -> str:
    if hasattr(source, "read"):
        text = source.read()
        return text.decode("utf-8-sig") if isinstance(text, bytes) else text
    try:
        with open(source, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DatasetFormatError(f"cannot read {os.fspath(source)}: {exc.strerror}") from exc
    try:
        return raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise DatasetFormatError(f"file is not valid UTF-8 ({exc.reason})") from exc


def _rows(text: str):
    """Yield (line_number, stripped fields) for every non-blank CSV row."""
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        for row in reader:
            fields_ = [f.strip() for f in row]
            if not any(fields_):
                continue
            yield reader.line_num, fields_
    except csv.Error as exc:
        raise DatasetFormatError(str(exc), line=reader.line_num) from exc


def parse_feature_csv(source) -> np.ndarray:
    """Read an unlabelled CSV (feature columns only) into an array."""
    X, _ = _parse(source, labeled=False)
    return X


def parse_dataset_csv(source) -> DataSet:
    """Read a labelled CSV file (path or text stream) into a DataSet.

    Raises DatasetFormatError naming the offending line for ragged rows,
    non-numeric fields, labels other than 1/-1, or a file without points.
    """
    X, y = _parse(source, labeled=True)
    return DataSet(X, y)


def _parse(source, labeled: bool):
    text = _read_text(source)
    features: list[list[float]] = []
    labels: list[int] = []
    width = None
    first = True
    for line, row in _rows(text):
        if first:
            first = False
            if not _is_number(row[0]):
                continue
        if width is None:
            width = len(row)
            if labeled and width < 2:
                raise DatasetFormatError(
                    "need at least one feature column and a label column", line=line)
        elif len(row) != width:
            raise DatasetFormatError(
                f"expected {width} fields, found {len(row)}", line=line)
        for col, f in enumerate(row):
            if not _is_number(f):
                raise DatasetFormatError(
                    f"field {col + 1} is not a number: {f!r}", line=line)
        values = [float(f) for f in row]
        if any(math.isinf(v) for v in values):
            raise DatasetFormatError("value out of floating-point range", line=line)
        if labeled:
            if values[-1] not in (1.0, -1.0):
                raise DatasetFormatError(
                    f"invalid label {row[-1]}; expected 1 or -1", line=line)
            labels.append(int(values[-1]))
            values = values[:-1]
        features.append(values)
    if not features:
        raise DatasetFormatError("no data points found")
    return np.array(features), np.array(labels, dtype=int)


def format_dataset_csv(ds: DataSet, header: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow([f"x{i + 1}" for i in range(ds.dim)] + ["label"])
    for x, y in zip(ds.X, ds.y):
        writer.writerow([repr(float(v)) for v in x] + [str(int(y))])
    return buf.getvalue()


def write_dataset_csv(ds: DataSet, target, header: bool = False) -> None:
    text = format_dataset_csv(ds, header=header)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def to_jsonable(obj):
    """Convert numpy values and dataclasses into plain JSON types.

    Non-finite floats become None so the output stays strict JSON.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return obj


def dump_report(report: dict, fh: IO[str] | None = None) -> str:
    text = json.dumps(to_jsonable(report), indent=2, allow_nan=False) + "\n"
    if fh is not None:
        fh.write(text)
    return text
