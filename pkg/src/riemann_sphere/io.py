"""JSON matrix documents and CSV sweep tables."""

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError


@dataclass(frozen=True)
class MatrixDocument:
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if not (isinstance(self.rows, int) and isinstance(self.cols, int)):
            raise ParseError("rows and cols must be integers")
        if self.rows < 1 or self.cols < 1:
            raise ParseError("rows and cols must be positive")
        if len(self.data) != self.rows * self.cols:
            raise ParseError(f"data has {len(self.data)} entries, expected {self.rows * self.cols}")
        for pair in self.data:
            if len(pair) != 2 or not all(isinstance(v, (int, float)) for v in pair):
                raise ParseError("each entry must be a [re, im] pair of numbers")
            if not all(math.isfinite(v) for v in pair):
                raise ParseError("entries must be finite")

    @classmethod
    def from_array(cls, m):
        m = np.atleast_2d(np.asarray(m, dtype=complex))
        data = tuple((float(z.real), float(z.imag)) for z in m.ravel())
        return cls(int(m.shape[0]), int(m.shape[1]), data)

    def to_array(self):
        flat = np.array([complex(re, im) for re, im in self.data])
        return flat.reshape(self.rows, self.cols)

    def to_dict(self):
        return {"rows": self.rows, "cols": self.cols, "data": [list(p) for p in self.data]}

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise ParseError("matrix document must be a JSON object")
        missing = {"rows", "cols", "data"} - set(obj)
        if missing:
            raise ParseError(f"matrix document lacks fields {sorted(missing)}")
        data = obj["data"]
        if not isinstance(data, list):
            raise ParseError("data must be a list")
        return cls(obj["rows"], obj["cols"], tuple(tuple(p) if isinstance(p, list) else (p,) for p in data))


def dumps_matrix(m):
    # json writes floats with repr, the shortest string that round-trips exactly
    return json.dumps(MatrixDocument.from_array(m).to_dict())


def loads_matrix(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return MatrixDocument.from_dict(obj).to_array()


def read_matrix(source):
    """Load a matrix from a path, or from inline JSON when ``source`` starts with '{'."""
    text = source if source.lstrip().startswith("{") else _read(source)
    return loads_matrix(text)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    series: tuple

    def __post_init__(self):
        if len(self.columns) != len(self.series):
            raise ValueError("one series per column")
        lengths = {len(s) for s in self.series}
        if len(lengths) > 1:
            raise ValueError("series have different lengths")

    @classmethod
    def from_rows(cls, columns, rows):
        rows = list(rows)
        series = tuple(tuple(float(r[j]) for r in rows) for j in range(len(columns)))
        return cls(tuple(columns), series)

    def column(self, name):
        return np.array(self.series[self.columns.index(name)])

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in zip(*self.series):
            w.writerow([f"{v:.12g}" for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        rows = [[float(v) for v in r] for r in reader if r]
        return cls.from_rows(header, rows)
