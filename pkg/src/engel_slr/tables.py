"""Flat-file output for trajectories and sampled curves.

Floats are written with ``repr``, the shortest decimal string that parses back
to the same double, so a write/read cycle is bit-exact.  CSV files carry the
metadata as a single ``# metadata {json}`` comment line above the header.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO, Union

import numpy as np

from .hamiltonian import STATE_COLUMNS, Trajectory

__all__ = [
    "TRAJECTORY_COLUMNS",
    "GEODESIC_COLUMNS",
    "PROJECTION_COLUMNS",
    "Table",
    "trajectory_table",
    "write_table",
    "read_table",
    "dumps",
    "loads",
]

TRAJECTORY_COLUMNS = ("s", *STATE_COLUMNS, "H")
GEODESIC_COLUMNS = ("s", "x1", "x2", "y", "z")
PROJECTION_COLUMNS = ("x1", "x2")

_META_PREFIX = "# metadata "

PathOrFile = Union[str, os.PathLike, TextIO]


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float).reshape(-1, len(self.columns))
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "data", data)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def trajectory_table(traj: Trajectory) -> Table:
    data = np.column_stack([traj.s, traj.states, traj.H])
    return Table(TRAJECTORY_COLUMNS, data, traj.metadata())


def _fmt(v) -> str:
    return repr(float(v))


def dumps(table: Table, fmt: str = "csv") -> str:
    if fmt == "csv":
        lines = [_META_PREFIX + json.dumps(table.metadata, sort_keys=True)] if table.metadata else []
        lines.append(",".join(table.columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in table.data)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "columns": list(table.columns),
            "rows": [[float(v) for v in row] for row in table.data],
            "metadata": table.metadata,
        }
        return json.dumps(doc, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def loads(text: str, fmt: Optional[str] = None) -> Table:
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        doc = json.loads(text)
        columns = tuple(doc["columns"])
        rows = doc["rows"]
        return Table(columns, np.array(rows, dtype=float).reshape(len(rows), len(columns)), doc.get("metadata") or {})
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    metadata: dict = {}
    header: Optional[Sequence[str]] = None
    rows = []
    for line in io.StringIO(text):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(_META_PREFIX):
                metadata = json.loads(line[len(_META_PREFIX):])
            continue
        cells = line.split(",")
        if header is None:
            header = tuple(cells)
            continue
        if len(cells) != len(header):
            raise ValueError(f"row has {len(cells)} cells, header has {len(header)}")
        rows.append([float(c) for c in cells])
    if header is None:
        raise ValueError("no header line")
    return Table(header, np.array(rows, dtype=float).reshape(len(rows), len(header)), metadata)


def write_table(target: PathOrFile, table: Table, fmt: str = "csv") -> None:
    text = dumps(table, fmt)
    if hasattr(target, "write"):
        target.write(text)
        return
    with open(target, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_table(source: PathOrFile, fmt: Optional[str] = None) -> Table:
    if hasattr(source, "read"):
        return loads(source.read(), fmt)
    with open(source, encoding="utf-8") as fh:
        return loads(fh.read(), fmt)
