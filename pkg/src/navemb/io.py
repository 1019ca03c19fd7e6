"""File formats and deterministic serialization.

Edge lists, coordinate files and result tables are all plain text with fixed
column order and fixed float formatting (17 significant digits for
coordinates, 6 for aggregate metrics), so identical runs produce
byte-identical files.  Undefined values (e.g. stretch with zero successes)
serialize as the literal ``NA``, never as zero or an empty cell.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .experiments import AggregateRow, CellResult
from .graph import Graph
from .routing import RouteResult

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_coords",
    "write_coords",
    "fmt_coord",
    "fmt_metric",
    "write_rows",
    "route_rows",
    "cell_rows",
    "aggregate_rows",
    "CELL_COLUMNS",
    "AGGREGATE_COLUMNS",
    "ROUTE_COLUMNS",
]

NA = "NA"

ROUTE_COLUMNS = ("source", "target", "success", "path_len", "shortest_len", "reason")
CELL_COLUMNS = (
    "family", "param", "dim", "realization", "seed", "n",
    "diameter", "clustering", "success_rate", "stretch", "converged", "iters",
)
AGGREGATE_COLUMNS = (
    "param", "dim", "realizations",
    "diameter_mean", "diameter_stderr",
    "clustering_mean", "clustering_stderr",
    "success_rate_mean", "success_rate_stderr",
    "stretch_mean", "stretch_stderr", "stretch_defined", "converged_count",
)


def fmt_coord(value: float) -> str:
    """Full-precision float formatting (round-trips float64 exactly)."""
    return format(float(value), ".17g")


def fmt_metric(value: float | int | None) -> str:
    """Six-significant-digit metric formatting; None/NaN become NA."""
    if value is None:
        return NA
    v = float(value)
    if math.isnan(v):
        return NA
    return format(v, ".6g")


def write_edge_list(g: Graph, path: str | Path) -> None:
    """Header ``n <count>`` then one ``u v`` line per edge with u < v."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path: str | Path) -> Graph:
    """Parse and validate the edge-list format written by write_edge_list."""
    text = Path(path).read_text()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty edge-list file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n":
        raise ValueError(f"{path}: expected header 'n <count>', got {lines[0]!r}")
    n = int(header[1])
    edges = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{ln_no}: expected 'u v', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError(f"{path}:{ln_no}: edges must satisfy u < v, got {u} {v}")
        edges.append((u, v))
    graph = Graph.from_edges(n, edges)
    graph.validate()
    return graph


def write_coords(coords: np.ndarray, path: str | Path) -> None:
    """Header ``<n> <m>`` then one full-precision row of m reals per vertex."""
    n, m = coords.shape
    lines = [f"{n} {m}"]
    lines.extend(" ".join(fmt_coord(x) for x in row) for row in coords)
    Path(path).write_text("\n".join(lines) + "\n")


def read_coords(path: str | Path) -> np.ndarray:
    text = Path(path).read_text()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty coordinates file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: expected header '<n> <m>', got {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != n:
        raise ValueError(f"{path}: header says {n} rows, found {len(lines) - 1}")
    coords = np.empty((n, m))
    for i, ln in enumerate(lines[1:]):
        row = ln.split()
        if len(row) != m:
            raise ValueError(f"{path}: row {i} has {len(row)} values, expected {m}")
        coords[i] = [float(x) for x in row]
    return coords


def write_rows(
    columns: Sequence[str],
    rows: Iterable[Sequence[str]],
    path: str | Path,
    fmt: str = "csv",
) -> None:
    """Write a table as CSV, or as JSON mirroring the same fields.

    Cells arrive pre-formatted; JSON mode converts numeric-looking cells back
    to numbers and NA to null so both formats carry identical information.
    """
    path = Path(path)
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
        return
    if fmt == "json":
        records = [
            {col: _json_cell(cell) for col, cell in zip(columns, row)} for row in rows
        ]
        path.write_text(json.dumps(records, indent=2) + "\n")
        return
    raise ValueError(f"unknown output format {fmt!r} (expected csv or json)")


def _json_cell(cell: str) -> object:
    if cell == NA:
        return None
    if cell in ("true", "false"):
        return cell == "true"
    try:
        as_int = int(cell)
    except ValueError:
        pass
    else:
        return as_int
    try:
        return float(cell)
    except ValueError:
        return cell


def _fmt_bool(value: bool | None) -> str:
    if value is None:
        return NA
    return "true" if value else "false"


def route_rows(results: Sequence[RouteResult]) -> list[list[str]]:
    return [
        [
            str(r.source),
            str(r.target),
            _fmt_bool(r.success),
            str(r.path_length),
            str(r.shortest_length),
            r.termination_reason,
        ]
        for r in results
    ]


def cell_rows(cells: Sequence[CellResult]) -> list[list[str]]:
    rows = []
    for c in cells:
        rows.append([
            c.family,
            fmt_metric(c.param),
            str(c.dim),
            str(c.realization),
            str(c.seed),
            str(c.n),
            NA if c.diameter is None else str(c.diameter),
            fmt_metric(c.clustering),
            fmt_metric(c.success_rate),
            fmt_metric(c.stretch),
            _fmt_bool(c.converged),
            NA if c.iterations is None else str(c.iterations),
        ])
    return rows


def aggregate_rows(aggregates: Sequence[AggregateRow]) -> list[list[str]]:
    rows = []
    for a in aggregates:
        rows.append([
            fmt_metric(a.param),
            str(a.dim),
            str(a.realizations),
            fmt_metric(a.diameter_mean),
            fmt_metric(a.diameter_stderr),
            fmt_metric(a.clustering_mean),
            fmt_metric(a.clustering_stderr),
            fmt_metric(a.success_rate_mean),
            fmt_metric(a.success_rate_stderr),
            fmt_metric(a.stretch_mean),
            fmt_metric(a.stretch_stderr),
            str(a.stretch_defined),
            str(a.converged_count),
        ])
    return rows
