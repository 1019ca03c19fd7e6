"""Serialization: float formatting, NA sentinel, file-format validation."""
import json
import math

import numpy as np
import pytest

from navemb import Graph, ring_lattice
from navemb.experiments import CellResult
from navemb.io import (
    cell_rows,
    fmt_coord,
    fmt_metric,
    read_coords,
    read_edge_list,
    write_coords,
    write_edge_list,
    write_rows,
)


class TestFormatting:
    def test_coord_format_round_trips_float64(self):
        rng = np.random.default_rng(3)
        for value in rng.uniform(-1e6, 1e6, size=200):
            assert float(fmt_coord(value)) == value

    def test_metric_format_six_significant_digits(self):
        assert fmt_metric(2 / 3) == "0.666667"
        assert fmt_metric(0.0001) == "0.0001"
        assert fmt_metric(123456789.0) == "1.23457e+08"

    def test_undefined_values_are_na(self):
        assert fmt_metric(None) == "NA"
        assert fmt_metric(math.nan) == "NA"

    def test_cell_row_with_undefined_stretch(self):
        cell = CellResult(family="ws", param=0.1, dim=5, realization=0, seed=1, n=10,
                          diameter=3, clustering=0.5, success_rate=0.0, stretch=None,
                          converged=True, iterations=7)
        row = cell_rows([cell])[0]
        assert row[9] == "NA"  # stretch column, never empty or zero
        assert row[10] == "true"

    def test_failed_cell_serializes_na_metrics(self):
        cell = CellResult(family="ws", param=0.1, dim=5, realization=0, seed=1, n=10,
                          error="boom")
        row = cell_rows([cell])[0]
        assert row[6:] == ["NA", "NA", "NA", "NA", "NA", "NA"]


class TestEdgeListFormat:
    def test_round_trip(self, tmp_path):
        g = ring_lattice(12, 4)
        path = tmp_path / "g.txt"
        write_edge_list(g, path)
        assert read_edge_list(path).adjacency == g.adjacency
        header = path.read_text().splitlines()[0]
        assert header == "n 12"

    def test_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("vertices 5\n0 1\n")
        with pytest.raises(ValueError, match="header"):
            read_edge_list(path)

    def test_rejects_unordered_edge(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("n 3\n2 1\n")
        with pytest.raises(ValueError, match="u < v"):
            read_edge_list(path)

    def test_rejects_duplicate_edge(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("n 3\n0 1\n0 1\n")
        with pytest.raises(ValueError, match="duplicate"):
            read_edge_list(path)


class TestCoordsFormat:
    def test_round_trip_exact(self, tmp_path):
        coords = np.random.default_rng(5).uniform(-10, 10, size=(7, 3))
        path = tmp_path / "c.txt"
        write_coords(coords, path)
        assert np.array_equal(read_coords(path), coords)

    def test_nan_rows_survive(self, tmp_path):
        coords = np.array([[1.0, 2.0], [np.nan, np.nan]])
        path = tmp_path / "c.txt"
        write_coords(coords, path)
        back = read_coords(path)
        assert back[0].tolist() == [1.0, 2.0]
        assert np.isnan(back[1]).all()

    def test_rejects_row_count_mismatch(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("3 2\n0 0\n1 1\n")
        with pytest.raises(ValueError, match="rows"):
            read_coords(path)


class TestWriteRows:
    def test_empty_result_is_header_only_csv(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(("a", "b"), [], path)
        assert path.read_text() == "a,b\n"

    def test_json_mirrors_fields_with_null_na(self, tmp_path):
        path = tmp_path / "t.json"
        write_rows(("x", "flag", "val"), [["3", "true", "NA"], ["0.25", "false", "7"]],
                   path, fmt="json")
        records = json.loads(path.read_text())
        assert records[0] == {"x": 3, "flag": True, "val": None}
        assert records[1] == {"x": 0.25, "flag": False, "val": 7}

    def test_unknown_format_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="format"):
            write_rows(("a",), [], tmp_path / "t.xml", fmt="xml")
