"""Sweep harness: cell seeding, aggregation, determinism, KS comparison."""
import numpy as np
import pytest
from scipy import stats

from navemb import (
    EmbeddingConfig,
    Graph,
    PathLengthDistribution,
    SweepSpec,
    embed,
    ks_statistic,
    path_length_comparison,
    ring_lattice,
    run_ba_sweep,
    run_sweep,
    run_ws_sweep,
    watts_strogatz,
    WsParams,
)


def small_ws_spec(**overrides):
    base = dict(
        family="ws",
        param_grid=(0.0, 0.2),
        dims=(3,),
        n=60,
        k=4,
        realizations=2,
        trials_per_graph=40,
        master_seed=5,
        max_iters=2000,
    )
    base.update(overrides)
    return SweepSpec(**base)


class TestSweepSpec:
    def test_validation(self):
        with pytest.raises(ValueError, match="family"):
            small_ws_spec(family="er")
        with pytest.raises(ValueError, match="nonempty"):
            small_ws_spec(param_grid=())
        with pytest.raises(ValueError, match="dims"):
            small_ws_spec(dims=())
        with pytest.raises(ValueError, match="realizations"):
            small_ws_spec(realizations=0)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            small_ws_spec(param_grid=(0.5, 1.5))
        with pytest.raises(ValueError, match="gamma"):
            SweepSpec(family="ba", param_grid=(2.0,), dims=(3,))

    def test_quick_profile(self):
        spec = small_ws_spec(realizations=20, trials_per_graph=10_000).quick()
        assert spec.realizations == 5
        assert spec.trials_per_graph == 2000

    def test_family_dispatch_guards(self):
        with pytest.raises(ValueError, match="ws spec"):
            run_ws_sweep(SweepSpec(family="ba", param_grid=(3.0,), dims=(3,), n=30))
        with pytest.raises(ValueError, match="ba spec"):
            run_ba_sweep(small_ws_spec())


class TestSweepRuns:
    def test_ws_cells_and_aggregates(self):
        spec = small_ws_spec()
        result = run_ws_sweep(spec)
        assert len(result.cells) == 2 * 1 * 2
        assert len(result.aggregates) == 2
        for cell in result.cells:
            assert cell.error is None
            assert cell.n == 60
            assert cell.converged
            assert 0.0 <= cell.success_rate <= 1.0
            assert sum(cell.all_lengths.values()) == spec.trials_per_graph
        for agg in result.aggregates:
            vals = [c.success_rate for c in result.cells
                    if c.param == agg.param and c.dim == agg.dim]
            assert min(vals) <= agg.success_rate_mean <= max(vals)
            assert agg.realizations == 2

    def test_unrewired_lattice_cell_reproduces_closed_forms(self):
        # p = 0 at full scale: diameter (n/2)/(k/2) = 100, clustering 2/3
        spec = SweepSpec(family="ws", param_grid=(0.0,), dims=(3,), n=1000, k=10,
                         realizations=1, trials_per_graph=10, master_seed=3)
        cell = run_ws_sweep(spec).cells[0]
        assert cell.error is None
        assert cell.diameter == 100
        assert cell.clustering == pytest.approx(2 / 3, abs=1e-12)
        assert cell.converged

    def test_ba_single_cell_smoke(self):
        spec = SweepSpec(family="ba", param_grid=(3.0,), dims=(4,), n=80, m_links=3,
                         realizations=1, trials_per_graph=30, master_seed=9)
        result = run_ba_sweep(spec)
        cell = result.cells[0]
        assert cell.error is None
        assert cell.converged
        assert cell.diameter >= 1
        assert np.isfinite(cell.clustering)
        assert cell.stretch is None or cell.stretch >= 1.0

    def test_deterministic_rerun(self):
        a = run_sweep(small_ws_spec())
        b = run_sweep(small_ws_spec())
        assert a.cells == b.cells
        assert a.aggregates == b.aggregates

    def test_worker_count_does_not_change_results(self):
        a = run_sweep(small_ws_spec())
        b = run_sweep(small_ws_spec(), workers=2)
        assert a.cells == b.cells
        assert a.aggregates == b.aggregates

    def test_cell_independence_under_grid_edits(self):
        # dropping a grid point must not change any other cell's numbers
        full = run_sweep(small_ws_spec(param_grid=(0.0, 0.2)))
        trimmed = run_sweep(small_ws_spec(param_grid=(0.2,)))
        for cell in trimmed.cells:
            assert cell == full.cell(cell.param, cell.dim, cell.realization)

    def test_failed_cells_recorded_without_aborting(self, caplog):
        # k >= n is only caught at generation time, so every cell fails
        spec = SweepSpec(family="ws", param_grid=(0.1,), dims=(3,), n=4, k=10,
                         realizations=2, trials_per_graph=5, master_seed=1)
        with caplog.at_level("WARNING"):
            result = run_sweep(spec)
        assert all(c.error is not None for c in result.cells)
        agg = result.aggregates[0]
        assert agg.realizations == 0
        assert agg.diameter_mean is None
        assert agg.stretch_defined == 0

    def test_mean_stderr_against_numpy(self):
        result = run_sweep(small_ws_spec(realizations=4))
        for agg in result.aggregates:
            vals = np.array([
                c.success_rate for c in result.cells
                if c.param == agg.param and c.dim == agg.dim
            ])
            assert agg.success_rate_mean == pytest.approx(vals.mean())
            assert agg.success_rate_stderr == pytest.approx(
                vals.std(ddof=1) / np.sqrt(len(vals))
            )


class TestKsStatistic:
    def test_identical_distributions(self):
        d = PathLengthDistribution(histogram={1: 5, 2: 3}, total=8)
        assert ks_statistic(d, d) == 0.0

    def test_hand_computed_value(self):
        a = PathLengthDistribution(histogram={1: 1, 2: 1}, total=2)
        b = PathLengthDistribution(histogram={1: 2}, total=2)
        assert ks_statistic(a, b) == pytest.approx(0.5)

    def test_rejects_empty(self):
        a = PathLengthDistribution(histogram={}, total=0)
        b = PathLengthDistribution(histogram={1: 1}, total=1)
        with pytest.raises(ValueError):
            ks_statistic(a, b)

    def test_matches_scipy_on_random_histograms(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            lengths_a = rng.integers(1, 12, size=rng.integers(5, 40))
            lengths_b = rng.integers(1, 12, size=rng.integers(5, 40))
            da = PathLengthDistribution(
                histogram={int(v): int(c) for v, c in
                           zip(*np.unique(lengths_a, return_counts=True))},
                total=lengths_a.size,
            )
            db = PathLengthDistribution(
                histogram={int(v): int(c) for v, c in
                           zip(*np.unique(lengths_b, return_counts=True))},
                total=lengths_b.size,
            )
            expected = stats.ks_2samp(lengths_a, lengths_b).statistic
            assert ks_statistic(da, db) == pytest.approx(expected, abs=1e-12)


class TestPathLengthComparison:
    def test_complete_graph_distributions_coincide(self):
        n = 12
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        coords = np.random.default_rng(7).uniform(-1, 1, size=(n, 4))
        comparison = path_length_comparison(g, coords, 40, 11)
        assert comparison.all_pairs.histogram == {1: 40}
        assert comparison.success_pairs.histogram == {1: 40}
        assert comparison.ks == 0.0

    def test_rejects_nonpositive_trials(self):
        g = ring_lattice(10, 4)
        coords = np.zeros((10, 2))
        with pytest.raises(ValueError):
            path_length_comparison(g, coords, 0, 1)

    def test_zero_successes_reports_none(self):
        # pendant trap: the only sampled route walks into a dead end
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        coords = np.array([[0.0], [5.0], [6.0], [1.0]])
        out = []
        for seed in range(200):
            comparison = path_length_comparison(g, coords, 1, seed)
            if comparison.success_pairs.total == 0:
                out.append(comparison)
        assert out, "expected at least one all-fail batch"
        assert all(c.ks is None for c in out)

    def test_skew_shrinks_with_rewiring(self):
        # more shortcuts let messages reach distant targets, aligning the histograms
        ks_values = {}
        for p in (0.0001, 0.02):
            g = watts_strogatz(WsParams(n=300, k=6, p=p, seed=13))
            res = embed(g, EmbeddingConfig(dim=10, seed=17))
            ks_values[p] = path_length_comparison(g, res.positions, 2000, 19).ks
        assert ks_values[0.02] < ks_values[0.0001]
