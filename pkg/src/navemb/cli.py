"""Command-line entry point.

Subcommands: generate, embed, route, oracle, sweep, pathdist.  Every command
is a pure function of its flags (seeds default to fixed constants, never the
clock), so rerunning a command reproduces its output files byte for byte.

Exit codes: 0 success, 1 usage/validation error, 2 runtime error.
Non-convergence of the embedding is reported, not treated as an error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io as io_mod
from . import rng as rng_mod
from .embedding import EmbeddingConfig, embed, init_state
from .experiments import SweepSpec, path_length_comparison, run_sweep
from .generators import BaParams, WsParams, gamma_to_k0, generalized_ba, watts_strogatz
from .routing import run_trials
from .spectral import closed_form_positions, decompose, energy_relation_check

logger = logging.getLogger(__name__)

__all__ = ["main", "entrypoint", "build_parser", "parse_sweep_config"]


class UsageError(Exception):
    """Bad flags, bad config keys or invalid input files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="navemb", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase log verbosity (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a graph and write its edge list")
    gen.add_argument("--model", choices=("ws", "ba"), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, help="even lattice degree (ws)")
    gen.add_argument("--p", type=float, help="rewiring probability (ws)")
    gen.add_argument("--mlinks", type=int, help="edges per new vertex (ba)")
    gen.add_argument("--gamma", type=float, help="target degree exponent (ba)")
    gen.add_argument("--k0", type=float, help="attachment offset (ba)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--graph-out", required=True)
    gen.set_defaults(func=_cmd_generate)

    emb = sub.add_parser("embed", help="embed a graph into an m-dimensional metric space")
    emb.add_argument("--graph-in", required=True)
    emb.add_argument("--dim", type=int, required=True)
    emb.add_argument("--eps", type=float, default=1e-4,
                     help="per-dimension velocity-variance tolerance")
    emb.add_argument("--max-iters", type=int, default=100_000)
    emb.add_argument("--seed", type=int, default=0)
    emb.add_argument("--coords-out", required=True)
    emb.set_defaults(func=_cmd_embed)

    rte = sub.add_parser("route", help="run greedy-routing trials over embedded coordinates")
    rte.add_argument("--graph-in", required=True)
    rte.add_argument("--coords-in", required=True)
    rte.add_argument("--trials", type=int, default=10_000)
    rte.add_argument("--seed", type=int, default=0)
    rte.add_argument("--out", required=True)
    rte.add_argument("--format", choices=("csv", "json"), default="csv")
    rte.set_defaults(func=_cmd_route)

    orc = sub.add_parser("oracle", help="validate the embedding against its closed form")
    orc.add_argument("--graph-in", required=True)
    orc.add_argument("--dim", type=int, required=True)
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--eps", type=float, default=1e-8,
                     help="sync tolerance for the iterative comparison run")
    orc.add_argument("--max-iters", type=int, default=100_000)
    orc.add_argument("--out", help="report path (default: stdout)")
    orc.set_defaults(func=_cmd_oracle)

    swp = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    swp.add_argument("--spec", required=True, help="flat key = value config file")
    swp.add_argument("--out-dir", required=True)
    swp.add_argument("--quick", action="store_true",
                     help="CI profile: 5 realizations, 2000 trials")
    swp.add_argument("--workers", type=int, default=1)
    swp.set_defaults(func=_cmd_sweep)

    pdl = sub.add_parser("pathdist", help="compare shortest-path-length distributions "
                                          "of all vs successfully routed pairs")
    pdl.add_argument("--graph-in", required=True)
    pdl.add_argument("--coords-in", required=True)
    pdl.add_argument("--trials", type=int, default=10_000)
    pdl.add_argument("--seed", type=int, default=0)
    pdl.add_argument("--out", required=True)
    pdl.add_argument("--format", choices=("csv", "json"), default="csv")
    pdl.set_defaults(func=_cmd_pathdist)

    return parser


def _require_file(path: str, flag: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{flag}: no such file: {path}")
    return p


def _cmd_generate(args: argparse.Namespace) -> None:
    if args.model == "ws":
        if args.k is None or args.p is None:
            raise UsageError("model ws requires --k and --p")
        graph = watts_strogatz(WsParams(n=args.n, k=args.k, p=args.p, seed=args.seed))
    else:
        if args.mlinks is None:
            raise UsageError("model ba requires --mlinks")
        if (args.gamma is None) == (args.k0 is None):
            raise UsageError("model ba requires exactly one of --gamma or --k0")
        k0 = args.k0 if args.k0 is not None else gamma_to_k0(args.gamma, args.mlinks)
        graph = generalized_ba(BaParams(n=args.n, m_links=args.mlinks, k0=k0, seed=args.seed))
    io_mod.write_edge_list(graph, args.graph_out)
    logger.info("wrote %d vertices / %d edges to %s", graph.n, graph.edge_count, args.graph_out)


def _cmd_embed(args: argparse.Namespace) -> None:
    graph = io_mod.read_edge_list(_require_file(args.graph_in, "--graph-in"))
    cfg = EmbeddingConfig(dim=args.dim, sync_tolerance=args.eps,
                          max_iters=args.max_iters, seed=args.seed)
    result = embed(graph, cfg)
    io_mod.write_coords(result.positions, args.coords_out)
    if not result.converged:
        logger.warning("embedding did not synchronize within %d iterations "
                       "(max per-dimension error %.3e)",
                       result.iterations, float(result.sync_errors.max()))
    else:
        logger.info("synchronized after %d iterations", result.iterations)


def _cmd_route(args: argparse.Namespace) -> None:
    graph = io_mod.read_edge_list(_require_file(args.graph_in, "--graph-in"))
    coords = io_mod.read_coords(_require_file(args.coords_in, "--coords-in"))
    if coords.shape[0] != graph.n:
        raise UsageError(
            f"coordinate rows ({coords.shape[0]}) do not match graph size ({graph.n})"
        )
    results = run_trials(graph, coords, args.trials, args.seed)
    io_mod.write_rows(io_mod.ROUTE_COLUMNS, io_mod.route_rows(results), args.out, args.format)


def _pairwise_distances(coords: np.ndarray) -> np.ndarray:
    deltas = coords[:, None, :] - coords[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", deltas, deltas))


def _cmd_oracle(args: argparse.Namespace) -> None:
    graph = io_mod.read_edge_list(_require_file(args.graph_in, "--graph-in"))
    dec = decompose(graph)
    cfg = EmbeddingConfig(dim=args.dim, sync_tolerance=args.eps,
                          max_iters=args.max_iters, seed=args.seed)
    x0 = init_state(graph, cfg).velocities
    closed = closed_form_positions(dec, x0)
    run = embed(graph, cfg)
    d_iter = _pairwise_distances(run.positions)
    d_closed = _pairwise_distances(closed)
    off_diag = ~np.eye(graph.n, dtype=bool)
    rel = np.abs(d_iter - d_closed)[off_diag] / d_closed[off_diag]
    energy = energy_relation_check(
        dec, graph, probes=100, probe_rng=rng_mod.stream(args.seed, rng_mod.PROBE)
    )
    report = {
        "n": graph.n,
        "edge_count": graph.edge_count,
        "dim": args.dim,
        "seed": args.seed,
        "spectrum": {
            "min_eigenvalue": float(dec.eigenvalues[0]),
            "second_largest_eigenvalue": float(dec.eigenvalues[-2]),
            "max_eigenvalue": float(dec.eigenvalues[-1]),
            "bipartite": dec.is_bipartite(),
        },
        "distance_check": {
            "max_relative_error": float(rel.max()),
            "iterations": run.iterations,
            "converged": run.converged,
            "sync_tolerance": args.eps,
        },
        "energy_check": {
            "max_relative_residual": energy.max_relative_residual,
            "energy_bound": energy.energy_bound,
            "probe_min_energy": energy.probe_min_energy,
            "probes": energy.probe_count,
            "bound_satisfied": energy.bound_satisfied(),
        },
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


_SWEEP_DEFAULTS = {
    "n": 1000, "k": 10, "mlinks": 3, "dims": (5, 10, 20),
    "realizations": 20, "trials": 10_000, "seed": 0,
    "eps": 1e-4, "max_iters": 100_000,
}


def parse_sweep_config(path: str | Path) -> SweepSpec:
    """Flat ``key = value`` sweep config; '#' starts a comment line."""
    values: dict[str, str] = {}
    for ln_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln_no}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()

    known = {"family", "n", "k", "mlinks", "p_grid", "gamma_grid", "dims",
             "realizations", "trials", "seed", "eps", "max_iters"}
    for key in values:
        if key not in known:
            raise UsageError(f"{path}: unknown config key {key!r}")
    if "family" not in values:
        raise UsageError(f"{path}: missing required key 'family'")
    family = values["family"]
    if family not in ("ws", "ba"):
        raise UsageError(f"{path}: family must be 'ws' or 'ba', got {family!r}")
    grid_key = "p_grid" if family == "ws" else "gamma_grid"
    if grid_key not in values:
        raise UsageError(f"{path}: missing required key {grid_key!r} for family {family}")
    wrong_grid = "gamma_grid" if family == "ws" else "p_grid"
    if wrong_grid in values:
        raise UsageError(f"{path}: key {wrong_grid!r} does not apply to family {family}")

    def get_int(key: str) -> int:
        return int(values.get(key, _SWEEP_DEFAULTS[key]))

    try:
        grid = tuple(float(x) for x in values[grid_key].split(","))
        dims = tuple(int(x) for x in values.get(
            "dims", ",".join(map(str, _SWEEP_DEFAULTS["dims"]))).split(","))
        spec = SweepSpec(
            family=family,
            param_grid=grid,
            dims=dims,
            n=get_int("n"),
            k=get_int("k"),
            m_links=get_int("mlinks"),
            realizations=get_int("realizations"),
            trials_per_graph=get_int("trials"),
            master_seed=get_int("seed"),
            sync_tolerance=float(values.get("eps", _SWEEP_DEFAULTS["eps"])),
            max_iters=get_int("max_iters"),
        )
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return spec


def _cmd_sweep(args: argparse.Namespace) -> None:
    spec = parse_sweep_config(_require_file(args.spec, "--spec"))
    if args.quick:
        spec = spec.quick()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = run_sweep(spec, workers=args.workers)
    io_mod.write_rows(io_mod.CELL_COLUMNS, io_mod.cell_rows(result.cells),
                      out_dir / "cells.csv")
    io_mod.write_rows(io_mod.AGGREGATE_COLUMNS, io_mod.aggregate_rows(result.aggregates),
                      out_dir / "aggregate.csv")
    for param in spec.param_grid:
        for dim in spec.dims:
            all_hist: dict[int, int] = {}
            success_hist: dict[int, int] = {}
            for cell in result.cells:
                if cell.param != param or cell.dim != dim:
                    continue
                for length, count in cell.all_lengths.items():
                    all_hist[length] = all_hist.get(length, 0) + count
                for length, count in cell.success_lengths.items():
                    success_hist[length] = success_hist.get(length, 0) + count
            rows = [
                [str(length), str(all_hist.get(length, 0)), str(success_hist.get(length, 0))]
                for length in sorted(all_hist)
            ]
            name = f"pathdist_{io_mod.fmt_metric(param)}_m{dim}.csv"
            io_mod.write_rows(("L", "count_all", "count_success"), rows, out_dir / name)
    logger.info("sweep complete: %d cells -> %s", len(result.cells), out_dir)


def _cmd_pathdist(args: argparse.Namespace) -> None:
    graph = io_mod.read_edge_list(_require_file(args.graph_in, "--graph-in"))
    coords = io_mod.read_coords(_require_file(args.coords_in, "--coords-in"))
    if coords.shape[0] != graph.n:
        raise UsageError(
            f"coordinate rows ({coords.shape[0]}) do not match graph size ({graph.n})"
        )
    comparison = path_length_comparison(graph, coords, args.trials, args.seed)
    rows = [
        [
            str(length),
            str(comparison.all_pairs.histogram.get(length, 0)),
            str(comparison.success_pairs.histogram.get(length, 0)),
        ]
        for length in sorted(comparison.all_pairs.histogram)
    ]
    io_mod.write_rows(("L", "count_all", "count_success"), rows, args.out, args.format)
    ks = io_mod.fmt_metric(comparison.ks)
    sys.stdout.write(f"ks {ks}\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        level = logging.WARNING - 10 * min(args.verbose, 2)
        logging.basicConfig(stream=sys.stderr, level=level,
                            format="%(levelname)s %(name)s: %(message)s")
        args.func(args)
    except UsageError as exc:
        print(f"navemb: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"navemb: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"navemb: error: {exc}", file=sys.stderr)
        return 2
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
