"""Command line interface: single runs, grids, aggregation, and the service."""

from __future__ import annotations

import logging
import pathlib

import click

from .detection import DetectionConfig
from .engine import RunConfig
from .harness import (ExperimentGrid, default_utility, execute, load_grid,
                      run_grid, run_id, save_trace, summarize)
from .problems import ProblemSpec


@click.group()
@click.option("--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Interactive evolutionary optimization with objective detection."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")


@main.command("run")
@click.option("--problem", type=click.Choice(["rmnk", "dtlz1", "dtlz2", "dtlz7"]),
              default="rmnk", show_default=True)
@click.option("--objectives", "-m", "m", type=int, default=4, show_default=True)
@click.option("--epistasis", "-k", "k", type=int, default=1, show_default=True,
              help="rmnk only: bits influencing each position besides itself.")
@click.option("--rho", type=float, default=0.0, show_default=True,
              help="rmnk only: correlation between objective tables.")
@click.option("--instance-seed", type=int, default=2024, show_default=True)
@click.option("--uf", type=click.Choice(["tchebychef", "quadratic"]),
              default="tchebychef", show_default=True)
@click.option("--learning/--no-learning", default=True, show_default=True)
@click.option("--detection", type=click.Choice(["none", "univariate", "recursive"]),
              default="univariate", show_default=True)
@click.option("--reduction/--no-reduction", default=True, show_default=True)
@click.option("--noise/--no-noise", default=False, show_default=True)
@click.option("--tau", type=float, default=0.5, show_default=True)
@click.option("--reset", type=click.Choice(["none", "fixed", "dynamic"]),
              default="none", show_default=True)
@click.option("--gamma", type=float, default=0.0, show_default=True,
              help="Preference drift strength (0 disables drift).")
@click.option("--initial-mask", type=str, default=None,
              help="Comma-separated 1-based objectives to start active.")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Directory for trace.csv and manifest.json.")
def run_command(problem, m, k, rho, instance_seed, uf, learning, detection,
                reduction, noise, tau, reset, gamma, initial_mask, seed, out):
    """Execute a single simulated-DM run and print the utility trajectory."""
    spec = ProblemSpec(kind=problem, m=m, k=k, rho=rho, instance_seed=instance_seed)
    mask = (tuple(int(v) for v in initial_mask.split(","))
            if initial_mask else None)
    cfg = RunConfig(
        problem=spec,
        uf=default_utility(problem, uf, gamma=gamma),
        learning=learning,
        detection=DetectionConfig(method=detection, reduction=reduction, tau=tau,
                                  noise=noise, reset=reset),
        initial_mask=mask,
        seed=seed)
    trace = execute(cfg)
    for row in trace.rows:
        click.echo(f"interaction {row.interaction}: utility {row.utility:.4f} "
                   f"active {list(row.mask)} evaluations {row.evaluations}")
    if out:
        save_trace(trace, pathlib.Path(out))
        click.echo(f"wrote {out}/trace.csv")


@main.command("grid")
@click.argument("experiment", type=click.Path(exists=True))
@click.option("--out-dir", type=click.Path(), required=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--reps", type=int, default=None,
              help="Override the grid's repetition count.")
def grid_command(experiment, out_dir, workers, reps):
    """Run every cell of a YAML experiment grid (resumable)."""
    grid = load_grid(experiment)
    if reps is not None:
        import dataclasses

        grid = dataclasses.replace(grid, repetitions=reps)
    traces = run_grid(grid, out_dir, workers=workers)
    click.echo(f"completed {len(traces)} runs under {out_dir}/runs")


@main.command("aggregate")
@click.argument("out_dir", type=click.Path(exists=True))
@click.option("--keys", type=str, default=None,
              help="Comma-separated group keys for the summary table.")
def aggregate_command(out_dir, keys):
    """Summarize stored runs into summary/table.csv and series CSVs."""
    key_list = tuple(keys.split(",")) if keys else None
    summarize(out_dir, keys=key_list)
    click.echo(f"wrote {out_dir}/summary")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_command(host, port):
    """Start the HTTP session service."""
    from .service import serve

    serve(host=host, port=port)


if __name__ == "__main__":
    main()
