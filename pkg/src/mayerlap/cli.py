"""Command line interface.

Subcommands: betti (Betti curves), spectra (curves plus Laplacian spectra,
with the built-in zero-count/Betti cross-check), diagram (persistence
diagrams), distance (family Wasserstein/bottleneck between two inputs).
Exit codes: 0 success, 1 usage or input error, 2 internal cross-check
failure.
"""

from __future__ import annotations

import os
import sys

import click

from . import __version__
from .io import (
    FileFormatError,
    distances_to_csv,
    distances_to_json,
    report_to_csv,
    report_to_json,
)
from .pipeline import CrossCheckError, RunConfig, load_input, run_pipeline, run_distance


def _parse_int_list(_ctx, _param, value):
    if value is None:
        return None
    try:
        return tuple(int(tok) for tok in value.split(",") if tok.strip())
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated integer list, got {value!r}")


common_options = [
    click.option("-N", "--n-differential", "N", type=int, default=3, show_default=True,
                 help="Prime N with d^N = 0."),
    click.option("--stages", callback=_parse_int_list, default=None,
                 help="Comma-separated stages q (default: all of 1..N-1)."),
    click.option("--dims", callback=_parse_int_list, default="0,1", show_default=True,
                 help="Comma-separated homological dimensions."),
    click.option("--max-dim", type=int, default=3, show_default=True,
                 help="Skeleton cap for Vietoris-Rips construction."),
    click.option("--max-radius", type=float, default=None,
                 help="Radius cap for Vietoris-Rips construction (default: unbounded)."),
    click.option("--tolerance", type=float, default=1e-8, show_default=True,
                 help="Relative zero threshold for spectra."),
    click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                 show_default=True),
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="Output file (default: stdout)."),
    click.option("--plot", "plot_dir", type=click.Path(file_okay=False), default=None,
                 help="Also render figures into this directory."),
]


def _with_common(fn):
    for opt in reversed(common_options):
        fn = opt(fn)
    return fn


def _config(N, stages, dims, max_dim, max_radius, tolerance, **kw) -> RunConfig:
    try:
        return RunConfig(
            N=N,
            stages=stages,
            dims=dims,
            max_dim=max_dim,
            max_radius=max_radius,
            tol_factor=tolerance,
            **kw,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _emit(text: str, out: str | None):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _meta(config: RunConfig, path: str) -> dict:
    return {
        "N": config.N,
        "dims": list(config.dims),
        "stages": list(config.resolved_stages()),
        "input": os.path.basename(path),
        "tool_version": __version__,
    }


def _run_and_emit(path, config, fmt, out, plot_dir):
    K = load_input(path, config)
    result = run_pipeline(K, config)
    text = (
        report_to_json(result, _meta(config, path))
        if fmt == "json"
        else report_to_csv(result, eigen=config.eigen)
    )
    _emit(text, out)
    if plot_dir is not None:
        from . import plotting

        stem = os.path.splitext(os.path.basename(path))[0]
        plotting.plot_curves(result, plot_dir, stem, config.N)
        if config.diagrams:
            plotting.plot_diagrams(result, plot_dir, stem, config.N)
    if result.failures:
        for msg in result.failures:
            click.echo(f"cross-check failure: {msg}", err=True)
        raise CrossCheckError(result.failures[0])


@click.group()
@click.version_option(version=__version__)
def cli():
    """Mayer homology, Mayer Laplacian spectra, and their persistence."""


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@_with_common
def betti(input_path, N, stages, dims, max_dim, max_radius, tolerance, fmt, out, plot_dir):
    """Betti curves over the filtration of INPUT."""
    config = _config(N, stages, dims, max_dim, max_radius, tolerance)
    _run_and_emit(input_path, config, fmt, out, plot_dir)


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--eigen/--no-eigen", default=True, show_default=True,
              help="Compute Laplacian spectra alongside Betti curves.")
@click.option("--persistence-step", type=int, default=0, show_default=True,
              help="Evaluate spectra at (r_i, r_{i+k}) instead of (r_i, r_i).")
@_with_common
def spectra(input_path, eigen, persistence_step, N, stages, dims, max_dim, max_radius,
            tolerance, fmt, out, plot_dir):
    """Betti curves plus Mayer Laplacian spectral curves."""
    config = _config(N, stages, dims, max_dim, max_radius, tolerance,
                     eigen=eigen, persistence_step=persistence_step)
    _run_and_emit(input_path, config, fmt, out, plot_dir)


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@_with_common
def diagram(input_path, N, stages, dims, max_dim, max_radius, tolerance, fmt, out, plot_dir):
    """Persistence diagrams per channel."""
    config = _config(N, stages, dims, max_dim, max_radius, tolerance, diagrams=True)
    _run_and_emit(input_path, config, fmt, out, plot_dir)


@cli.command()
@click.argument("input_a", metavar="INPUT_A", type=click.Path(exists=True, dir_okay=False))
@click.argument("input_b", metavar="INPUT_B", type=click.Path(exists=True, dir_okay=False))
@click.option("--wasserstein-r", type=float, default=2.0, show_default=True,
              help="Order of the Wasserstein aggregation.")
@_with_common
def distance(input_a, input_b, wasserstein_r, N, stages, dims, max_dim, max_radius,
             tolerance, fmt, out, plot_dir):
    """Family Wasserstein and bottleneck distances between two inputs."""
    config = _config(N, stages, dims, max_dim, max_radius, tolerance,
                     wasserstein_r=wasserstein_r)
    K1 = load_input(input_a, config)
    K2 = load_input(input_b, config)
    doc = run_distance(K1, K2, config)
    doc["meta"]["input"] = f"{os.path.basename(input_a)},{os.path.basename(input_b)}"
    text = distances_to_json(doc) if fmt == "json" else distances_to_csv(doc)
    _emit(text, out)


def main(argv=None) -> int:
    """Entry point with the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help / --version
        return int(exc.exit_code)
    except (click.UsageError, FileFormatError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except CrossCheckError:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
