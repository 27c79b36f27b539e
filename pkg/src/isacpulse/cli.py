"""Command-line interface: design | fig1 | fig2 | fig3 | validate.

Configuration comes from an optional JSON file plus flag overrides.
Exit codes: 0 ok, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import json
import logging
import sys

import click

from . import experiments
from .experiments import DEFAULT_BETA_SWEEP, ExperimentConfig
from .qp import QpConvergenceError, QpInfeasibleError

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")


def _build_config(config, beta, sweep, **overrides) -> ExperimentConfig:
    if beta and sweep:
        raise click.UsageError("--beta and --sweep are mutually exclusive")
    betas = tuple(beta) if beta else (tuple(DEFAULT_BETA_SWEEP) if sweep else None)
    overrides["betas"] = betas
    try:
        if config:
            return ExperimentConfig.from_file(config, **overrides)
        clean = {k: v for k, v in overrides.items() if v is not None}
        return ExperimentConfig().with_overrides(**clean)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(str(exc))


def _common_options(fn):
    opts = [
        click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="JSON config file; flags override its values."),
        click.option("--beta", type=float, multiple=True, help="Roll-off point(s)."),
        click.option("--sweep", is_flag=True, help="Use the default 21-point roll-off grid."),
        click.option("--frame-length", "frame_length", type=int, default=None),
        click.option("--constellation", type=str, default=None),
        click.option("--nt", type=int, default=None, help="Samples per symbol."),
        click.option("--lg-target", "lg_target", type=int, default=None, help="Preferred FFT length."),
        click.option("--frames", "n_frames", type=int, default=None, help="Monte-Carlo frame count."),
        click.option("--seed", "base_seed", type=int, default=None),
        click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _run(action, cfg: ExperimentConfig) -> None:
    try:
        out = action(cfg)
    except (QpInfeasibleError, QpConvergenceError, FloatingPointError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(1)
    if isinstance(out, str):
        click.echo(out)
    elif isinstance(out, list):
        for p in out:
            click.echo(p)


@click.group()
def main() -> None:
    """Sidelobe-optimized Nyquist pulse shaping experiments."""


@main.command()
@_common_options
def design(config, beta, sweep, **overrides) -> None:
    """Solve the pulse design problem; emit spectrum, pulse and result files."""
    _run(experiments.cmd_design, _build_config(config, beta, sweep, **overrides))


@main.command()
@_common_options
def fig1(config, beta, sweep, **overrides) -> None:
    """SACF curves (theory and Monte-Carlo, RRC and optimized) for one roll-off."""
    _run(experiments.cmd_fig1, _build_config(config, beta, sweep, **overrides))


@main.command()
@_common_options
def fig2(config, beta, sweep, **overrides) -> None:
    """Second-sidelobe level versus bit rate across the roll-off sweep."""
    _run(experiments.cmd_fig2, _build_config(config, beta, sweep or not beta, **overrides))


@main.command()
@_common_options
def fig3(config, beta, sweep, **overrides) -> None:
    """Expected ISLR versus bit rate across the roll-off sweep."""
    _run(experiments.cmd_fig3, _build_config(config, beta, sweep or not beta, **overrides))


@main.command()
@_common_options
def validate(config, beta, sweep, **overrides) -> None:
    """Independent Nyquist/KKT verification of the designed spectra."""
    cfg = _build_config(config, beta, sweep, **overrides)
    try:
        report = experiments.cmd_validate(cfg)
    except (QpInfeasibleError, QpConvergenceError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(1)
    click.echo(json.dumps(report, indent=2))
    if not report["ok"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
