"""Command-line interface.

Three subcommands mirror the three calculators: ``single``, ``pilot``,
``binormal``. Output is a structured text rendering by default, the full
JSON result document with ``--json``. Validation failures exit with code 2;
anything unexpected escapes as a traceback with code 1.
"""

from __future__ import annotations

import json
import secrets
import sys
from pathlib import Path

import click

from . import report, runs
from ._version import __version__
from .binormal import BinormalSpec
from .errors import AucPowerError
from .ingest import PilotFileSpec, parse_pilot
from .mc import McConfig


def _guarded(fn):
    try:
        return fn()
    except AucPowerError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _parse_grid(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter("expected comma-separated integers, e.g. 200,400,800")


def _check_eval_mode(n, n_grid, target_power) -> None:
    given = sum(v is not None for v in (n, n_grid, target_power))
    if given != 1:
        raise click.UsageError("exactly one of --n, --n-grid and --target-power is required")


def _mc_config(seed: int | None, iters: int, alpha: float) -> McConfig:
    # A fresh seed is drawn when none is given; it is echoed in the output
    # either way, so any run can be reproduced exactly.
    if seed is None:
        seed = secrets.randbits(64)
    return McConfig(seed=seed, alpha=alpha, iterations=iters)


def _emit(doc: dict, as_json: bool, curve_out: Path | None) -> None:
    if curve_out is not None:
        curve_out.write_text(report.curve_csv(doc), encoding="utf-8")
        click.echo(f"wrote power curve to {curve_out}", err=True)
    if as_json:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        click.echo(report.render_text(doc), nl=False)


def _with_options(*options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn

    return wrap


_EVAL_OPTIONS = _with_options(
    click.option("--n", type=int, default=None, help="Evaluate power at this sample size."),
    click.option(
        "--n-grid",
        callback=_parse_grid,
        default=None,
        help="Comma-separated sample sizes for a power curve, e.g. 200,400,800.",
    ),
    click.option(
        "--target-power",
        type=float,
        default=None,
        help="Search for the smallest sample size reaching this power.",
    ),
    click.option(
        "--n-min",
        type=int,
        default=runs.DEFAULT_N_MIN,
        show_default=True,
        help="Lower bound of the --target-power search.",
    ),
    click.option(
        "--n-max",
        type=int,
        default=runs.DEFAULT_N_MAX,
        show_default=True,
        help="Upper bound of the --target-power search.",
    ),
)

_MC_OPTIONS = _with_options(
    click.option(
        "--seed",
        type=click.IntRange(0, 2**64 - 1),
        default=None,
        help="RNG seed; a fresh one is drawn and echoed when omitted.",
    ),
    click.option(
        "--iters", type=int, default=2000, show_default=True, help="Monte Carlo iterations."
    ),
    click.option(
        "--alpha", type=float, default=0.05, show_default=True, help="Significance level."
    ),
    click.option(
        "--threads",
        type=int,
        default=None,
        help="Worker threads for the simulation [default: $AUCPOWER_THREADS or 1].",
    ),
)

_OUTPUT_OPTIONS = _with_options(
    click.option(
        "--curve-out",
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        default=None,
        help="Also write the evaluated points as CSV (n,power,mc_se).",
    ),
    click.option("--json", "as_json", is_flag=True, help="Emit the result document as JSON."),
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="aucpower")
def main():
    """Sample-size and power calculations for AUROC validation studies."""


@main.command()
@click.option("--auroc", type=float, required=True, help="Anticipated AUROC, strictly in (0, 1).")
@click.option(
    "--prevalence", type=float, required=True, help="Anticipated event prevalence, strictly in (0, 1)."
)
@click.option(
    "--ci-width", type=float, required=True, help="Target 95% confidence interval width."
)
@click.option("--json", "as_json", is_flag=True, help="Emit the result document as JSON.")
def single(auroc, prevalence, ci_width, as_json):
    """Sample size to estimate one model's AUROC to a target precision."""
    doc = _guarded(lambda: runs.run_single(auroc, prevalence, ci_width))
    _emit(doc, as_json, curve_out=None)


@main.command()
@click.option(
    "--file",
    "file_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Pilot CSV with an outcome column and two score columns.",
)
@click.option("--label-column", default="label", show_default=True)
@click.option("--score-a-column", default="pred_a", show_default=True)
@click.option("--score-b-column", default="pred_b", show_default=True)
@click.option("--delimiter", default=",", show_default=True)
@click.option("--lenient", is_flag=True, help="Drop malformed rows instead of failing.")
@click.option(
    "--prevalence",
    type=float,
    default=None,
    help="Resample at this event prevalence instead of the pilot's own.",
)
@_EVAL_OPTIONS
@_MC_OPTIONS
@_OUTPUT_OPTIONS
def pilot(
    file_path,
    label_column,
    score_a_column,
    score_b_column,
    delimiter,
    lenient,
    prevalence,
    n,
    n_grid,
    target_power,
    n_min,
    n_max,
    seed,
    iters,
    alpha,
    threads,
    curve_out,
    as_json,
):
    """Power to separate two models, resampled from a pilot test set."""
    _check_eval_mode(n, n_grid, target_power)

    def go():
        fspec = PilotFileSpec(
            source=file_path,
            label_column=label_column,
            score_a_column=score_a_column,
            score_b_column=score_b_column,
            delimiter=delimiter,
            lenient=lenient,
        )
        dataset, summary = parse_pilot(fspec)
        cfg = _mc_config(seed, iters, alpha)
        return runs.run_pilot(
            dataset,
            summary,
            cfg,
            n=n,
            n_grid=n_grid,
            target_power=target_power,
            n_min=n_min,
            n_max=n_max,
            prevalence=prevalence,
            threads=threads,
        )

    _emit(_guarded(go), as_json, curve_out)


@main.command()
@click.option("--mu-case-a", type=float, required=True, help="Mean risk among cases, model A.")
@click.option("--mu-case-b", type=float, required=True, help="Mean risk among cases, model B.")
@click.option("--mu-ctrl-a", type=float, required=True, help="Mean risk among controls, model A.")
@click.option("--mu-ctrl-b", type=float, required=True, help="Mean risk among controls, model B.")
@click.option("--v-case-a", type=float, default=0.9, show_default=True, help="Variance parameter, cases, model A.")
@click.option("--v-case-b", type=float, default=0.9, show_default=True, help="Variance parameter, cases, model B.")
@click.option("--v-ctrl-a", type=float, default=0.9, show_default=True, help="Variance parameter, controls, model A.")
@click.option("--v-ctrl-b", type=float, default=0.9, show_default=True, help="Variance parameter, controls, model B.")
@click.option("--r-case", type=float, default=0.9, show_default=True, help="Score correlation among cases.")
@click.option("--r-ctrl", type=float, default=0.9, show_default=True, help="Score correlation among controls.")
@click.option("--prevalence", type=float, required=True, help="Event prevalence, strictly in (0, 1).")
@_EVAL_OPTIONS
@_MC_OPTIONS
@_OUTPUT_OPTIONS
def binormal(
    mu_case_a,
    mu_case_b,
    mu_ctrl_a,
    mu_ctrl_b,
    v_case_a,
    v_case_b,
    v_ctrl_a,
    v_ctrl_b,
    r_case,
    r_ctrl,
    prevalence,
    n,
    n_grid,
    target_power,
    n_min,
    n_max,
    seed,
    iters,
    alpha,
    threads,
    curve_out,
    as_json,
):
    """Power to separate two models under a parametric score model.

    The anticipated AUROC implied for each model is echoed ahead of the
    power figures; check those first, they are the quickest way to catch a
    mis-specified parameter set.
    """
    _check_eval_mode(n, n_grid, target_power)

    def go():
        spec = BinormalSpec(
            mu_case_a=mu_case_a,
            mu_case_b=mu_case_b,
            mu_ctrl_a=mu_ctrl_a,
            mu_ctrl_b=mu_ctrl_b,
            phi=prevalence,
            v_case_a=v_case_a,
            v_case_b=v_case_b,
            v_ctrl_a=v_ctrl_a,
            v_ctrl_b=v_ctrl_b,
            r_case=r_case,
            r_ctrl=r_ctrl,
        )
        cfg = _mc_config(seed, iters, alpha)
        return runs.run_binormal(
            spec,
            cfg,
            n=n,
            n_grid=n_grid,
            target_power=target_power,
            n_min=n_min,
            n_max=n_max,
            threads=threads,
        )

    _emit(_guarded(go), as_json, curve_out)


if __name__ == "__main__":
    main()
