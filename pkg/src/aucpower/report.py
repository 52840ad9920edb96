"""Versioned result documents shared by the CLI and the HTTP service.

Both interfaces feed identical resolved inputs through these builders, so
a CLI run and an API call with the same data and seed produce the same
document; that equality is part of the test suite. Documents are plain
JSON-compatible dicts and contain no timestamps.
"""

from __future__ import annotations

from typing import Iterable

from ._version import __version__
from .binormal import BinormalSpec, DensityGrid, anticipated_auroc
from .ingest import PilotSummary
from .mc import McConfig, MinSampleSizeResult, PowerCurve, PowerEstimate
from .roc import AurocEstimate
from .single import SingleSizeRequest, SingleSizeResult

SCHEMA = "aucpower-result/1"

ORIENTATION_NOTE = (
    "control-class scores are negated at generation so that higher mean "
    "predicted risk for cases means better discrimination; the anticipated "
    "AUROCs reflect this orientation; check they match your intended "
    "scenario before acting on the power figure"
)


def _base(calculation: str, inputs: dict, results: dict, advisories: list[str]) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "calculation": calculation,
        "inputs": inputs,
        "results": results,
        "advisories": advisories,
    }


def auroc_estimate_payload(est: AurocEstimate | None) -> dict | None:
    if est is None:
        return None
    return {
        "theta_hat": est.theta_hat,
        "se": est.se,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "n_cases": est.n_cases,
        "n_controls": est.n_controls,
    }


def power_estimate_payload(est: PowerEstimate) -> dict:
    return {
        "n": est.n,
        "power": est.power,
        "mc_se": est.mc_se,
        "degenerate_draws": est.degenerate_draws,
    }


def _mc_payload(cfg: McConfig) -> dict:
    return {
        "alpha": cfg.alpha,
        "iterations": cfg.iterations,
        "seed": cfg.seed,
        "max_redraws_per_iteration": cfg.max_redraws_per_iteration,
    }


def _outcome_payload(outcome) -> dict:
    if isinstance(outcome, PowerEstimate):
        return {"power": power_estimate_payload(outcome)}
    if isinstance(outcome, PowerCurve):
        return {"curve": [power_estimate_payload(p) for p in outcome.points]}
    if isinstance(outcome, MinSampleSizeResult):
        return {
            "min_n": {
                "n": outcome.n,
                "target_power": outcome.target_power,
                "achieved": power_estimate_payload(outcome.achieved),
                "evaluated": [power_estimate_payload(p) for p in outcome.evaluated],
            }
        }
    raise TypeError(f"unsupported outcome type {type(outcome).__name__}")


def single_size_document(req: SingleSizeRequest, result: SingleSizeResult) -> dict:
    advisories = [a for a in (req.width_advisory,) if a]
    return _base(
        "sample-size-single",
        inputs={"auroc": req.theta, "prevalence": req.phi, "ci_width": req.ci_width},
        results={
            "n_total": result.n_total,
            "n_events": result.n_events,
            "se_achieved": result.se_achieved,
            "target_se": result.target_se,
        },
        advisories=advisories,
    )


def pilot_power_document(
    summary: PilotSummary,
    cfg: McConfig,
    evaluate: dict,
    outcome,
    prevalence_override: float | None,
) -> dict:
    inputs = {
        "pilot": {
            "n_rows": summary.n_rows,
            "n_cases": summary.n_cases,
            "n_controls": summary.n_controls,
            "prevalence": summary.prevalence,
            "auroc_a": auroc_estimate_payload(summary.auroc_a),
            "auroc_b": auroc_estimate_payload(summary.auroc_b),
            "rows_dropped": len(summary.rows_dropped),
        },
        "prevalence_override": prevalence_override,
        "evaluate": evaluate,
        "mc": _mc_payload(cfg),
    }
    advisories = []
    if summary.rows_dropped:
        shown = summary.rows_dropped[:8]
        detail = "; ".join(d.reason for d in shown)
        if len(summary.rows_dropped) > len(shown):
            detail += f"; and {len(summary.rows_dropped) - len(shown)} more"
        advisories.append(
            f"{len(summary.rows_dropped)} pilot row(s) were dropped during "
            f"lenient parsing: {detail}"
        )
    return _base("power-pilot", inputs, _outcome_payload(outcome), advisories)


def binormal_params_payload(spec: BinormalSpec) -> dict:
    return {
        "mu_case_a": spec.mu_case_a,
        "mu_case_b": spec.mu_case_b,
        "mu_ctrl_a": spec.mu_ctrl_a,
        "mu_ctrl_b": spec.mu_ctrl_b,
        "v_case_a": spec.v_case_a,
        "v_case_b": spec.v_case_b,
        "v_ctrl_a": spec.v_ctrl_a,
        "v_ctrl_b": spec.v_ctrl_b,
        "r_case": spec.r_case,
        "r_ctrl": spec.r_ctrl,
        "prevalence": spec.phi,
    }


def binormal_power_document(spec: BinormalSpec, cfg: McConfig, evaluate: dict, outcome) -> dict:
    inputs = {
        "params": binormal_params_payload(spec),
        "evaluate": evaluate,
        "mc": _mc_payload(cfg),
    }
    results = {
        "anticipated_auroc_a": anticipated_auroc(spec, "a"),
        "anticipated_auroc_b": anticipated_auroc(spec, "b"),
    }
    results.update(_outcome_payload(outcome))
    return _base("power-binormal", inputs, results, advisories=[ORIENTATION_NOTE])


def density_grid_payload(grid: DensityGrid) -> dict:
    return {
        "x": grid.x.tolist(),
        "y": grid.y.tolist(),
        "z": grid.z.tolist(),
        "peak_density": grid.peak_density,
        "mean_x": grid.mean_x,
        "mean_y": grid.mean_y,
    }


def binormal_preview_document(
    spec: BinormalSpec, grid_resolution: int, case: DensityGrid, control: DensityGrid
) -> dict:
    inputs = {
        "params": binormal_params_payload(spec),
        "grid_resolution": grid_resolution,
    }
    results = {
        "anticipated_auroc_a": anticipated_auroc(spec, "a"),
        "anticipated_auroc_b": anticipated_auroc(spec, "b"),
        "contours": {
            "case": density_grid_payload(case),
            "control": density_grid_payload(control),
        },
    }
    return _base("binormal-preview", inputs, results, advisories=[ORIENTATION_NOTE])


def evaluate_payload(
    n: int | None,
    n_grid: Iterable[int] | None,
    target_power: float | None,
    n_min: int | None = None,
    n_max: int | None = None,
) -> dict:
    """Echo of which of the three evaluation modes a request asked for."""
    if n is not None:
        return {"mode": "fixed-n", "n": int(n)}
    if n_grid is not None:
        return {"mode": "curve", "n_grid": [int(v) for v in n_grid]}
    return {
        "mode": "target-power",
        "target_power": target_power,
        "n_min": n_min,
        "n_max": n_max,
    }


def curve_csv(doc: dict) -> str:
    """CSV rows (n, power, mc_se), the same schema the web UI consumes."""
    lines = ["n,power,mc_se"]
    for row in document_points(doc):
        lines.append(f"{row['n']},{row['power']!r},{row['mc_se']!r}")
    return "\n".join(lines) + "\n"


def document_points(doc: dict) -> list[dict]:
    """Power-curve rows carried by a document, in grid order."""
    results = doc["results"]
    if "curve" in results:
        return results["curve"]
    if "min_n" in results:
        return results["min_n"]["evaluated"]
    if "power" in results:
        return [results["power"]]
    return []


def render_text(doc: dict) -> str:
    """Human-readable rendering of a result document (deterministic)."""
    lines = [f"{doc['calculation']}  [aucpower {doc['tool_version']}, schema {doc['schema']}]"]
    lines.append("")
    lines.append("inputs:")
    lines.extend(_render_mapping(doc["inputs"], 2))
    lines.append("results:")
    lines.extend(_render_mapping(doc["results"], 2))
    if doc["advisories"]:
        lines.append("advisories:")
        for advisory in doc["advisories"]:
            lines.append(f"  - {advisory}")
    return "\n".join(lines) + "\n"


def _render_mapping(mapping: dict, indent: int) -> list[str]:
    pad = " " * indent
    out = []
    for key, value in mapping.items():
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            out.extend(_render_mapping(value, indent + 2))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{pad}{key}:")
            columns = list(value[0].keys())
            out.append(pad + "  " + "  ".join(columns))
            for item in value:
                out.append(pad + "  " + "  ".join(_fmt(item[c]) for c in columns))
        elif isinstance(value, list):
            out.append(f"{pad}{key}: [{', '.join(_fmt(v) for v in value)}]")
        else:
            out.append(f"{pad}{key}: {_fmt(value)}")
    return out


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)
