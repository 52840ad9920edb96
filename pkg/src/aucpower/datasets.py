"""Bundled demonstration pilot data.

The demo file is a frozen draw from the parametric score model (means 0.66
and 0.60 for cases, 0.30 for controls, prevalence 0.3, default spread and
correlation), squashed through the logistic function so the columns read as
predicted risks. The seed was chosen so the draw is representative: pilot
AUROCs land within a few thousandths of the model's anticipated values.
Regenerate it with ``python -m aucpower.datasets``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from scipy.special import expit

from .binormal import BinormalSpec, reparameterize, sample_dataset
from .ingest import PilotFileSpec, PilotSummary, parse_pilot, write_pilot
from .mc import substream
from .pilot import PilotDataset

DEMO_SPEC = BinormalSpec(
    mu_case_a=0.66,
    mu_case_b=0.60,
    mu_ctrl_a=0.30,
    mu_ctrl_b=0.30,
    phi=0.3,
)
DEMO_SEED = 3472
DEMO_ROWS = 240
_FILENAME = "pilot_demo.csv"


def demo_pilot_path() -> Path:
    return Path(str(resources.files("aucpower.data").joinpath(_FILENAME)))


def load_demo_pilot() -> tuple[PilotDataset, PilotSummary]:
    return parse_pilot(PilotFileSpec(source=demo_pilot_path()))


def _draw_demo_pilot() -> PilotDataset:
    rng = substream(DEMO_SEED, 0)
    y, sa, sb = sample_dataset(reparameterize(DEMO_SPEC), DEMO_ROWS, rng)
    return PilotDataset(labels=y, scores_a=expit(sa), scores_b=expit(sb))


def _regenerate(destination: Path | None = None) -> Path:
    destination = destination or demo_pilot_path()
    write_pilot(_draw_demo_pilot(), destination)
    return destination


if __name__ == "__main__":
    print(_regenerate())
