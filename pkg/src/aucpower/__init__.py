"""Sample-size and power analysis for AUROC-based validation studies.

Three calculators, one per study-design question:

- how many individuals to pin down one model's AUROC to a target
  confidence-interval width (:func:`sample_size_single`);
- what power a planned paired comparison of two models has, simulated by
  resampling a pilot test set (:func:`power_pilot` and friends);
- the same power question answered from a parametric description of the
  score distributions when no pilot exists (:func:`power_binormal`).

The comparison machinery (paired AUROC difference test with a large-N fast
path) is exposed directly as :func:`delong_test` / :func:`delong_test_fast`.
"""

from ._version import __version__
from .binormal import (
    BinormalSpec,
    DensityGrid,
    ReparameterizedSpec,
    anticipated_auroc,
    density_contours,
    min_n_for_power_binormal,
    power_binormal,
    power_curve_binormal,
    reparameterize,
    sample_dataset,
)
from .delong import DelongComparison, delong_components, delong_test, delong_test_fast
from .errors import (
    AucPowerError,
    BadLabelError,
    BadNumberError,
    DegenerateAurocError,
    DegenerateComparisonError,
    DegenerateSpecError,
    DomainError,
    EmptyAfterParsingError,
    EmptyClassError,
    LengthMismatchError,
    MissingColumnError,
    NonFiniteScoreError,
    PilotFormatError,
    PilotTooDegenerateError,
    SampleSizeOverflowError,
    SingleClassError,
    TargetUnreachableError,
)
from .ingest import (
    DroppedRow,
    PilotFileSpec,
    PilotSummary,
    parse_pilot,
    summarize_pilot,
    write_pilot,
)
from .mc import (
    McConfig,
    MinSampleSizeResult,
    PowerCurve,
    PowerEstimate,
    resolve_threads,
)
from .pilot import (
    PilotDataset,
    min_n_for_power,
    power_curve_pilot,
    power_pilot,
    power_pilot_reweighted,
    resampling_weights,
)
from .roc import AurocEstimate, auroc_with_ci, estimate_auroc, newcombe_variance
from .single import (
    RECOMMENDED_MAX_CI_WIDTH,
    SingleSizeRequest,
    SingleSizeResult,
    sample_size_single,
)

__all__ = [
    "__version__",
    "AucPowerError",
    "AurocEstimate",
    "BadLabelError",
    "BadNumberError",
    "BinormalSpec",
    "DegenerateAurocError",
    "DegenerateComparisonError",
    "DegenerateSpecError",
    "DelongComparison",
    "DensityGrid",
    "DomainError",
    "DroppedRow",
    "EmptyAfterParsingError",
    "EmptyClassError",
    "LengthMismatchError",
    "McConfig",
    "MinSampleSizeResult",
    "MissingColumnError",
    "NonFiniteScoreError",
    "PilotDataset",
    "PilotFileSpec",
    "PilotFormatError",
    "PilotSummary",
    "PilotTooDegenerateError",
    "PowerCurve",
    "PowerEstimate",
    "RECOMMENDED_MAX_CI_WIDTH",
    "ReparameterizedSpec",
    "SampleSizeOverflowError",
    "SingleClassError",
    "SingleSizeRequest",
    "SingleSizeResult",
    "TargetUnreachableError",
    "anticipated_auroc",
    "auroc_with_ci",
    "delong_components",
    "delong_test",
    "delong_test_fast",
    "density_contours",
    "estimate_auroc",
    "min_n_for_power",
    "min_n_for_power_binormal",
    "newcombe_variance",
    "parse_pilot",
    "power_binormal",
    "power_curve_binormal",
    "power_curve_pilot",
    "power_pilot",
    "power_pilot_reweighted",
    "resampling_weights",
    "resolve_threads",
    "reparameterize",
    "sample_dataset",
    "sample_size_single",
    "summarize_pilot",
    "write_pilot",
]
