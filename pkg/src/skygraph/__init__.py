"""Per-aircraft airspace complexity and complex-community tracking.

The pipeline: trajectory logs -> per-step interdependency graphs -> four
complexity indicators -> per-aircraft contributions -> complex communities
tracked through time -> heatmap / summary artifacts, plus a Sobol
sensitivity harness over the main thresholds.
"""

from .analytics import (
    HeatmapSeries,
    RunSummary,
    build_heatmap,
    build_summary,
    export_summary_file,
)
from .communities import (
    CommunityRecord,
    TrackerState,
    connected_components,
    is_complex,
    jaccard,
    run_tracker,
    step,
)
from .contributions import (
    ContributionFrame,
    combined_contribution,
    community_contribution,
    indicator_contribution,
)
from .engine import RunArtifacts, ScenarioCache, analyze, build_cache, run_cached
from .graph import (
    GraphSnapshot,
    WeightParams,
    build_snapshot,
    degree,
    horizontal_weight,
    pair_weight,
    vertical_weight,
)
from .indicators import (
    IndicatorFrame,
    clustering_coefficient,
    compute_frame,
    edge_density,
    nearest_neighbor_degree,
    strength,
)
from .sensitivity import (
    SobolResult,
    SweepConfig,
    evaluate_samples,
    run_sweep,
    saltelli_sample,
    sobol_indices,
)
from .trajectory import (
    AircraftState,
    LogFormat,
    TrajectoryLog,
    horizontal_distance,
    parse_log,
    resample,
    vertical_distance,
)

__version__ = "0.1.0"

__all__ = [
    "AircraftState",
    "CommunityRecord",
    "ContributionFrame",
    "GraphSnapshot",
    "HeatmapSeries",
    "IndicatorFrame",
    "LogFormat",
    "RunArtifacts",
    "RunSummary",
    "ScenarioCache",
    "SobolResult",
    "SweepConfig",
    "TrackerState",
    "TrajectoryLog",
    "WeightParams",
    "analyze",
    "build_cache",
    "build_heatmap",
    "build_snapshot",
    "build_summary",
    "clustering_coefficient",
    "combined_contribution",
    "community_contribution",
    "compute_frame",
    "connected_components",
    "degree",
    "edge_density",
    "evaluate_samples",
    "export_summary_file",
    "horizontal_distance",
    "horizontal_weight",
    "indicator_contribution",
    "is_complex",
    "jaccard",
    "nearest_neighbor_degree",
    "pair_weight",
    "parse_log",
    "resample",
    "run_cached",
    "run_sweep",
    "run_tracker",
    "saltelli_sample",
    "sobol_indices",
    "step",
    "strength",
    "vertical_distance",
    "vertical_weight",
]
