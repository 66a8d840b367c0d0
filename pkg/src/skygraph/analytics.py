"""Per-run outputs: heatmap series with Pool, run summary, summary file.

The Pool is the residual complexity held by aircraft outside every complex
community; at steps with traffic activity the complex rows and the Pool add
up to 100%.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .communities import CommunityRecord
from .contributions import ContributionFrame
from .graph import WeightParams

SUMMARY_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class HeatmapSeries:
    """Contribution of every complex community over the run window."""

    times: list[float]
    rows: dict[int, dict[float, float]]  # label -> time -> percentage
    pool: dict[float, float]  # time -> percentage (0 at inactive steps)
    active: dict[float, bool]  # time -> any indicator total > 0


@dataclass(frozen=True)
class StatBlock:
    mean: float
    std: float  # population convention
    min: float
    max: float


@dataclass(frozen=True)
class RunSummary:
    params: WeightParams
    complexity_thresh: float
    dt: float
    community_count: int
    size: StatBlock | None  # distinct members per record
    duration_s: StatBlock | None  # lifetime including both endpoints
    percentage: StatBlock | None  # pooled over all (record, time) samples


def build_heatmap(
    archive: list[CommunityRecord], frames: list[ContributionFrame]
) -> HeatmapSeries:
    """Assemble the heatmap rows and the Pool from a completed run."""
    times = [f.time for f in frames]
    active = {f.time: f.has_complexity for f in frames}
    rows: dict[int, dict[float, float]] = {
        record.label: dict(record.contribution_series) for record in archive
    }
    pool: dict[float, float] = {}
    for f in frames:
        if not f.has_complexity:
            pool[f.time] = 0.0
            continue
        in_communities = sum(row.get(f.time, 0.0) for row in rows.values())
        pool[f.time] = 100.0 - in_communities
    return HeatmapSeries(times=times, rows=rows, pool=pool, active=active)


def _stats(values: list[float]) -> StatBlock:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return StatBlock(mean=mean, std=math.sqrt(var), min=min(values), max=max(values))


def build_summary(
    archive: list[CommunityRecord],
    params: WeightParams,
    complexity_thresh: float,
    dt: float,
) -> RunSummary:
    """Statistics over the number, size, duration and percentage of communities."""
    sizes = [float(len(r.all_members())) for r in archive]
    durations = [r.disappearance - r.appearance + dt for r in archive]
    percentages = [
        pct for r in archive for _, pct in sorted(r.contribution_series.items())
    ]
    return RunSummary(
        params=params,
        complexity_thresh=complexity_thresh,
        dt=dt,
        community_count=len(archive),
        size=_stats(sizes) if sizes else None,
        duration_s=_stats(durations) if durations else None,
        percentage=_stats(percentages) if percentages else None,
    )


def _stat_dict(block: StatBlock | None) -> dict | None:
    if block is None:
        return None
    return {"mean": block.mean, "std": block.std, "min": block.min, "max": block.max}


def summary_as_dict(summary: RunSummary) -> dict:
    p = summary.params
    return {
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "params": {
            "H_nm": p.H,
            "V_ft": p.V,
            "thresh_h_nm": p.thresh_h,
            "thresh_v_ft": p.thresh_v,
            "min_h_nm": p.min_h,
            "min_v_ft": p.min_v,
            "complexity_thresh_pct": summary.complexity_thresh,
            "dt_s": summary.dt,
        },
        "communities": {
            "count": summary.community_count,
            "size": _stat_dict(summary.size),
            "duration_s": _stat_dict(summary.duration_s),
            "percentage": _stat_dict(summary.percentage),
        },
    }


def export_summary_file(summary: RunSummary) -> bytes:
    """Serialize a summary deterministically; identical runs give identical bytes."""
    text = json.dumps(summary_as_dict(summary), sort_keys=True, separators=(",", ":"))
    return (text + "\n").encode("utf-8")
