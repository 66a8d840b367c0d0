"""JSON serialization of run artifacts.

Schemas are shared by the HTTP service, the CLI output directory and the
browser client. Serialization is deterministic: identical runs produce
byte-identical files.
"""

from __future__ import annotations

import json

from .analytics import HeatmapSeries
from .communities import CommunityRecord
from .engine import FrameBundle, RunArtifacts
from .indicators import INDICATORS


def _dump(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode(
        "utf-8"
    )


def frame_dict(fb: FrameBundle) -> dict:
    ind = fb.indicators
    cf = fb.contributions
    aircraft = []
    for cs in sorted(fb.snapshot.vertices):
        lat, lon, alt = fb.positions[cs]
        aircraft.append(
            {
                "callsign": cs,
                "lat": lat,
                "lon": lon,
                "alt_ft": alt,
                "strength": ind.strength[cs],
                "cc": ind.cc[cs],
                "nnd": ind.nnd[cs],
                "max_w": ind.max_incident_weight[cs],
                "combined_pct": cf.combined[cs],
                "per_indicator": {
                    i: cf.per_indicator[i][cs]
                    for i in INDICATORS
                    if cs in cf.per_indicator[i]
                },
            }
        )
    return {
        "time": fb.time,
        "edge_density": ind.edge_density,
        "too_few_vertices": ind.too_few_vertices,
        "active_indicators": sorted(cf.active_indicators),
        "aircraft": aircraft,
        "edges": [
            {"a": a, "b": b, "w": w}
            for (a, b), w in sorted(fb.snapshot.edges.items())
        ],
    }


def frames_bytes(run: RunArtifacts) -> bytes:
    return _dump([frame_dict(fb) for fb in run.frames])


def record_dict(record: CommunityRecord) -> dict:
    return {
        "label": record.label,
        "name": record.display_name(),
        "appearance_s": record.appearance,
        "disappearance_s": record.disappearance,
        "members": [
            {"callsign": e.callsign, "joined_s": e.joined_at, "left_s": e.left_at}
            for e in record.membership_events
        ],
        "contribution_pct": [
            [t, pct] for t, pct in sorted(record.contribution_series.items())
        ],
    }


def communities_bytes(run: RunArtifacts) -> bytes:
    return _dump([record_dict(r) for r in run.archive])


def heatmap_dict(hm: HeatmapSeries) -> dict:
    return {
        "times": list(hm.times),
        "rows": [
            {
                "label": label,
                "name": f"Community {label}",
                "values": [hm.rows[label].get(t) for t in hm.times],
            }
            for label in sorted(hm.rows)
        ],
        "pool": [hm.pool[t] for t in hm.times],
        "active": [bool(hm.active[t]) for t in hm.times],
    }


def heatmap_bytes(run: RunArtifacts) -> bytes:
    return _dump(heatmap_dict(run.heatmap))
