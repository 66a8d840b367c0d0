"""Content-addressed persistence for scenarios and run artifacts.

Everything is plain files under a data directory: scenarios keyed by the
hash of their canonicalized rows, runs keyed by the hash of (scenario id,
canonical request). Re-uploading identical content or re-posting an
identical request is therefore idempotent, which also gives reproducible
run ids for free.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .analytics import export_summary_file, summary_as_dict
from .engine import RunArtifacts, analyze
from .errors import UnknownRun, UnknownScenario
from .exports import communities_bytes, frames_bytes, heatmap_bytes
from .graph import WeightParams
from .trajectory import TrajectoryLog, parse_log

ARTIFACT_NAMES = ("frames", "communities", "heatmap", "summary", "summary_file")


def canonical_rows(log: TrajectoryLog) -> bytes:
    """Canonical byte form of a parsed log, used for content addressing."""
    lines = [
        f"{s.time!r},{s.callsign},{s.latitude!r},{s.longitude!r},{s.altitude!r}"
        for s in log.states
    ]
    return "\n".join(lines).encode("utf-8")


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class RunStore:
    """File-backed store; safe for concurrent readers, writes are atomic."""

    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir)
        (self.root / "scenarios").mkdir(parents=True, exist_ok=True)
        (self.root / "runs").mkdir(parents=True, exist_ok=True)

    # -- scenarios ---------------------------------------------------------

    def create_scenario(self, raw: bytes) -> str:
        """Parse, canonicalize and persist a log; returns its content id."""
        log = parse_log(raw)
        canonical = canonical_rows(log)
        scenario_id = hashlib.sha256(canonical).hexdigest()[:16]
        path = self._scenario_path(scenario_id)
        if not path.exists():
            header = b"time_s,callsign,lat_deg,lon_deg,alt_ft\n"
            _atomic_write(path, header + canonical + b"\n")
        return scenario_id

    def _scenario_path(self, scenario_id: str) -> Path:
        return self.root / "scenarios" / f"{scenario_id}.csv"

    def has_scenario(self, scenario_id: str) -> bool:
        return self._scenario_path(scenario_id).exists()

    def load_scenario(self, scenario_id: str) -> TrajectoryLog:
        path = self._scenario_path(scenario_id)
        if not path.exists():
            raise UnknownScenario(scenario_id)
        return parse_log(path.read_bytes())

    def scenario_info(self, scenario_id: str) -> dict:
        log = self.load_scenario(scenario_id)
        return {
            "scenario_id": scenario_id,
            "aircraft_count": len(log.callsigns),
            "callsigns": sorted(log.callsigns),
            "t_start_s": log.t_start,
            "t_end_s": log.t_end,
            "row_count": len(log.states),
        }

    # -- runs ---------------------------------------------------------------

    @staticmethod
    def run_id_for(
        scenario_id: str,
        params: WeightParams,
        complexity_thresh: float,
        dt: float,
        exclude: set[str],
    ) -> str:
        request = {
            "scenario": scenario_id,
            "H": params.H,
            "V": params.V,
            "thresh_h": params.thresh_h,
            "thresh_v": params.thresh_v,
            "min_h": params.min_h,
            "min_v": params.min_v,
            "complexity": complexity_thresh,
            "dt": dt,
            "exclude": sorted(exclude),
        }
        blob = json.dumps(request, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]

    def _run_dir(self, run_id: str) -> Path:
        return self.root / "runs" / run_id

    def create_run(
        self,
        scenario_id: str,
        params: WeightParams,
        complexity_thresh: float,
        dt: float,
        exclude: set[str] | None = None,
    ) -> str:
        """Execute a run synchronously and persist its artifacts."""
        exclude = exclude or set()
        log = self.load_scenario(scenario_id)
        run_id = self.run_id_for(scenario_id, params, complexity_thresh, dt, exclude)
        run_dir = self._run_dir(run_id)
        if (run_dir / "status.json").exists():
            return run_id  # identical request already executed

        run_dir.mkdir(parents=True, exist_ok=True)
        try:
            run = analyze(log, params, complexity_thresh, dt, exclude)
            self._write_artifacts(run_dir, run)
            status = {
                "run_id": run_id,
                "scenario_id": scenario_id,
                "status": "done",
                "request": {
                    "H_nm": params.H,
                    "V_ft": params.V,
                    "thresh_h_nm": params.thresh_h,
                    "thresh_v_ft": params.thresh_v,
                    "min_h_nm": params.min_h,
                    "min_v_ft": params.min_v,
                    "complexity_thresh_pct": complexity_thresh,
                    "dt_s": dt,
                    "exclude": sorted(exclude),
                },
                "community_count": run.summary.community_count,
            }
        except Exception as exc:
            status = {
                "run_id": run_id,
                "scenario_id": scenario_id,
                "status": "failed",
                "error": str(exc),
            }
            _atomic_write(
                run_dir / "status.json",
                json.dumps(status, sort_keys=True).encode("utf-8"),
            )
            raise
        _atomic_write(
            run_dir / "status.json", json.dumps(status, sort_keys=True).encode("utf-8")
        )
        return run_id

    def _write_artifacts(self, run_dir: Path, run: RunArtifacts) -> None:
        _atomic_write(run_dir / "frames.json", frames_bytes(run))
        _atomic_write(run_dir / "communities.json", communities_bytes(run))
        _atomic_write(run_dir / "heatmap.json", heatmap_bytes(run))
        summary = json.dumps(
            summary_as_dict(run.summary), sort_keys=True, separators=(",", ":")
        )
        _atomic_write(run_dir / "summary.json", (summary + "\n").encode("utf-8"))
        _atomic_write(run_dir / "summary_file.json", export_summary_file(run.summary))

    def run_status(self, run_id: str) -> dict:
        path = self._run_dir(run_id) / "status.json"
        if not path.exists():
            raise UnknownRun(run_id)
        return json.loads(path.read_text())

    def run_artifact(self, run_id: str, which: str) -> bytes:
        if which not in ARTIFACT_NAMES:
            raise ValueError(f"unknown artifact {which!r}")
        run_dir = self._run_dir(run_id)
        if not (run_dir / "status.json").exists():
            raise UnknownRun(run_id)
        path = run_dir / f"{which}.json"
        if not path.exists():
            raise UnknownRun(f"{run_id}: artifact {which} missing (run failed?)")
        return path.read_bytes()
