"""Packaged synthetic scenarios used by regression tests, demos and docs.

All three generators emit states directly on a 10 s grid, so parsing and
resampling reproduce them exactly. Geometry lives on or near the -3rd/-1st
meridians at FL350; latitude offsets are specified in NM and converted
through the same spherical radius the distance primitives use, which makes
pairwise distances equal to the designed offsets.
"""

from __future__ import annotations

import math

import numpy as np

from .trajectory import EARTH_RADIUS_NM, AircraftState, TrajectoryLog

NM_PER_DEG_LAT = EARTH_RADIUS_NM * math.pi / 180.0

BASE_LAT = 40.0
BASE_ALT_FT = 35000.0


def _lat(offset_nm: float) -> float:
    return BASE_LAT + offset_nm / NM_PER_DEG_LAT


def _lon_at(base_lon: float, offset_nm: float, lat: float = BASE_LAT) -> float:
    return base_lon + offset_nm / (NM_PER_DEG_LAT * math.cos(math.radians(lat)))


def _log(states: list[AircraftState], dt: float) -> TrajectoryLog:
    states.sort(key=lambda s: (s.time, s.callsign))
    times = [s.time for s in states]
    return TrajectoryLog(
        states=tuple(states), t_start=min(times), t_end=max(times), dt=dt
    )


def bridged_chain_log(dt: float = 10.0) -> TrajectoryLog:
    """Seven aircraft; AC1 keeps a chain of pairwise encounters alive.

    AC1 holds the sector center for the whole 20-minute window while three
    pairs engage it in sequence. With the default parameters and a 60%
    threshold this yields one long-lived complex community; excluding AC1
    splits it into three shorter communities that do not overlap in time.
    """
    # (callsign, engaged offset NM, parked offset NM, engagement window s)
    visitors = [
        ("AC2", +8.0, +200.0, (130.0, 400.0)),
        ("AC3", -8.0, -200.0, (130.0, 400.0)),
        ("AC4", +10.0, +300.0, (410.0, 800.0)),
        ("AC5", -10.0, -300.0, (500.0, 800.0)),
        ("AC6", +12.0, +400.0, (810.0, 1200.0)),
        ("AC7", -12.0, -400.0, (900.0, 1200.0)),
    ]
    states: list[AircraftState] = []
    t = 0.0
    while t <= 1200.0:
        states.append(AircraftState("AC1", t, _lat(0.0), -3.0, BASE_ALT_FT))
        for callsign, near, far, (a, b) in visitors:
            offset = near if a <= t <= b else far
            states.append(AircraftState(callsign, t, _lat(offset), -3.0, BASE_ALT_FT))
        t += dt
    return _log(states, dt)


def pairwise_conflicts_log(dt: float = 10.0) -> TrajectoryLog:
    """Five aircraft, 15 minutes: two crossing conflicts plus a complicator.

    AC4/AC5 cross head-on (6 NM lateral offset) slightly before AC2/AC3 do;
    AC1 converges on the AC2/AC3 crossing from the east, eventually forming
    a triangle with both of them.
    """
    states: list[AircraftState] = []
    t = 0.0
    while t <= 900.0:
        # AC4 northbound / AC5 southbound around lon -2.0, crossing at t=450
        states.append(
            AircraftState(
                "AC4", t, _lat(-45.0 + 0.1 * t), _lon_at(-2.0, -3.0), BASE_ALT_FT
            )
        )
        states.append(
            AircraftState(
                "AC5", t, _lat(+45.0 - 0.1 * t), _lon_at(-2.0, +3.0), BASE_ALT_FT
            )
        )
        # AC2 northbound / AC3 southbound around lon -1.0, crossing at t=500
        states.append(
            AircraftState(
                "AC2", t, _lat(-50.0 + 0.1 * t), _lon_at(-1.0, -3.0), BASE_ALT_FT
            )
        )
        states.append(
            AircraftState(
                "AC3", t, _lat(+50.0 - 0.1 * t), _lon_at(-1.0, +3.0), BASE_ALT_FT
            )
        )
        # AC1 westbound along the base latitude toward the AC2/AC3 crossing
        states.append(
            AircraftState("AC1", t, _lat(0.0), _lon_at(-1.0, 80.0 - 0.1 * t), BASE_ALT_FT)
        )
        t += dt
    return _log(states, dt)


def sector_sweep_log(
    n_aircraft: int = 50, duration_s: float = 1790.0, dt: float = 10.0, seed: int = 7
) -> TrajectoryLog:
    """Dense deterministic traffic for benchmarks and sensitivity sweeps.

    Straight-line flights across a ~300 NM box at three flight levels, with
    entry points, headings and speeds drawn from a fixed-seed generator.
    """
    rng = np.random.default_rng(seed)
    half = 150.0  # NM
    states: list[AircraftState] = []
    for k in range(n_aircraft):
        callsign = f"SW{k + 1:02d}"
        x0, y0 = rng.uniform(-half, half, size=2)
        heading = rng.uniform(0.0, 2.0 * math.pi)
        speed = rng.uniform(0.10, 0.14)  # NM/s, ~360-500 kt
        level = BASE_ALT_FT + 1000.0 * rng.integers(-1, 2)
        vx, vy = speed * math.cos(heading), speed * math.sin(heading)
        t = 0.0
        while t <= duration_s:
            x = x0 + vx * t
            y = y0 + vy * t
            states.append(
                AircraftState(callsign, t, _lat(y), _lon_at(-3.0, x), level)
            )
            t += dt
    return _log(states, dt)


def log_to_csv_bytes(log: TrajectoryLog) -> bytes:
    """Serialize a log to the ingestion CSV schema (full float precision)."""
    lines = ["time_s,callsign,lat_deg,lon_deg,alt_ft"]
    for s in log.states:
        lines.append(
            f"{s.time!r},{s.callsign},{s.latitude!r},{s.longitude!r},{s.altitude!r}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
