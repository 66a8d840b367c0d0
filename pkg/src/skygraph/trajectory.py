"""Trajectory log ingestion, uniform-grid resampling and distance primitives.

Logs arrive as CSV with one row per aircraft per time step
(``time_s,callsign,lat_deg,lon_deg,alt_ft``). Everything downstream works on
a log resampled onto a uniform time grid.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import EmptyLog, MalformedRow

EARTH_RADIUS_NM = 3440.065

CSV_HEADER = ["time_s", "callsign", "lat_deg", "lon_deg", "alt_ft"]

DEFAULT_DT_S = 10.0


class LogFormat(enum.Enum):
    CSV = "csv"


@dataclass(frozen=True)
class AircraftState:
    """Position of one aircraft at one instant."""

    callsign: str
    time: float  # seconds from scenario start
    latitude: float  # degrees
    longitude: float  # degrees
    altitude: float  # feet

    def __post_init__(self):
        if not self.callsign:
            raise ValueError("callsign must be non-empty")
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude {self.longitude} outside [-180, 180]")
        if self.altitude < 0.0:
            raise ValueError(f"altitude {self.altitude} below 0")
        if self.time < 0.0:
            raise ValueError(f"time {self.time} below 0")


@dataclass(frozen=True)
class TrajectoryLog:
    """Time-indexed aircraft states for one scenario window.

    ``dt`` is None for a freshly parsed log and set once the log has been
    resampled onto a uniform grid.
    """

    states: tuple[AircraftState, ...]
    t_start: float
    t_end: float
    dt: float | None = None

    @property
    def callsigns(self) -> set[str]:
        return {s.callsign for s in self.states}

    def states_at(self, t: float) -> list[AircraftState]:
        """All states at exactly time t (sorted by callsign)."""
        return [s for s in self.states if s.time == t]

    def grid_times(self) -> list[float]:
        """Grid times t_start + k*dt covered by the window; requires dt."""
        if self.dt is None:
            raise ValueError("log has not been resampled onto a grid")
        n = int(math.floor((self.t_end - self.t_start) / self.dt + 1e-9))
        return [self.t_start + k * self.dt for k in range(n + 1)]

    def without(self, callsigns: set[str]) -> "TrajectoryLog":
        """Copy of the log with all rows of the given aircraft removed."""
        kept = tuple(s for s in self.states if s.callsign not in callsigns)
        if not kept:
            raise EmptyLog("all aircraft excluded")
        times = [s.time for s in kept]
        return TrajectoryLog(
            states=kept, t_start=min(times), t_end=max(times), dt=self.dt
        )


def parse_log(data: bytes, format: LogFormat = LogFormat.CSV) -> TrajectoryLog:
    """Parse raw log bytes into a TrajectoryLog.

    Rejects the whole file on the first malformed row rather than skipping
    it: silently dropped rows would corrupt the complexity attribution.
    """
    if format is not LogFormat.CSV:
        raise ValueError(f"unsupported log format: {format}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedRow(0, f"not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyLog("log file is empty") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise MalformedRow(1, f"header must be {','.join(CSV_HEADER)}")

    states: list[AircraftState] = []
    seen: set[tuple[str, float]] = set()
    for line_no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # trailing blank line
        if len(row) != 5:
            raise MalformedRow(line_no, f"expected 5 columns, got {len(row)}")
        raw_t, callsign, raw_lat, raw_lon, raw_alt = (c.strip() for c in row)
        try:
            t = float(raw_t)
            lat = float(raw_lat)
            lon = float(raw_lon)
            alt = float(raw_alt)
        except ValueError:
            raise MalformedRow(line_no, f"non-numeric field in {row!r}") from None
        try:
            state = AircraftState(callsign, t, lat, lon, alt)
        except ValueError as exc:
            raise MalformedRow(line_no, str(exc)) from None
        key = (callsign, t)
        if key in seen:
            raise MalformedRow(line_no, f"duplicate state for {callsign} at t={t}")
        seen.add(key)
        states.append(state)

    if not states:
        raise EmptyLog("log contains a header but no data rows")

    states.sort(key=lambda s: (s.time, s.callsign))
    times = [s.time for s in states]
    return TrajectoryLog(states=tuple(states), t_start=min(times), t_end=max(times))


def resample(log: TrajectoryLog, dt: float = DEFAULT_DT_S) -> TrajectoryLog:
    """Resample a log onto the uniform grid t_start + k*dt.

    Latitude, longitude and altitude are interpolated piecewise-linearly
    between an aircraft's bracketing samples. No extrapolation: an aircraft
    only appears at grid times inside its own [first, last] sample span.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")

    per_aircraft: dict[str, list[AircraftState]] = {}
    for s in log.states:
        per_aircraft.setdefault(s.callsign, []).append(s)

    out: list[AircraftState] = []
    for callsign, samples in per_aircraft.items():
        samples.sort(key=lambda s: s.time)
        ts = [s.time for s in samples]
        k_first = math.ceil((ts[0] - log.t_start) / dt - 1e-9)
        k_last = math.floor((ts[-1] - log.t_start) / dt + 1e-9)
        for k in range(k_first, k_last + 1):
            t = log.t_start + k * dt
            out.append(_interpolate(callsign, samples, ts, t))

    if not out:
        raise EmptyLog("no aircraft spans any grid time")
    out.sort(key=lambda s: (s.time, s.callsign))
    times = [s.time for s in out]
    return TrajectoryLog(
        states=tuple(out), t_start=log.t_start, t_end=max(times), dt=dt
    )


def _interpolate(
    callsign: str, samples: list[AircraftState], ts: list[float], t: float
) -> AircraftState:
    j = bisect_right(ts, t)
    if j > 0 and ts[j - 1] == t:
        s = samples[j - 1]
        return AircraftState(callsign, t, s.latitude, s.longitude, s.altitude)
    lo, hi = samples[j - 1], samples[j]
    frac = (t - lo.time) / (hi.time - lo.time)
    return AircraftState(
        callsign,
        t,
        lo.latitude + frac * (hi.latitude - lo.latitude),
        lo.longitude + frac * (hi.longitude - lo.longitude),
        lo.altitude + frac * (hi.altitude - lo.altitude),
    )


def horizontal_distance(a: AircraftState, b: AircraftState) -> float:
    """Great-circle distance in NM between two states (haversine)."""
    return haversine_nm(a.latitude, a.longitude, b.latitude, b.longitude)


def haversine_nm(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    lat1, lon1, lat2, lon2 = map(math.radians, (lat1, lon1, lat2, lon2))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    a = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return EARTH_RADIUS_NM * 2 * math.asin(math.sqrt(a))


def vertical_distance(a: AircraftState, b: AircraftState) -> float:
    """Absolute altitude difference in feet."""
    return abs(a.altitude - b.altitude)
