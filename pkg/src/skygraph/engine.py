"""End-to-end analysis pipeline over a resampled trajectory log.

The geometry of a scenario (who is present when, and all pairwise distances)
does not depend on the interdependency parameters, so it is precomputed once
into a ScenarioCache. A run then reduces to vectorized weight evaluation,
sparse indicator math over the live pairs, component labeling on one
block-diagonal sparse graph, and the sequential tracker loop. That
factorization is what makes parameter sweeps over the same scenario cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _sparse_components

from .analytics import HeatmapSeries, RunSummary, build_heatmap, build_summary
from .communities import CommunityRecord, TrackerState, finish, step
from .contributions import ACTIVE_EPS, ContributionFrame
from .errors import InvalidParams, InvalidWeights
from .graph import GraphSnapshot, WeightParams
from .indicators import INDICATORS, IndicatorFrame
from .trajectory import EARTH_RADIUS_NM, TrajectoryLog, resample

DEFAULT_COMPLEXITY_THRESH = 60.0


@dataclass(frozen=True)
class ScenarioCache:
    """Parameter-independent geometry of a resampled scenario."""

    callsigns: tuple[str, ...]  # global slot -> callsign, sorted
    times: np.ndarray  # (T,) grid seconds
    present: np.ndarray  # (T, N) bool
    positions: np.ndarray  # (T, N, 3) lat deg, lon deg, alt ft; 0 when absent
    pair_frame: np.ndarray  # (P,) frame index of each candidate pair
    pair_i: np.ndarray  # (P,) global slot, pair_i < pair_j
    pair_j: np.ndarray  # (P,)
    pair_dh: np.ndarray  # (P,) horizontal distance NM
    pair_dv: np.ndarray  # (P,) vertical distance ft
    pair_offsets: np.ndarray  # (T+1,) slice bounds of each frame's pairs
    dt: float


@dataclass(frozen=True)
class FrameBundle:
    """Everything computed for one grid time."""

    snapshot: GraphSnapshot
    indicators: IndicatorFrame
    contributions: ContributionFrame
    positions: dict[str, tuple[float, float, float]]  # lat, lon, alt

    @property
    def time(self) -> float:
        return self.snapshot.time


@dataclass(frozen=True)
class RunArtifacts:
    """Complete output set of one analysis run."""

    params: WeightParams
    complexity_thresh: float
    dt: float
    frames: list[FrameBundle]
    archive: list[CommunityRecord]
    heatmap: HeatmapSeries
    summary: RunSummary


def haversine_nm_vec(lat1, lon1, lat2, lon2) -> np.ndarray:
    """Vectorized great-circle distance in NM."""
    lat1, lon1, lat2, lon2 = (np.radians(x) for x in (lat1, lon1, lat2, lon2))
    a = (
        np.sin((lat2 - lat1) / 2) ** 2
        + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    )
    return EARTH_RADIUS_NM * 2 * np.arcsin(np.sqrt(a))


def build_cache(log: TrajectoryLog) -> ScenarioCache:
    """Precompute presence and pairwise distances on the log's grid."""
    if log.dt is None:
        raise ValueError("log must be resampled before caching")
    callsigns = tuple(sorted(log.callsigns))
    slot = {cs: k for k, cs in enumerate(callsigns)}
    times = np.asarray(log.grid_times(), dtype=np.float64)
    time_idx = {t: f for f, t in enumerate(times.tolist())}
    T, N = len(times), len(callsigns)

    present = np.zeros((T, N), dtype=bool)
    positions = np.zeros((T, N, 3), dtype=np.float64)
    for s in log.states:
        f = time_idx[s.time]
        k = slot[s.callsign]
        present[f, k] = True
        positions[f, k] = (s.latitude, s.longitude, s.altitude)

    frames_i: list[np.ndarray] = []
    frames_j: list[np.ndarray] = []
    counts = np.zeros(T, dtype=np.int64)
    for f in range(T):
        idx = np.flatnonzero(present[f])
        iu, ju = np.triu_indices(len(idx), k=1)
        frames_i.append(idx[iu])
        frames_j.append(idx[ju])
        counts[f] = len(iu)

    pair_offsets = np.concatenate([[0], np.cumsum(counts)])
    pair_i = np.concatenate(frames_i) if frames_i else np.zeros(0, dtype=np.int64)
    pair_j = np.concatenate(frames_j) if frames_j else np.zeros(0, dtype=np.int64)
    pair_frame = np.repeat(np.arange(T), counts)

    pos_i = positions[pair_frame, pair_i]
    pos_j = positions[pair_frame, pair_j]
    pair_dh = haversine_nm_vec(pos_i[:, 0], pos_i[:, 1], pos_j[:, 0], pos_j[:, 1])
    pair_dv = np.abs(pos_i[:, 2] - pos_j[:, 2])

    return ScenarioCache(
        callsigns=callsigns,
        times=times,
        present=present,
        positions=positions,
        pair_frame=pair_frame,
        pair_i=pair_i,
        pair_j=pair_j,
        pair_dh=pair_dh,
        pair_dv=pair_dv,
        pair_offsets=pair_offsets,
        dt=float(log.dt),
    )


def _ramp(d: np.ndarray, thresh: float, ramp_min: float) -> np.ndarray:
    # Inside the safety distance the ratio is >= 1 (the params invariant
    # guarantees safety <= ramp_min), so one clip covers all three branches.
    return np.clip((thresh - d) / (thresh - ramp_min), 0.0, 1.0)


def vertical_ramp(cache: ScenarioCache, p: WeightParams) -> np.ndarray:
    """Vertical weight of every candidate pair; parameter sweeps that hold
    the vertical thresholds fixed can compute this once."""
    return _ramp(cache.pair_dv, p.thresh_v, p.min_v)


def pair_weights(
    cache: ScenarioCache, p: WeightParams, wv: np.ndarray | None = None
) -> np.ndarray:
    """Interdependency weight of every candidate pair, vectorized."""
    wh = _ramp(cache.pair_dh, p.thresh_h, p.min_h)
    if wv is None:
        wv = vertical_ramp(cache, p)
    return np.where((wh > 0) & (wv > 0), (wh + wv) / 2, 0.0)


def restrict_cache(
    cache: ScenarioCache,
    max_dh: float | None = None,
    max_dv: float | None = None,
) -> ScenarioCache:
    """Drop pairs that cannot form an edge under any parameters in bounds.

    A pair at horizontal distance >= every swept thresh_h (or vertical
    distance >= the fixed thresh_v) always has weight 0, so removing it
    changes nothing. Sweeps become proportional to the pairs that can
    actually interact.
    """
    keep = np.ones(len(cache.pair_dh), dtype=bool)
    if max_dh is not None:
        keep &= cache.pair_dh < max_dh
    if max_dv is not None:
        keep &= cache.pair_dv < max_dv
    counts = np.bincount(cache.pair_frame[keep], minlength=len(cache.times))
    return ScenarioCache(
        callsigns=cache.callsigns,
        times=cache.times,
        present=cache.present,
        positions=cache.positions,
        pair_frame=cache.pair_frame[keep],
        pair_i=cache.pair_i[keep],
        pair_j=cache.pair_j[keep],
        pair_dh=cache.pair_dh[keep],
        pair_dv=cache.pair_dv[keep],
        pair_offsets=np.concatenate([[0], np.cumsum(counts)]),
        dt=cache.dt,
    )


@dataclass(frozen=True)
class _LivePairs:
    """The positive-weight pairs of one parameter evaluation."""

    frame: np.ndarray
    i: np.ndarray
    j: np.ndarray
    w: np.ndarray


def _live_pairs(cache: ScenarioCache, w: np.ndarray) -> _LivePairs:
    live = w > 0
    return _LivePairs(
        frame=cache.pair_frame[live],
        i=cache.pair_i[live],
        j=cache.pair_j[live],
        w=w[live],
    )


@dataclass(frozen=True)
class _FrameArrays:
    """Batched per-frame indicator results (rows: frame, cols: aircraft slot)."""

    strength: np.ndarray
    cc: np.ndarray
    nnd: np.ndarray
    max_w: np.ndarray | None  # skipped on archive-only runs
    edge_density: np.ndarray  # (T,)
    too_few: np.ndarray  # (T,) bool
    totals: dict[str, np.ndarray]  # indicator -> (T,)
    active: dict[str, np.ndarray]  # indicator -> (T,) bool
    combined: np.ndarray  # (T, N) percentage


def _indicator_arrays(
    cache: ScenarioCache,
    lp: _LivePairs,
    weights: dict[str, float] | None,
    need_max: bool = True,
) -> _FrameArrays:
    T, N = cache.present.shape
    nodes = T * N
    ni = lp.frame * N + lp.i
    nj = lp.frame * N + lp.j

    s_flat = np.bincount(ni, weights=lp.w, minlength=nodes) + np.bincount(
        nj, weights=lp.w, minlength=nodes
    )
    deg_flat = (
        np.bincount(ni, minlength=nodes) + np.bincount(nj, minlength=nodes)
    ).astype(np.float64)

    nnd_num = np.bincount(
        ni, weights=lp.w * deg_flat[nj], minlength=nodes
    ) + np.bincount(nj, weights=lp.w * deg_flat[ni], minlength=nodes)

    # Triangle sums over ordered neighbor pairs (j, k) of i that close a
    # triangle: with M = A@W, summing M*A over rows gives the opposite-edge
    # w_jk part and over columns the w_ij part (common-neighbor counts); the
    # graph per frame is a block of one big sparse matrix, so a single
    # sparse product covers the whole timeline.
    if len(lp.w):
        idx = np.concatenate([ni, nj])
        jdx = np.concatenate([nj, ni])
        wd = np.concatenate([lp.w, lp.w])
        A_sp = coo_matrix(
            (np.ones(len(idx)), (idx, jdx)), shape=(nodes, nodes)
        ).tocsr()
        W_sp = coo_matrix((wd, (idx, jdx)), shape=(nodes, nodes)).tocsr()
        E = (A_sp @ W_sp).multiply(A_sp)
        term2 = np.asarray(E.sum(axis=1)).ravel()
        term1 = np.asarray(E.sum(axis=0)).ravel()
        tri_num = term1 + term2
    else:
        tri_num = np.zeros(nodes)

    denom = 2.0 * s_flat * (deg_flat - 1.0)
    cc_flat = np.divide(
        tri_num, denom, out=np.zeros(nodes), where=deg_flat > 1.0
    )
    nnd_flat = np.divide(
        nnd_num, s_flat, out=np.zeros(nodes), where=s_flat > 0.0
    )

    s = s_flat.reshape(T, N)
    cc = cc_flat.reshape(T, N)
    nnd = nnd_flat.reshape(T, N)
    if need_max:
        max_flat = np.zeros(nodes)
        np.maximum.at(max_flat, ni, lp.w)
        np.maximum.at(max_flat, nj, lp.w)
        max_w = max_flat.reshape(T, N)
    else:
        max_w = None

    n = cache.present.sum(axis=1)
    sum_w = np.bincount(lp.frame, weights=lp.w, minlength=T)
    too_few = n < 2
    pairs_possible = n * (n - 1) / 2.0
    edge_density = np.divide(
        sum_w, pairs_possible, out=np.zeros(T), where=~too_few
    )

    totals = {
        "strength": s.sum(axis=1),
        "cc": cc.sum(axis=1),
        "nnd": nnd.sum(axis=1),
    }
    active = {ind: totals[ind] > ACTIVE_EPS for ind in INDICATORS}
    values = {"strength": s, "cc": cc, "nnd": nnd}

    if weights is not None:
        unknown = set(weights) - set(INDICATORS)
        if unknown:
            raise InvalidWeights(f"unknown indicators in weights: {sorted(unknown)}")
        if any(v < 0 for v in weights.values()):
            raise InvalidWeights("indicator weights must be non-negative")
        if not any(v > 0 for v in weights.values()):
            raise InvalidWeights("indicator weights must not all be zero")
        wvec = {ind: weights.get(ind, 0.0) for ind in INDICATORS}
        norm = np.zeros(T)
        for ind in INDICATORS:
            norm += np.where(active[ind], wvec[ind], 0.0)
        any_active = np.zeros(T, dtype=bool)
        for ind in INDICATORS:
            any_active |= active[ind]
        if np.any(any_active & (norm <= 0)):
            raise InvalidWeights("weights vanish on the active indicators")
        share = {
            ind: np.divide(
                np.where(active[ind], wvec[ind], 0.0),
                norm,
                out=np.zeros(T),
                where=norm > 0,
            )
            for ind in INDICATORS
        }
    else:
        k_active = np.zeros(T)
        for ind in INDICATORS:
            k_active += active[ind]
        share = {
            ind: np.divide(
                active[ind].astype(np.float64),
                k_active,
                out=np.zeros(T),
                where=k_active > 0,
            )
            for ind in INDICATORS
        }

    combined = np.zeros((T, N))
    for ind in INDICATORS:
        frac = np.divide(
            values[ind],
            totals[ind][:, None],
            out=np.zeros((T, N)),
            where=active[ind][:, None],
        )
        combined += share[ind][:, None] * frac * 100.0

    return _FrameArrays(
        strength=s,
        cc=cc,
        nnd=nnd,
        max_w=max_w,
        edge_density=edge_density,
        too_few=too_few,
        totals=totals,
        active=active,
        combined=combined,
    )


def _complex_per_frame(
    cache: ScenarioCache,
    lp: _LivePairs,
    combined: np.ndarray,
    thresh: float,
) -> dict[int, list[tuple[frozenset[str], float]]]:
    """Complex connected components of every frame, via one sparse pass.

    Frames are disjoint blocks of a (T*N)-node graph, so a single labeling
    call finds all per-frame components at once.
    """
    T, N = cache.present.shape
    n_nodes = T * N
    rows = lp.frame * N + lp.i
    cols = lp.frame * N + lp.j
    adj = coo_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(n_nodes, n_nodes)
    ).tocsr()
    _, labels = _sparse_components(adj, directed=False)

    present_flat = cache.present.ravel()
    combined_flat = np.where(present_flat, combined.ravel(), 0.0)
    sizes = np.bincount(labels, weights=present_flat.astype(np.float64))
    sums = np.bincount(labels, weights=combined_flat)
    complex_label = (sizes >= 2) & (sums >= thresh)

    members = np.flatnonzero(present_flat & complex_label[labels])
    member_labels = labels[members]
    order = np.argsort(member_labels, kind="stable")
    members = members[order]
    member_labels = member_labels[order]
    bounds = np.flatnonzero(np.diff(member_labels)) + 1

    out: dict[int, list[tuple[frozenset[str], float]]] = {}
    for group in np.split(members, bounds):
        if len(group) == 0:
            continue
        f = int(group[0] // N)
        names = frozenset(cache.callsigns[int(node % N)] for node in group)
        out.setdefault(f, []).append((names, float(sums[labels[group[0]]])))
    return out


def _assemble_frames(
    cache: ScenarioCache,
    w: np.ndarray,
    arrays: _FrameArrays,
    weights: dict[str, float] | None,
) -> list[FrameBundle]:
    T, N = cache.present.shape
    frames: list[FrameBundle] = []
    for f in range(T):
        t = float(cache.times[f])
        idx = np.flatnonzero(cache.present[f])
        names = [cache.callsigns[k] for k in idx]
        lo, hi = cache.pair_offsets[f], cache.pair_offsets[f + 1]
        edges = {
            (cache.callsigns[int(cache.pair_i[p])], cache.callsigns[int(cache.pair_j[p])]): float(w[p])
            for p in range(lo, hi)
            if w[p] > 0
        }
        snapshot = GraphSnapshot(time=t, vertices=frozenset(names), edges=edges)

        def col(arr: np.ndarray) -> dict[str, float]:
            return {cs: float(arr[f, k]) for cs, k in zip(names, idx)}

        indicators = IndicatorFrame(
            time=t,
            edge_density=float(arrays.edge_density[f]),
            strength=col(arrays.strength),
            cc=col(arrays.cc),
            nnd=col(arrays.nnd),
            strength_total=float(arrays.totals["strength"][f]),
            cc_total=float(arrays.totals["cc"][f]),
            nnd_total=float(arrays.totals["nnd"][f]),
            max_incident_weight=col(arrays.max_w),
            too_few_vertices=bool(arrays.too_few[f]),
        )
        active = frozenset(ind for ind in INDICATORS if arrays.active[ind][f])
        per_indicator = {
            ind: (
                {
                    cs: float(getattr(arrays, ind)[f, k] / arrays.totals[ind][f])
                    for cs, k in zip(names, idx)
                }
                if ind in active
                else {}
            )
            for ind in INDICATORS
        }
        contributions = ContributionFrame(
            time=t,
            per_indicator=per_indicator,
            combined=col(arrays.combined),
            active_indicators=active,
            weights=dict(weights) if weights is not None else None,
        )
        positions = {
            cs: (
                float(cache.positions[f, k, 0]),
                float(cache.positions[f, k, 1]),
                float(cache.positions[f, k, 2]),
            )
            for cs, k in zip(names, idx)
        }
        frames.append(
            FrameBundle(
                snapshot=snapshot,
                indicators=indicators,
                contributions=contributions,
                positions=positions,
            )
        )
    return frames


def run_archive(
    cache: ScenarioCache,
    params: WeightParams,
    complexity_thresh: float = DEFAULT_COMPLEXITY_THRESH,
    weights: dict[str, float] | None = None,
    wv: np.ndarray | None = None,
) -> list[CommunityRecord]:
    """Tracker archive only; the cheap path used by parameter sweeps."""
    lp = _live_pairs(cache, pair_weights(cache, params, wv))
    arrays = _indicator_arrays(cache, lp, weights, need_max=False)
    per_frame = _complex_per_frame(cache, lp, arrays.combined, complexity_thresh)
    state = TrackerState(threshold=complexity_thresh)
    for f, t in enumerate(cache.times.tolist()):
        entries = per_frame.get(f, [])
        step(state, t, [m for m, _ in entries], [c for _, c in entries])
    return finish(state)


def run_cached(
    cache: ScenarioCache,
    params: WeightParams,
    complexity_thresh: float = DEFAULT_COMPLEXITY_THRESH,
    weights: dict[str, float] | None = None,
) -> RunArtifacts:
    """Full run over a prebuilt cache: frames, archive, heatmap, summary."""
    w = pair_weights(cache, params)
    lp = _live_pairs(cache, w)
    arrays = _indicator_arrays(cache, lp, weights)
    per_frame = _complex_per_frame(cache, lp, arrays.combined, complexity_thresh)

    state = TrackerState(threshold=complexity_thresh)
    for f, t in enumerate(cache.times.tolist()):
        entries = per_frame.get(f, [])
        step(state, t, [m for m, _ in entries], [c for _, c in entries])
    archive = finish(state)

    frames = _assemble_frames(cache, w, arrays, weights)
    heatmap = build_heatmap(archive, [fb.contributions for fb in frames])
    summary = build_summary(archive, params, complexity_thresh, cache.dt)
    return RunArtifacts(
        params=params,
        complexity_thresh=complexity_thresh,
        dt=cache.dt,
        frames=frames,
        archive=archive,
        heatmap=heatmap,
        summary=summary,
    )


def analyze(
    log: TrajectoryLog,
    params: WeightParams | None = None,
    complexity_thresh: float = DEFAULT_COMPLEXITY_THRESH,
    dt: float = 10.0,
    exclude: set[str] | None = None,
    weights: dict[str, float] | None = None,
) -> RunArtifacts:
    """Run the whole pipeline on a raw or resampled trajectory log."""
    if params is None:
        params = WeightParams()
    if not 0 < complexity_thresh <= 100:
        raise InvalidParams(
            f"complexity threshold {complexity_thresh} outside (0, 100]"
        )
    if exclude:
        unknown = set(exclude) - log.callsigns
        if unknown:
            raise InvalidParams(f"exclude lists unknown aircraft: {sorted(unknown)}")
        log = log.without(set(exclude))
    gridded = resample(log, dt)
    cache = build_cache(gridded)
    return run_cached(cache, params, complexity_thresh, weights)
