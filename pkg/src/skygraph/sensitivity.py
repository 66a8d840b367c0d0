"""Variance-based sensitivity analysis of the pipeline outputs.

Inputs are the maximal horizontal distance threshold and the complexity
threshold; the minimal distance stays fixed. Samples follow Saltelli's
radial scheme over an unscrambled low-discrepancy sequence, outputs are the
number, median size and median duration of the detected communities, and
indices use the standard estimators (Saltelli 2010 for first/second order,
Jansen for total order).
"""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .engine import (
    ScenarioCache,
    build_cache,
    restrict_cache,
    run_archive,
    vertical_ramp,
)
from .errors import InvalidBounds
from .graph import WeightParams
from .trajectory import TrajectoryLog, resample

PARAM_THRESH_H = "thresh_h"
PARAM_COMPLEXITY = "complexity"
PARAM_ORDER = (PARAM_THRESH_H, PARAM_COMPLEXITY)

OUTPUT_COUNT = "count"
OUTPUT_MEDIAN_SIZE = "median_size"
OUTPUT_MEDIAN_DURATION = "median_duration"
OUTPUT_ORDER = (OUTPUT_COUNT, OUTPUT_MEDIAN_SIZE, OUTPUT_MEDIAN_DURATION)

# Relative variance below which an output is flagged degenerate.
_VARIANCE_EPS = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    """Configuration of one Saltelli sweep."""

    fixed: WeightParams = field(default_factory=WeightParams)
    bounds: dict[str, tuple[float, float]] = field(
        default_factory=lambda: {
            PARAM_THRESH_H: (15.0, 75.0),
            PARAM_COMPLEXITY: (40.0, 100.0),
        }
    )
    base_samples: int = 1024
    outputs: tuple[str, ...] = OUTPUT_ORDER
    dt: float = 10.0

    def __post_init__(self):
        for name in self.bounds:
            if name not in PARAM_ORDER:
                raise InvalidBounds(f"unknown parameter {name!r}")
        for name, (lo, hi) in self.bounds.items():
            if not lo < hi:
                raise InvalidBounds(f"{name}: need lo < hi, got [{lo}, {hi}]")
        n = self.base_samples
        if n < 2 or n & (n - 1) != 0:
            raise InvalidBounds(f"base_samples must be a power of two >= 2, got {n}")
        for out in self.outputs:
            if out not in OUTPUT_ORDER:
                raise InvalidBounds(f"unknown output {out!r}")

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p for p in PARAM_ORDER if p in self.bounds)


@dataclass(frozen=True)
class SobolIndices:
    """Indices for a single output, or the degenerate-variance flag."""

    S1: dict[str, float] | None
    S2: dict[tuple[str, str], float] | None
    ST: dict[str, float] | None
    degenerate: bool = False


@dataclass(frozen=True)
class SobolResult:
    per_output: dict[str, SobolIndices]
    sample_count: int
    base_samples: int
    empty_archive_fraction: float


def saltelli_sample(cfg: SweepConfig) -> np.ndarray:
    """Parameter matrix of shape (N*(2k+2), k) in bounds order.

    Rows are stacked blocks A, B, then the radial cross blocks A_B^(i) and
    B_A^(i) for each parameter i. The underlying sequence is deterministic
    (unscrambled), so the whole design is reproducible.
    """
    names = cfg.param_names
    k = len(names)
    if k == 0:
        raise InvalidBounds("no swept parameters")
    n = cfg.base_samples
    base = qmc.Sobol(d=2 * k, scramble=False).random(n)
    A, B = base[:, :k], base[:, k:]
    blocks = [A, B]
    for i in range(k):
        AB = A.copy()
        AB[:, i] = B[:, i]
        blocks.append(AB)
    for i in range(k):
        BA = B.copy()
        BA[:, i] = A[:, i]
        blocks.append(BA)
    unit = np.vstack(blocks)
    lo = np.array([cfg.bounds[p][0] for p in names])
    hi = np.array([cfg.bounds[p][1] for p in names])
    return lo + unit * (hi - lo)


def _row_params(cfg: SweepConfig, row: np.ndarray) -> tuple[WeightParams, float]:
    values = dict(zip(cfg.param_names, row.tolist()))
    f = cfg.fixed
    params = WeightParams(
        H=f.H,
        V=f.V,
        thresh_h=values.get(PARAM_THRESH_H, f.thresh_h),
        thresh_v=f.thresh_v,
        min_h=f.min_h,
        min_v=f.min_v,
    )
    return params, values.get(PARAM_COMPLEXITY, 60.0)


def _archive_outputs(
    archive, dt: float
) -> tuple[dict[str, float], bool]:
    if not archive:
        return {OUTPUT_COUNT: 0.0, OUTPUT_MEDIAN_SIZE: 0.0, OUTPUT_MEDIAN_DURATION: 0.0}, True
    sizes = [float(len(r.all_members())) for r in archive]
    durations = [r.disappearance - r.appearance + dt for r in archive]
    return {
        OUTPUT_COUNT: float(len(archive)),
        OUTPUT_MEDIAN_SIZE: statistics.median(sizes),
        OUTPUT_MEDIAN_DURATION: statistics.median(durations),
    }, False


def _sweep_cache(cache: ScenarioCache, cfg: SweepConfig) -> ScenarioCache:
    """Restrict the cache to pairs that can interact somewhere in bounds."""
    max_dh = None
    if PARAM_THRESH_H in cfg.bounds:
        max_dh = cfg.bounds[PARAM_THRESH_H][1]
    return restrict_cache(cache, max_dh=max_dh, max_dv=cfg.fixed.thresh_v)


def evaluate_row(
    cache: ScenarioCache,
    cfg: SweepConfig,
    row: np.ndarray,
    wv: np.ndarray | None = None,
):
    params, complexity = _row_params(cfg, row)
    archive = run_archive(cache, params, complexity, wv=wv)
    return _archive_outputs(archive, cache.dt)


_WORKER_STATE: dict = {}


def _worker_init(cache: ScenarioCache, cfg: SweepConfig):
    _WORKER_STATE["cache"] = cache
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["wv"] = vertical_ramp(cache, cfg.fixed)


def _worker_eval(row: np.ndarray):
    return evaluate_row(
        _WORKER_STATE["cache"], _WORKER_STATE["cfg"], row, _WORKER_STATE["wv"]
    )


def evaluate_samples(
    rows: np.ndarray,
    scenario: TrajectoryLog | ScenarioCache,
    cfg: SweepConfig,
    n_jobs: int = 1,
) -> tuple[np.ndarray, float]:
    """Run the full pipeline for every parameter row.

    Returns the output matrix (rows x outputs, in cfg.outputs order) and the
    fraction of rows whose archive was empty (medians recorded as 0 there).
    Row evaluations are independent; the result does not depend on
    evaluation order or on n_jobs.
    """
    if isinstance(scenario, TrajectoryLog):
        cache = build_cache(resample(scenario, cfg.dt))
    else:
        cache = scenario
    cache = _sweep_cache(cache, cfg)

    if n_jobs > 1:
        with ProcessPoolExecutor(
            max_workers=n_jobs, initializer=_worker_init, initargs=(cache, cfg)
        ) as pool:
            results = list(pool.map(_worker_eval, rows, chunksize=64))
    else:
        wv = vertical_ramp(cache, cfg.fixed)
        results = []
        for index, row in enumerate(rows):
            try:
                results.append(evaluate_row(cache, cfg, row, wv))
            except Exception as exc:
                raise RuntimeError(f"sweep aborted at row {index}: {exc}") from exc

    out = np.array(
        [[values[name] for name in cfg.outputs] for values, _ in results]
    )
    empty = sum(1 for _, was_empty in results if was_empty) / max(1, len(results))
    return out, empty


def _indices_for_output(y: np.ndarray, n: int, k: int) -> SobolIndices:
    fA = y[:n]
    fB = y[n : 2 * n]
    fAB = [y[(2 + i) * n : (3 + i) * n] for i in range(k)]
    fBA = [y[(2 + k + i) * n : (3 + k + i) * n] for i in range(k)]

    sample = np.concatenate([fA, fB])
    variance = float(np.var(sample))
    scale = float(np.mean(sample**2))
    if variance <= _VARIANCE_EPS * max(1.0, scale):
        return SobolIndices(S1=None, S2=None, ST=None, degenerate=True)

    S1 = [float(np.mean(fB * (fAB[i] - fA))) / variance for i in range(k)]
    ST = [0.5 * float(np.mean((fA - fAB[i]) ** 2)) / variance for i in range(k)]
    S2: dict[tuple[int, int], float] = {}
    for i in range(k):
        for j in range(i + 1, k):
            vij = float(np.mean(fBA[i] * fAB[j] - fA * fB)) / variance
            S2[(i, j)] = vij - S1[i] - S1[j]
    return SobolIndices(
        S1={str(i): S1[i] for i in range(k)},
        S2={(str(i), str(j)): v for (i, j), v in S2.items()},
        ST={str(i): ST[i] for i in range(k)},
    )


def sobol_indices(
    outputs: np.ndarray, cfg: SweepConfig, empty_fraction: float = 0.0
) -> SobolResult:
    """First, second and total order indices from a Saltelli output matrix."""
    names = cfg.param_names
    k = len(names)
    n = cfg.base_samples
    expected = n * (2 * k + 2)
    if outputs.shape[0] != expected:
        raise InvalidBounds(
            f"output matrix has {outputs.shape[0]} rows, expected {expected}"
        )
    per_output: dict[str, SobolIndices] = {}
    for col, out_name in enumerate(cfg.outputs):
        raw = _indices_for_output(outputs[:, col], n, k)
        if raw.degenerate:
            per_output[out_name] = raw
            continue
        per_output[out_name] = SobolIndices(
            S1={names[int(i)]: v for i, v in raw.S1.items()},
            S2={
                (names[int(i)], names[int(j)]): v for (i, j), v in raw.S2.items()
            },
            ST={names[int(i)]: v for i, v in raw.ST.items()},
        )
    return SobolResult(
        per_output=per_output,
        sample_count=expected,
        base_samples=n,
        empty_archive_fraction=empty_fraction,
    )


def run_sweep(
    scenario: TrajectoryLog,
    cfg: SweepConfig | None = None,
    n_jobs: int = 1,
) -> tuple[np.ndarray, np.ndarray, SobolResult]:
    """Sample, evaluate and estimate in one call.

    Returns (parameter rows, output matrix, indices).
    """
    if cfg is None:
        cfg = SweepConfig()
    rows = saltelli_sample(cfg)
    cache = build_cache(resample(scenario, cfg.dt))
    outputs, empty_fraction = evaluate_samples(rows, cache, cfg, n_jobs=n_jobs)
    return rows, outputs, sobol_indices(outputs, cfg, empty_fraction)


def sobol_result_dict(result: SobolResult) -> dict:
    """JSON-friendly view of a SobolResult."""
    outputs = {}
    for name, idx in result.per_output.items():
        if idx.degenerate:
            outputs[name] = {"degenerate": True}
            continue
        outputs[name] = {
            "S1": dict(idx.S1),
            "S2": {f"{a}*{b}": v for (a, b), v in idx.S2.items()},
            "ST": dict(idx.ST),
        }
    return {
        "outputs": outputs,
        "n_base": result.base_samples,
        "n_total": result.sample_count,
        "empty_archive_fraction": result.empty_archive_fraction,
    }
