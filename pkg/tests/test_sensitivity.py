import numpy as np
import pytest

from skygraph.engine import build_cache
from skygraph.errors import InvalidBounds
from skygraph.sensitivity import (
    SweepConfig,
    evaluate_samples,
    saltelli_sample,
    sobol_indices,
)
from skygraph.scenarios import bridged_chain_log
from skygraph.trajectory import AircraftState, TrajectoryLog, resample

UNIT_CFG = SweepConfig(
    bounds={"thresh_h": (0.0, 1.0), "complexity": (0.0, 1.0)}, base_samples=256
)


def analytic_indices(f, cfg):
    rows = saltelli_sample(cfg)
    y = f(rows)
    n, k = cfg.base_samples, len(cfg.param_names)
    mat = np.repeat(y[:, None], len(cfg.outputs), axis=1)
    result = sobol_indices(mat, cfg)
    return result.per_output[cfg.outputs[0]]


# -- sampling -------------------------------------------------------------------


def test_sample_count_matches_block_structure():
    cfg = SweepConfig(base_samples=8)
    rows = saltelli_sample(cfg)
    assert rows.shape == (8 * (2 * 2 + 2), 2)  # N(2k+2), k=2


def test_samples_within_bounds():
    cfg = SweepConfig(base_samples=64)
    rows = saltelli_sample(cfg)
    assert (rows[:, 0] >= 15.0).all() and (rows[:, 0] <= 75.0).all()
    assert (rows[:, 1] >= 40.0).all() and (rows[:, 1] <= 100.0).all()


def test_default_design_size_matches_reported_scale():
    # N=1024 over two parameters gives 6144 evaluated combinations,
    # the ~6200 scale of the published experiment.
    cfg = SweepConfig()
    assert cfg.base_samples * (2 * 2 + 2) == 6144


def test_sampling_is_deterministic():
    cfg = SweepConfig(base_samples=32)
    assert np.array_equal(saltelli_sample(cfg), saltelli_sample(cfg))


def test_invalid_bounds():
    with pytest.raises(InvalidBounds):
        SweepConfig(bounds={"thresh_h": (75.0, 15.0), "complexity": (40.0, 100.0)})
    with pytest.raises(InvalidBounds):
        SweepConfig(base_samples=100)  # not a power of two
    with pytest.raises(InvalidBounds):
        SweepConfig(base_samples=1)
    with pytest.raises(InvalidBounds):
        SweepConfig(bounds={"nonsense": (0.0, 1.0)})


# -- estimators against analytic oracles ---------------------------------------------


def test_additive_function_recovers_analytic_shares():
    # Var(x1 + 2 x2) = 1/12 + 4/12; S1 = (0.2, 0.8), no interaction.
    idx = analytic_indices(lambda r: r[:, 0] + 2.0 * r[:, 1], UNIT_CFG)
    assert idx.S1["thresh_h"] == pytest.approx(0.2, abs=0.05)
    assert idx.S1["complexity"] == pytest.approx(0.8, abs=0.05)
    assert abs(idx.S2[("thresh_h", "complexity")]) <= 0.05
    assert abs(idx.ST["thresh_h"] - idx.S1["thresh_h"]) <= 0.05
    assert abs(idx.ST["complexity"] - idx.S1["complexity"]) <= 0.05


def test_single_factor_function_zeroes_the_other_index():
    idx = analytic_indices(lambda r: r[:, 0], UNIT_CFG)
    assert idx.S1["thresh_h"] == pytest.approx(1.0, abs=0.05)
    assert abs(idx.S1["complexity"]) <= 0.05
    assert abs(idx.ST["complexity"]) <= 0.05


def test_interaction_function_shows_up_in_s2():
    # f = x1 * x2 on [0,1]^2 has interaction variance; S2 must be positive.
    idx = analytic_indices(lambda r: r[:, 0] * r[:, 1], UNIT_CFG)
    assert idx.S2[("thresh_h", "complexity")] > 0.02
    assert idx.ST["thresh_h"] > idx.S1["thresh_h"]


def test_constant_output_degenerate():
    cfg = SweepConfig(base_samples=16)
    rows = saltelli_sample(cfg)
    mat = np.ones((len(rows), 3)) * 4.2
    result = sobol_indices(mat, cfg)
    assert all(idx.degenerate for idx in result.per_output.values())


def test_estimates_converge_with_doubling():
    # The sequence is deterministic, so this is exact regression, not chance.
    errors = []
    for n in (256, 512, 1024):
        cfg = SweepConfig(
            bounds={"thresh_h": (0.0, 1.0), "complexity": (0.0, 1.0)}, base_samples=n
        )
        idx = analytic_indices(lambda r: r[:, 0] + 2.0 * r[:, 1], cfg)
        errors.append(
            abs(idx.S1["thresh_h"] - 0.2) + abs(idx.S1["complexity"] - 0.8)
        )
    assert errors[1] <= errors[0] + 1e-12
    assert errors[2] <= errors[1] + 1e-12


def test_output_matrix_shape_validated():
    cfg = SweepConfig(base_samples=16)
    with pytest.raises(InvalidBounds):
        sobol_indices(np.zeros((10, 3)), cfg)


# -- pipeline evaluation ----------------------------------------------------------


def lonely_log():
    states = tuple(
        AircraftState("AC1", 10.0 * k, 40.0, -3.0, 35000.0) for k in range(10)
    )
    return TrajectoryLog(states, 0.0, 90.0, None)


def test_zero_traffic_scenario_all_outputs_zero():
    cfg = SweepConfig(base_samples=4)
    rows = saltelli_sample(cfg)
    outputs, empty_fraction = evaluate_samples(rows, lonely_log(), cfg)
    assert (outputs == 0.0).all()
    assert empty_fraction == 1.0


def test_duplicate_rows_identical_outputs():
    cfg = SweepConfig(base_samples=4)
    cache = build_cache(resample(bridged_chain_log(), 10.0))
    row = np.array([[33.0, 60.0], [33.0, 60.0], [50.0, 80.0], [50.0, 80.0]])
    outputs, _ = evaluate_samples(row, cache, cfg)
    assert np.array_equal(outputs[0], outputs[1])
    assert np.array_equal(outputs[2], outputs[3])


def test_evaluation_order_insensitive(rng):
    cfg = SweepConfig(base_samples=4)
    cache = build_cache(resample(bridged_chain_log(), 10.0))
    rows = saltelli_sample(cfg)
    outputs, _ = evaluate_samples(rows, cache, cfg)
    perm = rng.permutation(len(rows))
    shuffled, _ = evaluate_samples(rows[perm], cache, cfg)
    assert np.allclose(outputs[perm], shuffled)


def test_parallel_equals_serial():
    cfg = SweepConfig(base_samples=2)
    cache = build_cache(resample(bridged_chain_log(), 10.0))
    rows = saltelli_sample(cfg)
    serial, fs = evaluate_samples(rows, cache, cfg, n_jobs=1)
    parallel, fp = evaluate_samples(rows, cache, cfg, n_jobs=2)
    assert np.array_equal(serial, parallel)
    assert fs == fp


def test_bridged_chain_outputs_at_defaults():
    cfg = SweepConfig(base_samples=4)
    cache = build_cache(resample(bridged_chain_log(), 10.0))
    outputs, _ = evaluate_samples(np.array([[33.0, 60.0]]), cache, cfg)
    count, median_size, median_duration = outputs[0]
    assert count == 1.0
    assert median_size == 7.0
    assert median_duration == 1200.0 - 130.0 + 10.0
