import pytest

from skygraph.contributions import (
    combined_contribution,
    community_contribution,
    indicator_contribution,
)
from skygraph.errors import InvalidWeights, UnknownVertex
from skygraph.indicators import IndicatorFrame, compute_frame

from conftest import make_snapshot, random_snapshot
from test_indicators import example_snapshot


def artificial_frame(strengths, cc=None, nnd=None):
    names = list(strengths)
    cc = cc or {v: 0.0 for v in names}
    nnd = nnd or {v: 0.0 for v in names}
    return IndicatorFrame(
        time=0.0,
        edge_density=0.0,
        strength=strengths,
        cc=cc,
        nnd=nnd,
        strength_total=sum(strengths.values()),
        cc_total=sum(cc.values()),
        nnd_total=sum(nnd.values()),
        max_incident_weight={v: 0.0 for v in names},
    )


# -- per-indicator contributions ------------------------------------------------


def test_example_strength_contributions():
    frame = compute_frame(example_snapshot())
    contrib = indicator_contribution(frame, "strength")
    expected = {"1": 0.22, "2": 0.28, "3": 0.26, "4": 0.22, "5": 0.02}
    for v, frac in expected.items():
        assert contrib[v] == pytest.approx(frac, abs=1e-12)


def test_inactive_indicator_empty_map():
    frame = artificial_frame({"A": 0.0, "B": 0.0})
    assert indicator_contribution(frame, "strength") == {}


def test_single_nonzero_aircraft_gets_everything():
    frame = artificial_frame({"A": 0.7, "B": 0.0})
    contrib = indicator_contribution(frame, "strength")
    assert contrib["A"] == pytest.approx(1.0)
    assert contrib["B"] == 0.0


def test_unknown_indicator_rejected():
    frame = artificial_frame({"A": 1.0})
    with pytest.raises(ValueError):
        indicator_contribution(frame, "edge_density")


# -- combined contributions -------------------------------------------------------


def test_single_active_indicator_reduces_to_its_percentages():
    strengths = {"1": 1.1, "2": 1.4, "3": 1.3, "4": 1.1, "5": 0.1}
    frame = artificial_frame(strengths)
    cf = combined_contribution(frame)
    assert cf.active_indicators == {"strength"}
    for v, s in strengths.items():
        assert cf.combined[v] == pytest.approx(s / 5.0 * 100.0, abs=1e-9)


def test_two_aircraft_single_edge_splits_evenly():
    cf = combined_contribution(compute_frame(make_snapshot({("A", "B"): 0.7})))
    # strength and NND are active, CC is not (no triangle)
    assert cf.active_indicators == {"strength", "nnd"}
    assert cf.combined["A"] == pytest.approx(50.0, abs=1e-9)
    assert cf.combined["B"] == pytest.approx(50.0, abs=1e-9)


def test_empty_graph_no_complexity():
    cf = combined_contribution(compute_frame(make_snapshot({}, vertices=["A", "B"])))
    assert cf.active_indicators == frozenset()
    assert not cf.has_complexity
    assert all(v == 0.0 for v in cf.combined.values())


def test_combined_sums_to_100_when_active(rng):
    for _ in range(50):
        cf = combined_contribution(compute_frame(random_snapshot(rng, p=0.4)))
        total = sum(cf.combined.values())
        if cf.active_indicators:
            assert total == pytest.approx(100.0, abs=1e-6)
        else:
            assert total == 0.0


def test_scale_invariance_of_strength_contributions(rng):
    for _ in range(20):
        g = random_snapshot(rng, p=0.5)
        lam = float(rng.uniform(0.1, 1.0))
        scaled = make_snapshot(
            {pair: w * lam for pair, w in g.edges.items()}, vertices=sorted(g.vertices)
        )
        c1 = indicator_contribution(compute_frame(g), "strength")
        c2 = indicator_contribution(compute_frame(scaled), "strength")
        assert set(c1) == set(c2)
        for v in c1:
            assert c1[v] == pytest.approx(c2[v], abs=1e-9)


def test_weighted_uniform_equals_unweighted(rng):
    for _ in range(20):
        frame = compute_frame(random_snapshot(rng, p=0.5))
        plain = combined_contribution(frame)
        weighted = combined_contribution(
            frame, weights={"strength": 1.0, "cc": 1.0, "nnd": 1.0}
        )
        for v in plain.combined:
            assert plain.combined[v] == pytest.approx(weighted.combined[v], abs=1e-12)


def test_weighted_mode_renormalizes_over_active_set():
    # No triangles -> cc inactive; its weight must be redistributed.
    frame = compute_frame(make_snapshot({("A", "B"): 0.4}))
    cf = combined_contribution(frame, weights={"strength": 3.0, "cc": 5.0, "nnd": 1.0})
    assert cf.active_indicators == {"strength", "nnd"}
    # strength share 3/4, nnd share 1/4; both contributions are 50/50 anyway
    assert cf.combined["A"] == pytest.approx(50.0)


def test_invalid_weights():
    frame = compute_frame(make_snapshot({("A", "B"): 0.4}))
    with pytest.raises(InvalidWeights):
        combined_contribution(frame, weights={"strength": -1.0})
    with pytest.raises(InvalidWeights):
        combined_contribution(frame, weights={"strength": 0.0, "cc": 0.0, "nnd": 0.0})
    with pytest.raises(InvalidWeights):
        combined_contribution(frame, weights={"bogus": 1.0})
    with pytest.raises(InvalidWeights):
        # Positive weight only on the inactive indicator.
        combined_contribution(frame, weights={"cc": 1.0})


# -- community contributions -------------------------------------------------------


def test_all_aircraft_sum_to_100():
    cf = combined_contribution(compute_frame(example_snapshot()))
    assert community_contribution(cf, set("12345")) == pytest.approx(100.0, abs=1e-6)


def test_empty_member_set_is_zero():
    cf = combined_contribution(compute_frame(example_snapshot()))
    assert community_contribution(cf, set()) == 0.0


def test_unknown_member_rejected():
    cf = combined_contribution(compute_frame(example_snapshot()))
    with pytest.raises(UnknownVertex):
        community_contribution(cf, {"1", "Z"})


def test_mirrored_topology_weaker_half_contributes_less():
    # Same shape on both halves, weaker weights on the second; the strong
    # half must take the larger share.
    strong = {("1", "2"): 0.9, ("2", "3"): 0.8, ("3", "4"): 0.7, ("1", "4"): 0.6}
    weak = {("5", "6"): 0.45, ("6", "7"): 0.4, ("7", "8"): 0.35, ("5", "8"): 0.3}
    bridge = {("4", "5"): 0.2}
    cf = combined_contribution(compute_frame(make_snapshot(strong | weak | bridge)))
    strong_half = community_contribution(cf, {"1", "2", "3", "4"})
    weak_half = community_contribution(cf, {"5", "6", "7", "8"})
    assert strong_half > weak_half
    assert strong_half + weak_half == pytest.approx(100.0, abs=1e-6)


def test_partition_additivity(rng):
    for _ in range(30):
        g = random_snapshot(rng, p=0.4)
        cf = combined_contribution(compute_frame(g))
        if not cf.active_indicators:
            continue
        names = sorted(g.vertices)
        cut = int(rng.integers(0, len(names) + 1))
        part_a, part_b = set(names[:cut]), set(names[cut:])
        total = community_contribution(cf, part_a) + community_contribution(cf, part_b)
        assert total == pytest.approx(100.0, abs=1e-6)
