"""Per-aircraft contributions to sector complexity.

Each aircraft's share of an indicator is its value over the sector total;
the combined contribution averages the shares across the indicators that are
actually non-zero at that step, optionally with user weights.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidWeights, UnknownVertex
from .indicators import INDICATORS, IndicatorFrame

# An indicator with total below this is not a source of complexity and is
# excluded from the combination.
ACTIVE_EPS = 1e-12


@dataclass(frozen=True)
class ContributionFrame:
    """Relative complexity contributions at one time step."""

    time: float
    per_indicator: dict[str, dict[str, float]]  # indicator -> callsign -> fraction
    combined: dict[str, float]  # callsign -> percentage
    active_indicators: frozenset[str]
    weights: dict[str, float] | None = None

    @property
    def has_complexity(self) -> bool:
        return bool(self.active_indicators)


def indicator_contribution(frame: IndicatorFrame, indicator: str) -> dict[str, float]:
    """Fraction of the sector total each aircraft holds for one indicator.

    Empty when the sector total is zero (inactive indicator).
    """
    total = frame.total(indicator)
    if total <= ACTIVE_EPS:
        return {}
    values = frame.per_aircraft(indicator)
    return {cs: v / total for cs, v in values.items()}


def combined_contribution(
    frame: IndicatorFrame, weights: dict[str, float] | None = None
) -> ContributionFrame:
    """Combine per-indicator contributions into one percentage per aircraft.

    Unweighted mode averages over the active indicators. Weighted mode uses
    the given indicator weights renormalized over the active set.
    """
    per_indicator = {ind: indicator_contribution(frame, ind) for ind in INDICATORS}
    active = frozenset(ind for ind in INDICATORS if per_indicator[ind])

    if weights is not None:
        unknown = set(weights) - set(INDICATORS)
        if unknown:
            raise InvalidWeights(f"unknown indicators in weights: {sorted(unknown)}")
        if any(w < 0 for w in weights.values()):
            raise InvalidWeights("indicator weights must be non-negative")
        if not any(w > 0 for w in weights.values()):
            raise InvalidWeights("indicator weights must not all be zero")

    combined: dict[str, float] = {cs: 0.0 for cs in frame.strength}
    if active:
        if weights is None:
            norm = {ind: 1.0 / len(active) for ind in active}
        else:
            active_total = sum(weights.get(ind, 0.0) for ind in active)
            if active_total <= 0:
                raise InvalidWeights(
                    f"weights vanish on the active indicators {sorted(active)}"
                )
            norm = {ind: weights.get(ind, 0.0) / active_total for ind in active}
        # Canonical indicator order keeps float accumulation deterministic.
        for ind in (i for i in INDICATORS if i in active):
            w = norm[ind]
            for cs, frac in per_indicator[ind].items():
                combined[cs] += w * frac * 100.0

    return ContributionFrame(
        time=frame.time,
        per_indicator=per_indicator,
        combined=combined,
        active_indicators=active,
        weights=dict(weights) if weights is not None else None,
    )


def community_contribution(cf: ContributionFrame, members: set[str]) -> float:
    """Summed combined contribution (in %) of a group of aircraft."""
    unknown = members - set(cf.combined)
    if unknown:
        raise UnknownVertex(f"not in frame: {sorted(unknown)}")
    # Sorted accumulation keeps the float result independent of set order.
    return sum(cf.combined[cs] for cs in sorted(members))
