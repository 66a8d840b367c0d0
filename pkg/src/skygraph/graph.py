"""Weighted undirected interdependency graph built per time step.

Two aircraft are interdependent when they are inside both the horizontal and
vertical proximity thresholds; the edge weight grows to 1 as they close in on
the safety distances (loss of separation).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParams, UnknownVertex
from .trajectory import AircraftState, horizontal_distance, vertical_distance


@dataclass(frozen=True)
class WeightParams:
    """Distance parameters for the interdependency weights.

    H/V are the safety distances (weight saturates at 1), thresh_h/thresh_v
    the outer cutoffs (weight 0 beyond), min_h/min_v the denominators of the
    linear ramp. min_h defaults to H and min_v to V, which makes each ramp
    continuous at the safety boundary.
    """

    H: float = 5.0  # NM
    V: float = 1000.0  # ft
    thresh_h: float = 33.0  # NM
    thresh_v: float = 3000.0  # ft
    min_h: float | None = None  # NM, defaults to H
    min_v: float | None = None  # ft, defaults to V

    def __post_init__(self):
        if self.min_h is None:
            object.__setattr__(self, "min_h", self.H)
        if self.min_v is None:
            object.__setattr__(self, "min_v", self.V)
        if not 0 < self.H <= self.min_h < self.thresh_h:
            raise InvalidParams(
                f"need 0 < H <= min_h < thresh_h, got "
                f"H={self.H}, min_h={self.min_h}, thresh_h={self.thresh_h}"
            )
        if not 0 < self.V <= self.min_v < self.thresh_v:
            raise InvalidParams(
                f"need 0 < V <= min_v < thresh_v, got "
                f"V={self.V}, min_v={self.min_v}, thresh_v={self.thresh_v}"
            )


def edge_key(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered key for an edge."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class GraphSnapshot:
    """The interdependency graph at one time step.

    Only positive weights are stored; a missing pair means no
    interdependency. Keys are canonical unordered pairs (see edge_key).
    """

    time: float
    vertices: frozenset[str]
    edges: dict[tuple[str, str], float]
    _adj: dict[str, dict[str, float]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: dict[str, dict[str, float]] = {v: {} for v in self.vertices}
        for (a, b), w in self.edges.items():
            if a == b:
                raise ValueError(f"self-edge on {a}")
            if not 0 < w <= 1:
                raise ValueError(f"edge {a}-{b} weight {w} outside (0, 1]")
            if (a, b) != edge_key(a, b):
                raise ValueError(f"edge key ({a}, {b}) not canonical")
            if a not in adj or b not in adj:
                raise ValueError(f"edge {a}-{b} references unknown vertex")
            adj[a][b] = w
            adj[b][a] = w
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, i: str) -> dict[str, float]:
        if i not in self._adj:
            raise UnknownVertex(i)
        return self._adj[i]

    def weight(self, a: str, b: str) -> float:
        """Weight of edge a-b, 0 when not interdependent."""
        return self.edges.get(edge_key(a, b), 0.0)


def horizontal_weight(dh: float, p: WeightParams) -> float:
    """Horizontal interdependency weight for a pair at distance dh NM."""
    if dh <= p.H:
        return 1.0
    if dh >= p.thresh_h:
        return 0.0
    w = (p.thresh_h - dh) / (p.thresh_h - p.min_h)
    return min(1.0, max(0.0, w))


def vertical_weight(dv: float, p: WeightParams) -> float:
    """Vertical interdependency weight for a pair at distance dv ft."""
    if dv <= p.V:
        return 1.0
    if dv >= p.thresh_v:
        return 0.0
    w = (p.thresh_v - dv) / (p.thresh_v - p.min_v)
    return min(1.0, max(0.0, w))


def pair_weight(wh: float, wv: float) -> float:
    """Overall interdependency: average of the two, 0 unless both positive."""
    if wh > 0 and wv > 0:
        return (wh + wv) / 2
    return 0.0


def build_snapshot(states: list[AircraftState], p: WeightParams) -> GraphSnapshot:
    """Build the interdependency graph for the aircraft present at one time.

    Vertices are all aircraft present, isolated ones included; edges exist
    for exactly the pairs with a positive pair weight.
    """
    if not states:
        return GraphSnapshot(time=0.0, vertices=frozenset(), edges={})
    times = {s.time for s in states}
    if len(times) != 1:
        raise ValueError(f"states span multiple times: {sorted(times)}")
    ordered = sorted(states, key=lambda s: s.callsign)
    edges: dict[tuple[str, str], float] = {}
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            wh = horizontal_weight(horizontal_distance(a, b), p)
            if wh == 0.0:
                continue
            wv = vertical_weight(vertical_distance(a, b), p)
            w = pair_weight(wh, wv)
            if w > 0.0:
                edges[edge_key(a.callsign, b.callsign)] = w
    return GraphSnapshot(
        time=times.pop(),
        vertices=frozenset(s.callsign for s in ordered),
        edges=edges,
    )


def degree(g: GraphSnapshot, i: str) -> int:
    """Number of positive-weight edges incident to i."""
    return len(g.neighbors(i))
