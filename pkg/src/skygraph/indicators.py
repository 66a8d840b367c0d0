"""The four per-snapshot complexity indicators.

Edge density is global; strength, clustering coefficient and
nearest-neighbor degree are per aircraft with the sector total taken as the
sum over aircraft (the convention the contribution step builds on). The
original per-vertex-average view is exposed separately for plotting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TooFewVertices
from .graph import GraphSnapshot

STRENGTH = "strength"
CC = "cc"
NND = "nnd"
INDICATORS = (STRENGTH, CC, NND)


@dataclass(frozen=True)
class IndicatorFrame:
    """Global and per-aircraft indicator values at one time step."""

    time: float
    edge_density: float
    strength: dict[str, float]
    cc: dict[str, float]
    nnd: dict[str, float]
    strength_total: float
    cc_total: float
    nnd_total: float
    max_incident_weight: dict[str, float]
    too_few_vertices: bool = False

    def per_aircraft(self, indicator: str) -> dict[str, float]:
        if indicator not in INDICATORS:
            raise ValueError(f"unknown indicator {indicator!r}")
        return getattr(self, indicator)

    def total(self, indicator: str) -> float:
        if indicator not in INDICATORS:
            raise ValueError(f"unknown indicator {indicator!r}")
        return getattr(self, f"{indicator}_total")

    def average(self, indicator: str) -> float:
        """Per-vertex average view of a summed indicator (for plotting)."""
        n = len(self.per_aircraft(indicator))
        return self.total(indicator) / n if n else 0.0


def edge_density(g: GraphSnapshot) -> float:
    """Total edge weight over the maximum possible for the vertex count."""
    n = len(g.vertices)
    if n < 2:
        raise TooFewVertices(f"edge density undefined for {n} vertices")
    return sum(g.edges.values()) / (n * (n - 1) / 2)


def strength(g: GraphSnapshot, i: str) -> float:
    """Sum of the weights of the edges incident to i."""
    return sum(g.neighbors(i).values())


def clustering_coefficient(g: GraphSnapshot, i: str) -> float:
    """Triangle-based local cohesiveness of i, weighted by edge strengths.

    Sums (w_ij + w_jk) over ordered neighbor pairs (j, k) that close a
    triangle with i, normalized by 2*s(i)*(deg(i)-1). Zero by convention
    when i has fewer than two neighbors.
    """
    nbrs = g.neighbors(i)
    deg = len(nbrs)
    if deg <= 1:
        return 0.0
    total = 0.0
    for j, w_ij in nbrs.items():
        for k in nbrs:
            if k == j:
                continue
            w_jk = g.weight(j, k)
            if w_jk > 0.0:
                total += w_ij + w_jk
    s = sum(nbrs.values())
    return total / (2 * s * (deg - 1))


def nearest_neighbor_degree(g: GraphSnapshot, i: str) -> float:
    """Strength-weighted average degree of i's neighbors; 0 when isolated."""
    nbrs = g.neighbors(i)
    s = sum(nbrs.values())
    if s == 0.0:
        return 0.0
    return sum(w * len(g.neighbors(j)) for j, w in nbrs.items()) / s


def max_incident_weight(g: GraphSnapshot, i: str) -> float:
    """Largest single interdependency i is part of (1 = loss of separation)."""
    nbrs = g.neighbors(i)
    return max(nbrs.values()) if nbrs else 0.0


def compute_frame(g: GraphSnapshot) -> IndicatorFrame:
    """Evaluate all four indicators for one snapshot."""
    try:
        density = edge_density(g)
        flagged = False
    except TooFewVertices:
        density = 0.0
        flagged = True
    s = {i: strength(g, i) for i in g.vertices}
    cc = {i: clustering_coefficient(g, i) for i in g.vertices}
    nnd = {i: nearest_neighbor_degree(g, i) for i in g.vertices}
    return IndicatorFrame(
        time=g.time,
        edge_density=density,
        strength=s,
        cc=cc,
        nnd=nnd,
        strength_total=sum(s.values()),
        cc_total=sum(cc.values()),
        nnd_total=sum(nnd.values()),
        max_incident_weight={i: max_incident_weight(g, i) for i in g.vertices},
        too_few_vertices=flagged,
    )
