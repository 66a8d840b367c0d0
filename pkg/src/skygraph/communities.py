"""Complex community detection and label tracking through time.

A complex community is a connected component (two or more aircraft) whose
summed contribution meets the complexity threshold. Identity through time is
propagated by maximal Jaccard similarity against the complex communities of
the previous step only; a label that disappears for even one step is closed
for good.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .contributions import ContributionFrame, community_contribution
from .graph import GraphSnapshot


@dataclass
class MembershipEvent:
    callsign: str
    joined_at: float
    left_at: float | None = None  # None while the member is still present


@dataclass
class CommunityRecord:
    """One labeled complex community and its full history."""

    label: int
    appearance: float
    disappearance: float | None  # None while the label is still live
    membership_events: list[MembershipEvent] = field(default_factory=list)
    contribution_series: dict[float, float] = field(default_factory=dict)

    def members_at(self, t: float) -> set[str]:
        """Live member set at grid time t, reconstructed from the events."""
        return {
            e.callsign
            for e in self.membership_events
            if e.joined_at <= t and (e.left_at is None or e.left_at > t)
        }

    def all_members(self) -> set[str]:
        """Every aircraft that has ever been part of the community."""
        return {e.callsign for e in self.membership_events}

    def display_name(self) -> str:
        return f"Community {self.label}"


@dataclass
class TrackerState:
    """Mutable state carried between tracker steps of one analysis run."""

    threshold: float
    live: dict[int, frozenset[str]] = field(default_factory=dict)
    records: dict[int, CommunityRecord] = field(default_factory=dict)
    next_label: int = 1
    last_time: float | None = None

    @property
    def archive(self) -> list[CommunityRecord]:
        """Records with closed lifetimes, in label order."""
        return [
            self.records[label]
            for label in sorted(self.records)
            if self.records[label].disappearance is not None
        ]


def connected_components(g: GraphSnapshot) -> list[frozenset[str]]:
    """Connected components with two or more members, via BFS over edges.

    Single-aircraft components are filtered out; isolated traffic surfaces
    only through the Pool. Deterministic order: by smallest member callsign.
    """
    seen: set[str] = set()
    components: list[frozenset[str]] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        component = {start}
        frontier = [start]
        seen.add(start)
        while frontier:
            v = frontier.pop()
            for nbr in g.neighbors(v):
                if nbr not in seen:
                    seen.add(nbr)
                    component.add(nbr)
                    frontier.append(nbr)
        if len(component) >= 2:
            components.append(frozenset(component))
    return components


def is_complex(members: set[str], cf: ContributionFrame, thresh: float) -> bool:
    """Whether a community meets the complexity threshold (inclusive)."""
    if not 0 < thresh <= 100:
        raise ValueError(f"threshold {thresh} outside (0, 100]")
    return community_contribution(cf, set(members)) >= thresh


def jaccard(a: set[str] | frozenset[str], b: set[str] | frozenset[str]) -> float:
    """|a ∩ b| / |a ∪ b|; 0 when both sets are empty."""
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def step(
    state: TrackerState,
    t: float,
    complex_sets: list[frozenset[str]],
    contributions: list[float] | None = None,
) -> TrackerState:
    """Advance the tracker by one time step.

    Each current complex set inherits the label of its maximally-similar
    live community from the previous step, or gets a fresh label when no
    live community overlaps it. Live labels that no current set inherits
    are closed with disappearance at the previous step.

    Tie-breaks (the per-set argmax leaves them open): sets are matched in
    descending order of their best similarity, equal similarities prefer
    the older label, and a set whose best label was already taken gets a
    fresh label rather than falling back to its second choice.
    """
    if contributions is not None and len(contributions) != len(complex_sets):
        raise ValueError("contributions must parallel complex_sets")

    # Best live candidate per current set.
    best: list[tuple[float, int] | None] = []
    for members in complex_sets:
        top: tuple[float, int] | None = None
        for label, live_members in state.live.items():
            sim = jaccard(members, live_members)
            if sim <= 0.0:
                continue
            if top is None or sim > top[0]:
                top = (sim, label)
            elif sim == top[0] and _label_age_key(state, label) < _label_age_key(
                state, top[1]
            ):
                top = (sim, label)
        best.append(top)

    order = sorted(
        range(len(complex_sets)),
        key=lambda idx: (
            -(best[idx][0] if best[idx] else 0.0),
            tuple(sorted(complex_sets[idx])),
        ),
    )

    taken: set[int] = set()
    assigned: dict[int, int] = {}  # set index -> label
    for idx in order:
        candidate = best[idx]
        if candidate is not None and candidate[1] not in taken:
            label = candidate[1]
            taken.add(label)
        else:
            label = state.next_label
            state.next_label += 1
            state.records[label] = CommunityRecord(
                label=label, appearance=t, disappearance=None
            )
        assigned[idx] = label

    # Close live labels nobody inherited.
    for label in list(state.live):
        if label not in taken:
            record = state.records[label]
            record.disappearance = state.last_time
            del state.live[label]

    # Apply membership diffs and contributions.
    new_live: dict[int, frozenset[str]] = {}
    for idx, members in enumerate(complex_sets):
        label = assigned[idx]
        record = state.records[label]
        previous = state.live.get(label, frozenset())
        for callsign in sorted(members - previous):
            record.membership_events.append(MembershipEvent(callsign, joined_at=t))
        for callsign in previous - members:
            for event in record.membership_events:
                if event.callsign == callsign and event.left_at is None:
                    event.left_at = t
        if contributions is not None:
            record.contribution_series[t] = contributions[idx]
        new_live[label] = frozenset(members)

    state.live = new_live
    state.last_time = t
    return state


def _label_age_key(state: TrackerState, label: int) -> tuple[float, int]:
    return (state.records[label].appearance, label)


def finish(state: TrackerState) -> list[CommunityRecord]:
    """Close still-open records at the window end and return the archive."""
    for label in list(state.live):
        record = state.records[label]
        record.disappearance = state.last_time
    state.live = {}
    return state.archive


def run_tracker(
    frames: list[tuple[GraphSnapshot, ContributionFrame]], thresh: float
) -> list[CommunityRecord]:
    """Track complex communities over a time-ordered run of frames."""
    state = TrackerState(threshold=thresh)
    for snapshot, cf in frames:
        complex_sets: list[frozenset[str]] = []
        contributions: list[float] = []
        for members in connected_components(snapshot):
            pct = community_contribution(cf, set(members))
            if pct >= thresh:
                complex_sets.append(members)
                contributions.append(pct)
        step(state, snapshot.time, complex_sets, contributions)
    return finish(state)
