/**
 * Reconstruction of community membership over time from the archive's
 * join/leave events. Used for the red-edge rule: an interdependency is
 * drawn red when both endpoints belong to the same currently-complex
 * community.
 */

import type { CommunityRecord, FrameEdge } from "./api";

/** A record is live (complex) at t throughout [appearance, disappearance]. */
export function recordLiveAt(record: CommunityRecord, t: number): boolean {
  const end = record.disappearance_s;
  return record.appearance_s <= t && (end === null || t <= end);
}

/** Members present at t: joined at or before, not yet marked as left. */
export function membersAt(record: CommunityRecord, t: number): Set<string> {
  const members = new Set<string>();
  for (const e of record.members) {
    if (e.joined_s <= t && (e.left_s === null || e.left_s > t)) {
      members.add(e.callsign);
    }
  }
  return members;
}

/** Member sets of every community that is complex at t. */
export function complexSetsAt(
  records: CommunityRecord[],
  t: number,
): Set<string>[] {
  return records
    .filter((r) => recordLiveAt(r, t))
    .map((r) => membersAt(r, t))
    .filter((m) => m.size > 0);
}

/** Whether an edge lies inside one of the given member sets. */
export function edgeInsideComplex(
  edge: FrameEdge,
  complexSets: Set<string>[],
): boolean {
  return complexSets.some((s) => s.has(edge.a) && s.has(edge.b));
}
