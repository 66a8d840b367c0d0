/**
 * Summary table scene: label, start and end time, and every member with its
 * join and leave times.
 */

import type { CommunityRecord } from "../api";

export interface TableMember {
  callsign: string;
  joined: number;
  left: number | null;
}

export interface TableRow {
  label: string;
  start: number;
  end: number | null;
  members: TableMember[];
}

export function buildSummaryTable(archive: CommunityRecord[]): TableRow[] {
  return archive.map((record) => ({
    label: record.name,
    start: record.appearance_s,
    end: record.disappearance_s,
    members: record.members.map((m) => ({
      callsign: m.callsign,
      joined: m.joined_s,
      left: m.left_s,
    })),
  }));
}
