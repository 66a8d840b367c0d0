/**
 * Complexity animation scene: aircraft at projected positions labeled with
 * their combined contribution, edges weight-scaled, and edges inside a
 * currently-complex community flagged red.
 */

import type { CommunityRecord, Frame } from "../api";
import { complexSetsAt, edgeInsideComplex } from "../membership";
import type { Projection } from "../projection";

export interface SceneAircraft {
  callsign: string;
  x: number;
  y: number;
  contributionPct: number;
}

export interface SceneEdge {
  a: string;
  b: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  weight: number;
  red: boolean;
}

export interface ComplexityScene {
  time: number;
  aircraft: SceneAircraft[];
  edges: SceneEdge[];
}

export function buildComplexityScene(
  frames: Frame[],
  archive: CommunityRecord[],
  cursor: number,
  proj: Projection,
): ComplexityScene {
  const frame = frames[cursor];
  const complex = complexSetsAt(archive, frame.time);
  const positions = new Map<string, { x: number; y: number }>();
  const aircraft = frame.aircraft.map((ac) => {
    const p = proj.toXY(ac.lat, ac.lon);
    positions.set(ac.callsign, p);
    return {
      callsign: ac.callsign,
      x: p.x,
      y: p.y,
      contributionPct: ac.combined_pct,
    };
  });
  const edges = frame.edges.map((edge) => {
    const pa = positions.get(edge.a)!;
    const pb = positions.get(edge.b)!;
    return {
      a: edge.a,
      b: edge.b,
      x1: pa.x,
      y1: pa.y,
      x2: pb.x,
      y2: pb.y,
      weight: edge.w,
      red: edgeInsideComplex(edge, complex),
    };
  });
  return { time: frame.time, aircraft, edges };
}
