/**
 * Strength animation scene: each aircraft shown with the maximal weight of
 * the pairwise interdependencies it is part of (1 = loss of separation).
 * Values are verbatim service payload numbers.
 */

import type { Frame } from "../api";
import type { Projection } from "../projection";

export interface StrengthSceneAircraft {
  callsign: string;
  x: number;
  y: number;
  maxWeight: number;
}

export interface StrengthScene {
  time: number;
  aircraft: StrengthSceneAircraft[];
}

export function buildStrengthScene(
  frames: Frame[],
  cursor: number,
  proj: Projection,
): StrengthScene {
  const frame = frames[cursor];
  return {
    time: frame.time,
    aircraft: frame.aircraft.map((ac) => {
      const p = proj.toXY(ac.lat, ac.lon);
      return { callsign: ac.callsign, x: p.x, y: p.y, maxWeight: ac.max_w };
    }),
  };
}
