/**
 * Planar local-tangent projection for the sector views: NM offsets from a
 * reference point, x east, y north. Pure geometry; all complexity numbers
 * stay untouched service payloads.
 */

import type { Frame } from "./api";

const NM_PER_DEG_LAT = 60.04086013260273; // spherical radius 3440.065 NM

export interface Projection {
  lat0: number;
  lon0: number;
  toXY(lat: number, lon: number): { x: number; y: number };
}

export function projectionFor(frames: Frame[]): Projection {
  let latSum = 0;
  let lonSum = 0;
  let count = 0;
  for (const frame of frames) {
    for (const ac of frame.aircraft) {
      latSum += ac.lat;
      lonSum += ac.lon;
      count += 1;
    }
  }
  const lat0 = count ? latSum / count : 0;
  const lon0 = count ? lonSum / count : 0;
  const cosLat = Math.cos((lat0 * Math.PI) / 180);
  return {
    lat0,
    lon0,
    toXY(lat: number, lon: number) {
      return {
        x: (lon - lon0) * NM_PER_DEG_LAT * cosLat,
        y: (lat - lat0) * NM_PER_DEG_LAT,
      };
    },
  };
}
