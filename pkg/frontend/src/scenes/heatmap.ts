/**
 * Heatmap scene: one row per community label over the run window plus the
 * Pool row holding the residual contribution. Absent cells stay null and
 * render blank.
 */

import type { Heatmap } from "../api";

export interface HeatmapSceneRow {
  name: string;
  values: (number | null)[];
}

export interface HeatmapScene {
  times: number[];
  rows: HeatmapSceneRow[]; // community rows first, Pool always last
}

export function buildHeatmapScene(heatmap: Heatmap): HeatmapScene {
  const rows: HeatmapSceneRow[] = heatmap.rows.map((row) => ({
    name: row.name,
    values: row.values,
  }));
  rows.push({
    name: "Pool",
    values: heatmap.times.map((_, k) =>
      heatmap.active[k] ? heatmap.pool[k] : null,
    ),
  });
  return { times: heatmap.times, rows };
}
