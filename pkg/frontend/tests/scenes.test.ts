import { describe, expect, it } from "vitest";

import { projectionFor } from "../src/projection";
import { buildComplexityScene } from "../src/scenes/complexity";
import { buildStrengthScene } from "../src/scenes/strength";
import { buildHeatmapScene } from "../src/scenes/heatmap";
import { buildSummaryTable } from "../src/scenes/table";
import { complexSetsAt } from "../src/membership";
import { packagedRun, packagedRunWithoutAC1 } from "./fixtures";

const run = packagedRun();

describe("heatmap scene", () => {
  it("renders one row per community label plus the Pool row last", () => {
    const scene = buildHeatmapScene(run.heatmap);
    expect(scene.rows.map((r) => r.name)).toEqual(["Community 1", "Pool"]);
    expect(scene.times).toEqual(run.heatmap.times);
  });

  it("passes community cell values through unchanged", () => {
    const scene = buildHeatmapScene(run.heatmap);
    expect(scene.rows[0].values).toEqual(run.heatmap.rows[0].values);
  });

  it("shows the Pool only at steps with activity and blanks elsewhere", () => {
    const scene = buildHeatmapScene(run.heatmap);
    const pool = scene.rows.at(-1)!;
    run.heatmap.active.forEach((active, k) => {
      if (active) {
        expect(pool.values[k]).toBe(run.heatmap.pool[k]);
      } else {
        expect(pool.values[k]).toBeNull();
      }
    });
  });

  it("renders three community rows for the exclusion run", () => {
    const scene = buildHeatmapScene(packagedRunWithoutAC1().heatmap);
    expect(scene.rows.map((r) => r.name)).toEqual([
      "Community 1",
      "Community 2",
      "Community 3",
      "Pool",
    ]);
  });
});

describe("complexity scene", () => {
  const proj = projectionFor(run.frames);

  it("labels every aircraft with the service contribution verbatim", () => {
    run.frames.forEach((frame, idx) => {
      const scene = buildComplexityScene(run.frames, run.communities, idx, proj);
      const byCallsign = new Map(frame.aircraft.map((a) => [a.callsign, a]));
      for (const ac of scene.aircraft) {
        expect(ac.contributionPct).toBe(byCallsign.get(ac.callsign)!.combined_pct);
      }
    });
  });

  it("contribution labels at any active cursor sum to 100 within rounding", () => {
    run.frames.forEach((frame, idx) => {
      if (!frame.active_indicators.length) return;
      const scene = buildComplexityScene(run.frames, run.communities, idx, proj);
      const total = scene.aircraft.reduce((acc, a) => acc + a.contributionPct, 0);
      expect(total).toBeCloseTo(100, 6);
    });
  });

  it("marks exactly the edges inside a currently-complex community red", () => {
    run.frames.forEach((frame, idx) => {
      const scene = buildComplexityScene(run.frames, run.communities, idx, proj);
      const complex = complexSetsAt(run.communities, frame.time);
      for (const edge of scene.edges) {
        const inside = complex.some((s) => s.has(edge.a) && s.has(edge.b));
        expect(edge.red).toBe(inside);
      }
    });
  });

  it("red intervals match the archive lifetimes", () => {
    // The packaged run has one community spanning [130, 1200]; edges must be
    // red exactly inside that window and grey outside it.
    const record = run.communities[0];
    run.frames.forEach((frame, idx) => {
      if (!frame.edges.length) return;
      const scene = buildComplexityScene(run.frames, run.communities, idx, proj);
      const anyRed = scene.edges.some((e) => e.red);
      const inLifetime =
        frame.time >= record.appearance_s && frame.time <= record.disappearance_s!;
      expect(anyRed).toBe(inLifetime);
    });
  });
});

describe("empty frames", () => {
  it("produces a drawable scene with no aircraft before the first edge", () => {
    const proj = projectionFor(run.frames);
    const scene = buildComplexityScene(run.frames, run.communities, 0, proj);
    // t=0 precedes every engagement: aircraft present, nothing red
    expect(scene.aircraft.length).toBeGreaterThan(0);
    expect(scene.edges).toEqual([]);
  });
});

describe("strength scene", () => {
  it("is a verbatim pass-through of max incident weights", () => {
    const proj = projectionFor(run.frames);
    run.frames.forEach((frame, idx) => {
      const scene = buildStrengthScene(run.frames, idx, proj);
      const byCallsign = new Map(frame.aircraft.map((a) => [a.callsign, a]));
      expect(scene.aircraft.length).toBe(frame.aircraft.length);
      for (const ac of scene.aircraft) {
        expect(ac.maxWeight).toBe(byCallsign.get(ac.callsign)!.max_w);
      }
    });
  });
});

describe("summary table", () => {
  it("lists label, start, end and member join/leave times", () => {
    const rows = buildSummaryTable(run.communities);
    expect(rows).toHaveLength(1);
    const row = rows[0];
    expect(row.label).toBe("Community 1");
    expect(row.start).toBe(130);
    expect(row.end).toBe(1200);
    const ac2 = row.members.find((m) => m.callsign === "AC2")!;
    expect(ac2.joined).toBe(130);
    expect(ac2.left).toBe(410);
    const ac1 = row.members.find((m) => m.callsign === "AC1")!;
    expect(ac1.left).toBeNull();
  });
});
