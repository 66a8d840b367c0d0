import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import type { CommunityRecord, Frame, Heatmap, Summary } from "../src/api";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export interface FixtureRun {
  frames: Frame[];
  communities: CommunityRecord[];
  heatmap: Heatmap;
  summary: Summary;
}

export function packagedRun(): FixtureRun {
  return {
    frames: load<Frame[]>("run-frames.json"),
    communities: load<CommunityRecord[]>("run-communities.json"),
    heatmap: load<Heatmap>("run-heatmap.json"),
    summary: load<Summary>("run-summary.json"),
  };
}

export function packagedRunWithoutAC1(): FixtureRun {
  return {
    frames: load<Frame[]>("run-without-ac1-frames.json"),
    communities: load<CommunityRecord[]>("run-without-ac1-communities.json"),
    heatmap: load<Heatmap>("run-without-ac1-heatmap.json"),
    summary: load<Summary>("run-without-ac1-summary.json"),
  };
}
