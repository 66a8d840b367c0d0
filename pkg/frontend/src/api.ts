/**
 * Typed client for the analysis service.
 *
 * Every number shown anywhere in the UI originates from these payloads;
 * the client never recomputes complexity quantities.
 */

export type IndicatorName = "strength" | "cc" | "nnd";

export interface AircraftFrame {
  callsign: string;
  lat: number;
  lon: number;
  alt_ft: number;
  strength: number;
  cc: number;
  nnd: number;
  max_w: number;
  combined_pct: number;
  per_indicator: Partial<Record<IndicatorName, number>>;
}

export interface FrameEdge {
  a: string;
  b: string;
  w: number;
}

export interface Frame {
  time: number;
  edge_density: number;
  too_few_vertices: boolean;
  active_indicators: IndicatorName[];
  aircraft: AircraftFrame[];
  edges: FrameEdge[];
}

export interface MemberEvent {
  callsign: string;
  joined_s: number;
  left_s: number | null;
}

export interface CommunityRecord {
  label: number;
  name: string;
  appearance_s: number;
  disappearance_s: number | null;
  members: MemberEvent[];
  contribution_pct: [number, number][];
}

export interface HeatmapRow {
  label: number;
  name: string;
  values: (number | null)[];
}

export interface Heatmap {
  times: number[];
  rows: HeatmapRow[];
  pool: number[];
  active: boolean[];
}

export interface StatBlock {
  mean: number;
  std: number;
  min: number;
  max: number;
}

export interface Summary {
  schema_version: number;
  params: Record<string, number>;
  communities: {
    count: number;
    size: StatBlock | null;
    duration_s: StatBlock | null;
    percentage: StatBlock | null;
  };
}

export interface ScenarioInfo {
  scenario_id: string;
  aircraft_count: number;
  callsigns: string[];
  t_start_s: number;
  t_end_s: number;
  row_count: number;
}

export interface RunRequest {
  scenario_id: string;
  H_nm: number;
  V_ft: number;
  thresh_h_nm: number;
  thresh_v_ft: number;
  complexity_thresh_pct: number;
  dt_s: number;
  exclude: string[];
}

export interface RunStatus {
  run_id: string;
  scenario_id: string;
  status: "pending" | "done" | "failed";
  request?: Record<string, unknown>;
  community_count?: number;
  error?: string;
}

export interface RunArtifacts {
  runId: string;
  request: RunRequest;
  frames: Frame[];
  communities: CommunityRecord[];
  heatmap: Heatmap;
  summary: Summary;
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = `${resp.status} ${resp.statusText}`;
    try {
      const body = await resp.json();
      detail = JSON.stringify(body.detail ?? body);
    } catch {
      // keep the status line
    }
    throw new Error(detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async uploadScenario(csv: Blob | string): Promise<ScenarioInfo> {
    const resp = await fetch(`${this.base}/scenarios`, {
      method: "POST",
      body: csv,
      headers: { "Content-Type": "text/csv" },
    });
    return asJson<ScenarioInfo>(resp);
  }

  async getScenario(scenarioId: string): Promise<ScenarioInfo> {
    return asJson(await fetch(`${this.base}/scenarios/${scenarioId}`));
  }

  async createRun(request: RunRequest): Promise<RunStatus> {
    const resp = await fetch(`${this.base}/runs`, {
      method: "POST",
      body: JSON.stringify(request),
      headers: { "Content-Type": "application/json" },
    });
    return asJson<RunStatus>(resp);
  }

  async fetchArtifacts(runId: string, request: RunRequest): Promise<RunArtifacts> {
    const [frames, communities, heatmap, summary] = await Promise.all([
      asJson<Frame[]>(await fetch(`${this.base}/runs/${runId}/frames`)),
      asJson<CommunityRecord[]>(await fetch(`${this.base}/runs/${runId}/communities`)),
      asJson<Heatmap>(await fetch(`${this.base}/runs/${runId}/heatmap`)),
      asJson<Summary>(await fetch(`${this.base}/runs/${runId}/summary`)),
    ]);
    return { runId, request, frames, communities, heatmap, summary };
  }

  summaryFileUrl(runId: string): string {
    return `${this.base}/runs/${runId}/summary-file`;
  }
}
