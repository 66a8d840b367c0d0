/**
 * View state and the what-if loop: edit the request draft, submit, swap all
 * views to the new run while keeping the previous one around for
 * side-by-side comparison.
 */

import type { ApiClient, RunArtifacts, RunRequest, ScenarioInfo } from "./api";
import { validateDraft, isValid, type DraftErrors } from "./validation";

export type ViewName = "complexity" | "strength" | "heatmap" | "table";

export interface ViewState {
  scenario: ScenarioInfo | null;
  draft: RunRequest;
  cursor: number;
  view: ViewName;
  current: RunArtifacts | null;
  previous: RunArtifacts | null;
  compare: boolean;
  errors: DraftErrors;
  busy: boolean;
}

export function defaultDraft(scenarioId = ""): RunRequest {
  return {
    scenario_id: scenarioId,
    H_nm: 5.0,
    V_ft: 1000.0,
    thresh_h_nm: 33.0,
    thresh_v_ft: 3000.0,
    complexity_thresh_pct: 60.0,
    dt_s: 10.0,
    exclude: [],
  };
}

export function initialState(): ViewState {
  return {
    scenario: null,
    draft: defaultDraft(),
    cursor: 0,
    view: "complexity",
    current: null,
    previous: null,
    compare: false,
    errors: {},
    busy: false,
  };
}

/** Clamp the playback cursor into the current run's grid. */
export function clampCursor(state: ViewState, cursor: number): number {
  const n = state.current?.frames.length ?? 0;
  if (n === 0) return 0;
  return Math.min(Math.max(0, cursor), n - 1);
}

/**
 * Validate and submit the draft. On success the fetched run becomes
 * current, the old run is retained for comparison, and the cursor is
 * preserved when still in range. Invalid drafts never reach the network.
 */
export async function submitWhatIf(
  state: ViewState,
  api: ApiClient,
): Promise<ViewState> {
  const errors = validateDraft(state.draft, state.scenario);
  if (!isValid(errors)) {
    return { ...state, errors };
  }
  const busyState = { ...state, errors: {}, busy: true };
  try {
    const status = await api.createRun(state.draft);
    const artifacts = await api.fetchArtifacts(status.run_id, { ...state.draft });
    const next: ViewState = {
      ...busyState,
      busy: false,
      previous: state.current,
      current: artifacts,
      cursor: 0,
    };
    next.cursor = clampCursor(next, state.cursor);
    return next;
  } catch (err) {
    return {
      ...busyState,
      busy: false,
      errors: { general: err instanceof Error ? err.message : String(err) },
    };
  }
}
