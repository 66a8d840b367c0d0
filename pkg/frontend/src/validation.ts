/**
 * Client-side validation of a run request draft, mirroring the engine's
 * parameter invariants so obviously invalid submissions never leave the
 * browser.
 */

import type { RunRequest, ScenarioInfo } from "./api";

export type DraftErrors = Partial<Record<keyof RunRequest | "general", string>>;

export function validateDraft(
  draft: RunRequest,
  scenario: ScenarioInfo | null,
): DraftErrors {
  const errors: DraftErrors = {};
  if (!draft.scenario_id) {
    errors.scenario_id = "upload or pick a scenario first";
  }
  if (!(draft.H_nm > 0)) {
    errors.H_nm = "must be positive";
  }
  if (!(draft.thresh_h_nm > draft.H_nm)) {
    errors.thresh_h_nm = "must exceed the minimal horizontal threshold";
  }
  if (!(draft.V_ft > 0)) {
    errors.V_ft = "must be positive";
  }
  if (!(draft.thresh_v_ft > draft.V_ft)) {
    errors.thresh_v_ft = "must exceed the minimal vertical threshold";
  }
  if (!(draft.complexity_thresh_pct > 0 && draft.complexity_thresh_pct <= 100)) {
    errors.complexity_thresh_pct = "must be in (0, 100]";
  }
  if (!(draft.dt_s > 0)) {
    errors.dt_s = "must be positive";
  }
  if (scenario) {
    const known = new Set(scenario.callsigns);
    const unknown = draft.exclude.filter((cs) => !known.has(cs));
    if (unknown.length) {
      errors.exclude = `not in scenario: ${unknown.join(", ")}`;
    }
    if (draft.exclude.length >= scenario.callsigns.length) {
      errors.exclude = "cannot exclude every aircraft";
    }
  }
  return errors;
}

export function isValid(errors: DraftErrors): boolean {
  return Object.keys(errors).length === 0;
}
