/**
 * Application bootstrap: scenario upload, parameter form, view tabs,
 * playback over the grid, side-by-side comparison of the last two runs.
 */

import { ApiClient, type RunArtifacts } from "./api";
import { projectionFor } from "./projection";
import { buildComplexityScene } from "./scenes/complexity";
import { buildStrengthScene } from "./scenes/strength";
import { buildHeatmapScene } from "./scenes/heatmap";
import { buildSummaryTable } from "./scenes/table";
import {
  clampCursor,
  defaultDraft,
  initialState,
  submitWhatIf,
  type ViewName,
  type ViewState,
} from "./state";
import { drawComplexity, drawHeatmap, drawStrength, drawTable } from "./render/draw";

const api = new ApiClient("");
let state: ViewState = initialState();
let timer: number | null = null;

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
};

function renderPane(container: HTMLElement, run: RunArtifacts, view: ViewName, cursor: number): void {
  if (!run.frames.length) {
    container.textContent = "no frames";
    return;
  }
  const proj = projectionFor(run.frames);
  const idx = Math.min(cursor, run.frames.length - 1);
  switch (view) {
    case "complexity":
      drawComplexity(container, buildComplexityScene(run.frames, run.communities, idx, proj));
      break;
    case "strength":
      drawStrength(container, buildStrengthScene(run.frames, idx, proj));
      break;
    case "heatmap":
      drawHeatmap(container, buildHeatmapScene(run.heatmap));
      break;
    case "table":
      drawTable(container, buildSummaryTable(run.communities));
      break;
  }
}

function describeRun(run: RunArtifacts): string {
  const req = run.request;
  const excl = req.exclude.length ? `, excl ${req.exclude.join("+")}` : "";
  return `run ${run.runId.slice(0, 8)} (max-h ${req.thresh_h_nm} NM, ${req.complexity_thresh_pct}%${excl})`;
}

function render(): void {
  const current = state.current;
  $("status").textContent = state.busy
    ? "running..."
    : state.errors.general ?? (current ? describeRun(current) : "upload a scenario to begin");

  for (const name of ["complexity", "strength", "heatmap", "table"] as ViewName[]) {
    $(`tab-${name}`).classList.toggle("active", state.view === name);
  }

  const errorBox = $("form-errors");
  const fieldErrors = Object.entries(state.errors).filter(([k]) => k !== "general");
  errorBox.textContent = fieldErrors.map(([k, v]) => `${k}: ${v}`).join("; ");
  for (const input of document.querySelectorAll<HTMLInputElement>("#params input")) {
    input.classList.toggle("invalid", input.name in state.errors);
  }

  const mainPane = $("view-current");
  const comparePane = $("view-previous");
  if (current) {
    renderPane(mainPane, current, state.view, state.cursor);
    $("current-title").textContent = describeRun(current);
  } else {
    mainPane.textContent = "";
    $("current-title").textContent = "";
  }
  const showCompare = state.compare && state.previous;
  $("previous-title").textContent = showCompare ? describeRun(state.previous!) : "";
  comparePane.parentElement!.classList.toggle("hidden", !showCompare);
  if (showCompare) {
    renderPane(comparePane, state.previous!, state.view, state.cursor);
  }

  const frames = current?.frames ?? [];
  const slider = $<HTMLInputElement>("cursor");
  slider.max = String(Math.max(0, frames.length - 1));
  slider.value = String(state.cursor);
  $("cursor-time").textContent = frames.length
    ? `t = ${frames[Math.min(state.cursor, frames.length - 1)].time}s`
    : "";

  const summary = current?.summary;
  $("download").style.visibility = current ? "visible" : "hidden";
  if (current && summary) {
    ($("download") as HTMLAnchorElement).setAttribute(
      "href",
      api.summaryFileUrl(current.runId),
    );
  }
}

function setState(next: ViewState): void {
  state = next;
  render();
}

function collectDraft(): void {
  const form = $("params");
  const num = (name: string) =>
    Number((form.querySelector(`[name="${name}"]`) as HTMLInputElement).value);
  const excludeRaw = (form.querySelector('[name="exclude"]') as HTMLInputElement).value;
  state.draft = {
    scenario_id: state.scenario?.scenario_id ?? "",
    H_nm: num("H_nm"),
    V_ft: num("V_ft"),
    thresh_h_nm: num("thresh_h_nm"),
    thresh_v_ft: num("thresh_v_ft"),
    complexity_thresh_pct: num("complexity_thresh_pct"),
    dt_s: num("dt_s"),
    exclude: excludeRaw.split(",").map((s) => s.trim()).filter(Boolean),
  };
}

function stopPlayback(): void {
  if (timer !== null) {
    window.clearInterval(timer);
    timer = null;
    $("play").textContent = "play";
  }
}

function wire(): void {
  $("upload").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const info = await api.uploadScenario(file);
      state.scenario = info;
      state.draft = { ...defaultDraft(info.scenario_id), ...state.draft, scenario_id: info.scenario_id };
      $("scenario-info").textContent =
        `${info.aircraft_count} aircraft, [${info.t_start_s}s, ${info.t_end_s}s]`;
      setState(await submitWhatIf(state, api));
    } catch (err) {
      setState({ ...state, errors: { general: String(err) } });
    }
  });

  $("params").addEventListener("submit", async (event) => {
    event.preventDefault();
    collectDraft();
    stopPlayback();
    setState(await submitWhatIf(state, api));
  });

  for (const name of ["complexity", "strength", "heatmap", "table"] as ViewName[]) {
    $(`tab-${name}`).addEventListener("click", () => {
      stopPlayback();
      setState({ ...state, view: name });
    });
  }

  $("cursor").addEventListener("input", (event) => {
    const cursor = clampCursor(state, Number((event.target as HTMLInputElement).value));
    setState({ ...state, cursor });
  });

  $("play").addEventListener("click", () => {
    if (timer !== null) {
      stopPlayback();
      return;
    }
    $("play").textContent = "pause";
    timer = window.setInterval(() => {
      const n = state.current?.frames.length ?? 0;
      if (!n) return;
      setState({ ...state, cursor: (state.cursor + 1) % n });
    }, 150);
  });

  $("compare").addEventListener("click", () => {
    setState({ ...state, compare: !state.compare });
  });

  render();
}

document.addEventListener("DOMContentLoaded", wire);
