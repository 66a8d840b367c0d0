/**
 * SVG painters for the four scenes. Everything numeric comes straight from
 * the scene objects; this layer only maps values to pixels and colors.
 */

import type { ComplexityScene } from "../scenes/complexity";
import type { StrengthScene } from "../scenes/strength";
import type { HeatmapScene } from "../scenes/heatmap";
import type { TableRow } from "../scenes/table";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

/** Percentage (0-100) to heatmap cell color: pale straw to deep red. */
export function contributionColor(pct: number): string {
  const t = Math.min(1, Math.max(0, pct / 100));
  const hue = 50 - 50 * t;
  const light = 88 - 48 * t;
  return `hsl(${hue.toFixed(0)}, 90%, ${light.toFixed(0)}%)`;
}

/** Max incident weight (0-1) to marker color: green through amber to red. */
export function severityColor(w: number): string {
  const t = Math.min(1, Math.max(0, w));
  const hue = 120 - 120 * t;
  return `hsl(${hue.toFixed(0)}, 85%, 45%)`;
}

interface Extent {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

function sceneExtent(points: { x: number; y: number }[]): Extent {
  if (!points.length) {
    return { minX: -1, maxX: 1, minY: -1, maxY: 1 };
  }
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const pad = 20;
  return {
    minX: Math.min(...xs) - pad,
    maxX: Math.max(...xs) + pad,
    minY: Math.min(...ys) - pad,
    maxY: Math.max(...ys) + pad,
  };
}

function makeScaler(extent: Extent, width: number, height: number) {
  const spanX = extent.maxX - extent.minX || 1;
  const spanY = extent.maxY - extent.minY || 1;
  const scale = Math.min(width / spanX, height / spanY);
  const offX = (width - spanX * scale) / 2;
  const offY = (height - spanY * scale) / 2;
  return (x: number, y: number) => ({
    x: offX + (x - extent.minX) * scale,
    // SVG y grows downward; the sector view has north up.
    y: height - (offY + (y - extent.minY) * scale),
  });
}

export function drawComplexity(
  container: HTMLElement,
  scene: ComplexityScene,
  width = 640,
  height = 480,
): void {
  const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  svg.classList.add("sector-view");
  const scale = makeScaler(sceneExtent(scene.aircraft), width, height);

  for (const edge of scene.edges) {
    const p1 = scale(edge.x1, edge.y1);
    const p2 = scale(edge.x2, edge.y2);
    const line = el("line", {
      x1: p1.x,
      y1: p1.y,
      x2: p2.x,
      y2: p2.y,
      stroke: edge.red ? "#d62728" : "#8a8a8a",
      "stroke-width": 0.5 + 3.0 * edge.weight,
      "stroke-opacity": 0.85,
    });
    line.classList.add(edge.red ? "edge-complex" : "edge-normal");
    svg.appendChild(line);
  }
  for (const ac of scene.aircraft) {
    const p = scale(ac.x, ac.y);
    svg.appendChild(
      el("circle", { cx: p.x, cy: p.y, r: 6, fill: "#1f77b4", stroke: "#fff" }),
    );
    const label = el("text", { x: p.x + 8, y: p.y - 8, "font-size": 11 });
    label.textContent = `${ac.callsign} ${ac.contributionPct.toFixed(1)}%`;
    svg.appendChild(label);
  }
  container.replaceChildren(svg);
}

export function drawStrength(
  container: HTMLElement,
  scene: StrengthScene,
  width = 640,
  height = 480,
): void {
  const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  svg.classList.add("sector-view");
  const scale = makeScaler(sceneExtent(scene.aircraft), width, height);
  for (const ac of scene.aircraft) {
    const p = scale(ac.x, ac.y);
    svg.appendChild(
      el("circle", {
        cx: p.x,
        cy: p.y,
        r: 7,
        fill: severityColor(ac.maxWeight),
        stroke: "#333",
      }),
    );
    const label = el("text", { x: p.x + 9, y: p.y - 9, "font-size": 11 });
    label.textContent = `${ac.callsign} ${ac.maxWeight.toFixed(2)}`;
    svg.appendChild(label);
  }
  container.replaceChildren(svg);
}

export function drawHeatmap(
  container: HTMLElement,
  scene: HeatmapScene,
  width = 720,
): void {
  const labelWidth = 110;
  const rowHeight = 26;
  const height = scene.rows.length * rowHeight + 30;
  const cellWidth = (width - labelWidth) / Math.max(1, scene.times.length);
  const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  svg.classList.add("heatmap-view");

  scene.rows.forEach((row, r) => {
    const y = r * rowHeight;
    const name = el("text", { x: 4, y: y + rowHeight * 0.65, "font-size": 12 });
    name.textContent = row.name;
    svg.appendChild(name);
    row.values.forEach((value, c) => {
      if (value === null) return;
      const cell = el("rect", {
        x: labelWidth + c * cellWidth,
        y,
        width: Math.max(0.5, cellWidth - 0.4),
        height: rowHeight - 3,
        fill: contributionColor(value),
      });
      cell.classList.add("heatmap-cell");
      const tip = document.createElementNS(SVG_NS, "title");
      tip.textContent = `${row.name} @ ${scene.times[c]}s: ${value.toFixed(1)}%`;
      cell.appendChild(tip);
      svg.appendChild(cell);
    });
  });

  const axisY = scene.rows.length * rowHeight + 16;
  const ticks = Math.min(8, scene.times.length);
  for (let k = 0; k < ticks; k++) {
    const idx = Math.floor((k * (scene.times.length - 1)) / Math.max(1, ticks - 1));
    const tick = el("text", {
      x: labelWidth + idx * cellWidth,
      y: axisY,
      "font-size": 10,
    });
    tick.textContent = `${scene.times[idx]}s`;
    svg.appendChild(tick);
  }
  container.replaceChildren(svg);
}

export function drawTable(container: HTMLElement, rows: TableRow[]): void {
  const table = document.createElement("table");
  table.className = "summary-table";
  const head = table.createTHead().insertRow();
  for (const title of ["Community", "Start (s)", "End (s)", "Members (joined / left)"]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    tr.insertCell().textContent = row.label;
    tr.insertCell().textContent = String(row.start);
    tr.insertCell().textContent = row.end === null ? "open" : String(row.end);
    tr.insertCell().textContent = row.members
      .map(
        (m) =>
          `${m.callsign} (${m.joined}${m.left === null ? "" : ` / ${m.left}`})`,
      )
      .join(", ");
  }
  container.replaceChildren(table);
}
