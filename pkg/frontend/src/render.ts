// Pure rendering: ViewState in, SVG markup out.  No mathematics happens
// here; what is drawn is exactly what the last acknowledged server state
// said.  Determinism (same state, same string) keeps the scene diffable.

import { fallbackLayout } from "./layout.js";
import type { ArrowInfo, QuiverSnapshot, ViewState } from "./types.js";
import { TRUNCATE_AT } from "./types.js";

const SIGN_FILL: Record<string, string> = {
  "+": "#3fa34d", // green
  "-": "#d43d3d", // red
  mixed: "#b89b2c",
};

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function positions(q: QuiverSnapshot): Record<string, [number, number]> {
  const ids = q.vertices.map((v) => v.id);
  const missing = ids.some((id) => !q.layout || !q.layout[id]);
  if (!missing) return q.layout;
  // force-directed fallback only for quivers without server hints
  return fallbackLayout(
    ids,
    q.arrows.map((a) => [a.from, a.to] as [string, string]),
  );
}

function arrowCount(multiplicity: string): number {
  if (multiplicity.includes("/")) return 1; // fractional: a single dashed arrow
  const n = Math.abs(parseInt(multiplicity, 10));
  return Number.isFinite(n) && n > 0 ? n : 1;
}

function arrowPaths(a: ArrowInfo, from: [number, number], to: [number, number]): string {
  const [x1, y1] = from;
  const [x2, y2] = to;
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.max(Math.hypot(dx, dy), 1);
  const nx = -dy / len;
  const ny = dx / len;
  const count = arrowCount(a.multiplicity);
  const dash = a.dashed ? ' stroke-dasharray="6 4"' : "";
  const lines: string[] = [];
  // shorten so arrowheads sit outside the vertex glyphs
  const trim = 22 / len;
  for (let k = 0; k < count; k += 1) {
    const offset = (k - (count - 1) / 2) * 7;
    const sx = x1 + dx * trim + nx * offset;
    const sy = y1 + dy * trim + ny * offset;
    const ex = x2 - dx * trim + nx * offset;
    const ey = y2 - dy * trim + ny * offset;
    lines.push(
      `<line class="arrow" x1="${sx.toFixed(1)}" y1="${sy.toFixed(1)}" ` +
        `x2="${ex.toFixed(1)}" y2="${ey.toFixed(1)}" stroke="#444" ` +
        `stroke-width="1.6" marker-end="url(#head)"${dash} />`,
    );
  }
  return lines.join("");
}

export function renderVariablePanel(view: ViewState): string {
  if (!view.variable) return "";
  const { vertex, kind, value, expanded } = view.variable;
  const truncated = !expanded && value.length > TRUNCATE_AT;
  const shown = truncated ? `${value.slice(0, TRUNCATE_AT)}…` : value;
  const expander = truncated
    ? `<button class="expand" data-action="expand">show all</button>`
    : "";
  return (
    `<div class="variable" data-vertex="${esc(vertex)}" data-kind="${esc(kind)}">` +
    `<span class="tag">${esc(kind)}[${esc(vertex)}]</span> ` +
    `<code>${esc(shown)}</code>${expander}</div>`
  );
}

export function renderSVG(view: ViewState): string {
  const q = view.quiver;
  if (!q) {
    return `<svg xmlns="http://www.w3.org/2000/svg" width="640" height="120">` +
      `<text x="20" y="60" class="empty">no session</text></svg>`;
  }
  const pos = positions(q);
  let maxX = 0;
  let maxY = 0;
  for (const [x, y] of Object.values(pos)) {
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  const width = Math.max(maxX + 120, 320);
  const height = Math.max(maxY + 90, 240);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `data-pending="${view.pending}">`,
  );
  parts.push(
    `<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" ` +
      `orient="auto"><path d="M0,0 L7,3 L0,6 z" fill="#444"/></marker></defs>`,
  );
  for (const a of q.arrows) {
    const from = pos[a.from];
    const to = pos[a.to];
    if (from && to) parts.push(arrowPaths(a, from, to));
  }
  for (const v of q.vertices) {
    const [x, y] = pos[v.id];
    const sign = q.signs[v.id] ?? "mixed";
    const fill = SIGN_FILL[sign] ?? "#999";
    const selected = view.selection === v.id;
    const stroke = selected ? "#1650c8" : "#222";
    const strokeWidth = selected ? 3.5 : 1.5;
    const common =
      `data-vertex="${esc(v.id)}" data-frozen="${v.frozen}" fill="${fill}" ` +
      `stroke="${stroke}" stroke-width="${strokeWidth}" class="vertex"`;
    if (v.frozen) {
      parts.push(
        `<rect x="${(x - 13).toFixed(1)}" y="${(y - 13).toFixed(1)}" width="26" height="26" ${common} />`,
      );
    } else {
      parts.push(`<circle cx="${x}" cy="${y}" r="15" ${common} />`);
    }
    if (v.weight > 1) {
      parts.push(
        `<text x="${x}" y="${y + 4}" text-anchor="middle" class="weight" ` +
          `font-size="11" fill="#fff">${v.weight}</text>`,
      );
    }
    const label = q.labels[v.id] ?? v.id;
    parts.push(
      `<text x="${x}" y="${y - 20}" text-anchor="middle" class="label" ` +
        `font-size="11" fill="#333">${esc(label)}</text>`,
    );
  }
  if (view.notice) {
    parts.push(
      `<text x="12" y="${height - 12}" class="notice" fill="#a33" font-size="13">` +
        `${esc(view.notice)}</text>`,
    );
  }
  if (view.pending) {
    parts.push(
      `<rect x="0" y="0" width="${width}" height="${height}" class="pending" ` +
        `fill="#ffffff" opacity="0.45" />`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
