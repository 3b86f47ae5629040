import { describe, expect, it } from "vitest";

import { renderSVG, renderVariablePanel } from "../src/render.js";
import { acknowledge, expandVariable, failWith, initialState, select, showVariable, startRequest } from "../src/state.js";
import type { QuiverSnapshot, ViewState } from "../src/types.js";

function sampleQuiver(): QuiverSnapshot {
  return {
    vertices: [
      { id: "v:1:1", weight: 2, frozen: false },
      { id: "v:2:1", weight: 1, frozen: false },
      { id: "y:1", weight: 1, frozen: true },
    ],
    eps2: [
      ["v:1:1", "v:2:1", 4],
      ["v:2:1", "y:1", 1],
    ],
    signs: { "v:1:1": "+", "v:2:1": "-", "y:1": "+" },
    labels: { "v:1:1": "v^1_1", "v:2:1": "v^2_1", "y:1": "y_1" },
    layout: { "v:1:1": [100, 100], "v:2:1": [260, 100], "y:1": [180, 220] },
    arrows: [
      { from: "v:1:1", to: "v:2:1", multiplicity: "2", dashed: false },
      { from: "v:2:1", to: "y:1", multiplicity: "1/2", dashed: true },
    ],
    history_length: 0,
    meta: {},
  };
}

function viewWith(q: QuiverSnapshot): ViewState {
  return acknowledge(initialState(), q);
}

describe("scene rendering", () => {
  it("is a pure function of the view state", () => {
    const view = viewWith(sampleQuiver());
    expect(renderSVG(view)).toBe(renderSVG(view));
    expect(renderSVG(viewWith(sampleQuiver()))).toBe(renderSVG(view));
  });

  it("colors vertices by tropical sign", () => {
    const svg = renderSVG(viewWith(sampleQuiver()));
    expect(svg).toMatch(/data-vertex="v:1:1"[^/]*fill="#3fa34d"/); // green +
    expect(svg).toMatch(/data-vertex="v:2:1"[^/]*fill="#d43d3d"/); // red -
  });

  it("draws frozen vertices as squares and weights as badges", () => {
    const svg = renderSVG(viewWith(sampleQuiver()));
    expect(svg).toMatch(/<rect[^/]*data-vertex="y:1"/);
    expect(svg).toMatch(/<circle[^/]*data-vertex="v:1:1"/);
    expect(svg).toContain(">2</text>"); // weight badge on the heavy vertex
  });

  it("draws multiplicity-fold parallel arrows and dashed half arrows", () => {
    const svg = renderSVG(viewWith(sampleQuiver()));
    const solid = svg.match(/marker-end="url\(#head\)"(?! stroke-dasharray)/g) ?? [];
    expect(solid).toHaveLength(2); // multiplicity 2 drawn twice
    expect(svg).toMatch(/stroke-dasharray="6 4"/);
  });

  it("renders selection, notice and pending overlay", () => {
    let view = viewWith(sampleQuiver());
    view = select(view, "v:1:1");
    expect(renderSVG(view)).toMatch(/data-vertex="v:1:1"[^/]*stroke="#1650c8"/);
    view = failWith(view, "409: vertex y:1 is frozen");
    expect(renderSVG(view)).toContain("409: vertex y:1 is frozen");
    view = startRequest(view);
    expect(renderSVG(view)).toContain('class="pending"');
  });

  it("falls back to a deterministic layout when hints are missing", () => {
    const q = sampleQuiver();
    q.layout = {};
    const a = renderSVG(viewWith(q));
    const b = renderSVG(viewWith(q));
    expect(a).toBe(b);
    expect(a).toContain("circle");
  });

  it("renders an empty-session placeholder", () => {
    expect(renderSVG(initialState())).toContain("no session");
  });
});

describe("variable panel", () => {
  it("truncates long values with an expander", () => {
    const long = "A".repeat(400);
    let view = showVariable(initialState(), {
      vertex: "v:1:1",
      kind: "A",
      value: long,
      expanded: false,
    });
    const panel = renderVariablePanel(view);
    expect(panel).toContain("…");
    expect(panel).toContain('data-action="expand"');
    view = expandVariable(view);
    const full = renderVariablePanel(view);
    expect(full).not.toContain("…");
    expect(full).toContain(long);
  });

  it("keeps short values untouched", () => {
    const view = showVariable(initialState(), {
      vertex: "v:1:1",
      kind: "X",
      value: "v:1:1^-1",
      expanded: false,
    });
    const panel = renderVariablePanel(view);
    expect(panel).toContain("v:1:1^-1");
    expect(panel).not.toContain('data-action="expand"');
  });
});
