import { describe, expect, it } from "vitest";

import { fallbackLayout } from "../src/layout.js";
import {
  acknowledge,
  failWith,
  initialState,
  select,
  sessionStarted,
  startRequest,
} from "../src/state.js";
import type { QuiverSnapshot } from "../src/types.js";

function snap(historyLength: number): QuiverSnapshot {
  return {
    vertices: [{ id: "a", weight: 1, frozen: false }],
    eps2: [],
    signs: { a: "+" },
    labels: { a: "a" },
    layout: { a: [10, 10] },
    arrows: [],
    history_length: historyLength,
    meta: {},
  };
}

describe("view state transitions", () => {
  it("tracks the pending flag around requests", () => {
    let s = initialState();
    s = startRequest(s);
    expect(s.pending).toBe(true);
    s = acknowledge(s, snap(1));
    expect(s.pending).toBe(false);
    expect(s.historyCursor).toBe(1);
  });

  it("failures clear pending and surface a notice without touching the quiver", () => {
    let s = acknowledge(sessionStarted(initialState(), "x"), snap(2));
    const quiver = s.quiver;
    s = failWith(startRequest(s), "409: frozen");
    expect(s.pending).toBe(false);
    expect(s.notice).toBe("409: frozen");
    expect(s.quiver).toBe(quiver);
    expect(s.historyCursor).toBe(2);
  });

  it("drops a selection that no longer exists", () => {
    let s = acknowledge(initialState(), snap(0));
    s = select(s, "a");
    const next = { ...snap(1), vertices: [{ id: "b", weight: 1, frozen: false }] };
    s = acknowledge(s, next);
    expect(s.selection).toBeNull();
  });
});

describe("fallback layout", () => {
  it("is deterministic and keeps vertices inside the canvas", () => {
    const ids = ["a", "b", "c", "d"];
    const edges: [string, string][] = [
      ["a", "b"],
      ["b", "c"],
      ["c", "d"],
      ["d", "a"],
    ];
    const p1 = fallbackLayout(ids, edges);
    const p2 = fallbackLayout(ids, edges);
    expect(p1).toEqual(p2);
    for (const [x, y] of Object.values(p1)) {
      expect(x).toBeGreaterThanOrEqual(40);
      expect(y).toBeGreaterThanOrEqual(40);
      expect(x).toBeLessThanOrEqual(600);
      expect(y).toBeLessThanOrEqual(440);
    }
  });
});
