// Browser wiring: DOM events in, client calls out, scene re-rendered from
// the acknowledged state.  A single request may be in flight; inputs are
// ignored while pending and 409 responses surface as a non-blocking notice.

import { ApiError, ExplorerClient } from "./client.js";
import { renderSVG, renderVariablePanel } from "./render.js";
import {
  acknowledge,
  expandVariable,
  failWith,
  initialState,
  select,
  sessionStarted,
  showVariable,
  startRequest,
} from "./state.js";
import type { QuiverSnapshot, ViewState } from "./types.js";

const client = new ExplorerClient("");

let state: ViewState = initialState();

function draw(): void {
  const scene = document.getElementById("scene");
  const panel = document.getElementById("panel");
  if (scene) scene.innerHTML = renderSVG(state);
  if (panel) panel.innerHTML = renderVariablePanel(state);
  const buttons = document.querySelectorAll<HTMLButtonElement>("button[data-action]");
  buttons.forEach((b) => {
    if (b.dataset.action !== "expand") b.disabled = state.pending;
  });
}

function update(next: ViewState): void {
  state = next;
  draw();
}

async function withServer(call: () => Promise<QuiverSnapshot>): Promise<void> {
  if (state.pending) return;
  update(startRequest(state));
  try {
    update(acknowledge(state, await call()));
  } catch (err) {
    if (err instanceof ApiError) {
      update(failWith(state, `${err.status}: ${err.message}`));
    } else {
      update(failWith(state, String(err)));
    }
  }
}

async function createSession(): Promise<void> {
  const type = (document.getElementById("f-type") as HTMLInputElement).value || "C";
  const n = Number((document.getElementById("f-n") as HTMLInputElement).value || "3");
  const m = Number((document.getElementById("f-m") as HTMLInputElement).value || "4");
  if (state.pending) return;
  update(startRequest(state));
  try {
    const { id } = await client.createSession({ what: "qm", type, n, m });
    update(sessionStarted(state, id));
    update(acknowledge(state, await client.quiver(id)));
  } catch (err) {
    update(failWith(state, String(err)));
  }
}

async function onVertexClick(vertex: string): Promise<void> {
  if (!state.sessionId || state.pending) return;
  update(select(state, vertex));
  await withServer(() => client.mutate(state.sessionId!, vertex));
}

async function fetchVariable(kind: "A" | "X" | "coeff"): Promise<void> {
  if (!state.sessionId || !state.selection || state.pending) return;
  update(startRequest(state));
  try {
    const res = await client.variable(state.sessionId, state.selection, kind);
    update(showVariable(state, { ...res, expanded: false }));
  } catch (err) {
    update(failWith(state, String(err)));
  }
}

function wire(): void {
  document.getElementById("f-create")?.addEventListener("click", () => void createSession());
  document.getElementById("f-undo")?.addEventListener("click", () => {
    if (state.sessionId) void withServer(() => client.undo(state.sessionId!));
  });
  document.getElementById("f-redo")?.addEventListener("click", () => {
    if (state.sessionId) void withServer(() => client.redo(state.sessionId!));
  });
  document.getElementById("f-refl")?.addEventListener("click", () => {
    const s = (document.getElementById("f-s") as HTMLInputElement).value || "1";
    if (state.sessionId)
      void withServer(() => client.sequence(state.sessionId!, "R", { s, i: 1 }));
  });
  document.getElementById("f-dt")?.addEventListener("click", () => {
    if (state.sessionId) void withServer(() => client.sequence(state.sessionId!, "DT", {}));
  });
  document.getElementById("f-var-a")?.addEventListener("click", () => void fetchVariable("A"));
  document.getElementById("f-var-x")?.addEventListener("click", () => void fetchVariable("X"));
  document.getElementById("scene")?.addEventListener("click", (ev) => {
    const target = (ev.target as Element).closest("[data-vertex]");
    if (!target) return;
    const vertex = target.getAttribute("data-vertex")!;
    if (target.getAttribute("data-frozen") === "true") {
      update(failWith(state, `vertex ${vertex} is frozen`));
      update(select(state, vertex));
      return;
    }
    void onVertexClick(vertex);
  });
  document.getElementById("panel")?.addEventListener("click", (ev) => {
    const target = ev.target as Element;
    if (target.getAttribute("data-action") === "expand") {
      update(expandVariable(state));
    }
  });
  draw();
}

if (typeof document !== "undefined") {
  wire();
}
