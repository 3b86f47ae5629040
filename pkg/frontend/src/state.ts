// Pure view-state transitions.  One request may be in flight at a time;
// while pending, interactions are ignored by the wiring layer.

import type { QuiverSnapshot, VariableView, ViewState } from "./types.js";

export function initialState(): ViewState {
  return {
    sessionId: null,
    quiver: null,
    selection: null,
    pending: false,
    notice: null,
    historyCursor: 0,
    variable: null,
  };
}

export function startRequest(state: ViewState): ViewState {
  return { ...state, pending: true, notice: null };
}

export function acknowledge(state: ViewState, quiver: QuiverSnapshot): ViewState {
  return {
    ...state,
    quiver,
    pending: false,
    historyCursor: quiver.history_length,
    // a stale selection is dropped if the vertex disappeared
    selection:
      state.selection && quiver.vertices.some((v) => v.id === state.selection)
        ? state.selection
        : null,
  };
}

export function sessionStarted(state: ViewState, id: string): ViewState {
  return { ...state, sessionId: id };
}

export function failWith(state: ViewState, notice: string): ViewState {
  return { ...state, pending: false, notice };
}

export function select(state: ViewState, vertex: string | null): ViewState {
  return { ...state, selection: vertex };
}

export function showVariable(state: ViewState, variable: VariableView | null): ViewState {
  return { ...state, pending: false, variable };
}

export function expandVariable(state: ViewState): ViewState {
  if (!state.variable) return state;
  return { ...state, variable: { ...state.variable, expanded: true } };
}
