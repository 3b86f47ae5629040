// Wire types mirroring the service payloads, plus the single view state.
// The view always reflects the last acknowledged server state; the client
// never updates optimistically because exact values must come from the engine.

export interface VertexInfo {
  id: string;
  weight: number;
  frozen: boolean;
}

export interface ArrowInfo {
  from: string;
  to: string;
  multiplicity: string; // exact fraction as text, e.g. "1", "2", "1/2"
  dashed: boolean;
}

export interface QuiverSnapshot {
  vertices: VertexInfo[];
  eps2: [string, string, number][];
  signs: Record<string, string>;
  labels: Record<string, string>;
  layout: Record<string, [number, number]>;
  arrows: ArrowInfo[];
  history_length: number;
  meta: Record<string, unknown>;
}

export interface VariableView {
  vertex: string;
  kind: string;
  value: string;
  expanded: boolean;
}

export interface ViewState {
  sessionId: string | null;
  quiver: QuiverSnapshot | null;
  selection: string | null;
  pending: boolean;
  notice: string | null;
  historyCursor: number;
  variable: VariableView | null;
}

export const TRUNCATE_AT = 120;
