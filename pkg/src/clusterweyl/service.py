"""Stateless-protocol JSON service for interactive exploration.

Sessions live in memory; every state transition appends to a replayable
action history, and undo/redo rebuild the seed by replaying the prefix from
the initial state (so the replay invariant holds by construction).  An
optional append-only journal writes one JSON line per action for crash
recovery.  Requests for distinct sessions proceed concurrently; a
per-session lock serializes writers.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .constructions import (
    build_D,
    build_D_symmetric,
    build_Qm,
    build_tildeQ,
    coxeter_quiver,
    word_quiver,
)
from .quiver import QuiverError, WeightedQuiver, vertex_label
from .rootdata import cartan_matrix
from .seeds import MutationSequence, Seed
from . import cli as _cli


class SessionSpec(BaseModel):
    quiver: Optional[dict] = None
    build: Optional[dict] = None  # {"what": "qm", "type": "C", "n": 3, "m": 4, ...}
    track_A: bool = True
    track_X: bool = False


class MutateBody(BaseModel):
    vertex: str


class SequenceBody(BaseModel):
    name: Optional[str] = None
    params: dict = {}
    steps: Optional[list] = None  # raw sequence JSON, alternative to a name


class Session:
    def __init__(self, sid: str, spec: SessionSpec, quiver: WeightedQuiver, meta: dict):
        self.sid = sid
        self.spec = spec
        self.meta = meta  # build parameters when known (type/n/m)
        self.initial = Seed.initial(
            quiver,
            track_A=spec.track_A,
            track_X=spec.track_X,
            coeffs="principal",
        )
        self.actions: List[dict] = []
        self.redo_stack: List[dict] = []
        self.seed = self.initial
        self.lock = threading.Lock()

    def _sequence_for(self, action: dict) -> MutationSequence:
        if action["kind"] == "mutate":
            return MutationSequence.from_json([{"mut": action["vertex"]}])
        return MutationSequence.from_json(action["steps"])

    def replay(self) -> Seed:
        seed = self.initial
        for action in self.actions:
            seed = seed.apply(self._sequence_for(action))
        return seed

    def push(self, action: dict) -> None:
        self.seed = self.seed.apply(self._sequence_for(action))
        self.actions.append(action)
        self.redo_stack.clear()

    def undo(self) -> None:
        if not self.actions:
            raise QuiverError("nothing to undo")
        self.redo_stack.append(self.actions.pop())
        self.seed = self.replay()

    def redo(self) -> None:
        if not self.redo_stack:
            raise QuiverError("nothing to redo")
        action = self.redo_stack.pop()
        self.seed = self.seed.apply(self._sequence_for(action))
        self.actions.append(action)


def layout_hints(q: WeightedQuiver) -> Dict[str, List[int]]:
    """Deterministic grid positions: one column per row tag, one row per index;
    decorations sit beside the grid."""
    cols: Dict[str, int] = {}
    for v in q.ids:
        parts = v.split(":")
        if parts[0] in ("v", "u") and len(parts) >= 3:
            key = f"{parts[0]}:{parts[1]}"
            cols.setdefault(key, len(cols))
    out: Dict[str, List[int]] = {}
    side = 0
    for v in q.ids:
        parts = v.split(":")
        if parts[0] in ("v", "u") and len(parts) >= 3:
            col = cols[f"{parts[0]}:{parts[1]}"]
            out[v] = [120 + col * 140, 80 + (int(parts[2]) - 1) * 110]
        elif parts[0] in ("y", "yp") and len(parts) >= 2:
            x = 120 + len(cols) * 140 if parts[0] == "y" else 20
            try:
                idx = int(parts[1])
            except ValueError:
                idx = side
            out[v] = [x, 80 + (idx - 1) * 110]
        else:
            out[v] = [60 + side * 90, 30]
            side += 1
    return out


def quiver_payload(session: Session) -> dict:
    q = session.seed.quiver
    data = q.to_json()
    data["signs"] = {v: session.seed.tropical_sign(v) for v in q.ids}
    data["labels"] = {v: vertex_label(v) for v in q.ids}
    data["layout"] = layout_hints(q)
    data["arrows"] = [
        {"from": a, "to": b, "multiplicity": str(s), "dashed": abs(s) < 1}
        for a, b, s in q.arrow_pairs()
    ]
    data["history_length"] = len(session.actions)
    data["meta"] = session.meta
    return data


def create_app(journal_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="clusterweyl")
    sessions: Dict[str, Session] = {}
    registry_lock = threading.Lock()
    journal = journal_dir or os.environ.get("CLUSTERWEYL_JOURNAL_DIR")

    def log_action(sid: str, action: dict) -> None:
        if not journal:
            return
        os.makedirs(journal, exist_ok=True)
        with open(os.path.join(journal, f"{sid}.jsonl"), "a") as fh:
            fh.write(json.dumps(action) + "\n")

    def get_session(sid: str) -> Session:
        try:
            return sessions[sid]
        except KeyError:
            raise HTTPException(404, f"unknown session {sid}")

    def build_quiver(spec: SessionSpec):
        if spec.quiver is not None:
            try:
                return WeightedQuiver.from_json(spec.quiver), {}
            except Exception as exc:
                raise HTTPException(422, f"malformed quiver: {exc}")
        if spec.build is None:
            raise HTTPException(422, "need either a quiver or build parameters")
        b = dict(spec.build)
        what = b.get("what")
        try:
            t, n = b.get("type"), int(b.get("n", 0))
            if what == "qm":
                m = int(b["m"])
                return build_Qm(cartan_matrix(t, n), m), {"type": t, "n": n, "m": m}
            if what == "coxeter":
                return coxeter_quiver(cartan_matrix(t, n)), {"type": t, "n": n}
            if what == "word":
                q, _ = word_quiver(cartan_matrix(t, n), tuple(b["word"].split()))
                return q, {"type": t, "n": n}
            if what == "tilde":
                k = int(b.get("k", 1))
                from .rootdata import coxeter_number

                h = coxeter_number(t, n)
                m = k * h if t.upper() == "A" else k * h // 2
                return build_tildeQ(t, n, k), {"type": t, "n": n, "m": m, "k": k}
            if what == "d":
                if b.get("symmetric"):
                    q, _ = build_D_symmetric(n)
                    return q, {"type": t, "n": n}
                return build_D(t, n), {"type": t, "n": n}
        except HTTPException:
            raise
        except Exception as exc:
            raise HTTPException(422, f"malformed build spec: {exc}")
        raise HTTPException(422, f"unknown builder {what!r}")

    @app.post("/session")
    def create_session(spec: SessionSpec):
        quiver, meta = build_quiver(spec)
        sid = uuid.uuid4().hex[:12]
        with registry_lock:
            sessions[sid] = Session(sid, spec, quiver, meta)
        log_action(sid, {"kind": "create", "meta": meta})
        return {"id": sid}

    @app.get("/session/{sid}/quiver")
    def get_quiver(sid: str):
        session = get_session(sid)
        with session.lock:
            return quiver_payload(session)

    @app.get("/session/{sid}/history")
    def get_history(sid: str):
        session = get_session(sid)
        with session.lock:
            return {"actions": session.actions, "redo_depth": len(session.redo_stack)}

    @app.post("/session/{sid}/mutate")
    def mutate(sid: str, body: MutateBody):
        session = get_session(sid)
        with session.lock:
            if body.vertex not in session.seed.quiver.ids:
                raise HTTPException(422, f"unknown vertex {body.vertex}")
            if body.vertex in session.seed.quiver.frozen:
                raise HTTPException(409, f"vertex {body.vertex} is frozen")
            action = {"kind": "mutate", "vertex": body.vertex}
            session.push(action)
            log_action(sid, action)
            return quiver_payload(session)

    @app.post("/session/{sid}/sequence")
    def sequence(sid: str, body: SequenceBody):
        session = get_session(sid)
        with session.lock:
            if body.steps is not None:
                seq = MutationSequence.from_json(body.steps)
                name = "raw"
            elif body.name:
                meta = session.meta
                if not meta and body.name != "RD":
                    raise HTTPException(
                        422, "named sequences need a session created from build parameters"
                    )
                try:
                    seq = _cli._named_sequence(
                        body.name,
                        body.params,
                        type_name=meta.get("type"),
                        n=meta.get("n"),
                        m=meta.get("m"),
                    )
                except Exception as exc:
                    raise HTTPException(422, f"cannot build sequence: {exc}")
                name = body.name
            else:
                raise HTTPException(422, "need a sequence name or raw steps")
            frozen = session.seed.quiver.frozen
            for step in seq.to_json():
                if "mut" in step and step["mut"] in frozen:
                    raise HTTPException(409, f"sequence mutates frozen vertex {step['mut']}")
            action = {
                "kind": "sequence",
                "name": name,
                "params": body.params,
                "steps": seq.to_json(),
            }
            try:
                session.push(action)
            except QuiverError as exc:
                raise HTTPException(409, str(exc))
            log_action(sid, action)
            return quiver_payload(session)

    @app.post("/session/{sid}/undo")
    def undo(sid: str):
        session = get_session(sid)
        with session.lock:
            try:
                session.undo()
            except QuiverError as exc:
                raise HTTPException(409, str(exc))
            log_action(sid, {"kind": "undo"})
            return quiver_payload(session)

    @app.post("/session/{sid}/redo")
    def redo(sid: str):
        session = get_session(sid)
        with session.lock:
            try:
                session.redo()
            except QuiverError as exc:
                raise HTTPException(409, str(exc))
            log_action(sid, {"kind": "redo"})
            return quiver_payload(session)

    @app.get("/session/{sid}/variable/{vertex}")
    def variable(sid: str, vertex: str, kind: str = "A"):
        session = get_session(sid)
        with session.lock:
            seed = session.seed
            if vertex not in seed.quiver.ids:
                raise HTTPException(404, f"unknown vertex {vertex}")
            if kind == "A":
                if seed.A is None:
                    raise HTTPException(422, "session does not track A-variables")
                return {"vertex": vertex, "kind": "A", "value": seed.A[vertex].to_string()}
            if kind == "X":
                if seed.X is None:
                    # symbolic X off by default: recompute on demand by replay
                    replayed = Seed.initial(session.initial.quiver, track_X=True)
                    for action in session.actions:
                        replayed = replayed.apply(session._sequence_for(action))
                    return {
                        "vertex": vertex,
                        "kind": "X",
                        "value": replayed.X[vertex].to_string(),
                    }
                return {"vertex": vertex, "kind": "X", "value": seed.X[vertex].to_string()}
            if kind == "coeff":
                return {
                    "vertex": vertex,
                    "kind": "coeff",
                    "value": seed.coeffs[vertex].to_string(),
                }
            raise HTTPException(422, f"unknown variable kind {kind!r}")

    return app


def run_server(host: str = "127.0.0.1", port: int = 8776, journal_dir: Optional[str] = None):
    import uvicorn

    uvicorn.run(create_app(journal_dir), host=host, port=port, log_level="warning")
