"""HTTP session service: ranking-in-the-loop runs over JSON.

Each session owns one engine run on a worker thread.  The engine blocks
whenever it needs a ranking; the session then exposes the presented sample
as candidates with stable ids, and a POST of the preference order (best
first) unblocks it.  Repeat submissions for an interaction that was already
ranked are rejected without disturbing the run.

A session config may carry a ``uf`` block describing a reference utility
function.  Rankings still arrive over HTTP, but the trace's utility columns
are computed against the reference — this is how scripted clients are
checked for equivalence with in-process simulated-DM runs.  Omit ``uf`` for
a genuinely human session; utility columns are then undefined.
"""

from __future__ import annotations

import itertools
import math
import threading
from typing import Any

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .detection import DetectionConfig
from .engine import DMChannelAborted, RunConfig, run
from .mdm import MachineDM, UtilitySpec
from .problems import ProblemSpec


class CreateSessionRequest(BaseModel):
    problem: dict
    uf: dict | None = None
    learning: bool = True
    detection: dict = {}
    initial_mask: list[int] | None = None
    population: int = 100
    n_exa: int = 5
    interactions: int = 9
    gen_first: int = 200
    gen_interaction: int = 30
    total_generations: int = 500
    seed: int = 0


class RankingRequest(BaseModel):
    order: list[str]


def _build_config(req: CreateSessionRequest) -> RunConfig:
    problem = ProblemSpec(**req.problem)
    uf = None
    if req.uf is not None:
        raw = dict(req.uf)
        if "relevant" in raw:
            raw["relevant"] = tuple(raw["relevant"])
        if "relevant_weights" in raw:
            raw["relevant_weights"] = tuple(raw["relevant_weights"])
        uf = UtilitySpec(**raw)
    return RunConfig(
        problem=problem, uf=uf, learning=req.learning,
        detection=DetectionConfig(**req.detection),
        initial_mask=tuple(req.initial_mask) if req.initial_mask else None,
        population=req.population, n_exa=req.n_exa,
        interactions=req.interactions, gen_first=req.gen_first,
        gen_interaction=req.gen_interaction,
        total_generations=req.total_generations, seed=req.seed)


class _ExternalChannel:
    """Engine-facing channel that parks rank() until a submission arrives."""

    def __init__(self, session: "Session"):
        self.session = session

    def rank(self, vectors: np.ndarray, interaction_index: int) -> np.ndarray:
        # The submission endpoint performs the state transition (clears the
        # pending sample, records the interaction as ranked, flips the state
        # back to evolving) under the session lock, so the HTTP-visible state
        # never lags behind an accepted ranking.  This wake-up only consumes
        # the ranks.
        session = self.session
        with session.cond:
            session.pending = {
                "interaction": interaction_index,
                "ids": [f"i{interaction_index}c{k}" for k in range(len(vectors))],
                "vectors": np.array(vectors, copy=True),
            }
            session.state = "awaiting_ranking"
            session.cond.notify_all()
            while session.submitted is None and not session.abort_flag:
                session.cond.wait()
            if session.abort_flag:
                session.pending = None
                raise DMChannelAborted("session aborted")
            ranks = session.submitted
            session.submitted = None
            return ranks


class _ReferencedChannel(_ExternalChannel):
    """External rankings plus a reference DM for trace utility columns."""

    def __init__(self, session: "Session", reference: MachineDM):
        super().__init__(session)
        self._reference = reference

    def utility_cost(self, vectors, interaction_index):
        return self._reference.utility_cost(vectors, interaction_index)

    def relevant_indices(self, interaction_index):
        return self._reference.relevant_indices(interaction_index)


class Session:
    def __init__(self, sid: str, cfg: RunConfig):
        self.sid = sid
        self.cfg = cfg
        self.cond = threading.Condition()
        self.state = "evolving"
        self.pending: dict | None = None
        self.submitted: np.ndarray | None = None
        self.ranked_interactions: set[int] = set()
        self.abort_flag = False
        self.rows: list = []
        self.mask: tuple[int, ...] = ()
        self.last_detection: dict | None = None
        self.trace = None
        self.error: str | None = None

        instance = cfg.problem.build()
        self.m = instance.m
        self.mask = (cfg.initial_mask if cfg.initial_mask
                     else tuple(range(1, instance.m + 1)))
        if cfg.uf is not None:
            channel = _ReferencedChannel(self, MachineDM(cfg.uf.build(instance.m)))
        else:
            if not cfg.learning:
                raise ValueError(
                    "a learning-disabled session needs a reference uf to rank by")
            channel = _ExternalChannel(self)
        self.thread = threading.Thread(
            target=self._work, args=(instance, channel), daemon=True)
        self.thread.start()

    def _observe(self, event: str, info: dict) -> None:
        with self.cond:
            if event == "row":
                row = info["row"]
                self.rows.append(row)
                self.mask = row.mask
                if row.detected is not None:
                    self.last_detection = {
                        "relevant": list(row.detected),
                        "update_needed": row.update_needed,
                    }

    def _work(self, instance, channel) -> None:
        try:
            trace = run(self.cfg, instance, channel, observer=self._observe)
            with self.cond:
                self.trace = trace
                self.state = "aborted" if trace.aborted else "finished"
                self.cond.notify_all()
        except Exception as exc:  # surfaced through the status endpoint
            with self.cond:
                self.error = str(exc)
                self.state = "failed"
                self.cond.notify_all()

    def abort(self) -> None:
        with self.cond:
            if self.state in ("finished", "aborted", "failed"):
                return
            self.abort_flag = True
            self.cond.notify_all()

    def snapshot(self) -> dict:
        with self.cond:
            return {
                "id": self.sid,
                "state": self.state,
                "m": self.m,
                "n_exa": self.cfg.n_exa,
                "interactions": self.cfg.interactions,
                "completed_interactions": max(0, len(self.rows) - 1)
                if self.rows else 0,
                "awaiting_interaction": (self.pending["interaction"]
                                         if self.pending else None),
                "active_mask": list(self.mask),
                "last_detection": self.last_detection,
                "error": self.error,
            }


def _json_float(value: float):
    return None if value is None or not math.isfinite(value) else value


def create_app() -> FastAPI:
    app = FastAPI(title="driftmoo session service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return session

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict:
        try:
            cfg = _build_config(req)
            with registry_lock:
                sid = f"s{next(counter):04d}"
                session = Session(sid, cfg)
                sessions[sid] = session
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"id": sid, "state": session.state}

    @app.get("/sessions/{sid}")
    def session_status(sid: str) -> dict:
        return get_session(sid).snapshot()

    @app.get("/sessions/{sid}/candidates")
    def candidates(sid: str) -> dict:
        session = get_session(sid)
        with session.cond:
            if session.pending is None:
                raise HTTPException(status_code=409,
                                    detail="session is not awaiting a ranking")
            pending = session.pending
            return {
                "interaction": pending["interaction"],
                "active_mask": list(session.mask),
                "scores": session.last_detection,
                "candidates": [
                    {"id": cid, "values": vector.tolist()}
                    for cid, vector in zip(pending["ids"], pending["vectors"])
                ],
            }

    @app.post("/sessions/{sid}/ranking")
    def submit_ranking(sid: str, req: RankingRequest) -> dict:
        session = get_session(sid)
        with session.cond:
            submitted_interactions = {
                int(cid.split("c")[0][1:]) for cid in req.order
                if cid.startswith("i") and "c" in cid}
            if (submitted_interactions
                    and submitted_interactions <= session.ranked_interactions):
                raise HTTPException(status_code=409,
                                    detail="interaction already ranked")
            if session.pending is None:
                raise HTTPException(status_code=409,
                                    detail="session is not awaiting a ranking")
            expected = session.pending["ids"]
            if sorted(req.order) != sorted(expected):
                raise HTTPException(
                    status_code=422,
                    detail="order must be a permutation of the candidate ids")
            position = {cid: i + 1 for i, cid in enumerate(req.order)}
            ranks = np.asarray([position[cid] for cid in expected], dtype=np.int64)
            interaction = session.pending["interaction"]
            session.submitted = ranks
            session.pending = None
            session.ranked_interactions.add(interaction)
            session.state = "evolving"
            session.cond.notify_all()
            return {"state": "evolving", "interaction": interaction}

    @app.get("/sessions/{sid}/trace")
    def trace(sid: str, format: str = "json"):
        session = get_session(sid)
        with session.cond:
            if session.state not in ("finished", "aborted"):
                raise HTTPException(status_code=409,
                                    detail="trace is available once the run ends")
            trace_obj = session.trace
        if format == "csv":
            from fastapi.responses import PlainTextResponse

            return PlainTextResponse(trace_obj.to_csv(), media_type="text/csv")
        return {
            "aborted": trace_obj.aborted,
            "rows": [
                {
                    "interaction": row.interaction,
                    "utility": _json_float(row.utility),
                    "best_cost": _json_float(row.best_cost),
                    "active_mask": list(row.mask),
                    "n_active": row.n_active,
                    "n_active_relevant": row.n_active_relevant,
                    "detected": list(row.detected) if row.detected else None,
                    "update_needed": row.update_needed,
                    "evaluations": row.evaluations,
                }
                for row in trace_obj.rows
            ],
        }

    @app.delete("/sessions/{sid}", status_code=202)
    def abort_session(sid: str) -> dict:
        session = get_session(sid)
        session.abort()
        return {"id": sid, "state": "aborting"}

    return app


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
