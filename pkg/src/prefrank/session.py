"""HTTP service for live ranking sessions: a human answers pairwise queries.

Each session wraps one ActiveDriver (the same state machine the batch runner
uses), so a finished interactive session replayed through run_active with the
recorded answers and the same seed reproduces the final weights bit for bit.
Sessions live in memory; per-session operations serialize on a lock because
sync endpoints run in a thread pool.
"""
from __future__ import annotations

import json
import secrets
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .learner import ActiveDriver, FeedbackRanking, LearnerConfig, PatternCollection, PatternRecord


@dataclass
class DatasetBundle:
    name: str
    collection: PatternCollection


class SessionRuntime:
    def __init__(self, sid: str, dataset: str, driver: ActiveDriver):
        self.id = sid
        self.dataset = dataset
        self.driver = driver
        self.lock = threading.Lock()
        self.finished = False
        self.created_at = time.time()

    @property
    def status(self) -> str:
        if self.finished:
            return "finished"
        return "awaiting_answer" if self.driver.pending is not None else "ready"


class CreateSessionRequest(BaseModel):
    dataset: str | None = None  # omit to use the server's default dataset
    T: int = Field(ge=1)
    theta: int = Field(default=1000, ge=2)
    seed: int | None = None  # omit for a server-drawn random seed
    scaling_mode: str = "minmax"
    strategy: str = "sbg"


class AnswerRequest(BaseModel):
    preferred: int


def render_pattern(p: PatternRecord, names: Sequence[str]) -> dict:
    return {
        "id": p.id,
        "body": sorted(p.rule.body) if p.rule is not None else [],
        "head": sorted(p.rule.head) if p.rule is not None else [],
        "measures": {n: float(v) for n, v in zip(names, p.measures)},
        "scaled": {n: float(v) for n, v in zip(names, p.scaled)},
    }


def create_app(
    datasets: dict[str, DatasetBundle],
    default_dataset: str | None = None,
    static_dir: str | Path | None = None,
    snapshot_dir: str | Path | None = None,
) -> FastAPI:
    if not datasets:
        raise ValueError("at least one dataset is required")
    if default_dataset is None:
        default_dataset = next(iter(datasets))
    if default_dataset not in datasets:
        raise ValueError(f"default dataset {default_dataset!r} not in registry")

    app = FastAPI(title="pattern ranking sessions")
    sessions: dict[str, SessionRuntime] = {}
    app.state.sessions = sessions

    def get_session(sid: str) -> SessionRuntime:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(404, f"unknown session {sid}")
        return s

    def state_payload(s: SessionRuntime) -> dict:
        d = s.driver
        return {
            "id": s.id,
            "dataset": s.dataset,
            "status": s.status,
            "t": d.t,
            "T": d.config.T,
            "theta": d.config.theta,
            "seed": d.config.seed,
            "scaling_mode": d.config.scaling_mode,
            "strategy": d.strategy,
            "measure_names": list(d.collection.measure_names),
            "weights": d.weights.values.tolist(),
            "lambda_max": d.weights.lambda_max,
            "weight_trace": [tr.weights.tolist() for tr in d.trace],
            "answers": [
                {"t": tr.t, "query": list(tr.query), "response": list(tr.response)}
                for tr in d.trace
            ],
            "pending": list(d.pending) if d.pending is not None else None,
        }

    def snapshot(s: SessionRuntime) -> None:
        if snapshot_dir is None:
            return
        out = Path(snapshot_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{s.id}.json").write_text(json.dumps(state_payload(s), indent=2))

    def top_k_payload(s: SessionRuntime, k: int) -> list[dict]:
        d = s.driver
        out = []
        for rec, score in d.collection.top_k(d.weights, k, d.config.scaling_mode):
            item = render_pattern(rec, d.collection.measure_names)
            item["score"] = score
            out.append(item)
        return out

    @app.get("/datasets")
    def list_datasets() -> dict:
        return {
            "default": default_dataset,
            "datasets": [
                {
                    "name": b.name,
                    "patterns": len(b.collection),
                    "measure_names": list(b.collection.measure_names),
                }
                for b in datasets.values()
            ],
        }

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict:
        name = req.dataset if req.dataset is not None else default_dataset
        bundle = datasets.get(name)
        if bundle is None:
            raise HTTPException(404, f"unknown dataset {name!r}")
        seed = req.seed if req.seed is not None else secrets.randbits(32)
        try:
            config = LearnerConfig(
                T=req.T, seed=seed, theta=req.theta, scaling_mode=req.scaling_mode
            )
            driver = ActiveDriver(bundle.collection, config, strategy=req.strategy)
        except ValueError as e:
            raise HTTPException(422, str(e))
        sid = uuid.uuid4().hex
        sessions[sid] = SessionRuntime(sid, name, driver)
        return state_payload(sessions[sid])

    @app.get("/sessions/{sid}")
    def get_state(sid: str) -> dict:
        s = get_session(sid)
        with s.lock:
            return state_payload(s)

    @app.get("/sessions/{sid}/query")
    def next_query(sid: str) -> dict:
        s = get_session(sid)
        with s.lock:
            if s.finished:
                raise HTTPException(410, "session is finished")
            d = s.driver
            if d.pending is None:
                d.propose()
            names = d.collection.measure_names
            return {
                "t": d.t + 1,
                "T": d.config.T,
                "status": s.status,
                "pair": [render_pattern(p, names) for p in d.pending_records()],
            }

    @app.post("/sessions/{sid}/answer")
    def submit_preference(sid: str, req: AnswerRequest) -> dict:
        s = get_session(sid)
        with s.lock:
            if s.finished:
                raise HTTPException(409, "session is finished")
            d = s.driver
            if d.pending is None:
                raise HTTPException(409, "no pending query to answer")
            pair = d.pending
            if req.preferred not in pair:
                raise HTTPException(
                    422, f"preferred id {req.preferred} is not in the pending pair {list(pair)}"
                )
            other = pair[1] if req.preferred == pair[0] else pair[0]
            w = d.absorb(FeedbackRanking((req.preferred, other)))
            if d.done:
                s.finished = True
                snapshot(s)
            return {
                "t": d.t,
                "T": d.config.T,
                "status": s.status,
                "weights": w.values.tolist(),
                "lambda_max": w.lambda_max,
                "measure_names": list(d.collection.measure_names),
                "top": top_k_payload(s, 10),
            }

    @app.get("/sessions/{sid}/ranking")
    def get_ranking(sid: str, k: int = 10) -> dict:
        s = get_session(sid)
        if k < 1:
            raise HTTPException(422, "k must be >= 1")
        with s.lock:
            return {
                "k": k,
                "t": s.driver.t,
                "status": s.status,
                "items": top_k_payload(s, k),
            }

    @app.post("/sessions/{sid}/stop")
    def stop_session(sid: str) -> dict:
        s = get_session(sid)
        with s.lock:
            if not s.finished:
                s.finished = True
                snapshot(s)
            return state_payload(s)

    if static_dir is not None and Path(static_dir).is_dir():
        # mounted last so API routes take precedence
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
