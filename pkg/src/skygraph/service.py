"""HTTP facade over the analysis engine.

Endpoints mirror the exploration workflow: upload a scenario, start
parameterized runs, fetch the per-run artifacts the browser client renders.
Runs execute synchronously (desk-scale windows finish in well under a
second) and are isolated from each other through the content-addressed
store.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .errors import (
    EmptyLog,
    InvalidParams,
    InvalidWeights,
    MalformedRow,
    UnknownRun,
    UnknownScenario,
)
from .graph import WeightParams
from .storage import RunStore

DATA_DIR_ENV = "SKYGRAPH_DATA_DIR"
STATIC_DIR_ENV = "SKYGRAPH_STATIC_DIR"


class RunRequest(BaseModel):
    scenario_id: str
    H_nm: float = 5.0
    V_ft: float = 1000.0
    thresh_h_nm: float = 33.0
    thresh_v_ft: float = 3000.0
    min_h_nm: float | None = None
    min_v_ft: float | None = None
    complexity_thresh_pct: float = Field(default=60.0, gt=0.0, le=100.0)
    dt_s: float = Field(default=10.0, gt=0.0)
    exclude: list[str] = Field(default_factory=list)

    def weight_params(self) -> WeightParams:
        return WeightParams(
            H=self.H_nm,
            V=self.V_ft,
            thresh_h=self.thresh_h_nm,
            thresh_v=self.thresh_v_ft,
            min_h=self.min_h_nm,
            min_v=self.min_v_ft,
        )


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    if data_dir is None:
        data_dir = os.environ.get(DATA_DIR_ENV, "./skygraph-data")
    store = RunStore(data_dir)
    app = FastAPI(title="skygraph", version="0.1.0")

    @app.post("/scenarios", status_code=201)
    async def create_scenario(request: Request):
        raw = await request.body()
        try:
            scenario_id = store.create_scenario(raw)
        except MalformedRow as exc:
            raise HTTPException(
                status_code=422,
                detail={"error": "malformed_row", "line": exc.line_no, "reason": exc.reason},
            ) from None
        except EmptyLog as exc:
            raise HTTPException(
                status_code=422, detail={"error": "empty_log", "reason": str(exc)}
            ) from None
        return store.scenario_info(scenario_id)

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        try:
            return store.scenario_info(scenario_id)
        except UnknownScenario:
            raise HTTPException(status_code=404, detail="unknown scenario") from None

    @app.post("/runs", status_code=201)
    def create_run(req: RunRequest):
        try:
            params = req.weight_params()
            run_id = store.create_run(
                req.scenario_id,
                params,
                req.complexity_thresh_pct,
                req.dt_s,
                set(req.exclude),
            )
        except UnknownScenario:
            raise HTTPException(status_code=404, detail="unknown scenario") from None
        except (InvalidParams, InvalidWeights, EmptyLog) as exc:
            raise HTTPException(
                status_code=422, detail={"error": "invalid_params", "reason": str(exc)}
            ) from None
        return store.run_status(run_id)

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        try:
            return store.run_status(run_id)
        except UnknownRun:
            raise HTTPException(status_code=404, detail="unknown run") from None

    def artifact_endpoint(which: str, media_type: str = "application/json"):
        def handler(run_id: str):
            try:
                body = store.run_artifact(run_id, which)
            except UnknownRun:
                raise HTTPException(status_code=404, detail="unknown run") from None
            status = store.run_status(run_id)
            if status.get("status") != "done":
                raise HTTPException(status_code=409, detail="run not ready")
            return Response(content=body, media_type=media_type)

        return handler

    app.get("/runs/{run_id}/frames")(artifact_endpoint("frames"))
    app.get("/runs/{run_id}/communities")(artifact_endpoint("communities"))
    app.get("/runs/{run_id}/heatmap")(artifact_endpoint("heatmap"))
    app.get("/runs/{run_id}/summary")(artifact_endpoint("summary"))

    @app.get("/runs/{run_id}/summary-file")
    def summary_file(run_id: str):
        try:
            body = store.run_artifact(run_id, "summary_file")
        except UnknownRun:
            raise HTTPException(status_code=404, detail="unknown run") from None
        return Response(
            content=body,
            media_type="application/json",
            headers={
                "Content-Disposition": f'attachment; filename="summary-{run_id}.json"'
            },
        )

    static_dir = os.environ.get(STATIC_DIR_ENV)
    if static_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        static_dir = str(bundled) if bundled.is_dir() else None
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def main(host: str = "127.0.0.1", port: int = 8000, data_dir: str | None = None):
    import uvicorn

    uvicorn.run(create_app(data_dir), host=host, port=port)
