"""Read-only HTTP API over published run artifacts.

The service never writes: every endpoint resolves to files produced by
`adaptopt optimize`. Unknown runs or solutions yield 404 with a JSON body.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse, Response

from .artifacts import FRONT_FILE, STATS_FILE, list_runs
from .cobot import COBOT_FLAG_KEY
from .workflow import parse_workflow

_RUN_ID_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.-]*")


def create_app(runs_dir: Path, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="adaptopt results", version="1.0")

    def run_dir(run_id: str) -> Path:
        if not _RUN_ID_RE.fullmatch(run_id):
            raise HTTPException(status_code=404, detail=f"unknown run '{run_id}'")
        path = runs_dir / run_id
        if not (path / FRONT_FILE).is_file():
            raise HTTPException(status_code=404, detail=f"unknown run '{run_id}'")
        return path

    def front(run_id: str) -> dict:
        return json.loads((run_dir(run_id) / FRONT_FILE).read_text(encoding="utf-8"))

    def solution(run_id: str, index: int) -> dict:
        document = front(run_id)
        solutions = document["solutions"]
        if not 0 <= index < len(solutions):
            raise HTTPException(
                status_code=404,
                detail=f"run '{run_id}' has no solution {index}",
            )
        return solutions[index]

    @app.get("/api/runs")
    def get_runs():
        summaries = []
        for run_id in list_runs(runs_dir):
            document = front(run_id)
            summaries.append(
                {
                    "run_id": run_id,
                    "objectives": document["objectives"],
                    "solution_count": len(document["solutions"]),
                }
            )
        return summaries

    @app.get("/api/runs/{run_id}/front")
    def get_front(run_id: str):
        return Response(
            content=(run_dir(run_id) / FRONT_FILE).read_bytes(),
            media_type="application/json",
        )

    @app.get("/api/runs/{run_id}/solutions/{index}")
    def get_solution(run_id: str, index: int):
        entry = solution(run_id, index)
        xml_path = run_dir(run_id) / entry["workflow_file"]
        workflow = parse_workflow(xml_path.read_text(encoding="utf-8"))
        actions = []
        for action in workflow.actions:
            properties = {
                key: prop.value for key, prop in action.properties.items()
            }
            executor = None
            flag = action.properties.get(COBOT_FLAG_KEY)
            if flag is not None and isinstance(flag.value, bool):
                executor = "cobot" if flag.value else "human"
            actions.append(
                {
                    "id": action.id,
                    "name": action.name,
                    "executor": executor,
                    "properties": properties,
                }
            )
        return {**entry, "workflow_name": workflow.name, "actions": actions}

    @app.get("/api/runs/{run_id}/solutions/{index}/workflow.xml")
    def get_solution_workflow(run_id: str, index: int):
        entry = solution(run_id, index)
        return Response(
            content=(run_dir(run_id) / entry["workflow_file"]).read_bytes(),
            media_type="application/xml",
        )

    @app.get("/api/runs/{run_id}/stats")
    def get_stats(run_id: str):
        stats_path = run_dir(run_id) / STATS_FILE
        if not stats_path.is_file():
            raise HTTPException(
                status_code=404, detail=f"run '{run_id}' has no stats stream"
            )
        return Response(
            content=stats_path.read_bytes(), media_type="application/x-ndjson"
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index():
            return (
                "<html><body><h1>adaptopt results</h1>"
                '<p>Browse <a href="/api/runs">/api/runs</a>.</p></body></html>'
            )

    return app
