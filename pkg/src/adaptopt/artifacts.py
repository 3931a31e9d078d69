"""Run artifacts on disk.

A completed run is published atomically as one directory:

    <output_dir>/<run_id>/
        config.json      settings snapshot
        front.json       objectives, genotypes and workflow file per solution
        stats.jsonl      one JSON record per generation
        solution_<k>.xml manipulated workflow of solution k

Solutions are ordered by objective vector (then genotype), so artifact bytes
are a pure function of the run result.
"""

from __future__ import annotations

import json
import os
import shutil
from pathlib import Path

from .errors import ConfigError
from .moea import ParetoArchive, RunResult
from .problem import AssembledProblem, genotype_to_jsonable
from .workflow import serialize_workflow

FRONT_FILE = "front.json"
ORACLE_FRONT_FILE = "oracle_front.json"
STATS_FILE = "stats.jsonl"
CONFIG_FILE = "config.json"


def solution_file(index: int) -> str:
    return f"solution_{index}.xml"


def front_document(
    run_id: str, problem: AssembledProblem, archive: ParetoArchive
) -> dict:
    solutions = []
    for index, entry in enumerate(archive.sorted_entries()):
        solutions.append(
            {
                "index": index,
                "genotype": genotype_to_jsonable(problem.encoding, entry.genotype),
                "objectives": list(problem.reported_values(entry.objectives)),
                "workflow_file": solution_file(index),
            }
        )
    return {
        "run_id": run_id,
        "objectives": [
            {"name": spec.name, "direction": spec.direction}
            for spec in problem.objectives
        ],
        "solutions": solutions,
    }


def _write_json(path: Path, document: dict):
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def _publish(staging: Path, final_dir: Path):
    final_dir.parent.mkdir(parents=True, exist_ok=True)
    try:
        os.rename(staging, final_dir)
    except OSError:
        shutil.rmtree(staging)
        raise ConfigError(
            f"artifact directory already exists: {final_dir} "
            "(identical configuration already ran; artifacts are immutable)"
        ) from None


def write_run_artifact(
    run_id: str,
    output_dir: Path,
    problem: AssembledProblem,
    result: RunResult,
    settings: dict,
) -> Path:
    final_dir = output_dir / run_id
    if final_dir.exists():
        raise ConfigError(
            f"artifact directory already exists: {final_dir} "
            "(identical configuration already ran; artifacts are immutable)"
        )
    output_dir.mkdir(parents=True, exist_ok=True)
    staging = output_dir / f".{run_id}.staging"
    if staging.exists():
        shutil.rmtree(staging)
    staging.mkdir()

    _write_json(staging / CONFIG_FILE, {"run_id": run_id, "settings": settings})
    document = front_document(run_id, problem, result.archive)
    _write_json(staging / FRONT_FILE, document)
    with (staging / STATS_FILE).open("w", encoding="utf-8") as fh:
        for record in result.stats:
            fh.write(json.dumps(record) + "\n")
    for solution, entry in zip(document["solutions"], result.archive.sorted_entries()):
        xml = serialize_workflow(entry.workflow)
        (staging / solution["workflow_file"]).write_text(xml, encoding="utf-8")

    _publish(staging, final_dir)
    return final_dir


def write_oracle_artifact(
    oracle_id: str,
    output_dir: Path,
    problem: AssembledProblem,
    front: ParetoArchive,
) -> Path:
    final_dir = output_dir / oracle_id
    if final_dir.exists():
        raise ConfigError(f"artifact directory already exists: {final_dir}")
    output_dir.mkdir(parents=True, exist_ok=True)
    staging = output_dir / f".{oracle_id}.staging"
    if staging.exists():
        shutil.rmtree(staging)
    staging.mkdir()

    document = front_document(oracle_id, problem, front)
    _write_json(staging / ORACLE_FRONT_FILE, document)
    for solution, entry in zip(document["solutions"], front.sorted_entries()):
        (staging / solution["workflow_file"]).write_text(
            serialize_workflow(entry.workflow), encoding="utf-8"
        )

    _publish(staging, final_dir)
    return final_dir


def list_runs(runs_dir: Path) -> list[str]:
    """Run ids under ``runs_dir`` (directories holding a front.json)."""
    if not runs_dir.is_dir():
        return []
    return sorted(
        entry.name
        for entry in runs_dir.iterdir()
        if entry.is_dir() and (entry / FRONT_FILE).is_file()
    )


def read_front(runs_dir: Path, run_id: str) -> dict:
    return json.loads((runs_dir / run_id / FRONT_FILE).read_text(encoding="utf-8"))
