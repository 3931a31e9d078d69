"""Command-line entry point.

Exit codes: 0 success, 1 validation or optimization failure, 2 usage and I/O
errors (argparse uses 2 for usage errors on its own).
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from .artifacts import write_oracle_artifact, write_run_artifact
from .cobot import build_cobot_problem, load_instance_table
from .errors import (
    AdaptOptError,
    ConfigError,
    ContractError,
    WorkflowParseError,
    WorkflowSchemaError,
    WorkflowValidationError,
)
from .moea import Algorithm, brute_force_front, nsga2_run, nsga3_run
from .runconfig import RunConfig, load_run_config
from .workflow import parse_workflow

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def cmd_validate(workflow_path: str) -> int:
    path = Path(workflow_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        workflow = parse_workflow(text)
    except WorkflowValidationError as exc:
        print(f"{path}: invalid workflow:", file=sys.stderr)
        for violation in exc.violations:
            print(f"  - {violation}", file=sys.stderr)
        return EXIT_FAILURE
    except (WorkflowParseError, WorkflowSchemaError) as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(
        f"{path}: OK ({len(workflow.actions)} actions, {len(workflow.assets)} assets, "
        f"{len(workflow.decisions)} decisions, {len(workflow.relationships)} relationships)"
    )
    return EXIT_OK


def _load_problem(config: RunConfig):
    workflow = parse_workflow(config.workflow_path.read_text(encoding="utf-8"))
    table = load_instance_table(config.instance_table_path)
    return build_cobot_problem(workflow, table)


def cmd_optimize(config_path: str) -> int:
    try:
        config = load_run_config(config_path)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        problem = _load_problem(config)
        algorithm_config = config.algorithm_config()
        if config.algorithm is Algorithm.NSGA2:
            result = nsga2_run(problem, algorithm_config)
        else:
            result = nsga3_run(problem, algorithm_config)
        run_id = config.run_id()
        write_run_artifact(
            run_id, config.output_dir, problem, result, config.settings_snapshot()
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AdaptOptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(run_id)
    return EXIT_OK


def cmd_oracle(config_path: str) -> int:
    try:
        config = load_run_config(config_path)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        problem = _load_problem(config)
        front = brute_force_front(problem)
        digest = hashlib.sha256(
            config.workflow_path.read_bytes() + config.instance_table_path.read_bytes()
        ).hexdigest()[:12]
        oracle_id = f"oracle-{digest}"
        write_oracle_artifact(oracle_id, config.output_dir, problem, front)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AdaptOptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(oracle_id)
    return EXIT_OK


def cmd_serve(runs_dir: str, port: int, ui_dir: str | None) -> int:
    import uvicorn

    from .service import create_app

    runs = Path(runs_dir)
    if not runs.is_dir():
        print(f"error: runs directory not found: {runs}", file=sys.stderr)
        return EXIT_USAGE
    app = create_app(runs, Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptopt",
        description="Multi-objective optimization of assembly-task workflows",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a workflow XML file")
    p_validate.add_argument("workflow", help="path to the workflow XML file")

    p_optimize = sub.add_parser("optimize", help="run the configured optimization")
    p_optimize.add_argument("-c", "--config", required=True, help="run config (TOML)")

    p_oracle = sub.add_parser(
        "oracle", help="exhaustive Pareto front for small binary problems"
    )
    p_oracle.add_argument("-c", "--config", required=True, help="run config (TOML)")

    p_serve = sub.add_parser("serve", help="serve run artifacts over HTTP")
    p_serve.add_argument("-d", "--runs-dir", required=True, help="directory of run artifacts")
    p_serve.add_argument("-p", "--port", type=int, default=8000)
    p_serve.add_argument("--ui-dir", default=None, help="static UI assets to serve at /")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.workflow)
    if args.command == "optimize":
        return cmd_optimize(args.config)
    if args.command == "oracle":
        return cmd_oracle(args.config)
    return cmd_serve(args.runs_dir, args.port, args.ui_dir)


if __name__ == "__main__":
    sys.exit(main())
