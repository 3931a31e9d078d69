"""Run configuration files (flat TOML) and run identifiers.

A run id is derived from the content of everything that influences the
result (workflow, metrics table, algorithm settings, seed), so re-running an
identical configuration reproduces the identical artifact.
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .moea import Algorithm, AlgorithmConfig

_REQUIRED_KEYS = ("workflow", "instance_table", "algorithm", "output_dir")
_OPTIONAL_KEYS = (
    "population_size",
    "generations",
    "seed",
    "crossover_rate",
    "mutation_rate_per_gene",
    "reference_divisions",
)

_DEFAULTS = {
    "population_size": 100,
    "generations": 100,
    "seed": 1,
    "crossover_rate": 0.9,
    "mutation_rate_per_gene": "1/n",
    "reference_divisions": 12,
}


@dataclass(frozen=True)
class RunConfig:
    workflow_path: Path
    instance_table_path: Path
    output_dir: Path
    algorithm: Algorithm
    population_size: int
    generations: int
    seed: int
    crossover_rate: float
    mutation_rate_per_gene: float | None
    reference_divisions: int | None

    def algorithm_config(self) -> AlgorithmConfig:
        try:
            return AlgorithmConfig(
                algorithm=self.algorithm,
                population_size=self.population_size,
                generations=self.generations,
                seed=self.seed,
                crossover_rate=self.crossover_rate,
                mutation_rate_per_gene=self.mutation_rate_per_gene,
                reference_divisions=self.reference_divisions,
            )
        except ConfigError:
            raise
        except Exception as exc:
            raise ConfigError(str(exc)) from exc

    def settings_snapshot(self) -> dict:
        """Everything that determines the run result, JSON-ready."""
        return {
            "workflow": self.workflow_path.name,
            "instance_table": self.instance_table_path.name,
            "algorithm": self.algorithm.value,
            "population_size": self.population_size,
            "generations": self.generations,
            "seed": self.seed,
            "crossover_rate": self.crossover_rate,
            "mutation_rate_per_gene": (
                "1/n" if self.mutation_rate_per_gene is None else self.mutation_rate_per_gene
            ),
            "reference_divisions": self.reference_divisions,
        }

    def run_id(self) -> str:
        digest = hashlib.sha256()
        digest.update(json.dumps(self.settings_snapshot(), sort_keys=True).encode())
        digest.update(self.workflow_path.read_bytes())
        digest.update(self.instance_table_path.read_bytes())
        return f"run-{digest.hexdigest()[:12]}-s{self.seed}"


def _flatten(data: dict, origin: str) -> dict:
    flat: dict = {}
    for key, value in data.items():
        if isinstance(value, dict):
            for sub_key, sub_value in _flatten(value, origin).items():
                if sub_key in flat:
                    raise ConfigError(f"{origin}: key '{sub_key}' set more than once")
                flat[sub_key] = sub_value
        else:
            if key in flat:
                raise ConfigError(f"{origin}: key '{key}' set more than once")
            flat[key] = value
    return flat


def load_run_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    flat = _flatten(raw, str(path))
    unknown = sorted(set(flat) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown key(s): {', '.join(unknown)}")
    missing = sorted(set(_REQUIRED_KEYS) - set(flat))
    if missing:
        raise ConfigError(f"{path}: missing key(s): {', '.join(missing)}")

    values = {**_DEFAULTS, **flat}

    try:
        algorithm = Algorithm(str(values["algorithm"]).lower())
    except ValueError:
        raise ConfigError(
            f"{path}: algorithm must be 'nsga2' or 'nsga3', got {values['algorithm']!r}"
        ) from None

    base = path.parent
    workflow_path = (base / str(values["workflow"])).resolve()
    table_path = (base / str(values["instance_table"])).resolve()
    output_dir = (base / str(values["output_dir"])).resolve()
    if not workflow_path.is_file():
        raise ConfigError(f"{path}: workflow file not found: {workflow_path}")
    if not table_path.is_file():
        raise ConfigError(f"{path}: instance table not found: {table_path}")

    mutation = values["mutation_rate_per_gene"]
    if mutation == "1/n":
        mutation_rate = None
    elif isinstance(mutation, (int, float)) and not isinstance(mutation, bool):
        mutation_rate = float(mutation)
    else:
        raise ConfigError(
            f"{path}: mutation_rate_per_gene must be a number or the string '1/n'"
        )

    def integer(key: str) -> int:
        value = values[key]
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{path}: {key} must be an integer, got {value!r}")
        return value

    def real(key: str) -> float:
        value = values[key]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"{path}: {key} must be a number, got {value!r}")
        return float(value)

    config = RunConfig(
        workflow_path=workflow_path,
        instance_table_path=table_path,
        output_dir=output_dir,
        algorithm=algorithm,
        population_size=integer("population_size"),
        generations=integer("generations"),
        seed=integer("seed"),
        crossover_rate=real("crossover_rate"),
        mutation_rate_per_gene=mutation_rate,
        reference_divisions=(
            integer("reference_divisions") if algorithm is Algorithm.NSGA3 else None
        ),
    )
    config.algorithm_config()  # fail fast on invalid settings, before any evaluation
    return config
