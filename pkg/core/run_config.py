"""
Run configuration files.

A run config is a JSON object:

    {
      "schema_version": 1,
      "system":    {"kind": "symbolic", "d": 2, "alphabet_size": 2, "weights": ["1/2", "1/2"],
                    "axes": ["identity", "shift"]},
      "partition": {"kind": "generating"},
      "cover":     {"kind": "origin-cylinders"},
      "subset":    {"kind": "axis-ray", "axis": 1},
      "folner":    {"kind": "boxes"},
      "n_range":   {"start": 1, "stop": 8},
      "solver":    "exact",
      "unit":      "nats",
      "budget":    16777216,
      "search":    {"mode": "independence", "params": {...}}
    }

Only the sections a command uses need to be present. Rational numbers are
written as strings ("1/3") and stay exact.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import config
from core.errors import ConfigError, MalformedInputError
from core.models import EntropyUnit, SearchMode, SolverMode
from covers.cover import Cover, cover_from_dict
from entropy.partitions import Partition, partition_from_dict
from group.lattice import FolnerKind, FolnerSequence
from group.subsets import SubsetGenerator, subset_from_dict
from systems.base import DynamicalSystem
from systems.registry import open_set_from_dict, system_from_dict

logger = logging.getLogger(__name__)


def _parse_n_range(value: Any) -> List[int]:
    if isinstance(value, dict):
        try:
            start, stop = int(value.get("start", 1)), int(value["stop"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"n_range {value!r} needs integer 'stop' (and optional 'start')")
        n_values = list(range(start, stop + 1))
    elif isinstance(value, list):
        if not all(isinstance(n, int) and not isinstance(n, bool) for n in value):
            raise ConfigError(f"n_range list must contain integers, got {value!r}")
        n_values = list(value)
    else:
        raise ConfigError(f"n_range must be a list or {{start, stop}}, got {value!r}")
    if not n_values:
        raise ConfigError("n_range is empty", "Give at least one box index, e.g. {\"start\": 1, \"stop\": 8}")
    if n_values[0] < 1 or n_values != sorted(set(n_values)):
        raise ConfigError(f"n_range must be increasing and start at >= 1, got {n_values}")
    return n_values


@dataclass
class SearchSpec:
    """Search mode and its raw parameters (interpreted by the orchestrator)."""
    mode: SearchMode
    params: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchSpec":
        if not isinstance(data, dict):
            raise ConfigError(f"search section must be an object, got {data!r}")
        try:
            mode = SearchMode(data.get("mode"))
        except ValueError:
            valid = ", ".join(m.value for m in SearchMode)
            raise ConfigError(f"unknown search mode {data.get('mode')!r}", f"Use one of: {valid}")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"search params must be an object, got {params!r}")
        return cls(mode=mode, params=params)


@dataclass
class RunConfig:
    """Parsed run configuration; dimensions are checked across all sections."""
    system: DynamicalSystem
    folner: FolnerSequence
    subset: Optional[SubsetGenerator] = None
    partition: Optional[Partition] = None
    cover: Optional[Cover] = None
    n_range: List[int] = field(default_factory=list)
    solver: SolverMode = SolverMode.EXACT
    unit: EntropyUnit = EntropyUnit.NATS
    budget: Optional[int] = None
    search: Optional[SearchSpec] = None
    raw: Dict[str, Any] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.system.d

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """
        Build and validate a RunConfig.

        Raises:
            ConfigError: Schema version, unknown kinds, bad values or
                inconsistent dimensions
        """
        if not isinstance(data, dict):
            raise ConfigError("top level must be a JSON object")
        version = data.get("schema_version")
        if version != config.CONFIG_SCHEMA_VERSION:
            raise ConfigError(
                f"schema_version {version!r} is not supported",
                f"Set \"schema_version\": {config.CONFIG_SCHEMA_VERSION}",
            )
        if "system" not in data:
            raise ConfigError("missing 'system' section")

        try:
            system = system_from_dict(data["system"])
            d = system.d

            folner_data = data.get("folner", {})
            if folner_data.get("d", d) != d:
                raise ConfigError(f"folner dimension {folner_data['d']} does not match system dimension {d}")
            folner = FolnerSequence(d, FolnerKind(folner_data.get("kind", "boxes")))

            subset = None
            if "subset" in data:
                subset = subset_from_dict(data["subset"], d)
                if subset.d != d:
                    raise ConfigError(f"subset lives in Z^{subset.d} but the system acts by Z^{d}")

            partition = partition_from_dict(system, data["partition"]) if "partition" in data else None
            cover = cover_from_dict(system, data["cover"]) if "cover" in data else None
            n_range = _parse_n_range(data["n_range"]) if "n_range" in data else []
            solver = SolverMode(data.get("solver", SolverMode.EXACT.value))
            unit = EntropyUnit(data.get("unit", config.DEFAULT_UNIT))
        except MalformedInputError as e:
            raise ConfigError(str(e).splitlines()[0])
        except (KeyError, TypeError) as e:
            raise ConfigError(f"missing or mistyped field: {e}")
        except ValueError as e:
            raise ConfigError(str(e))

        budget = data.get("budget")
        if budget is not None and (not isinstance(budget, int) or budget < 1):
            raise ConfigError(f"budget must be a positive integer, got {budget!r}")
        search = SearchSpec.from_dict(data["search"]) if "search" in data else None

        return cls(
            system=system, folner=folner, subset=subset, partition=partition, cover=cover,
            n_range=n_range, solver=solver, unit=unit, budget=budget, search=search, raw=data,
        )

    def require(self, *sections: str) -> None:
        """Raise ConfigError unless every named section was given."""
        missing = [s for s in sections if not getattr(self, s)]
        if missing:
            raise ConfigError(f"this command needs the section(s): {', '.join(missing)}")

    def open_set(self, descriptor: Dict[str, Any]):
        """Interpret an open-set descriptor from the search params."""
        try:
            return open_set_from_dict(self.system, descriptor)
        except MalformedInputError as e:
            raise ConfigError(str(e).splitlines()[0])


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Read a JSON run config; bare names resolve against the packaged configs.

    Raises:
        ConfigError: Missing file, invalid JSON or invalid contents
    """
    path = Path(path)
    if not path.exists() and not path.is_absolute():
        packaged = config.CONFIGS_DIR / path
        if not packaged.suffix:
            packaged = packaged.with_suffix(".json")
        if packaged.exists():
            path = packaged
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}", f"Check the path or use a name from {config.CONFIGS_DIR}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}")
    logger.info(f"Loaded run config {path}")
    return RunConfig.from_dict(data)
