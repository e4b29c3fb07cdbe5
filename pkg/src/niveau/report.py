"""Run configuration, report envelope and persistence for the command line."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from .recurrence import INCONCLUSIVE, PROVEN, REFUTED

SCHEMA_VERSION = "1.0"
COMPLETED = "COMPLETED"
REPORT_STATUSES = (PROVEN, REFUTED, INCONCLUSIVE, COMPLETED)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

COMMANDS = ("lemmas", "count", "density", "construct", "chromatic", "lovasz", "poincare", "explore")
FORMATS = ("json", "csv")
OUTPUT_ENV = "NIVEAU_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "niveau_reports"
# fields that legitimately differ between two runs of one config
VOLATILE_FIELDS = ("timestamp", "timing")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None
    caps: dict = field(default_factory=dict)
    output_dir: Optional[str] = None
    formats: list[str] = field(default_factory=lambda: ["json"])
    threads: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if not isinstance(self.params, dict) or not isinstance(self.caps, dict):
            raise ConfigError("params and caps must be objects")
        if self.seed is not None and (isinstance(self.seed, bool) or not isinstance(self.seed, int)):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad or "json" not in self.formats:
            raise ConfigError(f"formats must include json and be drawn from {FORMATS}, got {self.formats}")
        if isinstance(self.threads, bool) or not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError(f"threads must be a positive integer, got {self.threads!r}")

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Any) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("a run configuration must be a JSON object")
        if "config" in data and "command" in data and isinstance(data["config"], dict):
            data = data["config"]  # a whole report: rerun what it recorded
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        if "command" not in data:
            raise ConfigError("config has no command")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path: str | os.PathLike) -> "RunConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
        return cls.from_dict(data)


def resolve_output_dir(flag: Optional[str]) -> str:
    chosen = flag or os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT_DIR
    return str(Path(chosen).resolve())


def exit_code(statuses: Iterable[str], refuted_fails: bool = True) -> int:
    """1 on any REFUTED (when it counts as failure), else 2 on any INCONCLUSIVE, else 0."""
    statuses = set(statuses)
    unknown = statuses - set(REPORT_STATUSES)
    if unknown:
        raise ValueError(f"unknown statuses {sorted(unknown)}")
    if refuted_fails and REFUTED in statuses:
        return EXIT_REFUTED
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def build_report(config: RunConfig, status: str, result: dict, seconds: float,
                 code: Optional[int] = None) -> dict:
    if status not in REPORT_STATUSES:
        raise ValueError(f"unknown report status {status!r}")
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "config": config.as_dict(),
        "status": status,
        "exit_code": exit_code([status]) if code is None else code,
        "result": result,
        "library_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "timing": {"seconds": round(seconds, 3)},
    }
    # normalize numpy scalars and tuples now so the in-memory report equals the file
    return json.loads(dumps(report))


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, default=_jsonable) + "\n"


def comparable(report: dict) -> dict:
    """The report without the fields that change from run to run."""
    return {k: v for k, v in report.items() if k not in VOLATILE_FIELDS}


def same_report(a: dict, b: dict) -> bool:
    return dumps(comparable(a)) == dumps(comparable(b))


def rows_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def write_outputs(report: dict, config: RunConfig, csv_text: Optional[str] = None) -> list[Path]:
    """<output_dir>/<command>.json, plus <command>.csv when requested."""
    out_dir = Path(config.output_dir or resolve_output_dir(None))
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [out_dir / f"{config.command}.json"]
    paths[0].write_text(dumps(report))
    if "csv" in config.formats and csv_text is not None:
        paths.append(out_dir / f"{config.command}.csv")
        paths[-1].write_text(csv_text)
    return paths


def load_report(path: str | os.PathLike) -> dict:
    with open(path) as fh:
        return json.load(fh)


__all__ = [
    "SCHEMA_VERSION",
    "COMPLETED",
    "EXIT_OK",
    "EXIT_REFUTED",
    "EXIT_INCONCLUSIVE",
    "EXIT_USAGE",
    "COMMANDS",
    "OUTPUT_ENV",
    "ConfigError",
    "RunConfig",
    "resolve_output_dir",
    "exit_code",
    "build_report",
    "dumps",
    "comparable",
    "same_report",
    "rows_csv",
    "write_outputs",
    "load_report",
]
