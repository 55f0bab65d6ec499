"""Result tables and their byte-stable CSV/JSON serializations."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__


def config_digest(config: dict) -> str:
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


@dataclass(frozen=True)
class ResultTable:
    columns: tuple
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        cols = tuple(str(c) for c in self.columns)
        rows = tuple(tuple(float(x) for x in r) for r in self.rows)
        if any(len(r) != len(cols) for r in rows):
            raise ValueError("every row must have one value per column")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "rows", rows)
        for key in ("tool_version", "seed", "config_digest"):
            if key not in self.metadata:
                raise ValueError(f"metadata is missing {key!r}")

    @classmethod
    def build(cls, columns, rows, config: dict, seed=None, **extra):
        meta = {"tool_version": __version__, "seed": seed, "config_digest": config_digest(config)}
        meta.update(extra)
        return cls(tuple(columns), tuple(rows), meta)

    def to_json(self) -> str:
        doc = {"metadata": self.metadata, "columns": list(self.columns), "rows": [list(r) for r in self.rows]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        doc = json.loads(text)
        return cls(tuple(doc["columns"]), tuple(tuple(r) for r in doc["rows"]), doc["metadata"])

    def to_csv(self) -> str:
        # metadata first as comment lines, then a plain header and data rows
        lines = [f"# {k}: {json.dumps(self.metadata[k], sort_keys=True)}" for k in sorted(self.metadata)]
        lines.append(",".join(self.columns))
        lines += [",".join(repr(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"


def emit(table: ResultTable, fmt: str, path) -> Path:
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    text = table.to_csv() if fmt == "csv" else table.to_json()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
