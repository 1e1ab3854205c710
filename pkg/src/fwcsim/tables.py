"""Result tables with pinned CSV schemas and config-echo sidecars.

CSV contract: header row mandatory, LF line endings, '.' decimal separator,
floats via repr (shortest round-trip) so identical configs yield identical
bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))  # plain-float repr even for numpy scalars
    return str(value)


@dataclass
class ResultTable:
    kind: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} cells for {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def write_csv(self, path: str | Path) -> None:
        lines = [",".join(self.columns)]
        lines.extend(",".join(format_cell(v) for v in row) for row in self.rows)
        Path(path).write_bytes(("\n".join(lines) + "\n").encode())

    def write_meta(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.metadata, sort_keys=True, indent=2) + "\n")


def meta_path_for(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".meta.json")
