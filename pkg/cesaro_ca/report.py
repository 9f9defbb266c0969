from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

FORMATS = ("csv", "json")


def exact(value: Fraction) -> dict[str, str]:
    """An exact rational as numerator/denominator strings."""
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def fraction_cells(value: Fraction) -> list[str]:
    """[value_num, value_den] cells."""
    value = Fraction(value)
    return [str(value.numerator), str(value.denominator)]


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)

    def add(self, *cells: Any) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(f"table '{self.name}' expects {len(self.columns)} cells, got {len(cells)}")
        self.rows.append([str(c) for c in cells])

    def to_dict(self) -> dict:
        return {"name": self.name, "columns": list(self.columns), "rows": [list(r) for r in self.rows]}


@dataclass
class Report:
    experiment: str
    inputs_digest: str
    parameters: dict[str, str] = field(default_factory=dict)
    seed: int = 0
    summary: dict[str, Any] = field(default_factory=dict)
    tables: list[Table] = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(f"No table named '{name}' in report")

    def to_dict(self, *, include_timing: bool = False) -> dict:
        d = {
            "experiment": self.experiment,
            "inputs_digest": self.inputs_digest,
            "parameters": dict(sorted(self.parameters.items())),
            "seed": self.seed,
            "summary": self.summary,
            "tables": [t.to_dict() for t in self.tables],
        }
        if include_timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, *, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        """Tables as CSV; several tables are separated by `# name` lines."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i, t in enumerate(self.tables):
            if len(self.tables) > 1:
                if i:
                    buf.write("\n")
                buf.write(f"# {t.name}\n")
            writer.writerow(t.columns)
            writer.writerows(t.rows)
        return buf.getvalue()

    def render(self, fmt: str = "json", *, include_timing: bool = False) -> str:
        if fmt not in FORMATS:
            raise ValueError(f"unknown report format '{fmt}', expected one of {FORMATS}")
        return self.to_csv() if fmt == "csv" else self.to_json(include_timing=include_timing)

    def save(self, path: Path, fmt: str = "json", *, include_timing: bool = False) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(fmt, include_timing=include_timing))
