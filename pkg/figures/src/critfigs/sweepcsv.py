"""Reader for the sweep CSV contract.

One header line names the columns: the swept axes first, then the
output block. Numeric cells parse to float, empty cells (the withheld
observables of a flagged row) to None, and anything else (branch names,
status text) stays a string.
"""

import csv
from dataclasses import dataclass

__all__ = ["SweepData", "read_sweep"]


def _parse_cell(text):
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class SweepData:
    """Parsed sweep table: column names plus one dict per row."""

    columns: tuple
    rows: tuple

    def require(self, *names):
        missing = [name for name in names if name not in self.columns]
        if missing:
            raise ValueError(f"missing columns {missing} in sweep CSV")

    def column(self, name):
        self.require(name)
        return [row[name] for row in self.rows]


def read_sweep(path):
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("sweep CSV has no header line") from None
        rows = []
        for line, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise ValueError(
                    f"row at line {line} has {len(record)} cells, "
                    f"header has {len(header)}")
            rows.append({name: _parse_cell(cell)
                         for name, cell in zip(header, record)})
    return SweepData(tuple(header), tuple(rows))
