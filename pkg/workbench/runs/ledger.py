"""energy.csv: one row per logged descent iteration"""

import csv
from datetime import datetime, timezone
from pathlib import Path

from flow.models import FlowTrace, TraceRow

FIELDNAMES = [
    "iter",
    "E_dirichlet",
    "E_skyrme",
    "E_total",
    "grad_norm",
    "hopf_or_degree",
]


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17g}"


def ledger_row(row: TraceRow) -> dict[str, str]:
    return {
        "iter": str(row.iteration),
        "E_dirichlet": _fmt(row.dirichlet),
        "E_skyrme": _fmt(row.skyrme),
        "E_total": _fmt(row.total),
        "grad_norm": _fmt(row.grad_norm),
        "hopf_or_degree": _fmt(row.secondary),
    }


def write_energy_csv(
    path: Path, trace: FlowTrace, generated: datetime | None = None
) -> Path:
    """Write the trace rows after a ``# generated <timestamp>`` comment line."""
    generated = generated or datetime.now(timezone.utc)
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(f"# generated {generated.isoformat()}\n")
        writer = csv.DictWriter(handle, fieldnames=FIELDNAMES, lineterminator="\n")
        writer.writeheader()
        for row in trace.rows:
            writer.writerow(ledger_row(row))
    return path


def read_energy_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))
