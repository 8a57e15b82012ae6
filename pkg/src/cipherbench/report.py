"""Result tables, averages, the time-per-size metric, and rendering.

Tables have one row per corpus file and one column per cipher in the
fixed order AES, Blowfish, Twofish, Salsa20, ChaCha20, plus a terminal
Average row holding the unweighted arithmetic mean of each column.
Failed cells render as FAILED and are excluded from averages.
"""

from __future__ import annotations

import enum
import json
import statistics
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from cipherbench.bench import BenchmarkRecord, TimingSample
from cipherbench.core import CipherId
from cipherbench.errors import IncompleteGridError, ZeroSizeError

CIPHER_ORDER = (
    CipherId.AES,
    CipherId.BLOWFISH,
    CipherId.TWOFISH,
    CipherId.SALSA20,
    CipherId.CHACHA20,
)


class Metric(enum.Enum):
    ENC_TIME = "enc_time"
    DEC_TIME = "dec_time"
    ENC_THROUGHPUT = "enc_throughput"
    DEC_THROUGHPUT = "dec_throughput"

    @property
    def is_time(self) -> bool:
        return self in (Metric.ENC_TIME, Metric.DEC_TIME)

    @property
    def title(self) -> str:
        return {
            Metric.ENC_TIME: "Encryption Time in Milliseconds",
            Metric.DEC_TIME: "Decryption Time in Milliseconds",
            Metric.ENC_THROUGHPUT: "Throughput for Encryption in KB/s",
            Metric.DEC_THROUGHPUT: "Throughput for Decryption in KB/s",
        }[self]


def _metric_value(record: BenchmarkRecord, metric: Metric) -> float | None:
    if not record.ok:
        return None
    return {
        Metric.ENC_TIME: lambda r: r.enc_ms,
        Metric.DEC_TIME: lambda r: r.dec_ms,
        Metric.ENC_THROUGHPUT: lambda r: r.enc_throughput_kb_s,
        Metric.DEC_THROUGHPUT: lambda r: r.dec_throughput_kb_s,
    }[metric](record)


@dataclass(frozen=True)
class TableRow:
    file_name: str
    size_kb: int
    values: tuple[float | None, ...]


@dataclass(frozen=True)
class BenchmarkTable:
    metric: Metric
    ciphers: tuple[CipherId, ...]
    rows: tuple[TableRow, ...]
    average_row: tuple[float | None, ...]


def build_table(records: list[BenchmarkRecord], metric: Metric) -> BenchmarkTable:
    """Arrange records into the (file x cipher) grid for one metric.

    Raises IncompleteGridError when any (file, cipher) cell has no record;
    duplicate cells are a caller bug and raise ValueError.
    """
    ciphers = tuple(c for c in CIPHER_ORDER if any(r.cipher is c for r in records))
    cells: dict[tuple[str, CipherId], BenchmarkRecord] = {}
    files: list[tuple[str, int]] = []
    for record in records:
        key = (record.file_name, record.cipher)
        if key in cells:
            raise ValueError(f"duplicate record for cell {key}")
        cells[key] = record
        if record.file_name not in (name for name, _ in files):
            files.append((record.file_name, record.size_kb))

    missing = [
        (name, str(cipher))
        for name, _ in files
        for cipher in ciphers
        if (name, cipher) not in cells
    ]
    if missing:
        raise IncompleteGridError(missing)

    rows = tuple(
        TableRow(
            name,
            size_kb,
            tuple(_metric_value(cells[(name, c)], metric) for c in ciphers),
        )
        for name, size_kb in files
    )
    averages = []
    for idx in range(len(ciphers)):
        column = [row.values[idx] for row in rows if row.values[idx] is not None]
        averages.append(statistics.fmean(column) if column else None)
    return BenchmarkTable(metric, ciphers, rows, tuple(averages))


def time_per_size_percent(avg_time_ms: float, avg_size_kb: float) -> float:
    """Average time per average size, scaled to percent."""
    if avg_size_kb <= 0:
        raise ZeroSizeError(f"average size must be positive, got {avg_size_kb}")
    return avg_time_ms / avg_size_kb * 100


def _format_value(value: float | None, metric: Metric) -> str:
    if value is None:
        return "FAILED"
    return f"{value:.3f}" if metric.is_time else f"{value:.2f}"


def render(table: BenchmarkTable, fmt: str = "csv") -> str:
    """Render a table as csv, markdown, or plain aligned text.

    Times carry 3 decimal places, throughputs 2. The terminal Average row
    leaves the size column empty. Output ends with a newline.
    """
    header = ["File Name", "Size KB"] + [str(c) for c in table.ciphers]
    body = [
        [row.file_name, str(row.size_kb)]
        + [_format_value(v, table.metric) for v in row.values]
        for row in table.rows
    ]
    body.append(
        ["Average", ""] + [_format_value(v, table.metric) for v in table.average_row]
    )
    if fmt == "csv":
        return "\n".join(",".join(row) for row in [header] + body) + "\n"
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(header) + " |",
            "| " + " | ".join("---" for _ in header) + " |",
        ]
        lines += ["| " + " | ".join(row) + " |" for row in body]
        return "\n".join(lines) + "\n"
    if fmt == "plain":
        widths = [
            max(len(row[i]) for row in [header] + body) for i in range(len(header))
        ]
        lines = [
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in [header] + body
        ]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def summarize(records: list[BenchmarkRecord]) -> str:
    """Per-cipher average throughput ranking plus fastest/slowest callouts.

    Purely descriptive of the supplied records; ties keep the fixed
    column order.
    """
    lines = []
    for metric, label in (
        (Metric.ENC_THROUGHPUT, "encryption"),
        (Metric.DEC_THROUGHPUT, "decryption"),
    ):
        table = build_table(records, metric)
        pairs = [
            (cipher, avg)
            for cipher, avg in zip(table.ciphers, table.average_row)
            if avg is not None
        ]
        # Stable sort: ties keep the fixed cipher order.
        ranked = sorted(pairs, key=lambda p: -p[1])
        lines.append(f"Average {label} throughput (KB/s), fastest first:")
        for rank, (cipher, avg) in enumerate(ranked, 1):
            lines.append(f"  {rank}. {cipher}: {avg:.2f}")
        if ranked:
            lines.append(
                f"Fastest {label}: {ranked[0][0]} ({ranked[0][1]:.2f} KB/s); "
                f"slowest: {ranked[-1][0]} ({ranked[-1][1]:.2f} KB/s)"
            )
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def load_records(jsonl_path: str | Path) -> list[BenchmarkRecord]:
    """Rebuild aggregated records from a results.jsonl written by run_suite."""
    groups: dict[tuple[str, str], dict] = defaultdict(
        lambda: {"enc": [], "dec": [], "size_kb": 0}
    )
    order: list[tuple[str, str]] = []
    with open(jsonl_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            key = (row["file_name"], row["cipher"])
            if key not in groups:
                order.append(key)
            group = groups[key]
            group["size_kb"] = row["size_kb"]
            group["enc"].append(
                TimingSample(row["enc_start_ns"], row["enc_end_ns"], row["enc_bytes"])
            )
            group["dec"].append(
                TimingSample(row["dec_start_ns"], row["dec_end_ns"], row["dec_bytes"])
            )
    return [
        BenchmarkRecord(
            name,
            groups[(name, cipher)]["size_kb"],
            CipherId.parse(cipher),
            tuple(groups[(name, cipher)]["enc"]),
            tuple(groups[(name, cipher)]["dec"]),
        )
        for name, cipher in order
    ]
