"""CSV and JSON persistence for sweep records.

Floats are written with ``repr``, the shortest string that parses back to the
identical double, so both formats round-trip exactly and are byte-stable for
identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .analysis import FitResult
from .config import Config
from .sweep import RECORD_FIELDS, SweepRecord

_INT_FIELDS = {"p", "r", "n_exact", "phi_pm1", "omega_pm1"}
_OPTIONAL_FIELDS = {"sigma2", "explicit_bound", "phi_ratio"}


class ReportError(OSError):
    pass


def _cell(name: str, value) -> str:
    if value is None:
        return ""
    if name == "shifts":
        return " ".join(str(a) for a in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(name: str, text: str):
    if name == "shifts":
        return tuple(int(a) for a in text.split())
    if text == "" and name in _OPTIONAL_FIELDS:
        return None
    if name in _INT_FIELDS:
        return int(text)
    return float(text)


def record_to_dict(rec: SweepRecord) -> dict:
    d = {name: getattr(rec, name) for name in RECORD_FIELDS}
    d["shifts"] = list(rec.shifts)
    return d


def record_from_dict(d: dict) -> SweepRecord:
    missing = set(RECORD_FIELDS) - set(d)
    if missing:
        raise ValueError(f"record is missing fields {sorted(missing)}")
    kw = {name: d[name] for name in RECORD_FIELDS}
    kw["shifts"] = tuple(kw["shifts"])
    return SweepRecord(**kw)


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for rec in records:
        writer.writerow([_cell(name, getattr(rec, name)) for name in RECORD_FIELDS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[SweepRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != RECORD_FIELDS:
        raise ValueError(f"unexpected CSV header {header}")
    return [
        SweepRecord(**{name: _parse_cell(name, cell) for name, cell in zip(header, row)})
        for row in reader
        if row
    ]


def build_document(
    records: Sequence[SweepRecord],
    fit: Optional[FitResult],
    config: Config,
    extra_meta: Optional[dict] = None,
) -> dict:
    meta = {"config": config.to_dict(), "version": __version__, "seed": config.seed}
    if extra_meta:
        meta.update(extra_meta)
    return {
        "meta": meta,
        "records": [record_to_dict(rec) for rec in records],
        "fit": fit.to_dict() if fit is not None else None,
    }


def records_to_json(records, fit, config, extra_meta=None) -> str:
    return json.dumps(build_document(records, fit, config, extra_meta), indent=2) + "\n"


def records_from_json(text: str) -> list[SweepRecord]:
    doc = json.loads(text)
    return [record_from_dict(d) for d in doc["records"]]


def _write(path: Path, text: str) -> None:
    try:
        # newline="" keeps LF endings on every platform
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportError(f"cannot write {path}: {exc.strerror or exc}") from exc


def report(
    records: Sequence[SweepRecord],
    fit: Optional[FitResult],
    fmt: str,
    destination: str | Path,
    config: Config | None = None,
    extra_meta: Optional[dict] = None,
) -> Path:
    config = config or Config()
    path = Path(destination)
    if fmt == "csv":
        _write(path, records_to_csv(records))
    elif fmt == "json":
        _write(path, records_to_json(records, fit, config, extra_meta))
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    return path


def load_records(source: str | Path) -> list[SweepRecord]:
    """Read records back from a CSV or JSON file written by ``report``."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if text.lstrip().startswith("{"):
        return records_from_json(text)
    return records_from_csv(text)
