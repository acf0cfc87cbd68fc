"""Run configuration, suite execution and report (de)serialization."""
from __future__ import annotations

import csv
import io
import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .entropies import CertificateError
from .generate import InfeasibleSpecError
from .linalg import DomainError
from .serialize import case_to_dict, write_json
from .theorems import (
    DEFAULT_QUAD_NODES,
    DEFAULT_V_GRID,
    SUITES,
    PreconditionError,
    QuadratureError,
    check_case,
    make_case,
)

REPORT_SCHEMA = "tsallis-ops/report/1"
FORMATS = ("json", "csv", "text")
CSV_HEADER = ["suite", "dim", "v", "role", "trials", "failures", "errors",
              "min_margin", "median_margin", "runtime"]
CASE_ERRORS = (PreconditionError, QuadratureError, DomainError, CertificateError, InfeasibleSpecError)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    suites: list[str] = field(default_factory=lambda: ["all"])
    dims: list[int] = field(default_factory=lambda: [2, 3, 4, 8])
    trials: int = 500
    v_grid: list[float] = field(default_factory=lambda: list(DEFAULT_V_GRID))
    seed: int = 42
    tol: float = 1e-9
    quad_nodes: int = DEFAULT_QUAD_NODES
    cond_max: float = 1e4
    format: str = "json"
    out: str | None = None
    workers: int = 1
    max_persist: int = 3

    def validate(self) -> None:
        if not self.suites:
            raise ConfigError("no suites selected")
        unknown = [s for s in self.suites if s != "all" and s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {unknown}")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ConfigError(f"dims must be integers >= 2, got {self.dims}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if any(not -1 <= v <= 1 or v == 0 for v in self.v_grid):
            raise ConfigError(f"v_grid entries must lie in [-1,0) U (0,1], got {self.v_grid}")
        if self.quad_nodes < 2:
            raise ConfigError("quad_nodes must be >= 2")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")

    def suite_ids(self) -> list[str]:
        return list(SUITES) if "all" in self.suites else list(dict.fromkeys(self.suites))

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")
        d.pop("out")
        return d


@dataclass(frozen=True)
class Cell:
    suite: str
    dim: int
    v: float | None
    role: str


@dataclass
class CellRecord:
    suite: str
    dim: int
    v: float | None
    role: str
    trials: int
    failures: int
    errors: int
    min_margin: float | None
    median_margin: float | None
    runtime: float = 0.0
    failing_cases: list[dict] = field(default_factory=list)
    error_messages: list[str] = field(default_factory=list)


@dataclass
class SuiteReport:
    config: dict
    records: list[CellRecord]
    summary: dict
    findings: list[dict]
    version: str = __version__
    schema: str = REPORT_SCHEMA

    @property
    def exit_code(self) -> int:
        if self.summary["asserted_errors"]:
            return 2
        return 0 if self.summary["asserted_failures"] == 0 else 1

    def without_runtime(self) -> dict:
        d = report_to_dict(self)
        for rec in d["records"]:
            rec.pop("runtime")
        d["summary"].pop("runtime")
        return d


def plan_cells(config: RunConfig) -> list[Cell]:
    cells = []
    for sid in config.suite_ids():
        suite = SUITES[sid]
        if "none" in (suite.asserted, suite.finding):
            grid = [None]
        else:
            grid = list(config.v_grid) + [v for v in suite.extra_finding_v if v not in config.v_grid]
        for v in grid:
            role = suite.v_domain(v)
            if role is None:
                continue
            for dim in config.dims:
                cells.append(Cell(sid, dim, v, role))
    return cells


def run_cell(cell: Cell, config: RunConfig) -> CellRecord:
    start = time.perf_counter()
    margins, failures, errors = [], 0, 0
    failing, messages = [], []
    for index in range(config.trials):
        case = None
        try:
            case = make_case(cell.suite, cell.dim, cell.v, config.seed, index,
                             config.tol, config.quad_nodes, config.cond_max)
            verdict = check_case(case)
        except CASE_ERRORS as exc:
            errors += 1
            if len(messages) < config.max_persist:
                messages.append(f"case {index}: {exc}")
            continue
        margins.append(verdict.min_relative_margin)
        if not verdict.overall_holds:
            failures += 1
            if len(failing) < config.max_persist:
                failing.append(case_to_dict(case))
    return CellRecord(
        cell.suite, cell.dim, cell.v, cell.role, config.trials, failures, errors,
        min(margins) if margins else None,
        statistics.median(margins) if margins else None,
        time.perf_counter() - start, failing, messages,
    )


def _summarize(records: list[CellRecord], runtime: float) -> tuple[dict, list[dict]]:
    asserted = [r for r in records if r.role == "asserted"]
    summary = {
        "cells": len(records),
        "asserted_cells": len(asserted),
        "asserted_failures": sum(r.failures for r in asserted),
        "asserted_errors": sum(r.errors for r in asserted),
        "finding_violations": sum(r.failures for r in records if r.role == "finding"),
        "passed": all(r.failures == 0 and r.errors == 0 for r in asserted),
        "runtime": runtime,
    }
    findings = []
    for sid in dict.fromkeys(r.suite for r in records if r.role == "finding"):
        rows = [r for r in records if r.suite == sid and r.role == "finding"]
        violated_v = sorted({r.v for r in rows if r.failures}, key=lambda v: (v is None, v))
        findings.append({
            "suite": sid,
            "statement": SUITES[sid].statement,
            "trials": sum(r.trials for r in rows),
            "violations": sum(r.failures for r in rows),
            "violated_v": violated_v,
            "worst_margin": min((r.min_margin for r in rows if r.min_margin is not None), default=None),
        })
    return summary, findings


def run_suite(config: RunConfig) -> SuiteReport:
    config.validate()
    cells = plan_cells(config)
    start = time.perf_counter()
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            records = list(pool.map(run_cell, cells, [config] * len(cells)))
    else:
        records = [run_cell(c, config) for c in cells]
    summary, findings = _summarize(records, time.perf_counter() - start)
    return SuiteReport(config.echo(), records, summary, findings)


# --------------------------------------------------------------------------
# serialization

def report_to_dict(report: SuiteReport) -> dict:
    return {
        "schema": report.schema,
        "version": report.version,
        "config": report.config,
        "summary": dict(report.summary),
        "findings": [dict(f) for f in report.findings],
        "records": [asdict(r) for r in report.records],
    }


def report_from_dict(obj: dict) -> SuiteReport:
    if obj.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
    return SuiteReport(
        config=obj["config"],
        records=[CellRecord(**r) for r in obj["records"]],
        summary=obj["summary"],
        findings=obj["findings"],
        version=obj["version"],
        schema=obj["schema"],
    )


def _fmt(x) -> str:
    return "" if x is None else repr(x)


def serialize_report(report: SuiteReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report_to_dict(report), indent=1) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in report.records:
            writer.writerow([r.suite, r.dim, _fmt(r.v), r.role, r.trials, r.failures, r.errors,
                             _fmt(r.min_margin), _fmt(r.median_margin), f"{r.runtime:.6f}"])
        return buf.getvalue().encode()
    if fmt == "text":
        return render_text(report).encode()
    raise ConfigError(f"unknown format {fmt!r}")


def render_text(report: SuiteReport) -> str:
    lines = [f"tsallis-ops {report.version}  seed={report.config['seed']}  "
             f"trials={report.config['trials']}  tol={report.config['tol']:g}"]
    current = None
    for r in report.records:
        if r.suite != current:
            current = r.suite
            lines.append("")
            lines.append(f"{r.suite}: {SUITES[r.suite].statement}")
        status = "ok" if r.failures == 0 and r.errors == 0 else ("VIOLATED" if r.failures else "ERROR")
        v = "-" if r.v is None else f"{r.v:g}"
        mm = "-" if r.min_margin is None else f"{r.min_margin:.3e}"
        lines.append(f"  [{r.role:8s}] dim={r.dim} v={v:>5s}  failures={r.failures}/{r.trials}"
                     f"  errors={r.errors}  min_margin={mm}  {status}")
    s = report.summary
    lines.append("")
    lines.append(f"asserted cells: {s['asserted_cells']}, failures: {s['asserted_failures']}, "
                 f"errors: {s['asserted_errors']}, finding violations: {s['finding_violations']}")
    if report.findings:
        lines.append("findings (reported, not asserted):")
        for f in report.findings:
            lines.append(f"  {f['suite']}: {f['violations']}/{f['trials']} violated"
                         f" (v with violations: {f['violated_v']})")
    lines.append("PASS" if s["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


def persist(report: SuiteReport, out: str | Path, fmt: str = "json") -> list[Path]:
    """Write the report and one replayable JSON file per stored failing case."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(serialize_report(report, fmt))
    case_dir = out.with_name(out.stem + "_cases")
    written = []
    for r in report.records:
        for case in r.failing_cases:
            v = "none" if r.v is None else f"{r.v:g}"
            path = case_dir / f"{r.suite}_d{r.dim}_v{v}_{case['index']}.json"
            write_json(case, path)
            written.append(path)
    return written
