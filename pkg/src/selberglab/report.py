"""Suite configuration, the runner and report serialisation."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConfigError
from .suites import REGISTRY, Context, derive_seed, run_case

FIELDS = ("suite", "case", "lhs", "rhs", "residual", "pass", "method", "evals", "seed", "ms")
U64 = 2**64


@dataclass
class SuiteConfig:
    suites: list = field(default_factory=list)
    grids: dict = field(default_factory=dict)
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    jobs: int = 1
    term_ceiling: int = 10**7
    sample_ceiling: int = 10**7
    timing: bool = False

    def validate(self) -> None:
        unknown = [s for s in self.suites if s not in REGISTRY]
        unknown += [s for s in self.grids if s not in REGISTRY]
        unknown += [s for s in self.tolerances if s not in REGISTRY]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(sorted(set(unknown)))}; known: {', '.join(REGISTRY)}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < U64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        for name, tol in self.tolerances.items():
            if not (isinstance(tol, (int, float)) and tol > 0):
                raise ConfigError(f"tolerance for {name} must be a positive number")
        for name, grid in self.grids.items():
            extra = set(grid) - set(REGISTRY[name].grid)
            if extra:
                raise ConfigError(f"{name}: unknown grid key(s) {sorted(extra)}")

    @classmethod
    def from_mapping(cls, data: dict) -> "SuiteConfig":
        data = dict(data or {})
        ceilings = data.pop("ceilings", {}) or {}
        known = {"suites", "grids", "seed", "tolerances", "jobs", "timing"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config key(s): {sorted(extra)}")
        cfg = cls(**data)
        cfg.suites = list(cfg.suites or [])
        cfg.grids = dict(cfg.grids or {})
        cfg.tolerances = {k: float(v) for k, v in (cfg.tolerances or {}).items()}
        if "terms" in ceilings:
            cfg.term_ceiling = int(ceilings["terms"])
        if "samples" in ceilings:
            cfg.sample_ceiling = int(ceilings["samples"])
        return cfg


@dataclass
class ReportRecord:
    suite: str
    case: dict
    lhs: object
    rhs: object
    residual: object
    passed: bool
    method: str
    evals: int
    seed: int
    ms: float | None = None

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "case": self.case,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "residual": _render(self.residual),
            "pass": bool(self.passed),
            "method": self.method,
            "evals": int(self.evals),
            "seed": self.seed,
            "ms": self.ms,
        }


def _render(v):
    """Exact values become "num/den" strings; floats stay floats (json writes the shortest repr)."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, complex):
        return [_render(v.real), _render(v.imag)]
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_render(x) for x in v]
    return str(v)


def _case_key(case: dict) -> str:
    return json.dumps(case, sort_keys=True)


def plan(config: SuiteConfig) -> list:
    """[(suite, index, case)] in report order."""
    config.validate()
    out = []
    for name in sorted(set(config.suites)):
        suite = REGISTRY[name]
        grid = {**suite.grid, **config.grids.get(name, {})}
        cases = sorted(suite.cases(grid, config.seed), key=_case_key)
        out.extend((name, i, c) for i, c in enumerate(cases))
    return out


def _execute(job) -> ReportRecord:
    name, index, case, config = job
    seed = derive_seed(config.seed, name, index)
    ctx = Context(seed=seed, tolerances=config.tolerances, term_ceiling=config.term_ceiling,
                  sample_ceiling=config.sample_ceiling)
    t0 = time.perf_counter()
    o = run_case(name, case, ctx)
    ms = round((time.perf_counter() - t0) * 1000, 3) if config.timing else None
    return ReportRecord(name, case, o.lhs, o.rhs, o.residual, o.passed, o.method, o.evals, seed, ms)


def run_suite(config: SuiteConfig) -> list:
    """Run every case; the result order never depends on ``jobs``."""
    jobs = [(name, i, case, config) for name, i, case in plan(config)]
    if config.jobs == 1 or len(jobs) < 2:
        return [_execute(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(_execute, jobs, chunksize=1))


def emit_report(records, fmt: str = "json_lines") -> bytes:
    if fmt == "json_lines":
        lines = [json.dumps(r.as_dict(), sort_keys=False, separators=(",", ":")) for r in records]
        return "".join(line + "\n" for line in lines).encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in records:
            d = r.as_dict()
            w.writerow([_csv_cell(d[k]) for k in FIELDS])
        return buf.getvalue().encode()
    if fmt == "summary_text":
        counts: dict = {}
        for r in records:
            ok, total = counts.get(r.suite, (0, 0))
            counts[r.suite] = (ok + bool(r.passed), total + 1)
        lines = [f"{name}: {ok}/{total} passed" for name, (ok, total) in counts.items()]
        failed = sum(total - ok for ok, total in counts.values())
        lines.append(f"total: {len(records) - failed}/{len(records)} passed")
        return ("\n".join(lines) + "\n").encode()
    raise ConfigError(f"unknown format {fmt!r}; use json_lines, csv or summary_text")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else v
