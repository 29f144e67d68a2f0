"""Experiment registry, configuration, execution, and report emission."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path as FsPath

import numpy as np

from .errors import RegistryError

__all__ = [
    "ExperimentConfig",
    "CaseResult",
    "Report",
    "run_experiment",
    "emit_report",
    "report_from_json",
    "registry_names",
    "annulus_points",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Run parameters; every field is echoed into the report so a run can be
    reproduced from its output alone."""

    name: str
    seed: int = 0
    samples: int | None = None
    coeff_len: int | None = None
    tolerances: dict = field(default_factory=dict)
    out_path: str | None = None
    fmt: str = "human"

    def tol(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def echo(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "samples": self.samples,
            "coeff_len": self.coeff_len,
            "tolerances": dict(self.tolerances),
        }


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    inputs: dict
    lhs: complex
    rhs: complex
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def as_dict(self) -> dict:
        return {
            "id": self.case_id,
            "inputs": self.inputs,
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class Report:
    experiment: str
    config: dict
    cases: tuple
    duration_ms: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "config": self.config,
            "cases": [c.as_dict() for c in self.cases],
            "pass": self.passed,
            "duration_ms": self.duration_ms,
        }


def report_from_json(text: str) -> Report:
    data = json.loads(text)
    cases = tuple(
        CaseResult(
            case_id=c["id"], inputs=c["inputs"],
            lhs=complex(c["lhs"]["re"], c["lhs"]["im"]),
            rhs=complex(c["rhs"]["re"], c["rhs"]["im"]),
            residual=c["residual"], tol=c["tol"])
        for c in data["cases"])
    return Report(experiment=data["experiment"], config=data["config"],
                  cases=cases, duration_ms=data["duration_ms"])


def annulus_points(center: complex, r_lo: float, r_hi: float, n: int, seed: int,
                   cut_direction: complex = 1.0,
                   cut_halfwidth_deg: float = 20.0) -> list:
    """Seeded sample points in the annulus r_lo <= |z - center| <= r_hi,
    excluding a sector around the cut direction (the ray from the center away
    from the origin, by default)."""
    rng = np.random.default_rng(seed)
    half = math.radians(cut_halfwidth_deg)
    base_arg = math.atan2(cut_direction.imag, cut_direction.real)
    out = []
    while len(out) < n:
        r = rng.uniform(r_lo, r_hi)
        theta = rng.uniform(base_arg + half, base_arg + 2.0 * math.pi - half)
        out.append(complex(center) + r * complex(math.cos(theta), math.sin(theta)))
    return out


def run_experiment(config: ExperimentConfig) -> Report:
    """Execute a registered experiment; deterministic given the seed."""
    from . import experiments
    reg = experiments.REGISTRY
    if config.name not in reg:
        raise RegistryError(config.name, sorted(reg))
    start = time.perf_counter()
    cases = reg[config.name](config)
    duration = (time.perf_counter() - start) * 1000.0
    return Report(experiment=config.name, config=config.echo(),
                  cases=tuple(cases), duration_ms=duration)


def registry_names() -> list:
    from . import experiments
    return sorted(experiments.REGISTRY)


def _atomic_write(path: str, text: str) -> None:
    p = FsPath(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=p.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_report(r: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(r.as_dict(), indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "residual", "tol", "pass",
                    "lhs_re", "lhs_im", "rhs_re", "rhs_im", "inputs"])
        for c in r.cases:
            w.writerow([c.case_id, repr(c.residual), repr(c.tol), c.passed,
                        repr(c.lhs.real), repr(c.lhs.imag),
                        repr(c.rhs.real), repr(c.rhs.imag),
                        json.dumps(c.inputs, sort_keys=True)])
        return buf.getvalue()
    if fmt == "human":
        lines = [f"experiment: {r.experiment}   "
                 f"({'pass' if r.passed else 'FAIL'}, {r.duration_ms:.0f} ms)"]
        width = max([len(c.case_id) for c in r.cases] + [4])
        lines.append(f"  {'case'.ljust(width)}  {'residual':>12}  {'tol':>9}  mark")
        for c in r.cases:
            mark = "ok" if c.passed else "FAIL <<"
            lines.append(f"  {c.case_id.ljust(width)}  {c.residual:12.3e}  "
                         f"{c.tol:9.1e}  {mark}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(r: Report, fmt: str = "human", out_path: str | None = None) -> str:
    """Render the report; write it atomically when a path is given. Returns
    the rendered text."""
    text = render_report(r, fmt)
    if out_path:
        try:
            _atomic_write(out_path, text)
        except OSError as exc:
            raise OSError(f"cannot write report to {out_path}: {exc}") from exc
    return text
