"""Machine-readable run reports: named results plus expected/actual checks.

Reports are deterministic byte-for-byte for a fixed seed and flag set: no
timestamps, insertion-ordered fields, and all floats rendered to 12
significant digits.
"""

from __future__ import annotations

import io
import json
import platform
from dataclasses import dataclass, field

import numpy as np


def _round12(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return float(f"{float(value):.12g}")


def _text(value) -> str:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return str(value)
    return f"{float(value):.12g}"


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object
    tolerance: float | None
    passed: bool


def approx_check(name: str, expected: float, actual: float, tolerance: float) -> Check:
    return Check(name, expected, actual, tolerance, abs(actual - expected) <= tolerance)


def exact_check(name: str, expected, actual) -> Check:
    return Check(name, expected, actual, None, expected == actual)


def bound_check(name: str, upper_bound: float, actual: float) -> Check:
    return Check(f"{name}<=bound", upper_bound, actual, None, actual <= upper_bound)


def versions() -> dict[str, str]:
    from . import __version__

    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "qcorr": __version__,
    }


@dataclass
class Report:
    command: str
    parameters: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_result(self, name: str, value) -> None:
        self.results[name] = value

    def add_check(self, check: Check) -> None:
        self.checks.append(check)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": {k: _round12(v) for k, v in self.parameters.items()},
            "results": {k: _round12(v) for k, v in self.results.items()},
            "checks": [
                {
                    "name": c.name,
                    "expected": _round12(c.expected),
                    "actual": _round12(c.actual),
                    "tolerance": _round12(c.tolerance),
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "versions": versions(),
            "seed": self.seed,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2)
        if fmt == "csv":
            return self._render_csv()
        if fmt == "text":
            return self._render_text()
        raise ValueError(f"unknown format {fmt!r}")

    def _render_text(self) -> str:
        out = io.StringIO()
        out.write(f"command: {self.command}\n")
        out.write(f"seed: {self.seed}\n")
        for k, v in versions().items():
            out.write(f"version.{k}: {v}\n")
        for k, v in self.parameters.items():
            out.write(f"param.{k}: {_text(v)}\n")
        if self.results:
            out.write("results:\n")
            for k, v in self.results.items():
                out.write(f"  {k} = {_text(v)}\n")
        if self.checks:
            out.write("checks:\n")
            for c in self.checks:
                status = "PASS" if c.passed else "FAIL"
                tol = "" if c.tolerance is None else f" tol={_text(c.tolerance)}"
                out.write(
                    f"  [{status}] {c.name}: expected={_text(c.expected)} "
                    f"actual={_text(c.actual)}{tol}\n"
                )
        n_pass = sum(c.passed for c in self.checks)
        out.write(f"overall: {'PASS' if self.passed else 'FAIL'} ({n_pass}/{len(self.checks)})\n")
        return out.getvalue().rstrip("\n")

    def _render_csv(self) -> str:
        rows = ["kind,name,expected,actual,tolerance,pass"]
        for k, v in self.results.items():
            rows.append(f"result,{k},,{_text(v)},,")
        for c in self.checks:
            tol = "" if c.tolerance is None else _text(c.tolerance)
            rows.append(
                f"check,{c.name},{_text(c.expected)},{_text(c.actual)},{tol},{c.passed}"
            )
        return "\n".join(rows)
