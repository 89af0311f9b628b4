"""Verification reports and their text serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

__all__ = ["VerificationReport", "dump_reports", "load_reports", "summary_rows",
           "write_summary", "format_table"]

NOT_APPLICABLE = "not-applicable"


def _clean(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, complex):
        return {"re": _clean(value.real), "im": _clean(value.imag)}
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "item"):
        return _clean(value.item())
    return value


@dataclass
class VerificationReport:
    """Outcome of one named check.

    ``checked`` names the residuals compared against ``tolerance`` (or a
    per-residual entry of ``limits``); other residuals are informational.
    With ``comparison="min"`` a residual must reach at least the tolerance
    (used for convergence orders).  Reports with ``assertable=False`` only
    measure and carry ``passed = None``.
    """

    name: str
    residuals: dict
    tolerance: float
    checked: Sequence[str] = ()
    comparison: str = "max"
    assertable: bool = True
    scheme: str = ""
    inputs: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    limits: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.comparison not in ("max", "min"):
            raise ValueError("comparison must be 'max' or 'min'")
        missing = [k for k in self.checked if k not in self.residuals]
        if missing:
            raise KeyError(f"checked residuals missing: {missing}")
        self.residuals = {k: float(v) for k, v in self.residuals.items()}
        self.checked = tuple(self.checked)
        self.limits = {k: float(v) for k, v in self.limits.items()}

    def limit(self, key: str) -> float:
        return self.limits.get(key, self.tolerance)

    def _ok(self, key: str) -> bool:
        value, tol = self.residuals[key], self.limit(key)
        if math.isnan(value):
            return False
        return value <= tol if self.comparison == "max" else value >= tol

    @property
    def checks_hold(self) -> bool:
        return all(self._ok(k) for k in self.checked)

    @property
    def failing(self) -> list[str]:
        return [k for k in self.checked if not self._ok(k)]

    @property
    def passed(self) -> Optional[bool]:
        return self.checks_hold if self.assertable else None

    @property
    def worst(self) -> float:
        """Checked residual with the least margin, as a multiple of the tolerance.

        Scaled back to the report tolerance so a single number summarises the
        check; equals the raw residual when no per-key limits are set.
        """
        keys = list(self.checked) or list(self.residuals)
        if not keys:
            return float("nan")
        scaled = [self.residuals[k] / self.limits[k] * self.tolerance if k in self.limits
                  else self.residuals[k] for k in keys]
        return max(scaled) if self.comparison == "max" else min(scaled)

    def to_dict(self) -> dict:
        return _clean({
            "name": self.name,
            "scheme": self.scheme,
            "inputs": self.inputs,
            "residuals": self.residuals,
            "checked": list(self.checked),
            "comparison": self.comparison,
            "tolerance": self.tolerance,
            "limits": self.limits,
            "pass": NOT_APPLICABLE if self.passed is None else self.passed,
            "checked_within_tolerance": self.checks_hold,
            "notes": list(self.notes),
        })

    @classmethod
    def from_dict(cls, data: Mapping) -> "VerificationReport":
        def num(v):
            return float(v) if isinstance(v, str) else v

        return cls(
            name=data["name"],
            residuals={k: num(v) for k, v in data["residuals"].items()},
            tolerance=num(data["tolerance"]),
            checked=data.get("checked", ()),
            comparison=data.get("comparison", "max"),
            assertable=data.get("pass") != NOT_APPLICABLE,
            scheme=data.get("scheme", ""),
            inputs=dict(data.get("inputs", {})),
            notes=list(data.get("notes", [])),
            limits={k: num(v) for k, v in data.get("limits", {}).items()},
        )

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def dump_reports(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def load_reports(text: str) -> list[VerificationReport]:
    data = json.loads(text)
    if isinstance(data, Mapping):
        data = [data]
    return [VerificationReport.from_dict(d) for d in data]


def summary_rows(reports: Iterable[VerificationReport]) -> list[dict]:
    rows = []
    for r in reports:
        rows.append({
            "name": r.name,
            "residual": repr(r.worst),
            "tolerance": repr(float(r.tolerance)),
            "comparison": r.comparison,
            "pass": NOT_APPLICABLE if r.passed is None else str(r.passed).lower(),
        })
    return rows


def write_summary(reports: Iterable[VerificationReport], fh) -> None:
    """One CSV record per check."""
    writer = csv.DictWriter(fh, fieldnames=["name", "residual", "tolerance", "comparison", "pass"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(summary_rows(reports))


def format_table(reports: Sequence[VerificationReport]) -> str:
    out = io.StringIO()
    width = max([len(r.name) for r in reports] + [5])
    out.write(f"{'check':<{width}}  {'residual':>12}  {'tolerance':>10}  result\n")
    for r in reports:
        op = "<=" if r.comparison == "max" else ">="
        result = NOT_APPLICABLE if r.passed is None else ("PASS" if r.passed else "FAIL")
        out.write(f"{r.name:<{width}}  {r.worst:>12.4e}  {op}{r.tolerance:>8.1e}  {result}\n")
    return out.getvalue()
