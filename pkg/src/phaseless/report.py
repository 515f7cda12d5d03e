from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = ["VerificationReport", "relative_residual"]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one numerical claim.

    With ``bound="max"`` the claim holds when every residual is at most
    ``threshold``; with ``bound="min"`` every value must exceed it (used
    for separation claims such as non-equivalence). A report with
    ``children`` passes only if its own residuals and all children pass.
    """

    claim_id: str
    residuals: dict
    threshold: Optional[float]
    passed: bool
    sample_points: int = 0
    notes: str = ""
    bound: str = "max"
    children: tuple = field(default=())

    def __post_init__(self):
        if self.bound not in ("max", "min"):
            raise ValueError("bound must be 'max' or 'min'")
        object.__setattr__(self, "residuals", {k: float(v) for k, v in self.residuals.items()})
        object.__setattr__(self, "children", tuple(self.children))
        if self.passed != _holds(self.residuals, self.threshold, self.bound, self.children):
            raise ValueError(f"report {self.claim_id!r}: passed flag inconsistent with residuals")

    @classmethod
    def build(cls, claim_id, residuals, threshold, sample_points=0, notes="", bound="max", children=()):
        """Construct a report, deriving ``passed`` from the residuals."""
        residuals = {k: float(v) for k, v in residuals.items()}
        passed = _holds(residuals, threshold, bound, children)
        return cls(claim_id, residuals, threshold, passed, sample_points, notes, bound, tuple(children))

    @property
    def max_residual(self) -> float:
        vals = list(self.residuals.values())
        for c in self.children:
            if c.residuals and c.bound == "max":
                vals.append(c.max_residual)
        return max(vals) if vals else 0.0

    def find(self, claim_id: str) -> "VerificationReport":
        if self.claim_id == claim_id:
            return self
        for c in self.children:
            try:
                return c.find(claim_id)
            except KeyError:
                pass
        raise KeyError(claim_id)

    def summary_lines(self, indent: int = 0) -> list:
        pad = "  " * indent
        status = "PASS" if self.passed else "FAIL"
        head = f"{pad}[{status}] {self.claim_id}"
        if self.residuals:
            worst = max(self.residuals.values()) if self.bound == "max" else min(self.residuals.values())
            rel = "<=" if self.bound == "max" else ">"
            head += f"  ({'max' if self.bound == 'max' else 'min'} {worst:.3e} {rel} {self.threshold:.1e})"
        if self.notes:
            head += f"  {self.notes}"
        lines = [head]
        for c in self.children:
            lines.extend(c.summary_lines(indent + 1))
        return lines

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "passed": self.passed,
            "bound": self.bound,
            "threshold": self.threshold,
            "residuals": dict(self.residuals),
            "sample_points": self.sample_points,
            "notes": self.notes,
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            claim_id=d["claim_id"],
            residuals=d.get("residuals", {}),
            threshold=d.get("threshold"),
            passed=d["passed"],
            sample_points=d.get("sample_points", 0),
            notes=d.get("notes", ""),
            bound=d.get("bound", "max"),
            children=tuple(cls.from_dict(c) for c in d.get("children", [])),
        )


def _holds(residuals, threshold, bound, children) -> bool:
    ok = True
    if residuals:
        if threshold is None:
            raise ValueError("threshold required when residuals are present")
        vals = list(residuals.values())
        ok = max(vals) <= threshold if bound == "max" else min(vals) > threshold
    return ok and all(c.passed for c in children)


def relative_residual(lhs, rhs) -> float:
    """``max|lhs - rhs| / max(|lhs|, |rhs|)``; the raw difference if both vanish."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    diff = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    scale = max(float(np.max(np.abs(lhs))) if lhs.size else 0.0,
                float(np.max(np.abs(rhs))) if rhs.size else 0.0)
    return diff / scale if scale > 0 else diff
