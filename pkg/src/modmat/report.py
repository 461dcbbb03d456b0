"""Verification reports shared by the identity suites."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    check: str
    n: int
    qprec: int
    passed: bool = True
    residual_order: int | None = None
    details: list = field(default_factory=list)

    def record(self, label, residual, extra: dict | None = None) -> bool:
        """Add one residual (a QSeries or ZQSeries); returns whether it vanished."""
        ok = residual.is_zero()
        entry = {"case": label, "zero": ok}
        if not ok:
            order = _first_order(residual)
            entry["first_nonzero_order"] = order
            self.passed = False
            if self.residual_order is None or order < self.residual_order:
                self.residual_order = order
        if extra:
            entry.update(extra)
        self.details.append(entry)
        return ok

    def expect(self, label, ok: bool, extra: dict | None = None) -> bool:
        """Add one boolean outcome."""
        entry = {"case": label, "ok": bool(ok)}
        if extra:
            entry.update(extra)
        self.details.append(entry)
        if not ok:
            self.passed = False
        return bool(ok)

    def fail(self, label, reason: str) -> None:
        self.passed = False
        self.details.append({"case": label, "zero": False, "reason": reason})

    def merge(self, other: VerificationReport) -> None:
        self.passed = self.passed and other.passed
        if other.residual_order is not None and (
                self.residual_order is None or other.residual_order < self.residual_order):
            self.residual_order = other.residual_order
        self.details.extend(other.details)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"level": self.n, "qprec": self.qprec, "check": self.check,
                "status": self.status, "residual_order": self.residual_order,
                "details": [_jsonable(d) for d in self.details]}


def _first_order(residual) -> int:
    v = residual.valuation()
    return -1 if v is None else v


def _jsonable(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out
