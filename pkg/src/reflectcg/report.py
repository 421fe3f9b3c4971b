"""Verdicts and reports shared by every verifier."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    name: str
    status: str
    detail: Any = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self, timings: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    verdicts: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add(self, name: str, ok, detail=None, seconds: float = 0.0) -> Verdict:
        if isinstance(ok, str):
            status = ok
        else:
            status = PASS if ok else FAIL
        v = Verdict(name, status, detail, seconds)
        self.verdicts.append(v)
        return v

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.verdicts:
            self.verdicts.append(Verdict(prefix + v.name, v.status, v.detail, v.seconds))

    @contextmanager
    def timed(self, name: str):
        """Context manager yielding a dict; set ``ok`` and ``detail`` on it."""
        slot = {"ok": False, "detail": None}
        start = time.perf_counter()
        try:
            yield slot
        finally:
            self.add(name, slot["ok"], slot["detail"], time.perf_counter() - start)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def status(self) -> str:
        if any(v.status == FAIL for v in self.verdicts):
            return FAIL
        if any(v.status == INCONCLUSIVE for v in self.verdicts):
            return INCONCLUSIVE
        return PASS

    def failures(self) -> list:
        return [v for v in self.verdicts if not v.ok]

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self, timings: bool = False) -> dict:
        ordered = sorted(self.verdicts, key=lambda v: v.name)
        return {
            "status": self.status,
            "provenance": dict(sorted(self.provenance.items())),
            "verdicts": [v.to_dict(timings) for v in ordered],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2, default=str)

    def to_text(self) -> str:
        lines = []
        for v in sorted(self.verdicts, key=lambda v: v.name):
            line = f"{v.status.upper():<12} {v.name}  ({v.seconds:.2f}s)"
            if v.detail not in (None, "", {}) and not v.ok:
                line += f"  {v.detail}"
            lines.append(line)
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)
