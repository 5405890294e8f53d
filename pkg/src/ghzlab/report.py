"""Machine-readable verification reports."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, is_dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from . import __version__

CAP = 16


def jsonable(obj: Any) -> Any:
    """Convert report payloads to JSON-native values; fractions stay exact."""
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json_obj"):
        return obj.to_json_obj()
    if is_dataclass(obj):
        return {k: jsonable(v) for k, v in vars(obj).items() if v is not None}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class VerificationReport:
    command: str
    parameters: dict = field(default_factory=dict)
    passed: bool = False
    value: Optional[Fraction] = None
    value_float: Optional[float] = None
    examined: Optional[int] = None
    witnesses: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    seed: Optional[int] = None
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    tool_version: str = __version__

    def __post_init__(self) -> None:
        # callers may hand over uncapped lists; totals belong in details
        self.witnesses = list(self.witnesses)[:CAP]
        self.counterexamples = list(self.counterexamples)[:CAP]

    def fail(self, note: str) -> None:
        self.passed = False
        self.notes.append(note)

    def to_dict(self) -> dict:
        if not self.passed and not self.counterexamples and not self.notes:
            raise ValueError(f"failed report {self.command!r} carries no counterexample or note")
        out: dict[str, Any] = {
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "passed": self.passed,
        }
        if self.value is not None:
            out["value_num"] = self.value.numerator
            out["value_den"] = self.value.denominator
        if self.value_float is not None:
            out["value_float"] = self.value_float
        if self.examined is not None:
            out["examined"] = self.examined
        out["witnesses"] = jsonable(self.witnesses)
        out["counterexamples"] = jsonable(self.counterexamples)
        if self.seed is not None:
            out["seed"] = self.seed
        out["notes"] = list(self.notes)
        out["details"] = jsonable(self.details)
        out["tool_version"] = self.tool_version
        return out

    def to_json(self, pretty: bool = True) -> str:
        if pretty:
            return json.dumps(self.to_dict(), indent=2)
        return json.dumps(self.to_dict(), separators=(",", ":"))


def report_schema() -> dict:
    text = resources.files("ghzlab").joinpath("report.schema.json").read_text()
    return json.loads(text)
