"""Structured verdicts for mechanical identity and conjecture checks.

Every checker in this package returns a :class:`ConjectureReport` rather
than a bare boolean, so that a failing check always carries a concrete
counterexample and an inconclusive check says what it could not decide.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

CONSISTENT = "CONSISTENT"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
INCONCLUSIVE = "INCONCLUSIVE"

# Per-item verdicts used inside report details.
PASS = "PASS"
FAIL = "FAIL"


def jsonable(value: Any) -> Any:
    """Convert a report payload to JSON-serializable form.

    Infinite valuations become the string "inf"; tuples become lists.
    """
    if value is math.inf:
        return "inf"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, float):
        # only inf is expected; anything else is a bug upstream
        return "inf" if math.isinf(value) else value
    return value


@dataclass
class ConjectureReport:
    """Outcome of one verification run.

    status is CONSISTENT when every checked instance agreed,
    COUNTEREXAMPLE when at least one concrete violation was found, and
    INCONCLUSIVE when some instances could not be decided (for example
    because the modular engine hit its precision ceiling) and none failed.
    """

    name: str
    params: dict = field(default_factory=dict)
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def record(self, ok: bool, payload: Any = None) -> None:
        self.checked += 1
        if not ok:
            self.counterexamples.append(payload)

    def record_inconclusive(self, payload: Any) -> None:
        self.inconclusive.append(payload)

    def merge_child(self, child: "ConjectureReport", label: str) -> None:
        """Fold a sub-report into this one, tagging its payloads."""
        self.checked += child.checked
        self.counterexamples.extend(
            {"subcheck": label, "payload": p} for p in child.counterexamples
        )
        self.inconclusive.extend(
            {"subcheck": label, "payload": p} for p in child.inconclusive
        )
        self.details.setdefault("subchecks", []).append(
            {"name": label, "status": child.status, "checked": child.checked}
        )

    @property
    def status(self) -> str:
        if self.counterexamples:
            return COUNTEREXAMPLE
        if self.inconclusive:
            return INCONCLUSIVE
        return CONSISTENT

    @property
    def ok(self) -> bool:
        return self.status == CONSISTENT

    @property
    def exit_code(self) -> int:
        """Shell convention: 0 consistent, 1 counterexample, 2 inconclusive."""
        return {CONSISTENT: 0, COUNTEREXAMPLE: 1, INCONCLUSIVE: 2}[self.status]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "params": jsonable(self.params),
            "checked": self.checked,
            "counterexamples": jsonable(self.counterexamples),
            "inconclusive": jsonable(self.inconclusive),
            "details": jsonable(self.details),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)
