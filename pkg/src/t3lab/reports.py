"""Machine-checkable bound reports.  All arithmetic is exact."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from t3lab.topology import EtaValue, eta_ge_rational


def to_jsonable(x):
    """Fractions become ints when integral, otherwise "p/q" strings."""
    if isinstance(x, EtaValue):
        return x.to_json()
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def holds(lhs, rhs) -> bool:
    """``lhs >= rhs``; ``lhs`` may be an EtaValue."""
    if isinstance(lhs, EtaValue):
        return eta_ge_rational(lhs, Fraction(rhs))
    return Fraction(lhs) >= Fraction(rhs)


@dataclass
class BoundReport:
    """A claimed inequality ``lhs >= rhs`` with the values that decided it."""

    name: str
    lhs: object
    rhs: object
    passed: bool
    witnesses: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)

    @classmethod
    def check(cls, name, lhs, rhs, witnesses=None, context=None) -> "BoundReport":
        return cls(name, lhs, rhs, holds(lhs, rhs), witnesses or {}, context or {})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "pass": self.passed,
            "witnesses": to_jsonable(self.witnesses),
            "context": to_jsonable(self.context),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __bool__(self):
        return self.passed
