"""Common result type returned by every decision procedure."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import formula as fm


@dataclass
class Verdict:
    valid: bool
    method: str
    countermodel: dict | None = None  # variable name (or formula) -> value
    stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid

    @property
    def label(self) -> str:
        return "valid" if self.valid else "invalid"

    def countermodel_items(self):
        """``(key, value)`` pairs rendered as strings, in insertion order."""
        if not self.countermodel:
            return []
        out = []
        for key, value in self.countermodel.items():
            key = key if isinstance(key, str) else fm.to_text(key)
            out.append((key, str(value)))
        return out

    def to_json(self) -> dict:
        data = {"verdict": self.label, "method": self.method, "stats": dict(self.stats)}
        if self.countermodel is not None:
            data["countermodel"] = dict(self.countermodel_items())
        return data

    def describe(self) -> str:
        if self.valid:
            return "valid"
        cm = ", ".join(f"{k} = {v}" for k, v in self.countermodel_items())
        return f"invalid\ncountermodel: {cm}" if cm else "invalid"
