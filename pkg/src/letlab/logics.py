"""The four logics and the fragment each one lives in."""

from __future__ import annotations

import enum

from .formula import Fragment


class Logic(enum.Enum):
    LETK = "letk"
    LETKP = "letk+"
    LETFM = "letf-"
    LETFP = "letf+"

    @property
    def fragment(self) -> Fragment:
        if self in (Logic.LETFM, Logic.LETFP):
            return Fragment.IMPLICATION_FREE
        return Fragment.FULL

    @property
    def has_propagation(self) -> bool:
        """True for the systems with classicality propagation (the deterministic ones)."""
        return self in (Logic.LETKP, Logic.LETFP)

    @property
    def base(self) -> "Logic":
        """The non-deterministic logic over the same fragment."""
        return Logic.LETFM if self.fragment is Fragment.IMPLICATION_FREE else Logic.LETK

    @classmethod
    def parse(cls, name) -> "Logic":
        if isinstance(name, Logic):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown logic {name!r}; expected one of letk, letk+, letf-, letf+") from None

    def __str__(self):
        return self.value
