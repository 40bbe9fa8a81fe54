"""Snapshots (z1, z2, z3) over a finite Boolean algebra and the six named values."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .boolean_algebra import B2, FiniteBooleanAlgebra


class Value6(enum.IntEnum):
    """The six truth values, in the canonical row order of the printed tables."""

    T = 0
    T0 = 1
    b = 2
    n = 3
    F0 = 4
    F = 5

    @property
    def triple(self) -> tuple:
        return _TRIPLES[self]

    @property
    def designated(self) -> bool:
        return self.triple[0] == 1

    @classmethod
    def from_triple(cls, triple) -> "Value6":
        try:
            return _FROM_TRIPLE[tuple(triple)]
        except KeyError:
            raise ValueError(f"{tuple(triple)} is not a snapshot over the two-element algebra") from None

    @classmethod
    def parse(cls, name: str) -> "Value6":
        try:
            return cls[name]
        except KeyError:
            raise ValueError(f"unknown truth value {name!r}; expected one of T,T0,b,n,F0,F") from None

    def __str__(self):
        return self.name


_TRIPLES = {
    Value6.T: (1, 0, 1),
    Value6.T0: (1, 0, 0),
    Value6.b: (1, 1, 0),
    Value6.n: (0, 0, 0),
    Value6.F0: (0, 1, 0),
    Value6.F: (0, 1, 1),
}
_FROM_TRIPLE = {t: v for v, t in _TRIPLES.items()}

VALUES = tuple(Value6)
DESIGNATED = frozenset(v for v in VALUES if v.designated)
NON_DESIGNATED = frozenset(VALUES) - DESIGNATED


def is_snapshot_triple(B: FiniteBooleanAlgebra, z1: int, z2: int, z3: int) -> bool:
    return B.leq(z3, B.join(z1, z2)) and B.meet(B.meet(z1, z2), z3) == 0


@dataclass(frozen=True)
class Snapshot:
    z1: int
    z2: int
    z3: int
    algebra: FiniteBooleanAlgebra = B2

    def __post_init__(self):
        if not is_snapshot_triple(self.algebra, self.z1, self.z2, self.z3):
            raise ValueError(f"({self.z1},{self.z2},{self.z3}) violates the snapshot constraints")

    @property
    def triple(self) -> tuple:
        return (self.z1, self.z2, self.z3)

    @classmethod
    def of(cls, value: Value6) -> "Snapshot":
        return cls(*value.triple, B2)

    def to_value6(self) -> Value6:
        if self.algebra.atom_count != 1:
            raise ValueError("only snapshots over the two-element algebra have names")
        return Value6.from_triple(self.triple)

    def __str__(self):
        if self.algebra.atom_count == 1:
            return self.to_value6().name
        fmt = self.algebra.format
        return f"({fmt(self.z1)},{fmt(self.z2)},{fmt(self.z3)})"


def snapshot_from_atoms(B: FiniteBooleanAlgebra, per_atom) -> Snapshot:
    """Assemble a snapshot from one Value6 per atom (atom i contributes bit i)."""
    z = [0, 0, 0]
    for i, v in enumerate(per_atom):
        for j, bit in enumerate(Value6(v).triple):
            z[j] |= bit << i
    return Snapshot(z[0], z[1], z[2], B)


def snapshot_domain(B: FiniteBooleanAlgebra) -> list:
    """All snapshots over ``B``.

    A snapshot over a powerset algebra is an atom-wise choice of one of the six
    two-element snapshots; the canonical order is the product order with atom 0
    most significant, which gives T, T0, b, n, F0, F at one atom.
    """
    return [snapshot_from_atoms(B, combo) for combo in itertools.product(VALUES, repeat=B.atom_count)]


def is_designated(z) -> bool:
    if isinstance(z, Value6):
        return z.designated
    return z.z1 == z.algebra.top
