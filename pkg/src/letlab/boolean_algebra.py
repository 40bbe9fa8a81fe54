"""Finite powerset Boolean algebras.

Elements of the algebra with ``n`` atoms are subset masks in ``range(2**n)``;
``0`` is the empty set and ``top`` the full set.  With ``n == 1`` this is the
two-element algebra {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_MAX_ATOMS = 4


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int
    max_atoms: int = DEFAULT_MAX_ATOMS

    def __post_init__(self):
        if not isinstance(self.atom_count, int) or self.atom_count < 0:
            raise ValueError("atom_count must be a nonnegative integer")
        if self.atom_count > self.max_atoms:
            raise ValueError(f"atom_count {self.atom_count} exceeds the limit of {self.max_atoms}")

    def __eq__(self, other):
        return isinstance(other, FiniteBooleanAlgebra) and other.atom_count == self.atom_count

    def __hash__(self):
        return hash(("FBA", self.atom_count))

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def elements(self) -> range:
        return range(self.size)

    def check(self, *xs) -> None:
        for x in xs:
            if not isinstance(x, int) or not 0 <= x < self.size:
                raise ValueError(f"{x!r} is not an element of the algebra with {self.atom_count} atoms")

    def meet(self, a: int, b: int) -> int:
        self.check(a, b)
        return a & b

    def join(self, a: int, b: int) -> int:
        self.check(a, b)
        return a | b

    def comp(self, a: int) -> int:
        self.check(a)
        return self.top & ~a

    def imp(self, a: int, b: int) -> int:
        self.check(a, b)
        return (self.top & ~a) | b

    def leq(self, a: int, b: int) -> bool:
        self.check(a, b)
        return a & ~b == 0

    def format(self, a: int) -> str:
        self.check(a)
        return "{" + ",".join(str(i) for i in range(self.atom_count) if a >> i & 1) + "}"


B2 = FiniteBooleanAlgebra(1)
