import itertools

import pytest

from letlab.boolean_algebra import B2, FiniteBooleanAlgebra


def subset_oracle(n):
    atoms = frozenset(range(n))
    elems = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    mask = lambda s: sum(1 << i for i in s)
    return atoms, elems, mask


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_operations_match_set_semantics(n):
    B = FiniteBooleanAlgebra(n)
    atoms, elems, mask = subset_oracle(n)
    for a, b in itertools.product(elems, repeat=2):
        x, y = mask(a), mask(b)
        assert B.meet(x, y) == mask(a & b)
        assert B.join(x, y) == mask(a | b)
        assert B.comp(x) == mask(atoms - a)
        assert B.imp(x, y) == mask((atoms - a) | b)
        assert B.leq(x, y) == (a <= b)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_boolean_laws(n):
    B = FiniteBooleanAlgebra(n)
    E = list(B.elements())
    for a in E:
        assert B.join(a, B.comp(a)) == B.top
        assert B.meet(a, B.comp(a)) == 0
        assert B.meet(a, B.top) == a and B.join(a, 0) == a
        assert B.comp(B.comp(a)) == a
    for a, b in itertools.product(E, repeat=2):
        assert B.meet(a, b) == B.meet(b, a)
        assert B.join(a, b) == B.join(b, a)
        assert B.meet(a, B.join(a, b)) == a
        assert B.join(a, B.meet(a, b)) == a
        assert B.imp(a, b) == B.join(B.comp(a), b)
    for a, b, c in itertools.product(E, repeat=3):
        assert B.meet(a, B.meet(b, c)) == B.meet(B.meet(a, b), c)
        assert B.join(a, B.join(b, c)) == B.join(B.join(a, b), c)
        assert B.meet(a, B.join(b, c)) == B.join(B.meet(a, b), B.meet(a, c))
        assert B.join(a, B.meet(b, c)) == B.meet(B.join(a, b), B.join(a, c))


def test_documented_values():
    assert B2.meet(1, 0) == 0
    B = FiniteBooleanAlgebra(2)
    a0, a1 = 0b01, 0b10
    assert B.join(a0, a1) == B.top
    assert B.meet(a0, a1) == 0
    assert B.imp(a0, 0) == a1 == B.comp(a0)


def test_two_element_algebra():
    assert B2.size == 2 and B2.top == 1
    assert list(B2.elements()) == [0, 1]


def test_range_and_limit_errors():
    B = FiniteBooleanAlgebra(2)
    with pytest.raises(ValueError):
        B.meet(4, 0)
    with pytest.raises(ValueError):
        B.comp(-1)
    with pytest.raises(ValueError):
        FiniteBooleanAlgebra(5)
    assert FiniteBooleanAlgebra(5, max_atoms=6).size == 32


def test_format_lists_atoms():
    B = FiniteBooleanAlgebra(2)
    assert B.format(0) == "{}"
    assert B.format(3) == "{0,1}"
