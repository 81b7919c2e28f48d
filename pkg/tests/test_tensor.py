import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ybkit.errors import ShapeMismatch, Singular
from ybkit.tensor import (
    Operator,
    as_shape,
    basis,
    chain,
    compose,
    flat_index,
    from_sparse,
    identity,
    invert,
    lift,
    multi_index,
    tensor,
    twist,
    zero,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows or draw(st.integers(1, 3))
    c = cols or draw(st.integers(1, 3))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def op(m):
    return Operator((len(m[0]),), (len(m),), m)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.data())
def test_flat_and_multi_index_are_inverse(shape, data):
    shape = tuple(shape)
    k = data.draw(st.integers(0, math.prod(shape) - 1))
    assert flat_index(multi_index(k, shape), shape) == k


def test_basis_order_is_lexicographic():
    assert list(basis((2, 3)))[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert flat_index((1, 2), (2, 3)) == 5


def test_as_shape_rejects_empty_and_zero():
    with pytest.raises(ShapeMismatch):
        as_shape(())
    with pytest.raises(ShapeMismatch):
        as_shape((2, 0))


def test_entries_must_match_shape():
    with pytest.raises(ShapeMismatch):
        Operator((2,), (2,), [[1, 0]])


@given(matrices(), matrices())
def test_tensor_matches_kronecker_oracle(a, b):
    assert tensor(op(a), op(b)).entries == tuple(map(tuple, oracles.kron(a, b)))


@given(st.data())
def test_mixed_product(data):
    n, m = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    A, C = op(data.draw(matrices(n, n))), op(data.draw(matrices(n, n)))
    B, D = op(data.draw(matrices(m, m))), op(data.draw(matrices(m, m)))
    assert compose(tensor(A, B), tensor(C, D)) == tensor(compose(A, C), compose(B, D))


@given(matrices(2, 2), matrices(2, 2), matrices(2, 2))
def test_compose_is_associative(a, b, c):
    A, B, C = op(a), op(b), op(c)
    assert compose(A, compose(B, C)) == compose(compose(A, B), C) == chain(A, B, C)


def test_compose_checks_shapes():
    with pytest.raises(ShapeMismatch):
        compose(identity(2), identity(3))


@given(st.integers(1, 3), st.integers(1, 3))
def test_twist_swaps_and_is_involutive(m, n):
    t = twist(m, n)
    assert compose(twist(n, m), t) == identity((m, n))
    for i in range(m):
        for j in range(n):
            col = t.column(i * n + j)
            assert col == {j * m + i: 1}


@given(st.data())
def test_lift_matches_kronecker_construction(data):
    n = data.draw(st.integers(1, 2))
    m = data.draw(matrices(n * n, n * n))
    R = Operator((n, n), (n, n), m)
    r12, r13, r23 = oracles.legs3(m, n)
    for legs, expected in (((1, 2), r12), ((1, 3), r13), ((2, 3), r23)):
        assert lift(R, legs, (n, n, n)).entries == tuple(map(tuple, expected))


def test_lift_rejects_bad_legs():
    with pytest.raises(ShapeMismatch):
        lift(twist(2, 2), (1, 1), (2, 2, 2))
    with pytest.raises(ShapeMismatch):
        lift(twist(2, 2), (1, 4), (2, 2, 2))
    with pytest.raises(ShapeMismatch):
        lift(twist(2, 2), (1, 2), (2, 3, 2))


def test_lift_reversed_legs_conjugates_by_twist():
    R = from_sparse((2, 2), (2, 2), {(1, 2): 3, (0, 0): 1, (3, 3): -1, (2, 1): 5})
    shape = (2, 2, 2)
    t = lift(twist(2, 2), (1, 3), shape)
    assert lift(R, (3, 1), shape) == chain(t, lift(R, (1, 3), shape), t)


@given(matrices(3, 3))
def test_invert_roundtrip_or_singular(m):
    A = op(m)
    try:
        B = invert(A)
    except Singular:
        # cross-check with a float determinant
        assert abs(np.linalg.det(np.array(m, dtype=float))) < 1e-9
        return
    assert compose(A, B) == identity(3) == compose(B, A)


def test_invert_zero_is_singular():
    with pytest.raises(Singular):
        invert(zero(2))


def test_arithmetic_and_apply():
    A = op([[1, 2], [3, 4]])
    assert (A - A).is_zero()
    assert (2 * A).entries == ((2, 4), (6, 8))
    assert A.apply([1, Fraction(1, 2)]) == (2, 5)
    assert (-A + A).is_zero()
