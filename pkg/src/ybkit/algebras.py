"""Finite-dimensional (co)algebras given by structure constants.

``MultTable`` is an arbitrary bilinear product ``e_i e_j = sum_k c[i][j][k] e_k``.
``AlgebraTable`` adds a unit and is validated as unital associative on
construction; ``CoalgebraTable`` is validated as coassociative and counital.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import NoCounit, NotAssociative, NotCoassociative, NoUnit, ShapeMismatch
from .tensor import ONE, ZERO, Operator, compose, from_basis_map, identity, tensor

Vector = tuple[Fraction, ...]


def _frac3(c, d: int) -> tuple:
    c = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in c)
    if len(c) != d or any(len(p) != d or any(len(r) != d for r in p) for p in c):
        raise ShapeMismatch(f"structure constants must be {d}x{d}x{d}")
    return c


def _vec(v, d: int) -> Vector:
    v = tuple(Fraction(x) for x in v)
    if len(v) != d:
        raise ShapeMismatch(f"vector of length {len(v)}, expected {d}")
    return v


@dataclass(frozen=True)
class MultTable:
    dim: int
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", _frac3(self.c, self.dim))

    @cached_property
    def terms(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        """Nonzero structure constants as ``(i, j, k, value)``."""
        d = self.dim
        return tuple(
            (i, j, k, self.c[i][j][k])
            for i, j, k in itertools.product(range(d), repeat=3)
            if self.c[i][j][k]
        )

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        out = [ZERO] * self.dim
        for i, j, k, v in self.terms:
            if x[i] and y[j]:
                out[k] += v * x[i] * y[j]
        return tuple(out)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def mu(self) -> Operator:
        """The multiplication as an operator ``[d, d] -> [d]``."""
        return from_basis_map(
            (self.dim, self.dim),
            (self.dim,),
            lambda ij: {(k,): v for k, v in enumerate(self.c[ij[0]][ij[1]]) if v},
        )

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.c[i][j] == self.c[j][i] for i in range(d) for j in range(d))

    def associator_defect(self):
        """First basis triple with ``(e_i e_j) e_k != e_i (e_j e_k)``, or None."""
        e = _basis_vectors(self.dim)
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if self.mul(self.c[i][j], e[k]) != self.mul(e[i], self.c[j][k]):
                return i, j, k
        return None

    def opposite(self) -> "MultTable":
        d = self.dim
        return MultTable(d, [[self.c[j][i] for j in range(d)] for i in range(d)])


def _basis_vectors(d: int) -> list[Vector]:
    return [tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)]


@dataclass(frozen=True)
class AlgebraTable(MultTable):
    unit: Vector = ()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "unit", _vec(self.unit, self.dim))
        self.validate()

    def validate(self) -> None:
        bad = self.associator_defect()
        if bad is not None:
            raise NotAssociative(f"associativity fails on basis triple {bad}")
        for i, e in enumerate(_basis_vectors(self.dim)):
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise NoUnit(f"unit law fails on basis element {i}")

    def iota(self) -> Operator:
        """The unit as an operator ``[1] -> [d]``."""
        return Operator((1,), (self.dim,), tuple((u,) for u in self.unit))

    def opposite(self) -> "AlgebraTable":
        return AlgebraTable(self.dim, super().opposite().c, self.unit)

    @classmethod
    def from_mult(cls, table: MultTable, unit) -> "AlgebraTable":
        return cls(table.dim, table.c, unit)


@dataclass(frozen=True)
class CoalgebraTable:
    """``delta[i][j][k]`` is the coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``."""

    dim: int
    delta: tuple
    counit: Vector

    def __post_init__(self):
        object.__setattr__(self, "delta", _frac3(self.delta, self.dim))
        object.__setattr__(self, "counit", _vec(self.counit, self.dim))
        self.validate()

    def validate(self) -> None:
        D, eps, I = self.delta_map(), self.epsilon(), identity(self.dim)
        if compose(tensor(D, I), D) != compose(tensor(I, D), D):
            raise NotCoassociative("(Delta x I) Delta != (I x Delta) Delta")
        left = compose(tensor(eps, I), D).reshaped(codomain=(self.dim,))
        right = compose(tensor(I, eps), D).reshaped(codomain=(self.dim,))
        if left != I or right != I:
            raise NoCounit("counit laws fail")

    def delta_map(self) -> Operator:
        """Comultiplication as an operator ``[d] -> [d, d]``."""
        d = self.dim
        return from_basis_map(
            (d,),
            (d, d),
            lambda i: {(j, k): self.delta[i[0]][j][k] for j in range(d) for k in range(d) if self.delta[i[0]][j][k]},
        )

    def epsilon(self) -> Operator:
        """Counit as an operator ``[d] -> [1]``."""
        return Operator((self.dim,), (1,), (self.counit,))

    def is_cocommutative(self) -> bool:
        d = self.dim
        return all(self.delta[i][j][k] == self.delta[i][k][j] for i in range(d) for j in range(d) for k in range(d))


def dual_coalgebra(A: AlgebraTable) -> CoalgebraTable:
    """The dual coalgebra ``A*``: ``Delta(e^k) = sum c[i][j][k] e^i (x) e^j``, ``eps(e^k) = u_k``."""
    d = A.dim
    delta = [[[A.c[i][j][k] for j in range(d)] for i in range(d)] for k in range(d)]
    return CoalgebraTable(d, delta, A.unit)


def _table(d: int, products: dict[tuple[int, int], dict[int, object]]) -> list:
    c = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for (i, j), out in products.items():
        for k, v in out.items():
            c[i][j][k] = Fraction(v)
    return c


def ground_field() -> AlgebraTable:
    return AlgebraTable(1, [[[1]]], [1])


def dual_numbers() -> AlgebraTable:
    """``k[x]/(x^2)`` on the basis ``(1, x)``."""
    return AlgebraTable(2, _table(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}), [1, 0])


def matrix_algebra(n: int = 2) -> AlgebraTable:
    """``n x n`` matrices on the matrix-unit basis ``E_ij`` (index ``i*n + j``)."""
    d = n * n
    products = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        products[(i * n + j, j * n + l)] = {i * n + l: 1}
    unit = [1 if k // n == k % n else 0 for k in range(d)]
    return AlgebraTable(d, _table(d, products), unit)


def diagonal_algebra(n: int = 2) -> AlgebraTable:
    """``k^n`` with orthogonal idempotents ``e_i e_i = e_i``."""
    return AlgebraTable(n, _table(n, {(i, i): {i: 1} for i in range(n)}), [1] * n)


def group_algebra_z2() -> AlgebraTable:
    """``k[Z/2]`` on the basis ``(1, g)`` with ``g^2 = 1``."""
    return AlgebraTable(2, _table(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}), [1, 0])


def commutator_table(T: MultTable) -> MultTable:
    d = T.dim
    return MultTable(d, [[[T.c[i][j][k] - T.c[j][i][k] for k in range(d)] for j in range(d)] for i in range(d)])


ALGEBRAS = {
    "field": ground_field,
    "dual-numbers": dual_numbers,
    "matrices-2": lambda: matrix_algebra(2),
    "diagonal-2": lambda: diagonal_algebra(2),
    "group-z2": group_algebra_z2,
}
