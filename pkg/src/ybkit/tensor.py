"""Exact linear maps between tensor products of finite-dimensional spaces.

Scalars are :class:`fractions.Fraction`.  An :class:`Operator` carries the
factor dimensions of its domain and codomain and a dense matrix whose row ``i``
and column ``j`` address codomain basis vector ``i`` and domain basis vector
``j``.

Basis ordering is fixed globally: the basis of ``V1 (x) V2 (x) ... (x) Vk`` is
ordered lexicographically with the leftmost factor most significant, so
``e_i (x) e_j`` in ``[m, n]`` has flat index ``i * n + j``.  Every lift, twist
and the gluing construction rely on this convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import prod
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ShapeMismatch, Singular

ZERO = Fraction(0)
ONE = Fraction(1)

Shape = tuple[int, ...]


def as_shape(shape: int | Iterable[int]) -> Shape:
    if isinstance(shape, int):
        shape = (shape,)
    shape = tuple(int(d) for d in shape)
    if not shape or any(d < 1 for d in shape):
        raise ShapeMismatch(f"invalid shape {shape!r}")
    return shape


def flat_index(idx: Sequence[int], shape: Shape) -> int:
    k = 0
    for i, d in zip(idx, shape):
        k = k * d + i
    return k


def multi_index(k: int, shape: Shape) -> tuple[int, ...]:
    out = []
    for d in reversed(shape):
        k, i = divmod(k, d)
        out.append(i)
    return tuple(reversed(out))


def basis(shape: Shape) -> Iterator[tuple[int, ...]]:
    """Multi-indices of ``shape`` in the fixed (lexicographic) order."""
    return itertools.product(*(range(d) for d in shape))


@dataclass(frozen=True)
class Operator:
    domain: Shape
    codomain: Shape
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", as_shape(self.domain))
        object.__setattr__(self, "codomain", as_shape(self.codomain))
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(rows) != prod(self.codomain) or any(len(r) != prod(self.domain) for r in rows):
            raise ShapeMismatch(
                f"entries are not {prod(self.codomain)}x{prod(self.domain)} "
                f"for domain {self.domain} and codomain {self.codomain}"
            )
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return prod(self.domain)

    @property
    def is_square(self) -> bool:
        return self.domain == self.codomain

    @cached_property
    def _sparse_rows(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        return tuple(
            tuple((j, x) for j, x in enumerate(row) if x) for row in self.entries
        )

    def nonzero(self) -> Iterator[tuple[int, int, Fraction]]:
        for i, row in enumerate(self._sparse_rows):
            for j, x in row:
                yield i, j, x

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: row[j] for i, row in enumerate(self.entries) if row[j]}

    def is_zero(self) -> bool:
        return not any(self._sparse_rows)

    def __matmul__(self, other: "Operator") -> "Operator":
        return compose(self, other)

    def __add__(self, other: "Operator") -> "Operator":
        _same_shape(self, other)
        return Operator(
            self.domain,
            self.codomain,
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Operator") -> "Operator":
        _same_shape(self, other)
        return Operator(
            self.domain,
            self.codomain,
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "Operator":
        return self.scale(-1)

    def __rmul__(self, c) -> "Operator":
        return self.scale(c)

    def scale(self, c) -> "Operator":
        c = Fraction(c)
        return Operator(self.domain, self.codomain, tuple(tuple(c * x for x in r) for r in self.entries))

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum((x * vector[j] for j, x in row), ZERO) for row in self._sparse_rows)

    def reshaped(self, domain=None, codomain=None) -> "Operator":
        """Same matrix with regrouped factors (total dimensions must agree)."""
        domain = self.domain if domain is None else as_shape(domain)
        codomain = self.codomain if codomain is None else as_shape(codomain)
        if prod(domain) != prod(self.domain) or prod(codomain) != prod(self.codomain):
            raise ShapeMismatch("reshape changes total dimension")
        return Operator(domain, codomain, self.entries)

    def __str__(self) -> str:
        width = max((len(str(x)) for r in self.entries for x in r), default=1)
        lines = [" ".join(str(x).rjust(width) for x in r) for r in self.entries]
        return f"Operator {self.domain} -> {self.codomain}\n" + "\n".join(lines)


def _same_shape(f: Operator, g: Operator) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ShapeMismatch(
            f"shapes differ: {f.domain}->{f.codomain} vs {g.domain}->{g.codomain}"
        )


def from_sparse(domain, codomain, entries: Mapping[tuple[int, int], object]) -> Operator:
    domain, codomain = as_shape(domain), as_shape(codomain)
    rows = [[ZERO] * prod(domain) for _ in range(prod(codomain))]
    for (i, j), x in entries.items():
        rows[i][j] += Fraction(x)
    return Operator(domain, codomain, tuple(map(tuple, rows)))


def from_basis_map(
    domain,
    codomain,
    fn: Callable[[tuple[int, ...]], Mapping[tuple[int, ...], object]],
) -> Operator:
    """Build an operator from its action on domain basis multi-indices.

    ``fn(idx)`` returns a mapping from codomain multi-indices to coefficients.
    """
    domain, codomain = as_shape(domain), as_shape(codomain)
    rows = [[ZERO] * prod(domain) for _ in range(prod(codomain))]
    for j, idx in enumerate(basis(domain)):
        for out, x in fn(idx).items():
            rows[flat_index(out, codomain)][j] += Fraction(x)
    return Operator(domain, codomain, tuple(map(tuple, rows)))


def identity(shape) -> Operator:
    shape = as_shape(shape)
    n = prod(shape)
    return Operator(shape, shape, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))


def zero(domain, codomain=None) -> Operator:
    domain = as_shape(domain)
    codomain = domain if codomain is None else as_shape(codomain)
    return Operator(domain, codomain, ((ZERO,) * prod(domain),) * prod(codomain))


def twist(m: int, n: int) -> Operator:
    """The flip ``e_i (x) e_j -> e_j (x) e_i`` from ``[m, n]`` to ``[n, m]``."""
    return from_basis_map((m, n), (n, m), lambda ij: {(ij[1], ij[0]): 1})


def compose(f: Operator, g: Operator) -> Operator:
    """``f o g``: apply ``g`` first."""
    if g.codomain != f.domain:
        raise ShapeMismatch(f"cannot compose {f.domain}->{f.codomain} after {g.domain}->{g.codomain}")
    g_rows = g._sparse_rows
    ncols = g.cols
    out = []
    for frow in f._sparse_rows:
        acc: dict[int, Fraction] = {}
        for k, x in frow:
            for j, y in g_rows[k]:
                acc[j] = acc.get(j, ZERO) + x * y
        row = [ZERO] * ncols
        for j, v in acc.items():
            row[j] = v
        out.append(tuple(row))
    return Operator(g.domain, f.codomain, tuple(out))


def chain(*ops: Operator) -> Operator:
    """``ops[0] o ops[1] o ... o ops[-1]``."""
    return reduce(compose, ops)


def tensor(f: Operator, g: Operator, *more: Operator) -> Operator:
    """Kronecker product; domain and codomain factor lists are concatenated."""
    if more:
        return tensor(tensor(f, g), *more)
    gc = g.cols
    grows = g.rows
    rows = [[ZERO] * (f.cols * gc) for _ in range(f.rows * grows)]
    for i, j, x in f.nonzero():
        for k, l, y in g.nonzero():
            rows[i * grows + k][j * gc + l] = x * y
    return Operator(f.domain + g.domain, f.codomain + g.codomain, tuple(map(tuple, rows)))


def lift(R: Operator, legs: tuple[int, int], shape) -> Operator:
    """``R^{ij}``: ``R`` acting on legs ``i`` and ``j`` (1-based), identity elsewhere.

    ``R`` must map two factors to two factors; the lifted codomain replaces the
    factors at ``i`` and ``j`` by ``R``'s codomain factors.
    """
    shape = as_shape(shape)
    i, j = legs
    if len(R.domain) != 2 or len(R.codomain) != 2:
        raise ShapeMismatch("lift needs an operator on exactly two tensor factors")
    if i == j or not (1 <= i <= len(shape) and 1 <= j <= len(shape)):
        raise ShapeMismatch(f"bad legs {legs} for shape {shape}")
    i, j = i - 1, j - 1
    if (shape[i], shape[j]) != R.domain:
        raise ShapeMismatch(f"legs {legs} of {shape} do not match operator domain {R.domain}")
    codomain = list(shape)
    codomain[i], codomain[j] = R.codomain
    codomain = tuple(codomain)
    columns: dict[tuple[int, int], list[tuple[tuple[int, int], Fraction]]] = {}
    for r, c, x in R.nonzero():
        columns.setdefault(multi_index(c, R.domain), []).append((multi_index(r, R.codomain), x))
    rows = [[ZERO] * prod(shape) for _ in range(prod(codomain))]
    for col, idx in enumerate(basis(shape)):
        for (a, b), x in columns.get((idx[i], idx[j]), ()):
            out = list(idx)
            out[i], out[j] = a, b
            rows[flat_index(out, codomain)][col] = x
    return Operator(shape, codomain, tuple(map(tuple, rows)))


def invert(R: Operator) -> Operator:
    """Exact inverse by rational Gauss-Jordan elimination."""
    n = R.rows
    if n != R.cols:
        raise ShapeMismatch(f"cannot invert a {R.rows}x{R.cols} matrix")
    m = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(R.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise Singular("operator is not invertible")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        if p != 1:
            m[col] = [x / p for x in m[col]]
        prow = m[col]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [x - c * y for x, y in zip(m[r], prow)]
    return Operator(R.codomain, R.domain, tuple(tuple(row[n:]) for row in m))


def first_difference(lhs: Operator, rhs: Operator):
    """``(row, col, lhs_value, rhs_value)`` of the first unequal entry, or None."""
    for i, (r, s) in enumerate(zip(lhs.entries, rhs.entries)):
        if r != s:
            for j, (x, y) in enumerate(zip(r, s)):
                if x != y:
                    return i, j, x, y
    return None


def count_differences(lhs: Operator, rhs: Operator) -> int:
    return sum(x != y for r, s in zip(lhs.entries, rhs.entries) for x, y in zip(r, s))
