"""Set-theoretic Yang-Baxter maps ``X x X -> X x X`` on finite sets ``{0..n-1}``."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import ShapeMismatch, SizeMismatch, SizeTooLarge, UnsupportedSize
from .reports import CheckReport

MAX_ENUMERATION_SIZE = 4


@dataclass(frozen=True)
class FiniteMap:
    """Lookup table: ``table[p * n + q] == R(p, q)``."""

    n: int
    table: tuple[tuple[int, int], ...]

    def __post_init__(self):
        table = tuple((int(a), int(b)) for a, b in self.table)
        if self.n < 1 or len(table) != self.n * self.n:
            raise ShapeMismatch(f"table of length {len(table)} for a set of size {self.n}")
        if any(not (0 <= x < self.n) for pair in table for x in pair):
            raise ShapeMismatch("table output out of range")
        object.__setattr__(self, "table", table)

    def __call__(self, p: int, q: int) -> tuple[int, int]:
        return self.table[p * self.n + q]

    @classmethod
    def from_function(cls, n: int, fn) -> "FiniteMap":
        return cls(n, tuple(fn(p, q) for p in range(n) for q in range(n)))

    @classmethod
    def from_nested(cls, n: int, nested) -> "FiniteMap":
        """From the ``[in1][in2] -> [out1, out2]`` nested-list layout."""
        if len(nested) != n or any(len(row) != n for row in nested):
            raise ShapeMismatch(f"nested table is not {n}x{n}")
        return cls(n, tuple(tuple(cell) for row in nested for cell in row))

    def nested(self) -> list:
        return [[list(self(p, q)) for q in range(self.n)] for p in range(self.n)]

    def relabel(self, perm: tuple[int, ...]) -> "FiniteMap":
        """``(s x s) o R o (s x s)^-1`` for the permutation ``s = perm``."""
        inv = [0] * self.n
        for i, j in enumerate(perm):
            inv[j] = i
        return FiniteMap.from_function(
            self.n, lambda p, q: tuple(perm[x] for x in self(inv[p], inv[q]))
        )


@dataclass(frozen=True)
class BinOpTable:
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        if len(table) != self.n * self.n or any(not (0 <= x < self.n) for x in table):
            raise ShapeMismatch("binary operation table has wrong size or out-of-range values")
        object.__setattr__(self, "table", table)

    def __call__(self, a: int, b: int) -> int:
        return self.table[a * self.n + b]

    @classmethod
    def from_function(cls, n: int, fn) -> "BinOpTable":
        return cls(n, tuple(fn(a, b) for a in range(n) for b in range(n)))


def _r12(R: FiniteMap, t):
    a, b = R(t[0], t[1])
    return a, b, t[2]


def _r23(R: FiniteMap, t):
    b, c = R(t[1], t[2])
    return t[0], b, c


def _braid_failure(R: FiniteMap):
    for t in itertools.product(range(R.n), repeat=3):
        lhs = _r12(R, _r23(R, _r12(R, t)))
        rhs = _r23(R, _r12(R, _r23(R, t)))
        if lhs != rhs:
            yield t, lhs, rhs


def fm_check_braid(R: FiniteMap) -> CheckReport:
    """Exhaustive ``(R x I)(I x R)(R x I) == (I x R)(R x I)(I x R)`` on all triples."""
    bad = list(_braid_failure(R))
    if not bad:
        return CheckReport("SET_BRAID", True, 0, None, {"triples": R.n**3})
    t, lhs, rhs = bad[0]
    return CheckReport(
        "SET_BRAID", False, len(bad), {"triple": list(t), "lhs": list(lhs), "rhs": list(rhs)}, {"triples": R.n**3}
    )


def fm_check_braid_components(R: FiniteMap) -> CheckReport:
    """Same equation written coordinate-wise in the two component maps.

    With ``R(p, q) = (f(p, q), g(p, q))`` each side's three outputs are nested
    expressions in ``f`` and ``g``; the two triples are compared coordinate by
    coordinate.
    """

    def f(p, q):
        return R(p, q)[0]

    def g(p, q):
        return R(p, q)[1]

    bad = 0
    witness = None
    for p, q, r in itertools.product(range(R.n), repeat=3):
        # apply R12, then R23, then R12
        p1, q1 = f(p, q), g(p, q)
        q2, r2 = f(q1, r), g(q1, r)
        lhs = (f(p1, q2), g(p1, q2), r2)
        # apply R23, then R12, then R23
        q1, r1 = f(q, r), g(q, r)
        p2, q2 = f(p, q1), g(p, q1)
        rhs = (p2, f(q2, r1), g(q2, r1))
        if lhs != rhs:
            bad += 1
            if witness is None:
                witness = {"triple": [p, q, r], "lhs": list(lhs), "rhs": list(rhs)}
    return CheckReport("SET_BRAID_COMPONENTS", bad == 0, bad, witness)


class LogicKind(str, enum.Enum):
    OR_AND = "OR_AND"
    IMPLIES_FIRST = "IMPLIES_FIRST"


def logic_solution(kind, n: int = 2) -> FiniteMap:
    """Boolean solutions with 0 = false, 1 = true.

    ``OR_AND``: ``(p, q) -> (p or q, p and q)``;
    ``IMPLIES_FIRST``: ``(p, q) -> (p -> q, p)`` with material implication.
    """
    if n != 2:
        raise UnsupportedSize("logic solutions are defined on truth values only (n = 2)")
    kind = LogicKind(kind)
    if kind is LogicKind.OR_AND:
        return FiniteMap.from_function(2, lambda p, q: (p | q, p & q))
    return FiniteMap.from_function(2, lambda p, q: (int((not p) or q), p))


def permutations(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def _canonical_search(n: int) -> Iterator[tuple[int, ...]]:
    """Backtracking over tables in lexicographic order.

    Entries are encoded as ``out1 * n + out2``.  A partial table is pruned when
    some fully determined triple already violates the braid relation, or when a
    relabeling is already known to give a lexicographically smaller table (so
    only the least member of each relabeling orbit is produced).
    """
    N = n * n
    perms = [p for p in permutations(n) if p != tuple(range(n))]
    # for relabeling s, position k of the relabeled table reads original position src[k]
    relabel_src = []
    for s in perms:
        inv = [0] * n
        for i, j in enumerate(s):
            inv[j] = i
        relabel_src.append((s, [inv[k // n] * n + inv[k % n] for k in range(N)]))
    table = [-1] * N
    triples = list(itertools.product(range(n), repeat=3))

    def entry(p, q):
        v = table[p * n + q]
        return None if v < 0 else divmod(v, n)

    def violated() -> bool:
        for p, q, r in triples:
            x = entry(p, q)
            if x is None:
                continue
            y = entry(x[1], r)
            if y is None:
                continue
            z = entry(x[0], y[0])
            if z is None:
                continue
            u = entry(q, r)
            if u is None:
                continue
            v = entry(p, u[0])
            if v is None:
                continue
            w = entry(v[1], u[1])
            if w is None:
                continue
            if (z[0], z[1], y[1]) != (v[0], w[0], w[1]):
                return True
        return False

    def not_least() -> bool:
        for s, src in relabel_src:
            for k in range(N):
                orig = table[src[k]]
                if orig < 0 or table[k] < 0:
                    break
                a, b = divmod(orig, n)
                image = s[a] * n + s[b]
                if image != table[k]:
                    if image < table[k]:
                        return True
                    break
        return False

    def search(k: int):
        if k == N:
            yield tuple(table)
            return
        for v in range(N):
            table[k] = v
            if not violated() and not not_least():
                yield from search(k + 1)
        table[k] = -1

    yield from search(0)


def _decode(n: int, flat: tuple[int, ...]) -> FiniteMap:
    return FiniteMap(n, tuple(divmod(v, n) for v in flat))


def orbit(R: FiniteMap) -> set[FiniteMap]:
    return {R.relabel(s) for s in permutations(R.n)}


@dataclass
class Enumeration:
    n: int
    solutions: list[FiniteMap]
    representatives: list[FiniteMap]

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)


def enumerate_solutions(n: int) -> Enumeration:
    """All braid solutions on ``{0..n-1}`` in lexicographic table order.

    Orbit representatives under simultaneous relabeling come from a pruned
    search; the full list is their orbit union.
    """
    if n < 1:
        raise UnsupportedSize("set size must be positive")
    if n > MAX_ENUMERATION_SIZE:
        raise SizeTooLarge(f"enumeration is limited to n <= {MAX_ENUMERATION_SIZE}")
    reps = [_decode(n, flat) for flat in _canonical_search(n)]
    sols = set()
    for R in reps:
        sols |= orbit(R)
    return Enumeration(n, sorted(sols, key=lambda R: R.table), reps)


def yb_conjugated(star: BinOpTable, circ: BinOpTable) -> CheckReport:
    """Whether ``R(a, b) = (a * b, a o b)`` solves the set-theoretic braid equation."""
    if star.n != circ.n:
        raise SizeMismatch("operations live on sets of different sizes")
    R = FiniteMap.from_function(star.n, lambda a, b: (star(a, b), circ(a, b)))
    report = fm_check_braid(R)
    report.equation = "YB_CONJUGATED"
    return report


def chain_lattice(n: int) -> tuple[BinOpTable, BinOpTable]:
    """Join (max) and meet (min) on the chain ``0 < 1 < ... < n-1``."""
    return BinOpTable.from_function(n, max), BinOpTable.from_function(n, min)
