"""Sparse multivariate polynomials over the rationals.

Monomials are dense exponent tuples of a fixed length ``nvars``; a polynomial
is a dict from monomial to nonzero :class:`~fractions.Fraction` coefficient.
The zero polynomial has no terms, so ``p.is_zero()`` is an exact test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def copy(self) -> "Poly":
        return Poly(self.nvars, dict(self.terms))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly(self.nvars)
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        add_product(out, Fraction(1), self, other)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self.format()})"


def add_product(acc: dict[Monomial, Fraction], coeff: Fraction, p: Poly, q: Poly) -> None:
    """In place: ``acc += coeff * p * q``, dropping cancelled terms."""
    for m1, c1 in p.terms.items():
        c1 = coeff * c1
        for m2, c2 in q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = acc.get(m, 0) + c1 * c2
            if v:
                acc[m] = v
            else:
                del acc[m]


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly(nvars)
    for p in polys:
        out = out + p
    return out
