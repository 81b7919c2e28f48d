"""Braid and quantum Yang-Baxter equations, their variants, and Yang-Baxter systems.

All operators act on ``V (x) V`` (shape ``[n, n]``) unless stated otherwise;
legs are numbered from 1 as in ``R^{12}``, ``R^{13}``, ``R^{23}``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebras import AlgebraTable
from .errors import (
    AuxFactorizationInvalid,
    MissingAux,
    ShapeMismatch,
    Singular,
    WxzFailed,
    XNotInvertible,
    ZeroParameter,
)
from .reports import CheckReport, combine, compare
from .tensor import (
    Operator,
    chain,
    compose,
    from_basis_map,
    identity,
    invert,
    lift,
    twist,
)


class Variant(str, enum.Enum):
    BRAID = "BRAID"
    QYBE = "QYBE"
    EQ_I = "EQ_I"
    EQ_X = "EQ_X"
    EQ_NOU = "EQ_NOU"
    EQ_UNIFYB = "EQ_UNIFYB"
    EQ_NOU2 = "EQ_NOU2"
    EQ_2ID = "EQ_2ID"
    EQ_UNIFYB2 = "EQ_UNIFYB2"


def _square_dim(R: Operator) -> int:
    if len(R.domain) != 2 or R.domain != R.codomain or R.domain[0] != R.domain[1]:
        raise ShapeMismatch(f"expected an operator on V (x) V, got {R.domain} -> {R.codomain}")
    return R.domain[0]


class _Legs:
    """Lifts ``R^{12}``, ``R^{13}``, ``R^{23}`` of one operator, computed lazily."""

    def __init__(self, R: Operator):
        self.n = _square_dim(R)
        self.R = R
        self._cache: dict[tuple[int, int], Operator] = {}

    def __getitem__(self, legs: tuple[int, int]) -> Operator:
        if legs not in self._cache:
            self._cache[legs] = lift(self.R, legs, (self.n,) * 3)
        return self._cache[legs]


def _braid_sides(L: _Legs) -> tuple[Operator, Operator]:
    r12, r23 = L[1, 2], L[2, 3]
    return chain(r12, r23, r12), chain(r23, r12, r23)


def _qybe_sides(L: _Legs) -> tuple[Operator, Operator]:
    r12, r13, r23 = L[1, 2], L[1, 3], L[2, 3]
    return chain(r12, r13, r23), chain(r23, r13, r12)


def check_braid(R: Operator) -> CheckReport:
    """``R12 R23 R12 == R23 R12 R23``."""
    return compare(Variant.BRAID.value, *_braid_sides(_Legs(R)))


def check_qybe(R: Operator) -> CheckReport:
    """``R12 R13 R23 == R23 R13 R12``."""
    return compare(Variant.QYBE.value, *_qybe_sides(_Legs(R)))


def _nou2(L: _Legs, X: Operator, Y: Operator) -> CheckReport:
    n = L.n
    x13 = lift(X, (1, 3), (n, n, n))
    y12 = lift(Y, (1, 2), (n, n, n))
    y23 = lift(Y, (2, 3), (n, n, n))
    return compare(
        Variant.EQ_NOU2.value,
        chain(L[1, 2], x13, L[2, 3], y12),
        chain(L[2, 3], x13, L[1, 2], y23),
    )


def _canonical_factorizations(R: Operator) -> dict[str, tuple[Operator, Operator]]:
    I = identity(R.domain)
    return {"X=R,Y=I": (R, I), "X=I,Y=R": (I, R)}


def check_variant(R: Operator, variant, aux: tuple[Operator, Operator] | None = None) -> CheckReport:
    """Evaluate one of the equation variants exactly.

    ``EQ_NOU2`` needs a factorization ``R = X o Y``.  When ``aux`` is omitted the
    two canonical factorizations ``(R, I)`` and ``(I, R)`` are each tried and the
    report holds if either does; both sub-results are kept in ``details``.
    """
    v = Variant(variant)
    L = _Legs(R)
    n = L.n
    if v is Variant.BRAID:
        return compare(v.value, *_braid_sides(L))
    if v is Variant.QYBE:
        return compare(v.value, *_qybe_sides(L))
    if v is Variant.EQ_I:
        a = compose(L[1, 2], L[2, 3])
        b = compose(L[1, 3], L[1, 2])
        c = compose(L[2, 3], L[1, 3])
        return combine(v.value, {"R12R23=R13R12": compare("first", a, b), "R13R12=R23R13": compare("second", b, c)})
    if v is Variant.EQ_X:
        return compare(v.value, compose(L[2, 3], L[1, 2]), compose(L[1, 2], L[1, 3]))
    if v is Variant.EQ_NOU:
        return compare(
            v.value,
            chain(L[1, 2], L[1, 3], L[1, 2], L[2, 3]),
            chain(L[1, 3], L[2, 3], L[1, 3], L[1, 2]),
        )
    if v is Variant.EQ_UNIFYB:
        bl, br = _braid_sides(L)
        ql, qr = _qybe_sides(L)
        product = compose(bl - br, ql - qr)
        return compare(v.value, product, product.scale(0))
    if v is Variant.EQ_2ID:
        return compare(v.value, compose(R, R), identity((n, n)))
    if v is Variant.EQ_UNIFYB2:
        r12, r13, r23 = L[1, 2], L[1, 3], L[2, 3]
        lhs = chain(r12, r23, r13, r23) + chain(r23, r12, r13, r12)
        rhs = chain(r23, r12, r23, r12, r13, r23) + chain(r12, r23, r12, r23, r13, r12)
        return compare(v.value, lhs, rhs)
    # EQ_NOU2
    if aux is not None:
        X, Y = aux
        if compose(X, Y) != R:
            raise AuxFactorizationInvalid("X o Y does not equal R")
        return _nou2(L, X, Y)
    tries = {name: _nou2(L, X, Y) for name, (X, Y) in _canonical_factorizations(R).items()}
    best = next((t for t in tries.values() if t.holds), None)
    details = {"factorizations": {k: t.to_dict() for k, t in tries.items()}}
    if best is not None:
        return CheckReport(v.value, True, 0, None, details)
    first = next(iter(tries.values()))
    return CheckReport(v.value, False, min(t.residual_nonzero for t in tries.values()), first.witness, details)


def require_aux(R: Operator, aux) -> None:
    """Strict form of the EQ_NOU2 precondition used by callers that forbid the fallback."""
    if aux is None:
        raise MissingAux("EQ_NOU2 needs an explicit factorization (X, Y)")
    if compose(aux[0], aux[1]) != R:
        raise AuxFactorizationInvalid("X o Y does not equal R")


IMPLICATIONS = (
    ("I_and_X->BRAID_and_QYBE", ("EQ_I", "EQ_X"), "and", ("BRAID", "QYBE")),
    ("BRAID_and_QYBE->NOU", ("BRAID", "QYBE"), "and", ("EQ_NOU",)),
    ("BRAID_or_QYBE->UNIFYB", ("BRAID", "QYBE"), "or", ("EQ_UNIFYB",)),
    ("BRAID_or_QYBE->NOU2", ("BRAID", "QYBE"), "or", ("EQ_NOU2",)),
    ("UNIFYB_and_2ID->UNIFYB2", ("EQ_UNIFYB", "EQ_2ID"), "and", ("EQ_UNIFYB2",)),
)


@dataclass
class ImplicationRow:
    implication: str
    premise_holds: bool
    conclusion_holds: bool

    @property
    def consistent(self) -> bool:
        return self.conclusion_holds or not self.premise_holds

    def to_dict(self) -> dict:
        return {
            "implication": self.implication,
            "premise_holds": self.premise_holds,
            "conclusion_holds": self.conclusion_holds,
            "consistent": self.consistent,
        }


def check_implications(R: Operator, aux: tuple[Operator, Operator] | None = None) -> list[ImplicationRow]:
    """Evaluate the five implication rows relating the equation variants.

    A row with ``consistent == False`` is an operator falsifying the implication.
    """
    _square_dim(R)
    verdicts = {v: check_variant(R, v, aux if v is Variant.EQ_NOU2 else None).holds for v in Variant}
    rows = []
    for name, premises, op, conclusions in IMPLICATIONS:
        ps = [verdicts[Variant(p)] for p in premises]
        premise = all(ps) if op == "and" else any(ps)
        rows.append(ImplicationRow(name, premise, all(verdicts[Variant(c)] for c in conclusions)))
    return rows


def _algebra_params(A: AlgebraTable, r, s) -> tuple[Fraction, Fraction]:
    A.validate()
    r, s = Fraction(r), Fraction(s)
    if r == 0 or s == 0:
        raise ZeroParameter("r and s must be nonzero")
    return r, s


def _algebra_operator(A: AlgebraTable, x: Fraction, y: Fraction, z: Fraction) -> Operator:
    """``a (x) b -> x ab (x) 1 + y 1 (x) ab + z a (x) b``."""
    d = A.dim

    def image(ij):
        out: dict[tuple[int, int], Fraction] = {}
        ab = A.c[ij[0]][ij[1]]
        for k, v in enumerate(ab):
            if not v:
                continue
            for l, u in enumerate(A.unit):
                if u:
                    out[k, l] = out.get((k, l), 0) + x * v * u
                    out[l, k] = out.get((l, k), 0) + y * v * u
        out[ij] = out.get(ij, 0) + z
        return out

    return from_basis_map((d, d), (d, d), image)


def algebra_yb_operator(A: AlgebraTable, r, s) -> Operator:
    """``R(a (x) b) = s ab (x) 1 + r 1 (x) ab - s a (x) b`` on ``A (x) A``."""
    r, s = _algebra_params(A, r, s)
    return _algebra_operator(A, s, r, -s)


def algebra_yb_inverse(A: AlgebraTable, r, s) -> Operator:
    """Closed-form inverse ``(1/r) ab (x) 1 + (1/s) 1 (x) ab - (1/s) a (x) b``."""
    r, s = _algebra_params(A, r, s)
    return _algebra_operator(A, 1 / r, 1 / s, -1 / s)


def yb_commutator(R: Operator, S: Operator, T: Operator, shape) -> Operator:
    """``[R, S, T] = R12 S13 T23 - T23 S13 R12`` on ``V (x) V' (x) V''``."""
    shape = tuple(shape)
    if len(shape) != 3:
        raise ShapeMismatch("yb_commutator needs a three-factor shape")
    for op in (R, S, T):
        if op.domain != op.codomain:
            raise ShapeMismatch("commutator entries must be endomorphisms")
    r12 = lift(R, (1, 2), shape)
    s13 = lift(S, (1, 3), shape)
    t23 = lift(T, (2, 3), shape)
    return chain(r12, s13, t23) - chain(t23, s13, r12)


@dataclass(frozen=True)
class WxzTriple:
    W: Operator
    X: Operator
    Z: Operator

    @property
    def dims(self) -> tuple[int, int]:
        n, m = self.X.domain if len(self.X.domain) == 2 else (0, 0)
        if (
            self.W.domain != (n, n)
            or self.W.codomain != (n, n)
            or self.Z.domain != (m, m)
            or self.Z.codomain != (m, m)
            or self.X.codomain != (n, m)
        ):
            raise ShapeMismatch("W, X, Z shapes are not consistent with a pair (dim V, dim V')")
        return n, m


def _commutator_report(name: str, op: Operator) -> CheckReport:
    return compare(name, op, op.scale(0))


def check_wxz(t: WxzTriple) -> list[CheckReport]:
    """The four commutator equations of a Yang-Baxter system."""
    n, m = t.dims
    W, X, Z = t.W, t.X, t.Z
    return [
        _commutator_report("[W,W,W]=0", yb_commutator(W, W, W, (n, n, n))),
        _commutator_report("[Z,Z,Z]=0", yb_commutator(Z, Z, Z, (m, m, m))),
        _commutator_report("[W,X,X]=0", yb_commutator(W, X, X, (n, n, m))),
        _commutator_report("[X,X,Z]=0", yb_commutator(X, X, Z, (n, m, m))),
    ]


def glue(t: WxzTriple, *, verify: bool = True) -> Operator:
    """Glue a Yang-Baxter system into one braid operator on ``V (+) V'``.

    With ``R = W o tau``, ``R' = Z o tau`` and ``U = X o tau_{V',V}`` the glued
    map is ``R`` on ``V (x) V``, ``R'`` on ``V' (x) V'``, ``U`` on ``V' (x) V``
    and ``U^{-1}`` on ``V (x) V'``.  The direct-sum basis lists the ``V``
    vectors first, then the ``V'`` vectors.
    """
    n, m = t.dims
    try:
        X_inv = invert(t.X)
    except Singular:
        raise XNotInvertible("X is not invertible") from None
    if verify:
        failed = [r.equation for r in check_wxz(t) if not r.holds]
        if failed:
            raise WxzFailed(f"not a Yang-Baxter system: {', '.join(failed)} fail")
    R = compose(t.W, twist(n, n))
    Rp = compose(t.Z, twist(m, m))
    U = compose(t.X, twist(m, n))  # V' (x) V -> V (x) V'
    U_inv = compose(twist(n, m), X_inv)  # V (x) V' -> V' (x) V
    N = n + m

    def block(i: int, j: int):
        vi, vj = i < n, j < n
        if vi and vj:
            op, col, shift = R, i * n + j, (0, 0)
        elif not vi and not vj:
            op, col, shift = Rp, (i - n) * m + (j - n), (n, n)
        elif not vi and vj:
            op, col, shift = U, (i - n) * n + j, (0, n)
        else:
            op, col, shift = U_inv, i * m + (j - n), (n, 0)
        out = {}
        w = op.codomain[1]
        for row, x in op.column(col).items():
            a, b = divmod(row, w)
            out[a + shift[0], b + shift[1]] = x
        return out

    return from_basis_map((N, N), (N, N), lambda ij: block(*ij))


def diagonal_solution(lambdas) -> Operator:
    """``R(e_i (x) e_j) = lambda_ij e_j (x) e_i``; a braid solution for any lambdas."""
    lambdas = [[Fraction(x) for x in row] for row in lambdas]
    n = len(lambdas)
    return from_basis_map((n, n), (n, n), lambda ij: {(ij[1], ij[0]): lambdas[ij[0]][ij[1]]})


def random_diagonal_solution(n: int, rng: random.Random, *, invertible: bool = True) -> Operator:
    pool = [Fraction(p, q) for p in range(-4, 5) for q in (1, 2, 3) if p or not invertible]
    return diagonal_solution([[rng.choice(pool) for _ in range(n)] for _ in range(n)])
