"""UJLA structures and their Lie/Jordan specializations, checked symbolically.

An identity such as ``(ab)c + (bc)a + (ca)b = a(bc) + b(ca) + c(ab)`` is
checked by substituting generic elements ``a = sum a_i e_i`` (and likewise
``b``, ``c``) with indeterminate coordinates, expanding both sides through the
structure constants, and testing the coordinate polynomials for equality.
Over the rationals this decides the identity exactly.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .algebras import AlgebraTable, MultTable, matrix_algebra
from .errors import (
    BimoduleAxiomFailed,
    CertificationFailed,
    DimTooLarge,
    NotDerivation,
    NotUjla,
    ShapeMismatch,
)
from .poly import Poly, add_product
from .reports import CheckReport, combine, compare
from .tensor import Operator, compose, identity, tensor, twist
from .yang_baxter import check_braid

PVec = list[Poly]


class Identity(str, enum.Enum):
    NEW = "NEW"
    J1 = "J1"
    J2 = "J2"
    J3 = "J3"
    J4 = "J4"
    COMM = "COMM"
    ANTICOMM = "ANTICOMM"
    JACOBI = "JACOBI"
    JORDAN = "JORDAN"


UJLA_AXIOMS = (Identity.NEW, Identity.J1, Identity.J2, Identity.J3, Identity.J4)


class Symbolic:
    """Generic elements of a ``MultTable`` carrier and their products."""

    def __init__(self, T: MultTable, slots: Sequence[str] = ("a", "b", "c")):
        self.T = T
        self.d = d = T.dim
        self.nvars = nvars = len(slots) * d
        self.names = [f"{s}{i + 1}" for s in slots for i in range(d)]
        self.elements = {s: [Poly.var(nvars, n * d + i) for i in range(d)] for n, s in enumerate(slots)}
        self._grouped = _group(T)

    def __getitem__(self, slot: str) -> PVec:
        return self.elements[slot]

    def const(self, vector: Sequence) -> PVec:
        return [Poly.const(self.nvars, x) for x in vector]

    def zero(self) -> PVec:
        return [Poly(self.nvars) for _ in range(self.d)]

    def mul(self, x: PVec, y: PVec) -> PVec:
        acc: list[dict] = [{} for _ in range(self.d)]
        one = Fraction(1)
        for (i, j), outs in self._grouped.items():
            if not x[i] or not y[j]:
                continue
            if len(outs) == 1:
                k, v = outs[0]
                add_product(acc[k], v, x[i], y[j])
            else:
                xy: dict = {}
                add_product(xy, one, x[i], y[j])
                for k, v in outs:
                    target = acc[k]
                    for mono, coeff in xy.items():
                        new = target.get(mono, 0) + v * coeff
                        if new:
                            target[mono] = new
                        else:
                            del target[mono]
        return [Poly(self.nvars, a) for a in acc]

    def add(self, *vs: PVec) -> PVec:
        out = vs[0]
        for v in vs[1:]:
            out = [p + q for p, q in zip(out, v)]
        return out

    def sub(self, x: PVec, y: PVec) -> PVec:
        return [p - q for p, q in zip(x, y)]

    def linear(self, matrix: Sequence[Sequence], x: PVec) -> PVec:
        out = []
        for row in matrix:
            acc = Poly(self.nvars)
            for m, p in zip(row, x):
                if m:
                    acc = acc + p.scale(m)
            out.append(acc)
        return out

    def compare(self, name: str, lhs: PVec, rhs: PVec, **details) -> CheckReport:
        bad = [k for k in range(self.d) if lhs[k] != rhs[k]]
        if not bad:
            return CheckReport(name, True, 0, None, details)
        k = bad[0]
        return CheckReport(
            name,
            False,
            len(bad),
            {
                "coordinate": k,
                "lhs": lhs[k].format(self.names),
                "rhs": rhs[k].format(self.names),
                "difference": (lhs[k] - rhs[k]).format(self.names),
            },
            details,
        )


def _group(T: MultTable):
    grouped: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for i, j, k, v in T.terms:
        grouped.setdefault((i, j), []).append((k, v))
    return grouped


def identity_sides(S: Symbolic, ident: Identity) -> tuple[PVec, PVec]:
    """Both sides of a single-equation identity in the generic elements a, b, c."""
    m = S.mul
    a, b, c = S["a"], S["b"], S["c"]
    if ident is Identity.NEW:
        lhs = S.add(m(m(a, b), c), m(m(b, c), a), m(m(c, a), b))
        rhs = S.add(m(a, m(b, c)), m(b, m(c, a)), m(c, m(a, b)))
        return lhs, rhs
    if ident in (Identity.J1, Identity.J2, Identity.J3, Identity.J4):
        a2 = m(a, a)
        if ident is Identity.J1:
            return m(m(a2, b), a), m(a2, m(b, a))
        if ident is Identity.J2:
            return m(m(a, b), a2), m(a, m(b, a2))
        if ident is Identity.J3:
            return m(m(b, a2), a), m(m(b, a), a2)
        return m(a2, m(a, b)), m(a, m(a2, b))
    if ident is Identity.COMM:
        return m(a, b), m(b, a)
    if ident is Identity.ANTICOMM:
        return S.add(m(a, b), m(b, a)), S.zero()
    if ident is Identity.JACOBI:
        return S.add(m(m(a, b), c), m(m(b, c), a), m(m(c, a), b)), S.zero()
    raise ValueError(f"{ident} is not a single equation")


def check_identity(T: MultTable, ident) -> CheckReport:
    """Decide one identity exactly for the product ``T``.

    ``JORDAN`` is commutativity together with ``(a^2 b) a = a^2 (b a)``.
    """
    ident = Identity(ident)
    S = Symbolic(T)
    if ident is Identity.JORDAN:
        parts = {
            "COMM": S.compare("COMM", *identity_sides(S, Identity.COMM)),
            "J1": S.compare("J1", *identity_sides(S, Identity.J1)),
        }
        return combine("JORDAN", parts)
    return S.compare(ident.value, *identity_sides(S, ident))


def check_ujla(T: MultTable) -> CheckReport:
    return combine("UJLA", {i.value: check_identity(T, i) for i in UJLA_AXIOMS})


def check_weak(T: MultTable) -> CheckReport:
    report = check_identity(T, Identity.NEW)
    report.equation = "WEAK_UJLA"
    return report


def deform(T: MultTable, alpha, beta) -> MultTable:
    """The product ``alpha ab + beta ba``."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    d = T.dim
    return MultTable(
        d,
        [[[alpha * T.c[i][j][k] + beta * T.c[j][i][k] for k in range(d)] for j in range(d)] for i in range(d)],
    )


def _require_ujla(T: MultTable) -> None:
    report = check_ujla(T)
    if not report.holds:
        raise NotUjla(f"table is not a UJLA structure: {report.witness}")


def lie_structure(T: MultTable) -> MultTable:
    """The bracket ``ab - ba``, certified anticommutative and Jacobi."""
    _require_ujla(T)
    L = deform(T, 1, -1)
    for ident in (Identity.ANTICOMM, Identity.JACOBI):
        if not check_identity(L, ident).holds:
            raise CertificationFailed(f"commutator of a UJLA structure fails {ident.value}")
    return L


def jordan_structure(T: MultTable) -> MultTable:
    """The symmetrized product ``(ab + ba) / 2``, certified Jordan."""
    _require_ujla(T)
    J = deform(T, Fraction(1, 2), Fraction(1, 2))
    if not check_identity(J, Identity.JORDAN).holds:
        raise CertificationFailed("symmetrized product of a UJLA structure is not Jordan")
    return J


def inner_derivation_check(T: MultTable, b: Sequence | None = None) -> CheckReport:
    """Inner derivations built from ``b`` (symbolic when ``b`` is None).

    ``lie``: ``x -> xb - bx`` is a derivation of the bracket ``xy - yx``.
    ``ujla``: ``x -> bx - xb`` satisfies ``D(a^2 a) = D(a^2) a + a^2 D(a)``.
    """
    _require_ujla(T)
    S = Symbolic(T)
    m = S.mul
    x, y = S["a"], S["b"]
    bv = S["c"] if b is None else S.const(b)
    if len(bv) != T.dim:
        raise ShapeMismatch("b has the wrong length")

    def bracket(u, v):
        return S.sub(m(u, v), m(v, u))

    def delta(u):
        return bracket(u, bv)

    lie = S.compare("LIE_DERIVATION", delta(bracket(x, y)), S.add(bracket(delta(x), y), bracket(x, delta(y))))

    def D(u):
        return S.sub(m(bv, u), m(u, bv))

    a = x
    a2 = m(a, a)
    ujla = S.compare("UJLA_DERIVATION", D(m(a2, a)), S.add(m(D(a2), a), m(a2, D(a))))
    return combine(
        "INNER_DERIVATION",
        {"lie": lie, "ujla": ujla},
        b="symbolic" if b is None else [str(Fraction(v)) for v in b],
    )


@lru_cache(maxsize=None)
def binary_trees(n: int) -> tuple:
    """All full binary trees with ``n`` leaves, leaves written as ``"a"``."""
    if n == 1:
        return ("a",)
    return tuple(
        (left, right)
        for k in range(1, n)
        for left in binary_trees(k)
        for right in binary_trees(n - k)
    )


def tree_str(tree) -> str:
    if tree == "a":
        return "a"
    return f"({tree_str(tree[0])}{tree_str(tree[1])})"


def power_associativity(T: MultTable, nmax: int = 5) -> CheckReport:
    """Compare every parenthesization of ``a^n`` for ``n <= nmax``.

    The report also records whether the carrier dimension is at most 5, the
    other reading of the dimension bound attached to the power-associativity
    question.
    """
    if nmax < 3:
        raise ValueError("nmax must be at least 3")
    S = Symbolic(T, slots=("a",))
    values: dict = {"a": S["a"]}

    def value(tree):
        if tree not in values:
            values[tree] = S.mul(value(tree[0]), value(tree[1]))
        return values[tree]

    per_power = {}
    for n in range(2, nmax + 1):
        trees = binary_trees(n)
        ref = value(trees[0])
        for tree in trees[1:]:
            report = S.compare("POWER_ASSOCIATIVE", value(tree), ref)
            if not report.holds:
                per_power[n] = False
                witness = {"power": n, "tree": tree_str(tree), "reference": tree_str(trees[0]), **report.witness}
                return CheckReport(
                    "POWER_ASSOCIATIVE",
                    False,
                    report.residual_nonzero,
                    witness,
                    {"per_power": per_power, "carrier_dim": T.dim, "carrier_dim_at_most_5": T.dim <= 5},
                )
        per_power[n] = True
    return CheckReport(
        "POWER_ASSOCIATIVE",
        True,
        0,
        None,
        {"max_power": nmax, "per_power": per_power, "carrier_dim": T.dim, "carrier_dim_at_most_5": T.dim <= 5},
    )


def endomorphism_table(p, q, d: int) -> MultTable:
    """``f * g = p f o g + q g o f`` on ``End(k^d)`` in the matrix-unit basis."""
    return deform(matrix_algebra(d), p, q)


def endomorphism_ujla(p, q, d: int) -> tuple[MultTable, CheckReport]:
    if d < 1:
        raise ShapeMismatch("dimension must be positive")
    if d > 3:
        raise DimTooLarge("symbolic UJLA check on End(k^d) is limited to d <= 3")
    T = endomorphism_table(p, q, d)
    return T, check_ujla(T)


def _matrix_op(f: Sequence[Sequence], d: int) -> Operator:
    return Operator((d,), (d,), tuple(tuple(row) for row in f))


def endomorphism_closure_check(
    p,
    q,
    d: int,
    M: Operator,
    phi: Callable[[Operator], Operator],
    generators: Sequence[Sequence[Sequence]],
) -> CheckReport:
    """Closure of ``W = {f : f o M = M o phi(f)}`` under ``*_{p,q}`` on given generators.

    ``M`` maps ``V (x) V -> V``; ``phi`` sends an endomorphism of ``V`` to one of
    ``V (x) V`` and should be a morphism for ``*_{p,q}``, which is also checked on
    generator pairs.
    """
    p, q = Fraction(p), Fraction(q)
    if M.domain != (d, d) or M.codomain != (d,):
        raise ShapeMismatch("M must map V (x) V to V")

    def star(f: Operator, g: Operator) -> Operator:
        return compose(f, g).scale(p) + compose(g, f).scale(q)

    gens = [_matrix_op(f, d) for f in generators]
    parts = {}
    for n, f in enumerate(gens):
        parts[f"generator_{n}_in_W"] = compare("IN_W", compose(f, M), compose(M, phi(f)))
    for (i, f), (j, g) in itertools.product(enumerate(gens), repeat=2):
        fg = star(f, g)
        parts[f"phi_morphism_{i}_{j}"] = compare("PHI_MORPHISM", phi(fg), star(phi(f), phi(g)))
        parts[f"product_{i}_{j}_in_W"] = compare("IN_W", compose(fg, M), compose(M, phi(fg)))
    return combine("SUB_UJLA_CLOSURE", parts)


def check_derivation(T: MultTable, d_map: Sequence[Sequence]) -> CheckReport:
    """``d(xy) = d(x) y + x d(y)`` for generic ``x, y``."""
    S = Symbolic(T, slots=("x", "y"))
    _check_square(d_map, T.dim)
    x, y = S["x"], S["y"]
    D = lambda u: S.linear(d_map, u)  # noqa: E731
    return S.compare("DERIVATION", D(S.mul(x, y)), S.add(S.mul(D(x), y), S.mul(x, D(y))))


def _check_square(matrix, d: int) -> None:
    if len(matrix) != d or any(len(r) != d for r in matrix):
        raise ShapeMismatch(f"linear map must be {d}x{d}")


def trivial_extension(A: MultTable, m: int, left, right) -> MultTable:
    """``A (+) M`` with ``(a, u)(b, v) = (ab, a.v + u.b)``.

    ``left[i][j][k]``: coefficient of ``f_k`` in ``e_i . f_j``;
    ``right[j][i][k]``: coefficient of ``f_k`` in ``f_j . e_i``.
    """
    a = A.dim
    n = a + m
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in itertools.product(range(a), repeat=3):
        c[i][j][k] = A.c[i][j][k]
    for i, j, k in itertools.product(range(a), range(m), range(m)):
        c[i][a + j][a + k] = Fraction(left[i][j][k])
        c[a + j][i][a + k] = Fraction(right[j][i][k])
    return MultTable(n, c)


def _act(coeffs, i: int, vec: Sequence, m: int, side: str) -> list[Fraction]:
    out = [Fraction(0)] * m
    for j, x in enumerate(vec):
        if x:
            row = coeffs[i][j] if side == "left" else coeffs[j][i]
            for k in range(m):
                out[k] += x * Fraction(row[k])
    return out


def module_derivation_check(
    A: AlgebraTable,
    d_map: Sequence[Sequence],
    m: int,
    left,
    right,
    D_map: Sequence[Sequence],
) -> CheckReport:
    """``(a, u) -> (d(a), D(u))`` is a derivation of the trivial extension ``A (+) M``.

    Gates, in order: bimodule axioms (``BimoduleAxiomFailed``), ``d`` a
    derivation of ``A`` and ``D(a u) = d(a) u + a D(u)`` (``NotDerivation``).
    """
    A.validate()
    a = A.dim
    _check_square(d_map, a)
    _check_square(D_map, m)
    basis_m = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]

    def lact(vec_a, vec_m):
        out = [Fraction(0)] * m
        for i, x in enumerate(vec_a):
            if x:
                for k, v in enumerate(_act(left, i, vec_m, m, "left")):
                    out[k] += x * v
        return out

    def ract(vec_m, vec_a):
        out = [Fraction(0)] * m
        for i, x in enumerate(vec_a):
            if x:
                for k, v in enumerate(_act(right, i, vec_m, m, "right")):
                    out[k] += x * v
        return out

    ea = [[Fraction(int(i == j)) for j in range(a)] for i in range(a)]
    for i, j in itertools.product(range(a), repeat=2):
        ij = A.c[i][j]
        for f in basis_m:
            if lact(ij, f) != lact(ea[i], lact(ea[j], f)):
                raise BimoduleAxiomFailed(f"(e{i} e{j}) m != e{i} (e{j} m)")
            if ract(f, ij) != ract(ract(f, ea[i]), ea[j]):
                raise BimoduleAxiomFailed(f"m (e{i} e{j}) != (m e{i}) e{j}")
            if ract(lact(ea[i], f), ea[j]) != lact(ea[i], ract(f, ea[j])):
                raise BimoduleAxiomFailed(f"(e{i} m) e{j} != e{i} (m e{j})")
    for f in basis_m:
        if lact(A.unit, f) != f or ract(f, A.unit) != f:
            raise BimoduleAxiomFailed("unit does not act as identity on M")

    def apply(matrix, vec):
        return [sum((Fraction(x) * v for x, v in zip(row, vec)), Fraction(0)) for row in matrix]

    if not check_derivation(A, d_map).holds:
        raise NotDerivation("d is not a derivation of A")
    for i in range(a):
        for f in basis_m:
            lhs = apply(D_map, lact(ea[i], f))
            rhs = [x + y for x, y in zip(lact(apply(d_map, ea[i]), f), lact(ea[i], apply(D_map, f)))]
            if lhs != rhs:
                raise NotDerivation(f"D(e{i} m) != d(e{i}) m + e{i} D(m)")

    E = trivial_extension(A, m, left, right)
    delta = [[Fraction(0)] * (a + m) for _ in range(a + m)]
    for i, j in itertools.product(range(a), repeat=2):
        delta[i][j] = Fraction(d_map[i][j])
    for i, j in itertools.product(range(m), repeat=2):
        delta[a + i][a + j] = Fraction(D_map[i][j])
    report = check_derivation(E, delta)
    report.equation = "MODULE_DERIVATION"
    report.details["extension_product"] = "(a,m)(b,n) = (ab, a.n + m.b)"
    return report


def regular_bimodule(A: AlgebraTable) -> tuple[list, list]:
    """Left and right action constants of ``A`` on itself."""
    d = A.dim
    left = [[[A.c[i][j][k] for k in range(d)] for j in range(d)] for i in range(d)]
    right = [[[A.c[j][i][k] for k in range(d)] for i in range(d)] for j in range(d)]
    return left, right


def generalized_derivation_check(V_dim: int, d_map: Sequence[Sequence], phi: Operator) -> CheckReport:
    """``phi`` braids and commutes with ``d (x) I + I (x) d``."""
    if phi.domain != (V_dim, V_dim) or phi.codomain != (V_dim, V_dim):
        raise ShapeMismatch("phi must act on V (x) V")
    _check_square(d_map, V_dim)
    d = Operator((V_dim,), (V_dim,), tuple(tuple(r) for r in d_map))
    I = identity(V_dim)
    dd = tensor(d, I) + tensor(I, d)
    return combine(
        "GENERALIZED_DERIVATION",
        {"braid": check_braid(phi), "commutes": compare("COMMUTES", compose(phi, dd), compose(dd, phi))},
    )


def tau_symmetry_check(R: Operator) -> CheckReport:
    """``tau o R o tau == R``."""
    if len(R.domain) != 2 or R.domain != R.codomain or R.domain[0] != R.domain[1]:
        raise ShapeMismatch("R must act on V (x) V")
    n = R.domain[0]
    t = twist(n, n)
    return compare("TAU_SYMMETRY", compose(t, compose(R, t)), R)


def transpose(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(matrix[j][i]) for j in range(len(matrix))] for i in range(len(matrix[0]))]
