"""Entwining structures and their equivalence with Yang-Baxter systems.

An entwining map is ``psi: C (x) A -> A (x) C``.  The four compatibility
conditions are checked twice: as operator identities built from ``mu``,
``Delta``, the unit and the counit, and element-wise in the indexed
(Sweedler-style) form, by pushing basis vectors through ``psi`` one factor at a
time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import AlgebraTable, CoalgebraTable
from .errors import NormalizationFailed, ShapeMismatch
from .reports import CheckReport, compare
from .tensor import Operator, chain, compose, from_basis_map, identity, tensor, twist
from .yang_baxter import WxzTriple, check_wxz


def _check_shapes(A: AlgebraTable, C: CoalgebraTable, psi: Operator) -> None:
    if psi.domain != (C.dim, A.dim) or psi.codomain != (A.dim, C.dim):
        raise ShapeMismatch(f"entwining map must go [{C.dim}, {A.dim}] -> [{A.dim}, {C.dim}]")


def _psi_terms(psi: Operator, c: int, a: int) -> list[tuple[int, int, Fraction]]:
    """``psi(e_c (x) e_a)`` as ``(a_out, c_out, coefficient)`` triples."""
    m = psi.codomain[1]
    return [(*divmod(row, m), x) for row, x in psi.column(c * psi.domain[1] + a).items()]


def _add(acc: dict, key, x) -> None:
    v = acc.get(key, 0) + x
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _indexed_forms(A: AlgebraTable, C: CoalgebraTable, psi: Operator) -> list[bool]:
    """The four conditions evaluated element-wise on basis vectors."""
    a_dim, c_dim = A.dim, C.dim
    results = []

    # (ab)_alpha (x) c^alpha  ==  a_alpha b_beta (x) c^{alpha beta}
    ok = True
    for c in range(c_dim):
        for a in range(a_dim):
            for b in range(a_dim):
                lhs: dict = {}
                for k, v in enumerate(A.c[a][b]):
                    if v:
                        for ao, co, x in _psi_terms(psi, c, k):
                            _add(lhs, (ao, co), v * x)
                rhs: dict = {}
                for a1, c1, x in _psi_terms(psi, c, a):
                    for b1, c2, y in _psi_terms(psi, c1, b):
                        for k, v in enumerate(A.c[a1][b1]):
                            if v:
                                _add(rhs, (k, c2), x * y * v)
                ok = ok and lhs == rhs
    results.append(ok)

    # a_alpha (x) c^alpha_(1) (x) c^alpha_(2)  ==  a_{beta alpha} (x) c_(1)^alpha (x) c_(2)^beta
    ok = True
    for c in range(c_dim):
        for a in range(a_dim):
            lhs = {}
            for a1, c1, x in _psi_terms(psi, c, a):
                for j in range(c_dim):
                    for k in range(c_dim):
                        if C.delta[c1][j][k]:
                            _add(lhs, (a1, j, k), x * C.delta[c1][j][k])
            rhs = {}
            for j in range(c_dim):
                for k in range(c_dim):
                    w = C.delta[c][j][k]
                    if not w:
                        continue
                    for ab, c2, y in _psi_terms(psi, k, a):
                        for aba, c1, z in _psi_terms(psi, j, ab):
                            _add(rhs, (aba, c1, c2), w * y * z)
            ok = ok and lhs == rhs
    results.append(ok)

    # 1_alpha (x) c^alpha == 1 (x) c
    ok = True
    for c in range(c_dim):
        lhs = {}
        for k, u in enumerate(A.unit):
            if u:
                for ao, co, x in _psi_terms(psi, c, k):
                    _add(lhs, (ao, co), u * x)
        rhs = {}
        for k, u in enumerate(A.unit):
            if u:
                _add(rhs, (k, c), u)
        ok = ok and lhs == rhs
    results.append(ok)

    # a_alpha eps(c^alpha) == a eps(c)
    ok = True
    for c in range(c_dim):
        for a in range(a_dim):
            lhs = {}
            for ao, co, x in _psi_terms(psi, c, a):
                if C.counit[co]:
                    _add(lhs, ao, x * C.counit[co])
            rhs = {a: C.counit[c]} if C.counit[c] else {}
            ok = ok and lhs == rhs
    results.append(ok)
    return results


def check_entwining(A: AlgebraTable, C: CoalgebraTable, psi: Operator) -> list[CheckReport]:
    """Reports for the four entwining conditions, in order.

    Each report's ``details["indexed_form_holds"]`` is the verdict of the
    element-wise route; it must agree with ``holds``.
    """
    _check_shapes(A, C, psi)
    a, c = A.dim, C.dim
    IA, IC = identity(a), identity(c)
    mu, delta, iota, eps = A.mu(), C.delta_map(), A.iota(), C.epsilon()
    conditions = [
        (
            "ENTWINING_1_MULT",
            compose(psi, tensor(IC, mu)),
            chain(tensor(mu, IC), tensor(IA, psi), tensor(psi, IA)),
        ),
        (
            "ENTWINING_2_COMULT",
            compose(tensor(IA, delta), psi),
            chain(tensor(psi, IC), tensor(IC, psi), tensor(delta, IA)),
        ),
        ("ENTWINING_3_UNIT", compose(psi, tensor(IC, iota)), tensor(iota, IC)),
        ("ENTWINING_4_COUNIT", compose(tensor(IA, eps), psi), tensor(eps, IA)),
    ]
    indexed = _indexed_forms(A, C, psi)
    return [
        compare(name, lhs, rhs, indexed_form_holds=ix)
        for (name, lhs, rhs), ix in zip(conditions, indexed)
    ]


def build_w(A: AlgebraTable, s, r) -> Operator:
    """``a (x) b -> s ba (x) 1 + r 1 (x) ba - s b (x) a`` on ``A (x) A``.

    This equals ``algebra_yb_operator(A, r, s) o tau``.
    """
    s, r = Fraction(s), Fraction(r)
    d = A.dim

    def image(ij):
        a, b = ij
        out: dict = {}
        for k, v in enumerate(A.c[b][a]):
            if v:
                for l, u in enumerate(A.unit):
                    if u:
                        _add(out, (k, l), s * v * u)
                        _add(out, (l, k), r * v * u)
        _add(out, (b, a), -s)
        return out

    return from_basis_map((d, d), (d, d), image)


def build_z(C: CoalgebraTable, t, p) -> Operator:
    """``c (x) d -> t eps(c) Delta(d) + p eps(d) Delta(c) - p d (x) c`` on ``C (x) C``."""
    t, p = Fraction(t), Fraction(p)
    n = C.dim

    def image(ij):
        c, d = ij
        out: dict = {}
        for j in range(n):
            for k in range(n):
                if C.counit[c] and C.delta[d][j][k]:
                    _add(out, (j, k), t * C.counit[c] * C.delta[d][j][k])
                if C.counit[d] and C.delta[c][j][k]:
                    _add(out, (j, k), p * C.counit[d] * C.delta[c][j][k])
        _add(out, (d, c), -p)
        return out

    return from_basis_map((n, n), (n, n), image)


def coalgebra_braid_operator(C: CoalgebraTable) -> Operator:
    """``c (x) d -> eps(d) c_(1) (x) c_(2) + eps(c) d_(1) (x) d_(2) - c (x) d``."""
    return compose(build_z(C, 1, 1), twist(C.dim, C.dim))


def flip_entwining(A: AlgebraTable, C: CoalgebraTable) -> Operator:
    return twist(C.dim, A.dim)


def x_from_psi(psi: Operator) -> Operator:
    """``X`` with ``X o tau_{C,A} = psi``."""
    c, a = psi.domain
    return compose(psi, twist(a, c))


def psi_from_x(X: Operator) -> Operator:
    a, c = X.domain
    return compose(X, twist(c, a))


def check_normalization(A: AlgebraTable, C: CoalgebraTable, X: Operator) -> list[CheckReport]:
    """``X (iota (x) id) = iota (x) id`` and ``(id (x) eps) X = id (x) eps``."""
    if X.domain != (A.dim, C.dim) or X.codomain != (A.dim, C.dim):
        raise ShapeMismatch(f"X must act on [{A.dim}, {C.dim}]")
    IA, IC = identity(A.dim), identity(C.dim)
    iota, eps = A.iota(), C.epsilon()
    return [
        compare("X_UNIT", compose(X, tensor(iota, IC)), tensor(iota, IC)),
        compare("X_COUNIT", compose(tensor(IA, eps), X), tensor(IA, eps)),
    ]


@dataclass
class Equivalence:
    wxz_reports: list[CheckReport]
    entwining_reports: list[CheckReport]
    parameters: dict = field(default_factory=dict)

    @property
    def wxz_holds(self) -> bool:
        return all(r.holds for r in self.wxz_reports)

    @property
    def entwining_holds(self) -> bool:
        return all(r.holds for r in self.entwining_reports)

    @property
    def equivalence_consistent(self) -> bool:
        return self.wxz_holds == self.entwining_holds

    def to_dict(self) -> dict:
        return {
            "wxz_reports": [r.to_dict() for r in self.wxz_reports],
            "entwining_reports": [r.to_dict() for r in self.entwining_reports],
            "wxz_holds": self.wxz_holds,
            "entwining_holds": self.entwining_holds,
            "equivalence_consistent": self.equivalence_consistent,
            "parameters": self.parameters,
        }


def entwining_iff_wxz(A: AlgebraTable, C: CoalgebraTable, X: Operator, r=1, s=1, t=1, p=1) -> Equivalence:
    """Run both sides of the system/entwining equivalence for one ``X``.

    ``X`` must pass the unit/counit normalization gate.  Zero parameters are
    allowed and flagged as degenerate in ``parameters``.
    """
    bad = [n for n in check_normalization(A, C, X) if not n.holds]
    if bad:
        raise NormalizationFailed(f"X fails {', '.join(b.equation for b in bad)}")
    params = {k: Fraction(v) for k, v in dict(r=r, s=s, t=t, p=p).items()}
    triple = WxzTriple(build_w(A, params["s"], params["r"]), X, build_z(C, params["t"], params["p"]))
    out = Equivalence(
        check_wxz(triple),
        check_entwining(A, C, psi_from_x(X)),
        {**{k: str(v) for k, v in params.items()}, "degenerate": any(v == 0 for v in params.values())},
    )
    return out


def wxz_triple(A: AlgebraTable, C: CoalgebraTable, X: Operator, r=1, s=1, t=1, p=1) -> WxzTriple:
    return WxzTriple(build_w(A, s, r), X, build_z(C, t, p))


def perturbed_x(A: AlgebraTable, C: CoalgebraTable, scale=1) -> Operator:
    """``id + scale * P (x) Q`` with ``P(1) = 0`` and ``eps o Q = 0``.

    The result always passes the normalization gate; for the shipped fixtures it
    breaks the entwining conditions.  Needs ``dim A, dim C >= 2``.
    """
    if A.dim < 2 or C.dim < 2:
        raise ShapeMismatch("perturbation needs dim A, dim C >= 2")
    u = A.unit
    i = next(k for k, x in enumerate(u) if x)
    # P(v) = v - (v_i / u_i) u  kills the unit
    P = [[Fraction(int(r == c)) - (u[r] / u[i] if c == i else 0) for c in range(A.dim)] for r in range(A.dim)]
    eps = C.counit
    j = next((k for k, x in enumerate(eps) if x), 0)
    w = [Fraction(0)] * C.dim
    other = next(k for k in range(C.dim) if k != j)
    w[other] = Fraction(1)
    w[j] = -eps[other] / eps[j] if eps[j] else Fraction(0)
    # Q(v) = eps'(v) w with eps' the j-th coordinate; eps(w) = 0
    Q = [[w[r] if c == j else Fraction(0) for c in range(C.dim)] for r in range(C.dim)]
    Pop = Operator((A.dim,), (A.dim,), P)
    Qop = Operator((C.dim,), (C.dim,), Q)
    return identity((A.dim, C.dim)) + tensor(Pop, Qop).scale(scale)
