import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import PARAMS, operator_corpus
from ybkit.algebras import ALGEBRAS, dual_numbers, ground_field, matrix_algebra
from ybkit.errors import AuxFactorizationInvalid, MissingAux, ShapeMismatch, WxzFailed, XNotInvertible, ZeroParameter
from ybkit.tensor import Operator, compose, from_sparse, identity, invert, twist, zero
from ybkit.yang_baxter import (
    IMPLICATIONS,
    ImplicationRow,
    Variant,
    WxzTriple,
    algebra_yb_inverse,
    algebra_yb_operator,
    check_braid,
    check_implications,
    check_qybe,
    check_variant,
    check_wxz,
    diagonal_solution,
    glue,
    random_diagonal_solution,
    require_aux,
)

CORPUS = operator_corpus()
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)


def as_lists(R):
    return [list(row) for row in R.entries]


@pytest.mark.parametrize("name", sorted(k for k, R in CORPUS.items() if R.domain[0] <= 3))
def test_braid_and_qybe_agree_with_kronecker_oracle(name):
    R = CORPUS[name]
    n = R.domain[0]
    assert check_braid(R).holds == oracles.braid_holds(as_lists(R), n)
    assert check_qybe(R).holds == oracles.qybe_holds(as_lists(R), n)


def test_non_solution_has_witness():
    R = from_sparse((2, 2), (2, 2), {(0, 0): 1, (1, 1): 1, (2, 1): 1, (3, 3): 1, (2, 2): 1})
    report = check_braid(R)
    assert not report.holds
    assert report.residual_nonzero > 0
    assert set(report.witness) == {"row", "column", "lhs", "rhs"}
    assert report.witness["lhs"] != report.witness["rhs"]


def test_braid_needs_square_two_factor_operator():
    with pytest.raises(ShapeMismatch):
        check_braid(identity(4))
    with pytest.raises(ShapeMismatch):
        check_braid(identity((2, 3)))


def test_field_operator_is_scalar_r():
    assert algebra_yb_operator(ground_field(), 3, 5).entries == ((3,),)


def test_dual_numbers_operator_by_hand():
    # basis 1, x; flat order 1(x)1, 1(x)x, x(x)1, x(x)x
    r, s = Fraction(2), Fraction(3)
    R = algebra_yb_operator(dual_numbers(), r, s)
    assert R.column(0) == {0: r}
    assert R.column(1) == {2: s, 1: r - s}
    # x(x)1 -> s x(x)1 + r 1(x)x - s x(x)1: the x(x)1 terms cancel
    assert R.column(2) == {1: r}
    assert R.column(3) == {3: -s}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
@pytest.mark.parametrize("r,s", PARAMS)
def test_algebra_operator_properties(name, r, s):
    A = ALGEBRAS[name]()
    R = algebra_yb_operator(A, r, s)
    r, s = Fraction(r), Fraction(s)
    I = identity(R.domain)
    assert check_braid(R).holds
    assert compose(R, algebra_yb_inverse(A, r, s)) == I
    assert compose(R, R) == R.scale(r - s) + I.scale(r * s)
    assert algebra_yb_inverse(A, r, s) == invert(R)


def test_zero_parameter_rejected():
    with pytest.raises(ZeroParameter):
        algebra_yb_operator(dual_numbers(), 0, 1)
    with pytest.raises(ZeroParameter):
        algebra_yb_inverse(dual_numbers(), 1, 0)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_twist_conjugation_equivalence(name):
    R = CORPUS[name]
    n = R.domain[0]
    t = twist(n, n)
    verdicts = {check_braid(R).holds, check_qybe(compose(R, t)).holds, check_qybe(compose(t, R)).holds}
    assert len(verdicts) == 1


@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_diagonal_solutions_braid(n, rnd):
    R = random_diagonal_solution(n, random.Random(rnd.random()))
    assert check_braid(R).holds


def test_diagonal_solution_layout():
    R = diagonal_solution([[1, 2], [3, 4]])
    assert R.column(1) == {2: 2}
    assert R.column(2) == {1: 3}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_implication_rows_consistent(name):
    rows = check_implications(CORPUS[name])
    assert [r.implication for r in rows] == [i[0] for i in IMPLICATIONS]
    assert all(r.consistent for r in rows)


def test_implication_row_logic():
    assert ImplicationRow("x", False, False).consistent
    assert not ImplicationRow("x", True, False).consistent
    assert ImplicationRow("x", True, True).to_dict()["consistent"]


@given(st.lists(nonzero, min_size=4, max_size=4))
def test_implications_on_random_diagonal(lams):
    R = diagonal_solution([lams[:2], lams[2:]])
    assert all(r.consistent for r in check_implications(R))


def test_two_identity_variant():
    assert check_variant(twist(2, 2), Variant.EQ_2ID).holds
    assert check_variant(identity((2, 2)), "EQ_2ID").holds
    assert not check_variant(identity((2, 2)).scale(2), Variant.EQ_2ID).holds


def test_identity_satisfies_every_variant():
    I = identity((2, 2))
    for v in Variant:
        assert check_variant(I, v).holds, v


@pytest.mark.parametrize("name", ["twist2", "diagonal0", "algebra-dual-numbers-2-3", "coalgebra-group-z2"])
def test_eq_i_and_eq_x_match_oracle(name):
    R = CORPUS[name]
    r12, r13, r23 = oracles.legs3(as_lists(R), R.domain[0])
    mm = oracles.matmul
    assert check_variant(R, Variant.EQ_I).holds == (mm(r12, r23) == mm(r13, r12) == mm(r23, r13))
    assert check_variant(R, Variant.EQ_X).holds == (mm(r23, r12) == mm(r12, r13))


def test_nou2_with_explicit_factorization():
    R = algebra_yb_operator(dual_numbers(), 1, 2)
    X = R
    Y = identity((2, 2))
    assert check_variant(R, Variant.EQ_NOU2, (X, Y)).holds == check_variant(R, Variant.EQ_NOU2).details[
        "factorizations"
    ]["X=R,Y=I"]["holds"]
    with pytest.raises(AuxFactorizationInvalid):
        check_variant(R, Variant.EQ_NOU2, (R, R))


def test_require_aux():
    R = twist(2, 2)
    with pytest.raises(MissingAux):
        require_aux(R, None)
    with pytest.raises(AuxFactorizationInvalid):
        require_aux(R, (R, R))
    require_aux(R, (R, identity((2, 2))))


def _flip_triple(n, m):
    """W, Z flips and X = identity: a Yang-Baxter system for any sizes."""
    return WxzTriple(twist(n, n), identity((n, m)), twist(m, m))


def test_wxz_and_glue():
    t = _flip_triple(2, 1)
    assert all(r.holds for r in check_wxz(t))
    R = glue(t)
    assert R.domain == (3, 3)
    assert check_braid(R).holds
    # restricted to V (x) V the glued map is W o tau
    for i in range(2):
        for j in range(2):
            assert R.column(i * 3 + j) == {i * 3 + j: 1}


def test_glue_errors():
    singular = WxzTriple(twist(2, 2), zero((2, 2)), twist(2, 2))
    with pytest.raises(XNotInvertible):
        glue(singular)
    bad_w = from_sparse((2, 2), (2, 2), {(0, 0): 1, (1, 1): 1, (2, 1): 1, (3, 3): 1, (2, 2): 1})
    bad = WxzTriple(compose(bad_w, twist(2, 2)), identity((2, 2)), twist(2, 2))
    with pytest.raises(WxzFailed):
        glue(bad)


def test_wxz_shape_consistency():
    with pytest.raises(ShapeMismatch):
        check_wxz(WxzTriple(twist(2, 2), identity((2, 3)), twist(2, 2)))


def test_glue_of_algebra_systems():
    A = matrix_algebra(2)
    W = compose(algebra_yb_operator(A, 2, 1), twist(4, 4))
    t = WxzTriple(W, identity((4, 1)), Operator((1, 1), (1, 1), [[3]]))
    assert all(r.holds for r in check_wxz(t))
    assert check_braid(glue(t)).holds
