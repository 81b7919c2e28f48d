from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from ybkit.poly import Poly, poly_sum

NV = 3
coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=5)
monomials = st.tuples(*[st.integers(0, 2)] * NV)
polys = st.dictionaries(monomials, coeffs, max_size=5).map(lambda t: Poly(NV, t))
points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=NV, max_size=NV)


@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(p, q, x):
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p - q).evaluate(x) == p.evaluate(x) - q.evaluate(x)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


def test_zero_terms_are_dropped():
    p = Poly(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
    assert p.terms == {(0, 1): 2}
    x = Poly.var(2, 0)
    assert (x + x.scale(-1)).is_zero()
    assert not Poly(2)


def test_degree_and_format():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    p = x * x * y - y.scale(3) + Poly.const(2, 1)
    assert p.degree() == 3
    assert p.format(["x", "y"]) == "x^2*y - 3*y + 1"
    assert Poly(2).format() == "0"
    assert Poly(2).degree() == -1


def test_poly_sum_and_constant_equality():
    x = Poly.var(1, 0)
    assert poly_sum([x, x, x], 1) == x.scale(3)
    assert Poly.const(1, 4) == 4
