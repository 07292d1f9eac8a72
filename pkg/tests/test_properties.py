"""Randomized algebraic properties of the expression kernel.

Polynomial expressions are canonical as data, so ring axioms can be
asserted structurally; quotients are only canonical up to common
factors and are compared by value.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from bbmkdv.expr import as_expr, dep, indep, param
from bbmkdv.numeric import eval_rational
from bbmkdv.parse import parse

A = param("a")
T, X = indep("t"), indep("x")
U, V = dep("u"), dep("v")

SYMBOLS = tuple(as_expr(g) for g in (A, T, X, U, V))

rationals = st.fractions(min_value=Fraction(-4), max_value=Fraction(4),
                         max_denominator=5)

leaves = st.one_of(rationals.map(as_expr), st.sampled_from(SYMBOLS))


def _combine(children):
    pairs = st.tuples(children, children)
    return st.one_of(pairs.map(lambda p: p[0] + p[1]),
                     pairs.map(lambda p: p[0] - p[1]),
                     pairs.map(lambda p: p[0] * p[1]))


# division-free: sums and products of canonical polynomials stay canonical
polys = st.recursive(leaves, _combine, max_leaves=8)

relaxed = settings(deadline=None, max_examples=100)


class TestRingAxioms:
    @relaxed
    @given(polys, polys)
    def test_addition_commutes(self, p, q):
        assert p + q == q + p

    @relaxed
    @given(polys, polys)
    def test_multiplication_commutes(self, p, q):
        assert p * q == q * p

    @relaxed
    @given(polys, polys, polys)
    def test_addition_associates(self, p, q, r):
        assert (p + q) + r == p + (q + r)

    @relaxed
    @given(polys, polys, polys)
    def test_multiplication_associates(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    @relaxed
    @given(polys, polys, polys)
    def test_distributivity(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @relaxed
    @given(polys)
    def test_subtraction_cancels(self, p):
        assert (p - p).is_zero()
        assert p + 0 == p and p * 1 == p

    @relaxed
    @given(polys)
    def test_power_is_repeated_product(self, p):
        assert p ** 3 == p * p * p


class TestDisplay:
    @relaxed
    @given(polys)
    def test_polynomial_roundtrip(self, p):
        assert parse(str(p)) == p

    @relaxed
    @given(polys, polys)
    def test_quotient_roundtrip_by_value(self, p, q):
        e = p / (q * q + 1)
        assert (parse(str(e)) - e).is_zero()

    @relaxed
    @given(polys)
    def test_zero_test_matches_display(self, p):
        assert p.is_zero() == (str(p) == "0")


class TestCalculus:
    @relaxed
    @given(polys, polys)
    def test_differentiation_is_linear(self, p, q):
        assert (p + q).diff(U) == p.diff(U) + q.diff(U)

    @relaxed
    @given(polys, polys)
    def test_leibniz_rule(self, p, q):
        assert (p * q).diff(U) == p.diff(U) * q + p * q.diff(U)

    @relaxed
    @given(polys, polys)
    def test_partials_commute(self, p, q):
        e = p * q
        assert e.diff(U).diff(V) == e.diff(V).diff(U)


class TestEvaluation:
    @relaxed
    @given(polys, polys, st.tuples(*(rationals for _ in SYMBOLS)))
    def test_evaluation_is_a_homomorphism(self, p, q, vals):
        point = dict(zip((A, T, X, U, V), vals))
        assert (eval_rational(p + q, point)
                == eval_rational(p, point) + eval_rational(q, point))
        assert (eval_rational(p * q, point)
                == eval_rational(p, point) * eval_rational(q, point))
