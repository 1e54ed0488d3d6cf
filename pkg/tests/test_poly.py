from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unipinv.errors import DomainError, PolynomialSyntaxError
from unipinv.invariants import theta, u_generator, v_generator
from unipinv.poly import (NEG_INF, LaurentPolynomial, Polynomial, exponent_tuples,
                          jacobian_independent, parse)


def x(n, i):
    return Polynomial.var(n, i)


@st.composite
def polys(draw, n=3, max_terms=5, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        num = draw(st.integers(-6, 6))
        den = draw(st.integers(1, 4))
        terms[e] = Fraction(num, den)
    return Polynomial(n, terms)


class TestParse:
    def test_u1_text(self):
        p = parse("x1^2 + x1 + 2*x2", 2)
        assert len(p) == 3
        assert p == x(2, 1) ** 2 + x(2, 1) + x(2, 2) * 2

    def test_zero(self):
        p = parse("0", 5)
        assert p.is_zero and p.variable_count == 5

    def test_parenthesized_power(self):
        assert parse("(x1+x2)^2", 2) == parse("x1^2 + 2*x1*x2 + x2^2", 2)

    def test_rational_coefficients_and_unary_minus(self):
        p = parse("-3/4*x1*x2^2 - x3 + 1/2", 3)
        assert p.coefficient((1, 2, 0)) == Fraction(-3, 4)
        assert p.constant_term() == Fraction(1, 2)

    def test_custom_names(self):
        p = parse("T2*T3 + X1", 3, names=["X1", "T2", "T3"])
        assert p == x(3, 2) * x(3, 3) + x(3, 1)

    @pytest.mark.parametrize("text, pos", [("x1 + * x2", 5), ("x1^", 3), ("(x1", 3), ("x1 $ x2", 3)])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(PolynomialSyntaxError) as info:
            parse(text, 2)
        assert info.value.position == pos

    def test_unknown_variable(self):
        with pytest.raises(PolynomialSyntaxError):
            parse("x3", 2)
        with pytest.raises(PolynomialSyntaxError):
            parse("y1", 2)

    @given(polys())
    def test_parse_print_round_trip(self, p):
        assert parse(p.to_text(), 3) == p


class TestPrinting:
    def test_canonical_order(self):
        assert parse("2*x2 + x1 + x1^2", 2).to_text() == "x1^2 + x1 + 2*x2"
        assert parse("x3*x1 + x2^2", 3).to_text() == "x1*x3 + x2^2"

    def test_signs_and_fractions(self):
        assert parse("-2*x1*x3", 3).to_text() == "-2*x1*x3"
        assert (x(1, 1) ** 2 / 2).to_text() == "1/2*x1^2"
        assert Polynomial.zero(2).to_text() == "0"
        assert Polynomial.constant(2, Fraction(-5, 3)).to_text() == "-5/3"


class TestArithmetic:
    def test_examples(self):
        x1 = x(1, 1)
        assert (x1 - 1) * x1 == x1 ** 2 - x1
        u1 = u_generator(2, 1)
        assert u1 * 1 == u1
        assert x1 * (x1 - 1) * Fraction(1, 2) == (x1 ** 2 - x1) / 2

    def test_mismatched_variable_counts(self):
        with pytest.raises(DomainError):
            x(2, 1) + x(3, 1)
        with pytest.raises(DomainError):
            x(2, 1) * x(3, 1)

    def test_negative_power(self):
        with pytest.raises((DomainError, ValueError)):
            x(2, 1) ** -1

    @given(polys(), polys(), polys())
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == Polynomial.zero(3)

    @given(polys(), polys())
    @settings(max_examples=60)
    def test_degree_additive(self, a, b):
        if not a.is_zero and not b.is_zero:
            assert (a * b).degree == a.degree + b.degree

    def test_zero_degree_sentinel(self):
        z = Polynomial.zero(2)
        assert z.degree is NEG_INF
        assert NEG_INF < -10 ** 9
        assert NEG_INF != -1
        assert z.degree + 3 is NEG_INF


class TestStructure:
    def test_substitute_examples(self):
        x1, x2 = x(2, 1), x(2, 2)
        assert (x1 + x2).substitute([x1, x2 + x1]) == x1 * 2 + x2
        u1 = u_generator(2, 1)
        assert u1.substitute([x1 - 1, x2 + x1]) == u1
        y = x(1, 1)
        assert (x2 ** 2).substitute([Polynomial.zero(1), y]) == y ** 2

    def test_substitute_length_mismatch(self):
        with pytest.raises(DomainError):
            x(2, 1).substitute([x(2, 1)])

    @given(polys(), polys())
    @settings(max_examples=40)
    def test_substitute_is_homomorphism(self, a, b):
        imgs = [x(3, 1) + x(3, 2), x(3, 3) * 2 - 1, x(3, 1) * x(3, 2)]
        assert (a * b).substitute(imgs) == a.substitute(imgs) * b.substitute(imgs)
        assert (a + b).substitute(imgs) == a.substitute(imgs) + b.substitute(imgs)

    def test_graded_components(self):
        u2 = u_generator(4, 2)
        assert u2.graded_component(2) == parse("x2^2 - x1*x2 - 2*x1*x3", 4)
        assert u2.graded_component(1) == parse("-x2 - 3*x3 - 2*x4", 4)
        assert Polynomial.zero(3).graded_component(3).is_zero

    @given(polys())
    def test_components_sum_back(self, p):
        comps = p.components()
        assert sum(comps.values(), Polynomial.zero(3)) == p
        assert all(c.is_homogeneous() and c.degree == d for d, c in comps.items())

    def test_leading_forms(self):
        assert u_generator(2, 1).leading_form() == x(2, 1) ** 2
        # only x1^3 has degree 3 in v1 = x1^3 + 3 x1 x2 - x1 + 3 x3
        assert v_generator(3, 1).leading_form() == x(3, 1) ** 3
        assert u_generator(4, 2).leading_form() == parse("x2^2 - x1*x2 - 2*x1*x3", 4)
        with pytest.raises(DomainError):
            Polynomial.zero(2).leading_form()

    def test_exponent_tuples_order(self):
        assert exponent_tuples(2, 2) == [(2, 0), (1, 1), (0, 2)]
        assert len(exponent_tuples(4, 3)) == 20


class TestJacobian:
    def test_examples(self):
        assert jacobian_independent([x(2, 1), x(2, 2)])
        assert not jacobian_independent([x(2, 1) ** 2, x(2, 1) ** 3])
        lead = [u_generator(3, 1).leading_form(), theta(3).leading_form()]
        assert jacobian_independent(lead)

    def test_too_many_polynomials(self):
        with pytest.warns(UserWarning):
            assert not jacobian_independent([x(2, 1), x(2, 2), x(2, 1) + x(2, 2)])

    def test_empty(self):
        with pytest.raises(DomainError):
            jacobian_independent([])

    def test_invariant_under_recombination(self):
        a, b = u_generator(4, 1), u_generator(4, 2)
        assert jacobian_independent([a, b]) == jacobian_independent([a + b * 3, b - a])
        assert jacobian_independent([a, a * 2]) is False


class TestLaurent:
    def test_multiplication_and_inverse_power(self):
        n = 3
        x1 = LaurentPolynomial.x1_power(n, 1)
        p = LaurentPolynomial.from_polynomial(parse("x2^2 - x1*x2", n))
        q = p * x1 ** -2
        assert q.min_x1_exponent() == -2
        assert (q * x1 ** 2).to_polynomial() == parse("x2^2 - x1*x2", n)

    def test_to_polynomial_rejects_negative_powers(self):
        with pytest.raises(DomainError):
            LaurentPolynomial.x1_power(2, -1).to_polynomial()

    def test_only_x1_monomials_invert(self):
        with pytest.raises(DomainError):
            LaurentPolynomial.from_polynomial(x(2, 2)) ** -1
