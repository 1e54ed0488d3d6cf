from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unipinv.automorphism import (UnipotentAffineMap, apply, compose, delta, identity_map, inverse,
                                  is_invariant, make_affine_jordan, make_graded_jordan, power)
from unipinv.errors import DomainError
from unipinv.invariants import graded_generator, u_generator, v_generator
from unipinv.poly import Polynomial, parse


def x(n, i):
    return Polynomial.var(n, i)


@st.composite
def polys(draw, n=3):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, 3)) for _ in range(n))
        terms[e] = draw(st.integers(-5, 5))
    return Polynomial(n, terms)


def test_affine_jordan_images():
    s = make_affine_jordan(2)
    assert apply(s, x(2, 1)) == x(2, 1) - 1
    assert apply(s, x(2, 2)) == x(2, 2) + x(2, 1)
    assert apply(make_affine_jordan(3), x(3, 3)) == x(3, 3) + x(3, 2)


def test_graded_jordan_images():
    g = make_graded_jordan(3)
    assert apply(g, x(3, 1)) == x(3, 1)
    assert apply(g, x(3, 1) ** 2) == x(3, 1) ** 2
    assert apply(g, x(3, 2) ** 2) == parse("x2^2 + 2*x1*x2 + x1^2", 3)


@pytest.mark.parametrize("bad", [1, 0])
def test_constructor_ranges(bad):
    with pytest.raises(DomainError):
        make_affine_jordan(bad)
    with pytest.raises(DomainError):
        make_graded_jordan(bad)


def test_rejects_non_unipotent():
    with pytest.raises(DomainError):
        UnipotentAffineMap(2, ((2, 0), (0, 1)), (0, 0))
    with pytest.raises(DomainError):
        UnipotentAffineMap(2, ((1, 1), (0, 1)), (0, 0))


def test_apply_examples():
    assert apply(make_affine_jordan(2), u_generator(2, 1)) == u_generator(2, 1)
    assert apply(make_affine_jordan(3), v_generator(3, 1)) == v_generator(3, 1)
    assert apply(make_affine_jordan(3), Polynomial.constant(3, 5)) == Polynomial.constant(3, 5)


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        apply(make_affine_jordan(2), x(3, 1))


def test_inverse_of_affine_n2():
    inv = inverse(make_affine_jordan(2))
    assert apply(inv, x(2, 1)) == x(2, 1) + 1
    assert apply(inv, x(2, 2)) == x(2, 2) - x(2, 1) - 1


def test_inverse_examples():
    s = make_affine_jordan(3)
    assert apply(inverse(s), apply(s, x(3, 3))) == x(3, 3)
    assert apply(inverse(make_graded_jordan(4)), x(4, 1)) == x(4, 1)


@given(polys())
@settings(max_examples=40)
def test_inverse_round_trip(p):
    s = make_affine_jordan(3)
    assert apply(s, apply(inverse(s), p)) == p
    assert apply(inverse(s), apply(s, p)) == p


def test_compose_and_power():
    s = make_affine_jordan(3)
    assert compose(s, inverse(s)) == identity_map(3)
    p = parse("x3^2 + x1*x2", 3)
    assert apply(power(s, 3), p) == apply(s, apply(s, apply(s, p)))
    assert apply(power(s, -2), p) == apply(inverse(s), apply(inverse(s), p))


def test_delta_examples():
    s = make_affine_jordan(4)
    assert delta(s, x(4, 1)) == Polynomial.one(4)
    assert delta(s, x(4, 1) ** 2) == x(4, 1) * 2 - 1
    for i in range(2, 5):
        xi, xp = x(4, i), x(4, i - 1)
        assert delta(s, xi ** 2) == -xp * xi * 2 - xp ** 2


@given(polys(), polys())
@settings(max_examples=40)
def test_twisted_leibniz(f, g):
    s = make_affine_jordan(3)
    assert delta(s, f * g) == delta(s, f) * g + apply(s, f) * delta(s, g)


@given(polys())
@settings(max_examples=40)
def test_filtration_and_grading_preserved(p):
    assert apply(make_affine_jordan(3), p).degree == p.degree
    g = make_graded_jordan(3)
    for d, comp in p.components().items():
        image = apply(g, comp)
        assert image.is_zero or (image.is_homogeneous() and image.degree == d)


def test_initial_segments_preserved():
    s = make_affine_jordan(5)
    for m in range(1, 6):
        for i in range(1, m + 1):
            assert max(apply(s, x(5, i)).used_variables()) <= m


def test_is_invariant_examples():
    assert is_invariant(make_affine_jordan(4), u_generator(4, 2))
    assert not is_invariant(make_affine_jordan(2), x(2, 2))
    assert delta(make_affine_jordan(2), x(2, 2)) == -x(2, 1)
    assert is_invariant(make_graded_jordan(4), graded_generator("q", 3, 1))


def test_invariants_closed_under_ring_operations():
    s = make_affine_jordan(5)
    a, b = u_generator(5, 2), v_generator(5, 1)
    assert is_invariant(s, a + b) and is_invariant(s, a * b) and is_invariant(s, a ** 2 - b * 3)


def test_json_round_trip():
    s = make_affine_jordan(3)
    data = s.to_json()
    assert '"translation": ["-1", "0", "0"]' in data
    assert UnipotentAffineMap.from_json(data) == s
    odd = UnipotentAffineMap(2, ((1, 0), (Fraction(1, 2), 1)), (Fraction(-3, 4), 0))
    assert UnipotentAffineMap.from_json(odd.to_json()) == odd
