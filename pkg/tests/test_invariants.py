from fractions import Fraction

import pytest

from unipinv.automorphism import is_invariant, make_affine_jordan, make_graded_jordan
from unipinv.errors import DomainError
from unipinv.invariants import (KINDS, alpha_coeff, alpha_coeff_via_lambda, affine_generators, check_alpha_boundaries,
                                check_alpha_forms, check_top_coefficients, check_u_system, check_v_system,
                                coeff_table, f_double_sum, f_generator, graded_generator, lambda_coeff,
                                multsum, named_generator, perturbed_coefficient, quadratic_delta_formula,
                                recurrence_check, recurrence_report, s_generator, special_generators,
                                t_generator, table_keys, tables_nonzero, theta, theta_tilde,
                                transcendence_basis, u_generator, u_recurrence, v_generator, v_recurrence,
                                w_expanded_form, w_generator, w_leading_formula, x_from_y, y_generator,
                                y_generators)
from unipinv.automorphism import delta
from unipinv.poly import Polynomial, parse


def test_coefficient_examples():
    assert coeff_table("lambda", 2)[(1, 3)] == -2
    assert coeff_table("mu", 2)[3] == -3
    assert coeff_table("alpha", 2)[(1, 4)] == -3
    assert coeff_table("alpha", 2)[(1, 3)] == -2
    assert coeff_table("lambda", 2).get(1, 3) == -2


def test_table_shapes():
    for k in range(2, 8):
        for kind in KINDS:
            t = coeff_table(kind, k)
            assert sorted(t, key=str) == sorted(table_keys(kind, k), key=str)
    with pytest.raises(DomainError):
        table_keys("gamma", 3)


def test_generator_examples():
    assert u_generator(2, 1) == parse("x1^2 + x1 + 2*x2", 2)
    assert u_generator(4, 2) == parse("x2^2 - x1*x2 - 2*x1*x3 - x2 - 3*x3 - 2*x4", 4)
    assert v_generator(3, 1) == parse("x1^3 + 3*x1*x2 - x1 + 3*x3", 3)
    expect = u_generator(5, 2) * parse("x1", 5) + parse("x2*x3 - 2*x1*x3 - 3*x1*x4 - 3*x3 - 8*x4 - 5*x5", 5)
    assert v_generator(5, 2) == expect


def test_y_examples():
    assert y_generator(2, 1) == parse("x2 + 1/2*x1^2 + 1/2*x1", 2)
    assert y_generator(3, 2) == parse("x3 + x1*x2 + 1/3*x1^3 - 1/3*x1", 3)
    assert u_generator(2, 1) == y_generator(2, 1) * 2


@pytest.mark.parametrize("n", range(2, 9))
def test_y_invariant_and_invertible(n):
    s = make_affine_jordan(n)
    ys = y_generators(n)
    assert all(is_invariant(s, y) for y in ys)
    assert [y.degree for y in ys] == list(range(2, n + 1))
    for i in range(1, n):
        assert x_from_y(n, i, ys) == Polynomial.var(n, i + 1)
        # x_{i+1} - y_{i+1} only involves x1..x_i
        assert max((x_from_y(n, i) - Polynomial.var(n, i + 1)).used_variables() or [0]) <= i


@pytest.mark.parametrize("n", range(2, 11))
def test_closed_forms_invariant(n):
    assert affine_generators(n).verify()


def test_range_errors():
    for bad in [(3, 2), (4, 0), (1, 1)]:
        with pytest.raises(DomainError):
            u_generator(*bad)
    for bad in [(4, 2), (2, 1)]:
        with pytest.raises(DomainError):
            v_generator(*bad)
    with pytest.raises(DomainError):
        y_generator(3, 3)
    with pytest.raises(DomainError):
        w_generator(4, 2)
    with pytest.raises(DomainError):
        graded_generator("p", 3, 2)
    with pytest.raises(DomainError):
        special_generators(5)


@pytest.mark.parametrize("k", range(1, 13))
def test_u_system(k):
    assert check_u_system(k)
    assert tables_nonzero(k)


@pytest.mark.parametrize("k", range(2, 13))
def test_v_system(k):
    assert check_v_system(k)
    assert check_alpha_boundaries(k)
    assert check_alpha_forms(k)


def test_alpha_forms_agree_pointwise():
    for k in range(2, 9):
        for i, j in table_keys("alpha", k):
            assert alpha_coeff(k, i, j) == alpha_coeff_via_lambda(k, i, j)
    assert lambda_coeff(2, 1, 2) == -1


def test_quadratic_formula_matches_delta():
    n = 5
    lam = {(i, j): Fraction(3 * i - j, 1 + i) for i in range(1, n + 1) for j in range(i, n + 1)}
    mu = {j: Fraction(j * j - 4) for j in range(1, n + 1)}
    u = Polynomial.zero(n)
    for (i, j), c in lam.items():
        u = u + Polynomial.var(n, i) * Polynomial.var(n, j) * c
    for j, c in mu.items():
        u = u + Polynomial.var(n, j) * c
    assert quadratic_delta_formula(lam, mu, n) == delta(make_affine_jordan(n), u)


@pytest.mark.parametrize("n", range(2, 11))
def test_top_coefficients(n):
    assert check_top_coefficients(n)


def test_graded_generator_examples():
    assert graded_generator("p", 2, 1) == parse("x2^2 - x1*x2 - 2*x1*x3", 3)
    assert graded_generator("q", 3, 1) == parse("-x2^3 + 3*x1*x2*x3 + x1^2*x2 - 3*x1^2*x4", 4)
    assert graded_generator("p", 4, 2) == parse(
        "x3^2 - x2*x3 - 2*x2*x4 + x1*x3 + 3*x1*x4 + 2*x1*x5", 5)


def test_q1_with_extra_cube_is_not_the_cleared_generator():
    q1 = graded_generator("q", 3, 1)
    alt = q1 + parse("x1^3", 4)
    # both are invariant, but only the cleared form is x1^3 v1(z)
    assert is_invariant(make_graded_jordan(4), alt)
    assert alt != q1


def test_theta_expansions():
    z = lambda i, n: Polynomial.var(n, i)  # noqa: E731
    z1, z2, z3 = (z(i, 3) for i in (1, 2, 3))
    shown = (-z1 ** 2 * (z2 ** 2 - z1 * (z2 + z3 * 2)) * 3 + z1 * (z1 + z2 * 2) * z3 * 9 - z2 ** 3 * 8
             + z1 * z2 * (z1 * 5 + z2 * 6) + z3 ** 2 * 9 + (z1 + z2 * 6) * z3 * 3 + z2 ** 2 * 8 + z1 * z2 * 2)
    assert theta(3) == shown
    z1, z2, z3, z4 = (z(i, 4) for i in (1, 2, 3, 4))
    shown = (-z1 ** 2 * z4 * 6 + z1 * (z2 - z1) * z3 * 6 - z2 ** 3 * 2 + z1 * z2 * (z2 * 3 - z1)
             - (z1 + z2 * 2) * z4 * 6 + z3 ** 2 * 9 - z1 * z3 * 6 + z2 ** 2 * 2 - z1 * z2)
    assert theta_tilde(4) == shown
    assert theta(3).degree == 4 and theta_tilde(4).degree == 3


def test_s_expansion():
    x = lambda i: Polynomial.var(4, i)  # noqa: E731
    x1, x2, x3, x4 = x(1), x(2), x(3), x(4)
    shown = (-x2 ** 2 * (x3 ** 2 - x2 * (x3 + x4 * 2)) * 3 - x1 * x2 * (x2 + x3 * 2) * x4 * 9
             + x1 * x3 ** 3 * 8 - x1 * x2 * x3 * (x2 * 5 + x3 * 6) + x1 ** 2 * x4 ** 2 * 9
             + x1 ** 2 * (x2 + x3 * 6) * x4 * 3 + x1 ** 2 * x3 ** 2 * 8 + x1 ** 2 * x2 * x3 * 2)
    assert s_generator() == shown


def test_u2_through_u1_v1_y4():
    n = 4
    u1, v1 = u_generator(n, 1), v_generator(n, 1)
    assert u_generator(n, 2) == u1 ** 2 / 4 - u1 / 2 - v1 - y_generator(n, 3) * 2


@pytest.mark.parametrize("n", range(1, 5))
def test_special_generators(n):
    g = special_generators(n)
    assert g.verify()
    expected = {1: ["x1"], 2: ["x1", "p1"], 3: ["x1", "p1", "q1", "s"], 4: ["x1", "p1", "q1", "p2", "t"]}[n]
    assert g.names() == expected
    assert [m.degree for m in g] == [{"x1": 1, "p1": 2, "q1": 3, "s": 4, "p2": 2, "t": 3}[k] for k in expected]


def test_transcendence_basis():
    for n in range(2, 8):
        tb = transcendence_basis(n)
        assert tb.verify()
        assert len(tb) == n


def test_t_generator_is_invariant():
    assert is_invariant(make_graded_jordan(5), t_generator())
    assert t_generator().is_homogeneous() and t_generator().degree == 3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_f_generators(n):
    g = make_graded_jordan(n + 1)
    for i in range(1, n):
        f = f_generator(n, i)
        assert f == f_double_sum(n, i)
        assert f.is_homogeneous() and f.degree == i + 1
        assert is_invariant(g, f)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_w_generators(n):
    s = make_affine_jordan(n)
    for k in range(2, (n - 1) // 2 + 1):
        w = w_generator(n, k)
        assert is_invariant(s, w)
        assert w.degree == 5
        assert w == w_expanded_form(n, k)
        assert w.leading_form() == w_leading_formula(n, k)


def test_named_generator():
    assert named_generator("affine", 4, "u2").poly == u_generator(4, 2)
    assert named_generator("affine", 3, "y3").poly == y_generator(3, 2)
    assert named_generator("graded", 3, "s").poly == s_generator()
    assert named_generator("graded", 3, "q1").degree == 3
    with pytest.raises(DomainError):
        named_generator("affine", 4, "zz")
    with pytest.raises(DomainError):
        named_generator("graded", 4, "s")
    with pytest.raises(DomainError):
        named_generator("other", 4, "u1")


@pytest.mark.parametrize("k", range(2, 9))
def test_lambda_recurrence(k):
    table = coeff_table("lambda", k)
    spec = u_recurrence(k)
    for c in range(0, min(5, k - 2) + 1):
        assert recurrence_check(spec, table, c)


def test_u4_example_and_window():
    table = coeff_table("lambda", 4)
    for c in range(3):
        assert recurrence_check(u_recurrence(4), table, c)
    with pytest.raises(DomainError):
        recurrence_check(u_recurrence(4), table, 3)


@pytest.mark.parametrize("k", range(2, 10))
def test_alpha_recurrence(k):
    spec = v_recurrence(k)
    table = coeff_table("alpha", k)
    for c in range(0, min(5, k - 1) + 1):
        report = recurrence_report(spec, table, c)
        assert set(report) == {"hypothesis", "expanded", "geometric", "binomial"}
        assert all(report.values())


def test_recurrence_detects_corruption():
    with perturbed_coefficient("lambda", 6, (2, 7)):
        assert not recurrence_check(u_recurrence(6), coeff_table("lambda", 6), 1)
    assert recurrence_check(u_recurrence(6), coeff_table("lambda", 6), 1)


def test_multsum():
    assert multsum(3, 2) == 3
    assert multsum(4, 0) == 1
    for c in range(11):
        for k in range(c + 1):
            from math import comb
            assert multsum(c, k) == comb(c, k)
    assert multsum(3, 1, [2]) == 1 + 2 + 4
    with pytest.raises(DomainError):
        multsum(3, 2, [1])


def test_perturbation_breaks_closed_forms():
    with perturbed_coefficient("mu", 3, 4):
        assert not check_u_system(3)
        assert not is_invariant(make_affine_jordan(6), u_generator(6, 3))
    assert check_u_system(3)
