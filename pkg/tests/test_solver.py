from fractions import Fraction
from math import comb

import pytest

from unipinv.automorphism import identity_map, make_affine_jordan, make_graded_jordan
from unipinv.errors import DomainError
from unipinv.invariants import graded_generator, u_generator, v_generator
from unipinv.poly import Polynomial, parse
from unipinv.solver import (GRADED, build_system, dimension_table, in_span, linearly_independent,
                            monomial_basis, nullspace, rank, rref, same_span, solve_filtered, solve_graded)


def test_affine_quadratic_example():
    basis = solve_filtered(make_affine_jordan(4), 2)
    assert basis.dimension == 3
    assert basis.spans_same([Polynomial.one(4), u_generator(4, 1), u_generator(4, 2)])


def test_affine_linear_example():
    basis = solve_filtered(make_affine_jordan(5), 1)
    assert basis.dimension == 1 and basis.spans_same([Polynomial.one(5)])


def test_cubic_contains_v1():
    basis = solve_filtered(make_affine_jordan(3), 3)
    assert basis.contains(v_generator(3, 1))
    assert not basis.contains(parse("x2", 3))


def test_graded_examples():
    b = solve_graded(make_graded_jordan(3), 2)
    x1 = Polynomial.var(3, 1)
    assert b.dimension == 2 and b.spans_same([x1 ** 2, graded_generator("p", 2, 1)])
    assert solve_graded(make_graded_jordan(4), 1).spans_same([Polynomial.var(4, 1)])
    assert dimension_table(make_graded_jordan(4), 4, GRADED) == [1, 1, 2, 3, 5]
    assert dimension_table(make_affine_jordan(4), 2) == [1, 1, 3]
    assert dimension_table(make_graded_jordan(2), 6, GRADED) == [1] * 7


def test_graded_needs_linear_map():
    with pytest.raises(DomainError):
        solve_graded(make_affine_jordan(3), 2)


def test_bad_arguments():
    with pytest.raises(DomainError):
        solve_filtered(make_affine_jordan(3), -1)
    with pytest.raises(DomainError):
        monomial_basis(3, 2, "weird")
    with pytest.raises(DomainError):
        dimension_table(make_affine_jordan(3), 2, "weird")


@pytest.mark.parametrize("n,d", [(1, 3), (2, 3), (3, 2), (4, 2)])
def test_identity_map_fixes_everything(n, d):
    assert solve_filtered(identity_map(n), d).dimension == comb(n + d, d)
    assert solve_graded(identity_map(n), d).dimension == comb(n + d - 1, d)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_filtered_dimensions_monotone(n):
    dims = dimension_table(make_affine_jordan(n), 3)
    assert dims == sorted(dims) and dims[0] == 1


def test_kernel_vectors_are_invariant():
    m = make_affine_jordan(4)
    for p in solve_filtered(m, 3):
        assert p.substitute(m.images) == p


def test_system_shape():
    sys_ = build_system(make_affine_jordan(2), 2)
    assert sys_.size == 6
    dense = sys_.dense()
    assert len(dense) == 6 and all(len(r) == 6 for r in dense)
    assert len(nullspace(sys_)) == 2


def test_thread_determinism():
    m = make_affine_jordan(5)
    a = solve_filtered(m, 3, threads=1).basis
    b = solve_filtered(m, 3, threads=4).basis
    assert a == b


def test_rref_is_canonical():
    rows = [{0: Fraction(2), 1: Fraction(4)}, {1: Fraction(3), 2: Fraction(1)}]
    mixed = [{0: Fraction(2), 1: Fraction(7), 2: Fraction(1)}, {1: Fraction(-6), 2: Fraction(-2)}]
    assert rref(rows) == rref(mixed)
    assert all(row[pc] == 1 for pc, row in rref(rows))


def test_span_helpers():
    x, y = parse("x1", 2), parse("x2", 2)
    assert rank([x, y, x + y]) == 2
    assert in_span(x * 3 - y, [x, y]) and not in_span(x * y, [x, y])
    assert same_span([x, y], [x + y, x - y])
    assert linearly_independent([x, y]) and not linearly_independent([x, x * 2])
