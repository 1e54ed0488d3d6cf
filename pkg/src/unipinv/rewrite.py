"""Rewriting invariants in the free generators, and the graded case through x1-localization.

Affine case: each ``x_j`` (j >= 2) occurs linearly in exactly one generator
g_j (u_{j/2} or v_{(j-1)/2}), whose other terms only involve lower
variables.  Solving g_j = T_j for x_j, from the top variable down,
expresses any polynomial in x1 and the symbols T_2..T_n; invariants come
out free of x1.

Graded case: a homogeneous f of degree d in x1..x_{n+1} equals
``(-x1)**d * f(-1, z)`` with z_i = -x_{i+1}/x1.  The z-part is an affine
invariant, u_k(z) = p_k / x1**2 and v_k(z) = q_k / x1**3.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .automorphism import is_invariant, make_affine_jordan, make_graded_jordan
from .errors import DomainError
from .invariants import (f_generator, graded_generator, perturbation_state, special_generators,
                         u_generator, v_generator, y_generator)
from .poly import LaurentPolynomial, Polynomial, evaluate


@dataclass(frozen=True)
class RewriteResult:
    """``expression`` in the symbols ``names``; see :func:`symbol_names`.

    ``residual_x1_degree`` is the degree of the expression in its first
    symbol (X1); it is 0 exactly when the input was invariant.  For graded
    rewrites the expression is a :class:`LaurentPolynomial`.
    """

    expression: object
    residual_x1_degree: int
    names: tuple

    def to_text(self) -> str:
        return self.expression.to_text(list(self.names))

    def to_json(self) -> dict:
        return {"expression": self.to_text(), "residual_x1_degree": self.residual_x1_degree}


def symbol_names(n: int) -> tuple[str, ...]:
    """``("X1", "T2", ..., "Tn")``."""
    return ("X1",) + tuple(f"T{j}" for j in range(2, n + 1))


def generator_for(n: int, j: int) -> Polynomial:
    """The generator attached to x_j: u_{j/2} for even j, v_{(j-1)/2} for odd j."""
    if not 2 <= j <= n:
        raise DomainError(f"no generator attached to x{j} when n={n}")
    return u_generator(n, j // 2) if j % 2 == 0 else v_generator(n, (j - 1) // 2)


def generators(n: int) -> list[Polynomial]:
    """``[x1, g_2, ..., g_n]``: the images of X1, T2..Tn."""
    return [Polynomial.var(n, 1)] + [generator_for(n, j) for j in range(2, n + 1)]


def _inverse_images(n: int) -> tuple:
    """x_j written in X1, T2..Tn (polynomials in n variables, symbol layout)."""
    return _inverse_images_cached(n, perturbation_state())


@lru_cache(maxsize=64)
def _inverse_images_cached(n: int, state: frozenset) -> tuple:
    out = [Polynomial.var(n, 1)]
    for j in range(2, n + 1):
        g = generator_for(n, j)
        e = [0] * n
        e[j - 1] = 1
        c = g.coefficient(e)
        rest = g - Polynomial.monomial(e, c)
        if j in rest.used_variables() or max(rest.used_variables(), default=1) > j:
            raise AssertionError(f"generator for x{j} is not triangular")
        # rest only involves x1..x_{j-1}; substitute the images found so far
        lowered = evaluate(_truncate(rest, j - 1), out, Polynomial.one(n))
        out.append((Polynomial.var(n, j) - lowered) / c)
    return tuple(out)


def _truncate(p: Polynomial, k: int) -> Polynomial:
    """View p (which only uses x1..xk) as a polynomial in k variables."""
    return Polynomial(k, {e[:k]: c for e, c in p.terms.items()})


def expand(expr: Polynomial, n: int) -> Polynomial:
    """Substitute X1 -> x1 and T_j -> g_j."""
    if expr.variable_count != n:
        raise DomainError("expression and n disagree on the number of symbols")
    return evaluate(expr, generators(n), Polynomial.one(n))


def rewrite_affine(f: Polynomial, n: int) -> RewriteResult:
    """Express f in X1 and the free generators T2..Tn."""
    if n < 2:
        raise DomainError("rewriting needs n >= 2")
    if f.variable_count != n:
        raise DomainError(f"polynomial has {f.variable_count} variables, expected {n}")
    expr = evaluate(f, list(_inverse_images(n)), Polynomial.one(n))
    resid = expr.degree_in(1) if not expr.is_zero else 0
    return RewriteResult(expr, resid, symbol_names(n))


# ---------------------------------------------------------------------------
# graded case


def dehomogenize_parts(f: Polynomial) -> tuple[Polynomial, int]:
    """``(g, d)`` with f = (-x1)**d * g(z) and g = f(-1, z_1, ..., z_n)."""
    if f.is_zero:
        raise DomainError("cannot dehomogenize the zero polynomial")
    if not f.is_homogeneous():
        raise DomainError("dehomogenize needs a homogeneous polynomial")
    d = f.degree
    n = f.variable_count - 1
    if n < 1:
        raise DomainError("need at least two variables")
    terms = {}
    for e, c in f.terms.items():
        terms[e[1:]] = terms.get(e[1:], 0) + c * (-1) ** e[0]
    return Polynomial(n, terms), d


def dehomogenize(f: Polynomial) -> LaurentPolynomial:
    """f as an element of K[x1, 1/x1, z_1..z_n], stored in the slots (x1, z1, ..., zn)."""
    g, d = dehomogenize_parts(f)
    lifted = Polynomial(g.variable_count + 1, {(0,) + e: c for e, c in g.terms.items()})
    return LaurentPolynomial.from_polynomial(lifted, d) * (-1) ** d


def rehomogenize(g: Polynomial, d: int) -> Polynomial:
    """Inverse of :func:`dehomogenize_parts`: (-x1)**d g(-x2/x1, ..., -x_{n+1}/x1)."""
    terms = {}
    for e, c in g.terms.items():
        s = sum(e)
        if s > d:
            raise DomainError(f"z-degree {s} exceeds the target degree {d}")
        terms[(d - s,) + e] = c * (-1) ** d * (-1) ** s
    return Polynomial(g.variable_count + 1, terms)


def graded_symbol_names(n: int) -> tuple[str, ...]:
    m, mu = n // 2, (n - 1) // 2
    return ("X1",) + tuple(f"P{k}" for k in range(1, m + 1)) + tuple(f"Q{k}" for k in range(1, mu + 1))


def graded_symbol_images(n: int) -> list[Polynomial]:
    """Images of X1, P_k, Q_k in n+1 variables."""
    N = n + 1
    m, mu = n // 2, (n - 1) // 2
    return ([Polynomial.var(N, 1)] + [graded_generator("p", n, k) for k in range(1, m + 1)]
            + [graded_generator("q", n, k) for k in range(1, mu + 1)])


def rewrite_graded(f: Polynomial, check: bool = True) -> RewriteResult:
    """Express a homogeneous invariant of the graded map in X1^{+-1}, P_k, Q_k."""
    N = f.variable_count
    n = N - 1
    if n < 2:
        raise DomainError("graded rewriting needs at least 3 variables")
    if check and not is_invariant(make_graded_jordan(N), f):
        raise DomainError("input is not invariant under the graded map")
    if f.is_zero:
        return RewriteResult(LaurentPolynomial(n), 0, graded_symbol_names(n))
    g, d = dehomogenize_parts(f)
    affine = rewrite_affine(g, n)
    if affine.residual_x1_degree != 0:
        raise AssertionError("z-part of a graded invariant is not an affine invariant")
    m = n // 2
    sign = (-1) ** d
    terms = {}
    for e, c in affine.expression.terms.items():
        # T_{2k} -> P_k x1^-2, T_{2k+1} -> Q_k x1^-3
        ps = [e[2 * k - 1] for k in range(1, m + 1)]
        qs = [e[2 * k] for k in range(1, (n - 1) // 2 + 1)]
        shift = d - 2 * sum(ps) - 3 * sum(qs)
        key = (shift,) + tuple(ps) + tuple(qs)
        terms[key] = terms.get(key, 0) + sign * c
    expr = LaurentPolynomial(n, terms)
    return RewriteResult(expr, 0, graded_symbol_names(n))


def expand_graded(expr: LaurentPolynomial, n: int) -> LaurentPolynomial:
    """Back-substitute X1, P_k, Q_k; the result lives in K[x1, 1/x1, x2..x_{n+1}]."""
    N = n + 1
    images = [LaurentPolynomial.from_polynomial(p) for p in graded_symbol_images(n)]
    total = LaurentPolynomial(N)
    for e, c in expr.terms.items():
        term = LaurentPolynomial.x1_power(N, e[0]) * c
        for img, k in zip(images[1:], e[1:]):
            if k:
                term = term * img ** k
        total = total + term
    return total


# ---------------------------------------------------------------------------
# relations and graded bases

RELATION_TEXT = {
    3: "x1^2*s = q1^2 + 3*x1*p1*q1 - p1^3 + 2*x1^2*p1^2",
    4: "x1^3*t = q1^2 - p1^3 + 3*x1*p1*q1 + 2*x1^2*p1^2 + 3*x1^2*p1*p2",
}


def relation_sides(n: int, overrides: Mapping[str, Polynomial] | None = None) -> tuple[Polynomial, Polynomial]:
    """Both sides of the defining relation for n = 3 or 4, fully expanded."""
    if n not in RELATION_TEXT:
        raise DomainError("defining relations are only known for n = 3 and n = 4")
    gens = {g.name: g.poly for g in special_generators(n)}
    gens.update(overrides or {})
    x1, p1, q1 = gens["x1"], gens["p1"], gens["q1"]
    rhs = q1 ** 2 + x1 * p1 * q1 * 3 - p1 ** 3 + x1 ** 2 * p1 ** 2 * 2
    if n == 3:
        return x1 ** 2 * gens["s"], rhs
    return x1 ** 3 * gens["t"], rhs + x1 ** 2 * p1 * gens["p2"] * 3


def relation_difference(n: int, overrides: Mapping[str, Polynomial] | None = None) -> Polynomial:
    lhs, rhs = relation_sides(n, overrides)
    return lhs - rhs


def verify_relation(n: int, overrides: Mapping[str, Polynomial] | None = None) -> bool:
    return relation_difference(n, overrides).is_zero


@dataclass(frozen=True)
class GradedBasisDescriptor:
    """Monomials in named generators with weights and optional exponent caps."""

    n: int
    names: tuple
    weights: tuple
    caps: tuple  # None or a maximum exponent per generator

    def exponents(self, i: int) -> list[tuple[int, ...]]:
        """Exponent tuples of weighted degree i, lexicographically descending."""
        if i < 0:
            raise DomainError("degree must be >= 0")
        out = []
        ranges = []
        for w, cap in zip(self.weights, self.caps):
            top = i // w
            if cap is not None:
                top = min(top, cap)
            ranges.append(range(top, -1, -1))
        for e in product(*ranges):
            if sum(a * w for a, w in zip(e, self.weights)) == i:
                out.append(e)
        return out

    def monomial_text(self, e: Sequence[int]) -> str:
        parts = [nm if k == 1 else f"{nm}^{k}" for nm, k in zip(self.names, e) if k]
        return "*".join(parts) or "1"


def graded_descriptor(n: int) -> GradedBasisDescriptor:
    if n == 1:
        return GradedBasisDescriptor(1, ("x1",), (1,), (None,))
    if n == 2:
        return GradedBasisDescriptor(2, ("x1", "p1"), (1, 2), (None, None))
    if n == 3:
        return GradedBasisDescriptor(3, ("x1", "p1", "q1", "s"), (1, 2, 3, 4), (None, None, 1, None))
    if n == 4:
        return GradedBasisDescriptor(4, ("x1", "p1", "p2", "t", "q1"), (1, 2, 2, 3, 3),
                                     (None, None, None, None, 1))
    raise DomainError("graded bases are only described for 1 <= n <= 4")


def graded_basis(n: int, i: int) -> list[Polynomial]:
    """The products of generators spanning the degree-i invariants, n <= 4."""
    desc = graded_descriptor(n)
    gens = {g.name: g.poly for g in special_generators(n)}
    N = n + 1
    out = []
    for e in desc.exponents(i):
        p = Polynomial.one(N)
        for nm, k in zip(desc.names, e):
            if k:
                p = p * gens[nm] ** k
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# y-coordinates and the localization identity


def check_u_in_y(n: int, k: int, kind: str = "u") -> bool:
    """Substituting z1 -> 0, z_i -> y_i leaves u_k (or v_k) unchanged."""
    if kind == "u":
        g = u_generator(n, k)
    elif kind == "v":
        g = v_generator(n, k)
    else:
        raise DomainError(f"kind must be 'u' or 'v', not {kind!r}")
    images = [Polynomial.zero(n)] + [y_generator(n, i) for i in range(1, n)]
    return g.substitute(images) == g


def check_localization(f: Polynomial) -> bool:
    """f = (-x1)**deg f * f(-1, 0, f_2/x1^2, ..., f_n/x1^n) in K[x1, 1/x1, x2, ...]."""
    if f.is_zero:
        return True
    if not f.is_homogeneous():
        raise DomainError("the localization identity needs a homogeneous polynomial")
    N = f.variable_count
    n = N - 1
    if n < 1:
        raise DomainError("need at least two variables")
    one = LaurentPolynomial.x1_power(N, 0)
    images = [one * -1, one * 0]
    for i in range(1, n):
        fi = f_generator(n, i)
        images.append(LaurentPolynomial.from_polynomial(fi) * LaurentPolynomial.x1_power(N, -(i + 1)))
    value = evaluate(f, images, one)
    lhs = value * LaurentPolynomial.x1_power(N, f.degree) * (-1) ** f.degree
    return lhs == LaurentPolynomial.from_polynomial(f)


def f_fixed(n: int, i: int) -> bool:
    """f_{i+1} is a homogeneous invariant of the graded map on n+1 variables."""
    f = f_generator(n, i)
    return f.is_homogeneous() and f.degree == i + 1 and is_invariant(make_graded_jordan(n + 1), f)


def affine_ring_check(n: int) -> bool:
    """Sanity: generators are invariant under the affine map."""
    m = make_affine_jordan(n)
    return all(is_invariant(m, g) for g in generators(n)[1:])
