"""Explicit invariants of the unipotent shifts and their coefficient families.

Affine case: sigma(x) = J_n(1) x - e_1 on K[x1..xn].  The quadratic
invariants ``u_k`` and cubic invariants ``v_k`` are assembled from the
closed-form binomial tables lambda/mu and alpha/beta.

Graded case: sigma(x) = J_{n+1}(1) x on K[x1..x_{n+1}].  Every affine
invariant g(z) of degree d gives the homogeneous invariant
``x1**d * g(-x2/x1, ..., -x_{n+1}/x1)`` (see :func:`clear_z`).
"""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterator, Mapping

from .automorphism import apply, inverse, is_invariant, make_affine_jordan, make_graded_jordan
from .errors import DomainError
from .poly import Polynomial
from .sigma_exp import MINUS, PLUS, phi_of, x1_shift

KINDS = ("lambda", "mu", "alpha", "beta")


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero unless 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def mu_count(n: int) -> int:
    """Number of cubic generators, floor((n-1)/2)."""
    return (n - 1) // 2


def m_count(n: int) -> int:
    """Number of quadratic generators, floor(n/2)."""
    return n // 2


# ---------------------------------------------------------------------------
# y-coordinates


def y_generator(n: int, i: int) -> Polynomial:
    """``y_{i+1}``, the degree i+1 invariant generator, for 1 <= i <= n-1."""
    if n < 2 or not 1 <= i <= n - 1:
        raise DomainError(f"y_{{i+1}} needs n >= 2 and 1 <= i <= n-1 (got n={n}, i={i})")
    x1 = Polynomial.var(n, 1)
    out = Polynomial.zero(n)
    for j in range(1, i + 1):
        out = out + phi_of(i - j, MINUS, x1) * Polynomial.var(n, j + 1)
    back = inverse(x1_shift(n))
    return out + apply(back, phi_of(i + 1, MINUS, x1)) * i


def y_generators(n: int) -> list[Polynomial]:
    """``[y_2, ..., y_n]``."""
    return [y_generator(n, i) for i in range(1, n)]


def x_from_y(n: int, i: int, ys: list[Polynomial] | None = None) -> Polynomial:
    """Right-hand side expressing x_{i+1} through x1 and y_2..y_{i+1}.

    Evaluated with the actual y-polynomials it must return ``x_{i+1}``.
    """
    ys = ys if ys is not None else y_generators(n)
    x1 = Polynomial.var(n, 1)
    out = phi_of(i + 1, PLUS, x1) * (-1) ** i
    for j in range(1, i + 1):
        out = out + phi_of(i - j, PLUS, x1) * ys[j - 1] * (-1) ** (i - j)
    return out


# ---------------------------------------------------------------------------
# coefficient tables


def lambda_coeff(k: int, i: int, j: int) -> int:
    return (-1) ** (k - i) * (binom(k - i, j - k) + binom(k - i - 1, j - k - 1))


def mu_coeff(k: int, i: int) -> int:
    return (-1) ** (k - 1) * (binom(k, i - k) + binom(k - 1, i - k - 1))


def alpha_coeff(k: int, i: int, j: int) -> int:
    return (-1) ** (k - i) * (
        2 * binom(k - i - 1, j - k - 1) + 3 * binom(k - i - 1, j - k - 2)
        + (k - i - 1) * (binom(k - i, j - k - 1) + binom(k - i - 1, j - k - 2)))


def alpha_coeff_via_lambda(k: int, i: int, j: int) -> int:
    """First displayed form of alpha, through lambda_{i,j-1}."""
    return ((-1) ** (k - i) * (2 * binom(k - i - 1, j - k - 1) + 3 * binom(k - i - 1, j - k - 2))
            + (k - i - 1) * lambda_coeff(k, i, j - 1))


def table_keys(kind: str, k: int) -> list:
    if kind == "lambda":
        return [(i, j) for i in range(1, k) for j in range(k, 2 * k - i + 1)]
    if kind == "mu":
        return list(range(k, 2 * k + 1))
    if kind == "alpha":
        return [(i, j) for i in range(1, k) for j in range(k + 1, 2 * k - i + 2)]
    if kind == "beta":
        return list(range(k + 1, 2 * k + 2))
    raise DomainError(f"unknown table kind {kind!r}")


@dataclass(frozen=True)
class CoefficientTable:
    """One coefficient family for block index ``k``.

    lambda/alpha entries are keyed by ``(i, j)``; mu/beta by ``j``.
    Lookups outside the stored range return 0.
    """

    kind: str
    k: int
    entries: Mapping = field(default_factory=dict)

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def get(self, *key) -> Fraction:
        return self.entries.get(key if len(key) > 1 else key[0], Fraction(0))

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=None)
def _raw_table(kind: str, k: int) -> tuple:
    if kind in ("lambda", "mu") and k < 1:
        raise DomainError("lambda/mu tables need k >= 1")
    if kind in ("alpha", "beta") and k < 2:
        raise DomainError("alpha/beta tables need k >= 2")
    keys = table_keys(kind, k)
    if kind == "lambda":
        vals = [lambda_coeff(k, i, j) for i, j in keys]
    elif kind == "mu":
        vals = [mu_coeff(k, i) for i in keys]
    elif kind == "alpha":
        vals = [alpha_coeff(k, i, j) for i, j in keys]
    else:
        def a1(j):
            return alpha_coeff(k, 1, j) if k + 1 <= j <= 2 * k else 0
        vals = [a1(j - 1) + a1(j) + mu_coeff(k, j - 1) for j in keys]
    return tuple((key, Fraction(v)) for key, v in zip(keys, vals))


_perturb_lock = threading.Lock()
_perturbations: dict = {}


@contextmanager
def perturbed_coefficient(kind: str, k: int, key, amount=1) -> Iterator[None]:
    """Temporarily add ``amount`` to one closed-form coefficient.

    Test hook for negative controls: while active, :func:`coeff_table` and
    everything built from it (u_k, v_k, p_k, q_k) see the perturbed value.
    """
    if key not in table_keys(kind, k):
        raise DomainError(f"{key!r} is not an index of the {kind} table for k={k}")
    with _perturb_lock:
        _perturbations[(kind, k, key)] = _perturbations.get((kind, k, key), 0) + Fraction(amount)
    try:
        yield
    finally:
        with _perturb_lock:
            _perturbations.pop((kind, k, key), None)


def perturbation_state() -> frozenset:
    """Snapshot of active perturbations, usable as part of a cache key."""
    with _perturb_lock:
        return frozenset(_perturbations.items())


def coeff_table(kind: str, k: int) -> CoefficientTable:
    if kind not in KINDS:
        raise DomainError(f"unknown table kind {kind!r}")
    entries = dict(_raw_table(kind, k))
    if _perturbations:
        for (pk, kk, key), amount in list(_perturbations.items()):
            if pk == kind and kk == k:
                entries[key] += amount
    return CoefficientTable(kind, k, entries)


# ---------------------------------------------------------------------------
# quadratic and cubic generators


def _check_u_range(n, k):
    if n < 2 or not 1 <= k <= n // 2:
        raise DomainError(f"u_k needs n >= 2 and 1 <= k <= floor(n/2) (got n={n}, k={k})")


def _check_v_range(n, k):
    if n < 3 or not 1 <= k <= (n - 1) // 2:
        raise DomainError(f"v_k needs n >= 3 and 1 <= k <= floor((n-1)/2) (got n={n}, k={k})")


def _quadratic(n: int, coeffs: Mapping) -> Polynomial:
    """Sum of c * x_i * x_j (i <= j) plus linear terms keyed by ``(j,)``."""
    terms = {}
    for key, c in coeffs.items():
        e = [0] * n
        for idx in key:
            e[idx - 1] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return Polynomial(n, terms)


def u_generator(n: int, k: int) -> Polynomial:
    """Quadratic invariant u_k in K[x1..xn], 1 <= k <= floor(n/2)."""
    _check_u_range(n, k)
    lam = coeff_table("lambda", k)
    mu = coeff_table("mu", k)
    coeffs = {(k, k): Fraction(1)}
    coeffs.update(lam.items())
    coeffs.update({(j,): c for j, c in mu.items()})
    return _quadratic(n, coeffs)


def v_generator(n: int, k: int) -> Polynomial:
    """Cubic invariant v_k in K[x1..xn], 1 <= k <= floor((n-1)/2)."""
    _check_v_range(n, k)
    x = [Polynomial.var(n, i) for i in range(1, n + 1)]
    if k == 1:
        return x[0] ** 3 + x[0] * x[1] * 3 - x[0] + x[2] * 3
    alpha = coeff_table("alpha", k)
    beta = coeff_table("beta", k)
    coeffs = {(k, k + 1): Fraction(1)}
    coeffs.update(alpha.items())
    coeffs.update({(j,): c for j, c in beta.items()})
    return x[0] * u_generator(n, k) + _quadratic(n, coeffs)


def quadratic_part(p: Polynomial) -> Polynomial:
    return p.graded_component(2)


def linear_part(p: Polynomial) -> Polynomial:
    return p.graded_component(1)


def v_split(n: int, k: int) -> tuple[Polynomial, Polynomial]:
    """``(v_k', v_k'')``: quadratic and linear parts of v_k - x1*u_k."""
    rest = v_generator(n, k) - Polynomial.var(n, 1) * u_generator(n, k)
    return rest.graded_component(2), rest.graded_component(1)


def w_generator(n: int, k: int) -> Polynomial:
    """Degree-5 invariant w_k = v_k^2 - u_1 u_k^2 (n >= 5, 2 <= k <= floor((n-1)/2))."""
    if n < 5 or not 2 <= k <= (n - 1) // 2:
        raise DomainError(f"w_k needs n >= 5 and 2 <= k <= floor((n-1)/2) (got n={n}, k={k})")
    return v_generator(n, k) ** 2 - u_generator(n, 1) * u_generator(n, k) ** 2


def w_expanded_form(n: int, k: int) -> Polynomial:
    """w_k regrouped as u_k(2 z1 v_k' - (z1 + 2 z2) u_k) + v_k'^2 + 2 z1 u_k v_k'' + 2 v_k' v_k'' + v_k''^2."""
    z1, z2 = Polynomial.var(n, 1), Polynomial.var(n, 2)
    uk = u_generator(n, k)
    vq, vl = v_split(n, k)
    return (uk * (z1 * vq * 2 - (z1 + z2 * 2) * uk) + vq * vq + z1 * uk * vl * 2
            + vq * vl * 2 + vl * vl)


def w_leading_formula(n: int, k: int) -> Polynomial:
    """u_k'(2 z1 v_k' - (z1 + 2 z2) u_k') with primes denoting quadratic parts."""
    z1, z2 = Polynomial.var(n, 1), Polynomial.var(n, 2)
    uq = quadratic_part(u_generator(n, k))
    vq, _ = v_split(n, k)
    return uq * (z1 * vq * 2 - (z1 + z2 * 2) * uq)


def theta(n: int = 3) -> Polynomial:
    """theta = v1^2 - u1^3 + 3 v1 u1 + 2 u1^2 (in z-coordinates, n >= 3)."""
    u1, v1 = u_generator(n, 1), v_generator(n, 1)
    return v1 ** 2 - u1 ** 3 + v1 * u1 * 3 + u1 ** 2 * 2


def theta_tilde(n: int = 4) -> Polynomial:
    """theta + 3 u1 u2 (n >= 4)."""
    return theta(n) + u_generator(n, 1) * u_generator(n, 2) * 3


# ---------------------------------------------------------------------------
# graded case


def clear_z(g: Polynomial, degree: int) -> Polynomial:
    """``x1**degree * g(z)`` with ``z_i = -x_{i+1}/x1``, in n+1 variables."""
    n = g.variable_count
    terms = {}
    for e, c in g.terms.items():
        s = sum(e)
        if s > degree:
            raise DomainError(f"z-degree {s} exceeds the clearing power {degree}")
        terms[(degree - s,) + e] = c * (-1) ** s
    return Polynomial(n + 1, terms)


def _check_graded(kind, n, k):
    if n < 2:
        raise DomainError("graded generators need n >= 2")
    if kind == "p" and not 1 <= k <= n // 2:
        raise DomainError(f"p_k needs 1 <= k <= floor(n/2) (got n={n}, k={k})")
    if kind == "q" and not 1 <= k <= (n - 1) // 2:
        raise DomainError(f"q_k needs 1 <= k <= floor((n-1)/2) (got n={n}, k={k})")


def p_explicit(n: int, k: int) -> Polynomial:
    """x_{k+1}^2 + sum lambda x_{i+1} x_{j+1} - x1 sum mu x_{i+1}."""
    N = n + 1
    x = [None] + [Polynomial.var(N, i) for i in range(1, N + 1)]
    out = x[k + 1] ** 2
    for (i, j), c in coeff_table("lambda", k).items():
        out = out + x[i + 1] * x[j + 1] * c
    for i, c in coeff_table("mu", k).items():
        out = out - x[1] * x[i + 1] * c
    return out


def q_explicit(n: int, k: int) -> Polynomial:
    """Explicit homogeneous cubic q_k (k >= 2 from the alpha/beta tables)."""
    N = n + 1
    x = [None] + [Polynomial.var(N, i) for i in range(1, N + 1)]
    if k == 1:
        return -x[2] ** 3 + x[1] * x[2] * x[3] * 3 + x[1] ** 2 * x[2] - x[1] ** 2 * x[4] * 3
    out = -x[2] * p_explicit(n, k) + x[1] * x[k + 1] * x[k + 2]
    for (i, j), c in coeff_table("alpha", k).items():
        out = out + x[1] * x[i + 1] * x[j + 1] * c
    for i, c in coeff_table("beta", k).items():
        out = out - x[1] ** 2 * x[i + 1] * c
    return out


def graded_generator(kind: str, n: int, k: int) -> Polynomial:
    """p_k = x1^2 u_k(z) or q_k = x1^3 v_k(z), in n+1 variables.

    Built by clearing denominators and checked against the explicit
    expansion; a mismatch raises AssertionError.
    """
    _check_graded(kind, n, k)
    if kind == "p":
        via_z = clear_z(u_generator(n, k), 2)
        explicit = p_explicit(n, k)
    elif kind == "q":
        via_z = clear_z(v_generator(n, k), 3)
        explicit = q_explicit(n, k)
    else:
        raise DomainError(f"kind must be 'p' or 'q', not {kind!r}")
    if via_z != explicit:
        raise AssertionError(f"{kind}_{k}: cleared form and explicit form disagree")
    return via_z


def s_generator() -> Polynomial:
    """x1^4 theta(z) in 4 variables."""
    return clear_z(theta(3), 4)


def t_generator() -> Polynomial:
    """x1^3 theta_tilde(z) in 5 variables."""
    return clear_z(theta_tilde(4), 3)


def f_generator(n: int, i: int) -> Polynomial:
    """f_{i+1} = x1^{i+1} y_{i+1}(z), homogeneous of degree i+1 in n+1 variables."""
    return clear_z(y_generator(n, i), i + 1)


def f_double_sum(n: int, i: int) -> Polynomial:
    """Closed double-sum expansion of f_{i+1} in terms of rising products in x2."""
    N = n + 1
    x1, x2 = Polynomial.var(N, 1), Polynomial.var(N, 2)

    def rising(m):
        out = Polynomial.one(N)
        for r in range(m):
            out = out * (x2 + x1 * r)
        return out

    fact = [1]
    for r in range(1, i + 2):
        fact.append(fact[-1] * r)
    out = Polynomial.zero(N)
    for j in range(1, i + 1):
        out = out + x1 ** j * rising(i - j) * Polynomial.var(N, j + 2) * Fraction((-1) ** (i - j + 1), fact[i - j])
    return out + (x2 - x1) * rising(i) * Fraction((-1) ** (i + 1) * i, fact[i + 1])


# ---------------------------------------------------------------------------
# named generator sets


@dataclass(frozen=True)
class Generator:
    name: str
    poly: Polynomial
    degree: int


@dataclass(frozen=True)
class GeneratorSet:
    case: str  # "affine" or "graded"
    n: int
    members: tuple

    def names(self) -> list[str]:
        return [g.name for g in self.members]

    def __getitem__(self, name: str) -> Generator:
        for g in self.members:
            if g.name == name:
                return g
        raise KeyError(name)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def ambient_map(self):
        if self.case == "affine":
            return make_affine_jordan(self.n)
        return make_graded_jordan(self.n + 1)

    def verify(self) -> bool:
        """Every member is invariant and has its declared degree."""
        m = self.ambient_map()
        return all(g.poly.degree == g.degree and is_invariant(m, g.poly) for g in self.members)


def affine_generators(n: int) -> GeneratorSet:
    """Free generators u_1..u_m, v_1..v_mu of the affine invariant ring."""
    if n < 2:
        raise DomainError("need n >= 2")
    members = [Generator(f"u{k}", u_generator(n, k), 2) for k in range(1, n // 2 + 1)]
    members += [Generator(f"v{k}", v_generator(n, k), 3) for k in range(1, (n - 1) // 2 + 1)]
    return GeneratorSet("affine", n, tuple(members))


def transcendence_basis(n: int) -> GeneratorSet:
    """x1, p_1..p_m, q_1..q_mu for the graded map on n+1 variables."""
    if n < 2:
        raise DomainError("need n >= 2")
    N = n + 1
    members = [Generator("x1", Polynomial.var(N, 1), 1)]
    members += [Generator(f"p{k}", graded_generator("p", n, k), 2) for k in range(1, n // 2 + 1)]
    members += [Generator(f"q{k}", graded_generator("q", n, k), 3) for k in range(1, (n - 1) // 2 + 1)]
    return GeneratorSet("graded", n, tuple(members))


def special_generators(n: int) -> GeneratorSet:
    """Algebra generators of the graded invariant ring on n+1 variables, n <= 4."""
    if not 1 <= n <= 4:
        raise DomainError("explicit generating sets are only known for 1 <= n <= 4")
    N = n + 1
    members = [Generator("x1", Polynomial.var(N, 1), 1)]
    if n >= 2:
        members.append(Generator("p1", graded_generator("p", n, 1), 2))
    if n >= 3:
        members.append(Generator("q1", graded_generator("q", n, 1), 3))
    if n == 3:
        members.append(Generator("s", s_generator(), 4))
    if n == 4:
        members.append(Generator("p2", graded_generator("p", n, 2), 2))
        members.append(Generator("t", t_generator(), 3))
    return GeneratorSet("graded", n, tuple(members))


def named_generator(case: str, n: int, name: str) -> Generator:
    """Look up a generator by name (``u2``, ``v1``, ``y3``, ``w2``, ``theta``, ``p1``, ``q2``, ``s``, ``t``, ``f3``...)."""
    import re

    m = re.fullmatch(r"([a-z_]+?)(\d*)", name)
    if not m:
        raise DomainError(f"bad generator name {name!r}")
    base, idx = m.group(1), m.group(2)
    k = int(idx) if idx else None
    if case == "affine":
        if base == "u" and k:
            return Generator(name, u_generator(n, k), 2)
        if base == "v" and k:
            return Generator(name, v_generator(n, k), 3)
        if base == "y" and k:
            return Generator(name, y_generator(n, k - 1), k)
        if base == "w" and k:
            return Generator(name, w_generator(n, k), 5)
        if name == "theta":
            if n < 3:
                raise DomainError("theta needs n >= 3")
            return Generator(name, theta(n), 4)
        if name == "theta_tilde":
            if n < 4:
                raise DomainError("theta_tilde needs n >= 4")
            return Generator(name, theta_tilde(n), 3)
    elif case == "graded":
        if name == "x1":
            return Generator(name, Polynomial.var(n + 1, 1), 1)
        if base == "p" and k:
            return Generator(name, graded_generator("p", n, k), 2)
        if base == "q" and k:
            return Generator(name, graded_generator("q", n, k), 3)
        if base == "f" and k:
            return Generator(name, f_generator(n, k - 1), k)
        if name == "s":
            if n != 3:
                raise DomainError("s is defined for n = 3")
            return Generator(name, s_generator(), 4)
        if name == "t":
            if n != 4:
                raise DomainError("t is defined for n = 4")
            return Generator(name, t_generator(), 3)
    else:
        raise DomainError(f"case must be 'affine' or 'graded', not {case!r}")
    raise DomainError(f"unknown generator {name!r} for the {case} case")


# ---------------------------------------------------------------------------
# linear system for quadratic invariants


def quadratic_delta_formula(lam: Mapping, mu: Mapping, n: int) -> Polynomial:
    """(1 - sigma)(u) for a general quadratic u, written out coefficientwise.

    ``lam[(i, j)]`` (i <= j) is the coefficient of x_i x_j, ``mu[j]`` that
    of x_j; missing keys are zero.  This is the hand expansion the
    coefficient equations come from, kept separate from :func:`delta` so
    the two can be compared.
    """
    L = lambda i, j: Fraction(lam.get((i, j), 0))  # noqa: E731
    M = lambda j: Fraction(mu.get(j, 0))  # noqa: E731
    x = [None] + [Polynomial.var(n, i) for i in range(1, n + 1)]
    out = Polynomial.zero(n)
    for j in range(1, n):
        out = out - x[j] ** 2 * (L(j, j + 1) + L(j + 1, j + 1))
    for i in range(2, n - 1):
        inner = x[i + 1] * (L(i, i + 2) + L(i + 1, i + 2) + 2 * L(i + 1, i + 1))
        for j in range(i + 2, n):
            inner = inner + x[j] * (L(i + 1, j) + L(i, j + 1) + L(i + 1, j + 1))
        inner = inner + x[n] * L(i + 1, n)
        out = out - x[i] * inner
    if n >= 3:
        inner = x[2] * (L(2, 3) + L(1, 3) + 2 * L(2, 2))
        for j in range(3, n):
            inner = inner + x[j] * (L(2, j) + L(1, j + 1) + L(2, j + 1))
        inner = inner + x[n] * L(2, n)
        out = out - x[1] * inner
    out = out - x[n - 1] * x[n] * (2 * L(n, n))
    out = out + x[1] * (2 * L(1, 1) + L(1, 2) - M(2))
    for j in range(3, n + 1):
        out = out + x[j - 1] * (L(1, j - 1) + L(1, j) - M(j))
    out = out + x[n] * L(1, n) + (M(1) - L(1, 1))
    return out


def quadratic_equations(lam: Mapping, mu: Mapping, n: int) -> list[tuple[str, Fraction]]:
    """Residuals of every linear condition for (1 - sigma)u = 0.

    Returns ``(label, value)`` pairs; u is invariant iff all values vanish.
    """
    L = lambda i, j: Fraction(lam.get((i, j), 0))  # noqa: E731
    M = lambda j: Fraction(mu.get(j, 0))  # noqa: E731
    eqs = [("mu:1", M(1) - L(1, 1)), ("mu:2", M(2) - 2 * L(1, 1) - L(1, 2))]
    eqs += [(f"mu:{j}", M(j) - L(1, j - 1) - L(1, j)) for j in range(3, n + 1)]
    if n >= 3:
        eqs.append(("c1", L(2, 3) + L(1, 3) + 2 * L(2, 2)))
    eqs += [(f"c2:{j}", L(j, j + 1) + L(j + 1, j + 1)) for j in range(1, n)]
    eqs += [(f"c3:{i},{j}", L(i + 1, j) + L(i, j + 1) + L(i + 1, j + 1))
            for i in range(1, n - 1) for j in range(i + 2, n)]
    eqs += [(f"c4:{i}", L(i, i + 2) + L(i + 1, i + 2) + 2 * L(i + 1, i + 1))
            for i in range(2, n - 1)]
    # last column of the coefficient matrix
    eqs += [(f"last:{i}", L(i, n)) for i in range(1, n)]
    eqs.append((f"last:{n}", L(n, n)))
    return eqs


def u_coefficients(k: int) -> tuple[dict, dict]:
    """``(lam, mu)`` dictionaries describing u_k, including the x_k^2 entry."""
    lam = {(k, k): Fraction(1)}
    lam.update(coeff_table("lambda", k).items())
    return lam, dict(coeff_table("mu", k).items())


def check_u_system(k: int, n: int | None = None) -> bool:
    """The lambda/mu tables solve the quadratic invariance system."""
    n = 2 * k if n is None else n
    lam, mu = u_coefficients(k)
    return all(v == 0 for _, v in quadratic_equations(lam, mu, n))


def _alpha_ext(k: int) -> Callable[[int, int], Fraction]:
    """alpha with row k = {k+1: 1} (the x_k x_{k+1} coefficient) and zero elsewhere."""
    tab = coeff_table("alpha", k)

    def get(i, j):
        if i == k:
            return Fraction(int(j == k + 1))
        return tab[(i, j)]
    return get


def cubic_equations(k: int) -> list[tuple[str, Fraction]]:
    """Residuals of the linear conditions for (1 - sigma)v_k = 0, k >= 2."""
    alpha = _alpha_ext(k)
    lam = coeff_table("lambda", k)
    mu = coeff_table("mu", k)
    beta = coeff_table("beta", k)
    a = alpha(k, k + 1)
    eqs = [("a", -a + 1),
           ("alpha:k-1,k+1", -a - alpha(k - 1, k + 1) - 1),
           ("alpha:k-1,k+2", -a - alpha(k - 1, k + 2) - 2)]
    for i in range(1, k):
        for j in range(k, 2 * k - i + 1):
            if (i, j) == (k - 1, k):
                continue
            eqs.append((f"alpha-rec:{i},{j}",
                        -(alpha(i + 1, j) + alpha(i, j + 1) + alpha(i + 1, j + 1)) + lam[(i, j)]))

    def a1(j):
        return alpha(1, j) if j <= 2 * k else Fraction(0)
    for j in range(k + 1, 2 * k + 2):
        eqs.append((f"beta:{j}", beta[j] - a1(j - 1) - a1(j) - mu[j - 1]))
    return eqs


def check_v_system(k: int) -> bool:
    return all(v == 0 for _, v in cubic_equations(k))


def check_alpha_boundaries(k: int) -> bool:
    """alpha_{i,2k+1-i} = (-1)^{k-i}(1 + 2(k-i)) and alpha_{i,k+1} = (-1)^{k-i}(k-i+1)."""
    tab = coeff_table("alpha", k)
    for i in range(1, k):
        if tab[(i, 2 * k + 1 - i)] != (-1) ** (k - i) * (1 + 2 * (k - i)):
            return False
        if tab[(i, k + 1)] != (-1) ** (k - i) * (k - i + 1):
            return False
    return True


def check_alpha_forms(k: int) -> bool:
    """The two displayed expressions for alpha agree with the stored table."""
    tab = coeff_table("alpha", k)
    return all(tab[(i, j)] == alpha_coeff_via_lambda(k, i, j) for i, j in table_keys("alpha", k))


def tables_nonzero(k: int) -> bool:
    kinds = ("lambda", "mu") if k < 2 else KINDS
    return all(all(v != 0 for _, v in coeff_table(kind, k).items()) for kind in kinds)


def check_top_coefficients(n: int) -> bool:
    """u_k = (-1)^{k-1} 2 x_{2k} + (lower variables), v_k = (-1)^{k-1}(1+2k) x_{2k+1} + ...

    Also checks the leading-form coefficients of z1 z_{2k-1} in u_k' and
    z1 z_{2k} in v_k', and that those are the only terms reaching that
    variable.
    """
    def unit(idx, other=None):
        e = [0] * n
        e[idx - 1] += 1
        if other:
            e[other - 1] += 1
        return tuple(e)

    for k in range(1, n // 2 + 1):
        u = u_generator(n, k)
        if max(u.used_variables()) != 2 * k:
            return False
        if u.coefficient(unit(2 * k)) != (-1) ** (k - 1) * 2:
            return False
        if any(e[2 * k - 1] for e in u.terms if e != unit(2 * k)):
            return False
        uq = quadratic_part(u)
        if k >= 2:
            if uq.coefficient(unit(1, 2 * k - 1)) != (-1) ** (k - 1) * 2:
                return False
            if max(uq.used_variables()) != 2 * k - 1:
                return False
            if any(e[2 * k - 2] for e in uq.terms if e != unit(1, 2 * k - 1)):
                return False
    for k in range(1, (n - 1) // 2 + 1):
        v = v_generator(n, k)
        if max(v.used_variables()) != 2 * k + 1:
            return False
        if v.coefficient(unit(2 * k + 1)) != (-1) ** (k - 1) * (1 + 2 * k):
            return False
        if any(e[2 * k] for e in v.terms if e != unit(2 * k + 1)):
            return False
        if k >= 2:
            vq, _ = v_split(n, k)
            if vq.coefficient(unit(1, 2 * k)) != (-1) ** (k - 1) * (2 * k - 1):
                return False
            if max(vq.used_variables()) != 2 * k:
                return False
            if any(e[2 * k - 1] for e in vq.terms if e != unit(1, 2 * k)):
                return False
    return True


# ---------------------------------------------------------------------------
# shifted-row recurrences


@dataclass(frozen=True)
class RecurrenceSpec:
    """A table obeying lam[i,j] = delta (lam[i+1,j-1] + lam[i+1,j]) + mu[i,j-1] on rows [a, b].

    ``mu`` is given as another table (None means zero).  When ``gamma`` is
    set, mu itself is expected to satisfy mu[i,j] = gamma (mu[i+1,j-1] + mu[i+1,j]).
    ``boundary`` supplies entries of the table that are not stored in it,
    keyed by ``(i, j)``.
    """

    a: int
    b: int
    delta: Fraction
    gamma: Fraction | None = None
    mu: CoefficientTable | None = None
    boundary: Mapping = field(default_factory=dict)


def u_recurrence(k: int) -> RecurrenceSpec:
    """lambda^k: delta = -1, no inhomogeneous term, rows 1..k-1."""
    if k < 2:
        raise DomainError("the lambda recurrence needs k >= 2")
    return RecurrenceSpec(1, k - 1, Fraction(-1))


def v_recurrence(k: int) -> RecurrenceSpec:
    """alpha^k driven by lambda^k: delta = gamma = -1, rows 1..k with alpha[k, k+1] = 1."""
    if k < 2:
        raise DomainError("the alpha recurrence needs k >= 2")
    return RecurrenceSpec(1, k, Fraction(-1), Fraction(-1), coeff_table("lambda", k),
                          {(k, k + 1): Fraction(1)})


def _lookup(table: CoefficientTable, boundary: Mapping) -> Callable[[int, int], Fraction]:
    def get(i, j):
        if (i, j) in boundary:
            return Fraction(boundary[(i, j)])
        return table[(i, j)]
    return get


def _columns(spec: RecurrenceSpec, table: CoefficientTable, c: int) -> range:
    cols = [j for _, j in table] + [j for _, j in spec.boundary]
    if spec.mu is not None:
        cols += [j for _, j in spec.mu]
    if not cols:
        return range(0)
    return range(min(cols) - 1, max(cols) + c + 2)


def recurrence_report(spec: RecurrenceSpec, table: CoefficientTable, c: int) -> dict[str, bool]:
    """Evaluate the hypothesis and each shifted-row identity at shift ``c``.

    Keys: ``hypothesis``, ``expanded`` (general form with the mu double sum),
    ``homogeneous`` (only when mu is None), ``geometric`` (only when gamma
    is set; mu collapses to a geometric multiple of mu[i, j-1]) and
    ``binomial`` (gamma == delta, where the multiple is c).
    """
    if c < 0:
        raise DomainError("shift c must be >= 0")
    if spec.a + c > spec.b:
        raise DomainError(f"shift c={c} leaves the row window [{spec.a}, {spec.b}]")
    lam = _lookup(table, spec.boundary)
    mu = (lambda i, j: spec.mu[(i, j)]) if spec.mu is not None else (lambda i, j: Fraction(0))
    d = Fraction(spec.delta)
    cols = _columns(spec, table, c)

    out = {"hypothesis": all(
        lam(i, j) == d * (lam(i + 1, j - 1) + lam(i + 1, j)) + mu(i, j - 1)
        for i in range(spec.a, spec.b) for j in cols)}

    def head(i, j):
        return d ** c * sum((binom(c, e) * lam(i + c, j - e) for e in range(c + 1)), Fraction(0))

    rows = range(spec.a, spec.b - c + 1)
    expanded = True
    for i in rows:
        for j in cols:
            tail = sum((d ** c1 * binom(c1, e) * mu(i + c1, j - 1 - e)
                        for c1 in range(c) for e in range(c1 + 1)), Fraction(0))
            if lam(i, j) != head(i, j) + tail:
                expanded = False
    out["expanded"] = expanded
    if spec.mu is None:
        out["homogeneous"] = all(lam(i, j) == head(i, j) for i in rows for j in cols)
    if spec.gamma is not None:
        g = Fraction(spec.gamma)
        ratio = d / g
        geo = sum((ratio ** e for e in range(c)), Fraction(0))
        out["geometric"] = all(lam(i, j) == head(i, j) + geo * mu(i, j - 1) for i in rows for j in cols)
        if g == d:
            out["binomial"] = all(lam(i, j) == head(i, j) + binom(c, 1) * mu(i, j - 1)
                                  for i in rows for j in cols)
    return out


def recurrence_check(spec: RecurrenceSpec, table: CoefficientTable, c: int) -> bool:
    """True iff the hypothesis and every applicable shifted identity hold at shift ``c``."""
    return all(recurrence_report(spec, table, c).values())


def multsum(c: int, k: int, ratios=None) -> Fraction:
    """Nested sum over c > c_1 > ... > c_k >= 0 of prod ratios[l]**c_l.

    With all ratios equal to 1 this is the binomial C(c, k).
    """
    if c < 0 or k < 0:
        raise DomainError("c and k must be >= 0")
    ratios = [Fraction(1)] * k if ratios is None else [Fraction(r) for r in ratios]
    if len(ratios) != k:
        raise DomainError("need exactly k ratios")

    def nested(level, upper):
        if level == k:
            return Fraction(1)
        r = ratios[level]
        return sum((r ** cl * nested(level + 1, cl) for cl in range(upper)), Fraction(0))

    return nested(0, c)
