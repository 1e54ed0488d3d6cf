"""Factorial bases adapted to the shift x -> x - 1 and their exponential series.

``phi(i, "plus")`` is the rising factorial x(x+1)...(x+i-1)/i! and
``phi(i, "minus")`` the falling one.  Series in the nilpotent lower shift
matrix Theta (of size ``size``, so Theta**size = 0) are kept as their
coefficient vectors; Theta itself is never built.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .automorphism import apply, inverse, shift_map
from .errors import DomainError
from .poly import Polynomial

PLUS = "plus"
MINUS = "minus"


def _direction(direction: str) -> int:
    if direction in (PLUS, "+", 1):
        return 1
    if direction in (MINUS, "-", -1):
        return -1
    raise DomainError(f"direction must be 'plus' or 'minus', not {direction!r}")


def phi_of(i: int, direction: str, arg: Polynomial) -> Polynomial:
    """The factorial polynomial of index ``i`` evaluated at ``arg``."""
    if i < 0:
        raise DomainError("phi index must be non-negative")
    step = _direction(direction)
    out = Polynomial.one(arg.variable_count)
    for r in range(i):
        out = out * (arg + step * r)
    return out / factorial(i)


def phi(i: int, direction: str = MINUS, variable_count: int = 1) -> Polynomial:
    """phi_i (``plus``) or phi_{-i} (``minus``) as a polynomial in x1."""
    return phi_of(i, direction, Polynomial.var(variable_count, 1))


def x1_shift(variable_count: int = 1):
    """The map x1 -> x1 - 1 fixing the other variables."""
    return shift_map(variable_count, 1, -1)


@dataclass(frozen=True)
class NilpotentSeries:
    """``sum_i coefficients[i] * Theta**i`` with Theta**size = 0."""

    size: int
    coefficients: tuple

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("series size must be >= 1")
        cs = tuple(self.coefficients)
        if len(cs) > self.size:
            cs = cs[: self.size]
        if not cs:
            raise DomainError("series needs at least the constant coefficient")
        n = cs[0].variable_count
        cs = cs + tuple(Polynomial.zero(n) for _ in range(self.size - len(cs)))
        object.__setattr__(self, "coefficients", cs)

    @property
    def variable_count(self) -> int:
        return self.coefficients[0].variable_count

    @classmethod
    def identity(cls, size: int, variable_count: int = 1) -> "NilpotentSeries":
        return cls(size, (Polynomial.one(variable_count),))

    @classmethod
    def theta(cls, size: int, variable_count: int = 1) -> "NilpotentSeries":
        return cls(size, (Polynomial.zero(variable_count), Polynomial.one(variable_count)))

    def __mul__(self, other: "NilpotentSeries") -> "NilpotentSeries":
        if other.size != self.size:
            raise DomainError("series sizes differ")
        n = self.size
        a, b = self.coefficients, other.coefficients
        out = []
        for k in range(n):
            acc = Polynomial.zero(self.variable_count)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return NilpotentSeries(n, tuple(out))

    def __add__(self, other):
        return NilpotentSeries(self.size, tuple(p + q for p, q in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return NilpotentSeries(self.size, tuple(p - q for p, q in zip(self.coefficients, other.coefficients)))

    def __eq__(self, other):
        if not isinstance(other, NilpotentSeries):
            return NotImplemented
        return self.size == other.size and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.size, self.coefficients))

    def shift(self) -> "NilpotentSeries":
        """Multiplication by Theta."""
        z = Polynomial.zero(self.variable_count)
        return NilpotentSeries(self.size, (z,) + self.coefficients[:-1])

    def map_coefficients(self, f) -> "NilpotentSeries":
        return NilpotentSeries(self.size, tuple(f(c) for c in self.coefficients))

    def is_identity(self) -> bool:
        return self == NilpotentSeries.identity(self.size, self.variable_count)

    def matrix(self) -> list[list[Polynomial]]:
        """Dense lower-triangular Toeplitz matrix (for display and tests only)."""
        n = self.size
        z = Polynomial.zero(self.variable_count)
        return [[self.coefficients[i - j] if i >= j else z for j in range(n)] for i in range(n)]

    def apply_to(self, vector: Sequence[Polynomial]) -> list[Polynomial]:
        """Matrix-vector product with a column of length ``size``."""
        if len(vector) != self.size:
            raise DomainError("vector length must equal the series size")
        out = []
        for i in range(self.size):
            acc = Polynomial.zero(self.variable_count)
            for j in range(i + 1):
                acc = acc + self.coefficients[i - j] * vector[j]
            out.append(acc)
        return out


def exp_series(sign: str, size: int, arg: Polynomial | None = None) -> NilpotentSeries:
    """E (``plus``) with coefficients phi_{-i}, or E_- (``minus``) with (-1)^i phi_i.

    ``arg`` defaults to x1; passing e.g. ``x1 + x2`` gives E(x1 + x2).
    """
    if size < 1:
        raise DomainError("series size must be >= 1")
    if arg is None:
        arg = Polynomial.var(1, 1)
    if _direction(sign) == 1:
        cs = [phi_of(i, MINUS, arg) for i in range(size)]
    else:
        cs = [phi_of(i, PLUS, arg) * (-1) ** i for i in range(size)]
    return NilpotentSeries(size, tuple(cs))


def lambda_matrix(size: int) -> NilpotentSeries:
    """Lambda = sum (-1)^i phi_i Theta^i (unit lower triangular)."""
    return exp_series(MINUS, size)


def lambda_inverse(size: int) -> NilpotentSeries:
    """Lambda^{-1} = sum phi_{-i} Theta^i."""
    return exp_series(PLUS, size)


def sigma_on_series(s: NilpotentSeries) -> NilpotentSeries:
    """Coefficientwise x1 -> x1 - 1 (Theta is fixed)."""
    m = x1_shift(s.variable_count)
    return s.map_coefficients(lambda c: apply(m, c))


def check_difference_identities(size: int) -> bool:
    """(1 - sigma)E = Theta sigma(E) and (1 - sigma)E_- = -Theta E_-."""
    e = exp_series(PLUS, size)
    em = exp_series(MINUS, size)
    lhs = e - sigma_on_series(e)
    rhs = sigma_on_series(e).shift()
    lhs_m = em - sigma_on_series(em)
    rhs_m = em.shift().map_coefficients(lambda c: -c)
    return lhs == rhs and lhs_m == rhs_m


def check_power_law(size: int) -> bool:
    """E(x1) E(x2) = E(x1 + x2) in K[x1, x2], truncated at Theta**size."""
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    return exp_series(PLUS, size, x1) * exp_series(PLUS, size, x2) == exp_series(PLUS, size, x1 + x2)


def vanishing_sum(k: int, bound: int | None = None, twisted: bool = False) -> Polynomial:
    """sum over i + j = k of (-1)^i phi_i phi_{-j}.

    With ``twisted`` the summand is (-1)^j phi_i phi_{-j}, times (-1)^k.
    ``bound`` restricts both i and j to at most ``bound``.
    """
    total = Polynomial.zero(1)
    for i in range(k + 1):
        j = k - i
        if bound is not None and (i > bound or j > bound):
            continue
        sgn = (-1) ** (j + k) if twisted else (-1) ** i
        total = total + phi(i, PLUS) * phi(j, MINUS) * sgn
    return total


def check_vanishing_sums(k: int, n: int) -> bool:
    """Both forms of the alternating phi-product sums vanish, bounded and unbounded.

    The bounded identity lives in the series ring truncated at Theta**(n+1):
    for k > n the Theta**k coefficient is zero there by construction, even
    though the raw polynomial :func:`vanishing_sum` need not be.
    """
    if k < 1 or n < 1:
        raise DomainError("k and n must be >= 1")
    unbounded = all(vanishing_sum(k, None, t).is_zero for t in (False, True))
    if k > n:
        return unbounded
    return unbounded and all(vanishing_sum(k, n, t).is_zero for t in (False, True))


def phi_vector(size: int) -> list[Polynomial]:
    """(-phi_2, phi_3, ..., (-1)^size phi_{size+1})."""
    return [phi(i + 1, PLUS) * (-1) ** i for i in range(1, size + 1)]


def eta_vector(size: int) -> list[Polynomial]:
    """Lambda^{-1} applied to :func:`phi_vector`."""
    if size < 1:
        raise DomainError("size must be >= 1")
    return lambda_inverse(size).apply_to(phi_vector(size))


def eta_closed_form(size: int) -> list[Polynomial]:
    """Entry i is -i * sigma^{-1}(phi_{-i-1})."""
    back = inverse(x1_shift(1))
    return [apply(back, phi(i + 1, MINUS)) * (-i) for i in range(1, size + 1)]


def check_eta(size: int) -> bool:
    return eta_vector(size) == eta_closed_form(size)


def monomial_to_phi_matrix(d: int, direction: str = MINUS) -> list[list[Fraction]]:
    """Row i holds the monomial coefficients of phi of index i (i <= d)."""
    rows = []
    for i in range(d + 1):
        p = phi(i, direction)
        rows.append([p.coefficient((k,)) for k in range(d + 1)])
    return rows
