"""Unipotent affine automorphisms x -> Ax + b and the sigma-derivation 1 - sigma."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .poly import Polynomial, as_rational, format_rational


@dataclass(frozen=True)
class UnipotentAffineMap:
    """Algebra automorphism of ``K[x1..xn]`` given by ``x_i -> (A x + b)_i``.

    ``matrix`` must be lower triangular with ones on the diagonal.
    """

    n: int
    matrix: tuple
    translation: tuple
    _power_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a map needs at least one variable")
        mat = tuple(tuple(as_rational(v) for v in row) for row in self.matrix)
        vec = tuple(as_rational(v) for v in self.translation)
        if len(mat) != self.n or any(len(r) != self.n for r in mat) or len(vec) != self.n:
            raise DomainError("matrix/translation shape does not match n")
        for i in range(self.n):
            if mat[i][i] != 1:
                raise DomainError("diagonal entries must all be 1")
            if any(mat[i][j] for j in range(i + 1, self.n)):
                raise DomainError("matrix must be lower triangular")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", vec)

    @property
    def images(self) -> list[Polynomial]:
        """``[sigma(x1), ..., sigma(xn)]``."""
        out = []
        for i in range(self.n):
            terms = {}
            for j in range(i + 1):
                if self.matrix[i][j]:
                    e = [0] * self.n
                    e[j] = 1
                    terms[tuple(e)] = self.matrix[i][j]
            if self.translation[i]:
                terms[(0,) * self.n] = self.translation[i]
            out.append(Polynomial(self.n, terms))
        return out

    @property
    def is_linear(self) -> bool:
        return not any(self.translation)

    def _check(self, p: Polynomial):
        if p.variable_count != self.n:
            raise DomainError(
                f"map acts on {self.n} variables, polynomial has {p.variable_count}")

    def _image_power(self, i: int, k: int) -> Polynomial:
        key = (i, k)
        hit = self._power_cache.get(key)
        if hit is None:
            if k == 0:
                hit = Polynomial.one(self.n)
            elif k == 1:
                hit = self.images[i]
            else:
                hit = self._image_power(i, k - 1) * self._image_power(i, 1)
            self._power_cache[key] = hit
        return hit

    def apply_monomial(self, e: Sequence[int]) -> Polynomial:
        out = Polynomial.one(self.n)
        for i, k in enumerate(e):
            if k:
                out = out * self._image_power(i, k)
        return out

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "matrix": [[format_rational(v) for v in row] for row in self.matrix],
            "translation": [format_rational(v) for v in self.translation],
        })

    @classmethod
    def from_json(cls, text: str) -> "UnipotentAffineMap":
        data = json.loads(text)
        return cls(data["n"],
                   tuple(tuple(Fraction(v) for v in row) for row in data["matrix"]),
                   tuple(Fraction(v) for v in data["translation"]))


def _jordan(n: int) -> tuple:
    return tuple(tuple(1 if j == i or j == i - 1 else 0 for j in range(n)) for i in range(n))


def make_affine_jordan(n: int) -> UnipotentAffineMap:
    """``x1 -> x1 - 1``, ``x_i -> x_i + x_{i-1}`` on ``n >= 2`` variables."""
    if n < 2:
        raise DomainError("the affine Jordan map needs n >= 2")
    return UnipotentAffineMap(n, _jordan(n), (-1,) + (0,) * (n - 1))


def make_graded_jordan(n_plus_1: int) -> UnipotentAffineMap:
    """``x1 -> x1``, ``x_i -> x_i + x_{i-1}`` on ``n_plus_1 >= 2`` variables."""
    if n_plus_1 < 2:
        raise DomainError("the graded Jordan map needs at least 2 variables")
    return UnipotentAffineMap(n_plus_1, _jordan(n_plus_1), (0,) * n_plus_1)


def shift_map(n: int = 1, variable: int = 1, amount=-1) -> UnipotentAffineMap:
    """Pure translation ``x_variable -> x_variable + amount``."""
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    vec = [0] * n
    vec[variable - 1] = amount
    return UnipotentAffineMap(n, ident, tuple(vec))


def identity_map(n: int) -> UnipotentAffineMap:
    return shift_map(n, 1, 0)


def apply(m: UnipotentAffineMap, p: Polynomial) -> Polynomial:
    m._check(p)
    total = Polynomial.zero(m.n)
    for e, c in p.sorted_terms():
        total = total + m.apply_monomial(e).scale(c)
    return total


def inverse(m: UnipotentAffineMap) -> UnipotentAffineMap:
    n = m.n
    a = m.matrix
    # forward substitution for A^{-1}; unit diagonal means no division
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            s = Fraction(0)
            for k in range(j, i):
                s += a[i][k] * inv[k][j]
            inv[i][j] = -s
    shift = [-sum((inv[i][k] * m.translation[k] for k in range(n)), Fraction(0))
             for i in range(n)]
    return UnipotentAffineMap(n, tuple(map(tuple, inv)), tuple(shift))


def compose(f: UnipotentAffineMap, g: UnipotentAffineMap) -> UnipotentAffineMap:
    """The automorphism ``p -> f(g(p))``.

    On variables this is ``x -> g_images(f_images)``: applying ``f`` to the
    polynomial ``g(x_i)``.
    """
    if f.n != g.n:
        raise DomainError("maps act on different numbers of variables")
    imgs = [apply(f, gi) for gi in g.images]
    n = f.n
    mat = tuple(tuple(imgs[i].coefficient([int(k == j) for k in range(n)]) for j in range(n))
                for i in range(n))
    vec = tuple(img.constant_term() for img in imgs)
    return UnipotentAffineMap(n, mat, vec)


def delta(m: UnipotentAffineMap, p: Polynomial) -> Polynomial:
    """The sigma-derivation ``p - sigma(p)``."""
    return p - apply(m, p)


def is_invariant(m: UnipotentAffineMap, p: Polynomial) -> bool:
    return delta(m, p).is_zero


def power(m: UnipotentAffineMap, k: int) -> UnipotentAffineMap:
    """``sigma**k`` for any integer ``k``."""
    base = m if k >= 0 else inverse(m)
    out = identity_map(m.n)
    for _ in range(abs(k)):
        out = compose(out, base)
    return out
