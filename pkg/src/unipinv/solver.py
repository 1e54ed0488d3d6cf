"""Brute-force invariants: the exact kernel of 1 - sigma on a bounded space.

Nothing here uses the closed forms; the matrix of 1 - sigma is assembled
by applying the map to each monomial, so this module can serve as an
independent check on everything in :mod:`unipinv.invariants`.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from ._backend import echelon
from .automorphism import UnipotentAffineMap, delta
from .errors import DomainError
from .poly import Monomial, Polynomial, exponent_tuples

FILTERED = "filtered"
GRADED = "graded"


def default_threads() -> int:
    raw = os.environ.get("UNIPINV_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def monomial_basis(n: int, d: int, mode: str = FILTERED) -> tuple[Monomial, ...]:
    """Monomials of degree <= d (filtered) or == d (graded), highest first."""
    if d < 0:
        raise DomainError("degree bound must be >= 0")
    if mode == GRADED:
        return tuple(exponent_tuples(n, d))
    if mode != FILTERED:
        raise DomainError(f"mode must be 'filtered' or 'graded', not {mode!r}")
    out = []
    for k in range(d, -1, -1):
        out.extend(exponent_tuples(n, k))
    return tuple(out)


@dataclass(frozen=True)
class LinearSystem:
    """Matrix of 1 - sigma on the span of ``monomials``.

    ``columns[j]`` holds (1 - sigma)(monomials[j]) as ``{row index: value}``
    where row indices refer to the same monomial list.
    """

    monomials: tuple
    columns: tuple

    @property
    def size(self) -> int:
        return len(self.monomials)

    def rows(self) -> list[dict[int, Fraction]]:
        out = [dict() for _ in self.monomials]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return [r for r in out if r]

    def dense(self) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.size for _ in range(self.size)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                m[i][j] = v
        return m


def build_system(m: UnipotentAffineMap, d: int, mode: str = FILTERED,
                 threads: int | None = None) -> LinearSystem:
    mons = monomial_basis(m.n, d, mode)
    index = {e: i for i, e in enumerate(mons)}

    def column(e):
        img = delta(m, Polynomial.monomial(e))
        col = {}
        for t, c in img.terms.items():
            if t not in index:
                raise DomainError("the map does not preserve the bounded space")
            col[index[t]] = c
        return col

    threads = default_threads() if threads is None else threads
    if threads > 1 and len(mons) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cols = list(pool.map(column, mons))
    else:
        cols = [column(e) for e in mons]
    return LinearSystem(mons, tuple(cols))


def _integer_row(row: dict) -> dict[int, int]:
    den = lcm(*(Fraction(v).denominator for v in row.values())) if row else 1
    return {k: int(Fraction(v) * den) for k, v in row.items()}


def rref(rows: Sequence[dict]) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form over Q with monic pivots.

    Rows are sparse ``{column: value}`` maps; pivots are taken at the
    lowest column index.  The result depends only on the row space.
    """
    ech = echelon([_integer_row(r) for r in rows if r])
    out = []
    for pc, row in ech:
        p = row[pc]
        out.append((pc, {k: Fraction(v, p) for k, v in row.items()}))
    return out


def nullspace(system: LinearSystem) -> list[dict[int, Fraction]]:
    """Basis of {c : sum_j c_j column_j = 0}, in reduced echelon form."""
    ech = rref(system.rows())
    pivot_cols = {pc for pc, _ in ech}
    kernel = []
    for f in range(system.size):
        if f in pivot_cols:
            continue
        vec = {f: Fraction(1)}
        for pc, row in ech:
            v = row.get(f)
            if v:
                vec[pc] = -v
        kernel.append(vec)
    return [row for _, row in rref(kernel)]


@dataclass(frozen=True)
class InvariantBasis:
    degree: int
    mode: str
    map: UnipotentAffineMap
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def contains(self, p: Polynomial) -> bool:
        return in_span(p, self.basis)

    def spans_same(self, others: Sequence[Polynomial]) -> bool:
        return same_span(self.basis, others)


def _solve(m: UnipotentAffineMap, d: int, mode: str, threads: int | None) -> InvariantBasis:
    system = build_system(m, d, mode, threads)
    polys = []
    for vec in nullspace(system):
        polys.append(Polynomial(m.n, {system.monomials[i]: c for i, c in vec.items()}))
    return InvariantBasis(d, mode, m, tuple(polys))


def solve_filtered(m: UnipotentAffineMap, d: int, threads: int | None = None) -> InvariantBasis:
    """Basis of the invariants of degree <= d."""
    if d < 0:
        raise DomainError("degree bound must be >= 0")
    return _solve(m, d, FILTERED, threads)


def solve_graded(m: UnipotentAffineMap, d: int, threads: int | None = None) -> InvariantBasis:
    """Basis of the homogeneous invariants of degree d (linear maps only)."""
    if d < 0:
        raise DomainError("degree must be >= 0")
    if not m.is_linear:
        raise DomainError("graded solve needs a map with zero translation")
    return _solve(m, d, GRADED, threads)


def dimension_table(m: UnipotentAffineMap, d_max: int, mode: str = FILTERED,
                    threads: int | None = None) -> list[int]:
    if d_max < 0:
        raise DomainError("d_max must be >= 0")
    solve = solve_graded if mode == GRADED else solve_filtered
    if mode not in (FILTERED, GRADED):
        raise DomainError(f"mode must be 'filtered' or 'graded', not {mode!r}")
    return [solve(m, d, threads).dimension for d in range(d_max + 1)]


def _coordinate_rows(polys: Sequence[Polynomial]) -> tuple[list[dict], dict]:
    index = {}
    for p in polys:
        for e in p.terms:
            index.setdefault(e, None)
    order = sorted(index, key=lambda e: (-sum(e), tuple(-x for x in e)))
    pos = {e: i for i, e in enumerate(order)}
    return [{pos[e]: c for e, c in p.terms.items()} for p in polys], pos


def rank(polys: Sequence[Polynomial]) -> int:
    """Dimension of the linear span of ``polys``."""
    rows, _ = _coordinate_rows(list(polys))
    return len(rref(rows))


def in_span(p: Polynomial, polys: Sequence[Polynomial]) -> bool:
    return rank(list(polys) + [p]) == rank(polys)


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    """Exact equality of linear spans (mutual reduction via rank)."""
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


def linearly_independent(polys: Sequence[Polynomial]) -> bool:
    return rank(polys) == len(polys)
