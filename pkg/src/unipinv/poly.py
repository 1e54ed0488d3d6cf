"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients over a fixed number of variables
``x1..xn``.  Everything in the package is built on this one value type.
"""
from __future__ import annotations

import re
import warnings
from fractions import Fraction
from functools import total_ordering
from math import gcd
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from ._backend import add_terms, echelon, mul_terms
from .errors import DomainError, PolynomialSyntaxError

Monomial = tuple  # tuple[int, ...] of length variable_count
Scalar = Union[int, Fraction]


@total_ordering
class _NegInf:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "NEG_INF"


NEG_INF = _NegInf()


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def monomial_key(e: Monomial):
    """Sort key for graded lexicographic order (use with ``reverse=True``)."""
    return (sum(e), e)


class Polynomial:
    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, variable_count: int, terms: Mapping | None = None):
        if variable_count < 0:
            raise DomainError("variable_count must be non-negative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != variable_count or any(k < 0 for k in e):
                raise DomainError(f"bad exponent vector {e} for {variable_count} variables")
            c = as_rational(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._n = variable_count
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        # trusted constructor: keys are valid tuples, values nonzero Fractions
        p = object.__new__(cls)
        p._n = n
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: Scalar) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(n, 1)

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        """The variable ``x_i`` (1-based) in a ring of ``n`` variables."""
        if not 1 <= i <= n:
            raise DomainError(f"variable index {i} outside 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: Scalar = 1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): coefficient})

    # -- inspection -------------------------------------------------------
    @property
    def variable_count(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int):
        """Degree in the single variable ``x_i`` (1-based)."""
        if not self._terms:
            return NEG_INF
        return max(e[i - 1] for e in self._terms)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._n, Fraction(0))

    def used_variables(self) -> set[int]:
        """1-based indices of variables that occur."""
        out = set()
        for e in self._terms:
            out.update(i + 1 for i, k in enumerate(e) if k)
        return out

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._n != self._n:
                raise DomainError(
                    f"variable count mismatch: {self._n} vs {other._n}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self._n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(self._n, add_terms(self._terms, o._terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(self._n, add_terms(self._terms, o._terms, -1))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Polynomial._raw(self._n, {e: -c for e, c in self._terms.items()})

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self._n)
        return Polynomial._raw(self._n, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(self._n, mul_terms(self._terms, o._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        result = Polynomial.one(self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self._n, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # -- structure --------------------------------------------------------
    def graded_component(self, d: int) -> "Polynomial":
        if d < 0:
            raise DomainError("degree must be non-negative")
        return Polynomial._raw(self._n, {e: c for e, c in self._terms.items() if sum(e) == d})

    def components(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial._raw(self._n, t) for d, t in sorted(out.items())}

    def leading_form(self) -> "Polynomial":
        """Top-degree homogeneous part (the image in the associated graded ring)."""
        if not self._terms:
            raise DomainError("the zero polynomial has no leading form")
        return self.graded_component(self.degree)

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to ``x_i`` (1-based)."""
        k = i - 1
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * e[k]
        return Polynomial._raw(self._n, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending ``x_i`` to ``images[i-1]``."""
        if len(images) != self._n:
            raise DomainError(f"need {self._n} images, got {len(images)}")
        if not images:
            return Polynomial._raw(0, dict(self._terms))
        m = images[0].variable_count
        if any(not isinstance(g, Polynomial) or g.variable_count != m for g in images):
            raise DomainError("all images must be polynomials over one ring")
        return evaluate(self, images, Polynomial.one(m))

    def subs_var(self, i: int, image: "Polynomial") -> "Polynomial":
        """Substitute a single variable, leaving the others fixed."""
        images = [Polynomial.var(self._n, j) for j in range(1, self._n + 1)]
        images[i - 1] = image
        return self.substitute(images)

    def embed(self, n: int, positions: Sequence[int] | None = None) -> "Polynomial":
        """Reinterpret in ``n`` variables, sending ``x_i`` to ``x_{positions[i-1]}``."""
        if positions is None:
            if n < self._n and self.used_variables() - set(range(1, n + 1)):
                raise DomainError("cannot drop variables that occur")
            positions = list(range(1, self._n + 1))
        out = {}
        for e, c in self._terms.items():
            f = [0] * n
            for k, p in zip(e, positions):
                if k:
                    f[p - 1] += k
            f = tuple(f)
            out[f] = out.get(f, 0) + c
        return Polynomial(n, out)

    # -- text -------------------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(1, self._n + 1)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self._n}, {self.to_text()!r})"


def evaluate(p: Polynomial, images: Sequence, one):
    """Evaluate ``p`` at ring elements ``images`` (anything with ``+``/``*``).

    ``one`` is the unit of the target ring.  Powers of each image are
    cached, so substituting many terms stays cheap.
    """
    cache: list[dict[int, object]] = [{0: one, 1: g} for g in images]

    def power(i, k):
        c = cache[i]
        if k not in c:
            c[k] = power(i, k - 1) * images[i]
        return c[k]

    total = one * 0
    for e, c in p.sorted_terms():
        term = one * c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def variables(n: int) -> list[Polynomial]:
    """``[x1, ..., xn]`` in a ring of ``n`` variables."""
    return [Polynomial.var(n, i) for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_]*\d*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError("unexpected character", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, n, names):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0
        if names is None:
            self.lookup = None
        else:
            self.lookup = {nm: k for k, nm in enumerate(names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a non-negative integer", e)
            base = base ** int(e[1])
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            q = Fraction(int(val))
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    self.error("denominator must be an integer", d)
                if int(d[1]) == 0:
                    self.error("zero denominator", d)
                q = q / int(d[1])
            return Polynomial.constant(self.n, q)
        if kind == "name":
            return Polynomial.var(self.n, self.index_of(val, t) + 1)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        self.error("unexpected token", t)

    def index_of(self, name, tok):
        if self.lookup is not None:
            if name not in self.lookup:
                self.error(f"unknown variable {name!r}", tok)
            return self.lookup[name]
        m = re.fullmatch(r"x(\d+)", name)
        if not m:
            self.error(f"unknown variable {name!r}", tok)
        k = int(m.group(1))
        if not 1 <= k <= self.n:
            self.error(f"variable index {k} outside 1..{self.n}", tok)
        return k - 1


def parse(text: str, variable_count: int, names: Sequence[str] | None = None) -> Polynomial:
    """Parse polynomial text such as ``"x1^2 + x1 + 2*x2"``.

    Without ``names`` the variables are ``x1..xn``; otherwise ``names[i]``
    denotes the ``(i+1)``-th variable.  Raises PolynomialSyntaxError.
    """
    return _Parser(text, variable_count, names).parse()


# ---------------------------------------------------------------------------
# Laurent polynomials in x1


class LaurentPolynomial:
    """Element of ``K[x1, 1/x1, x2, ..., xn]``.

    Same sparse layout as :class:`Polynomial`, except that the first
    exponent may be negative.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, variable_count: int, terms: Mapping | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != variable_count or any(k < 0 for k in e[1:]):
                raise DomainError(f"bad Laurent exponent vector {e}")
            c = as_rational(c)
            clean[e] = clean.get(e, 0) + c
        self._n = variable_count
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, n, terms):
        p = object.__new__(cls)
        p._n = n
        p._terms = terms
        return p

    @classmethod
    def from_polynomial(cls, p: Polynomial, shift: int = 0) -> "LaurentPolynomial":
        """``p * x1**shift``."""
        out = {}
        for e, c in p.terms.items():
            out[(e[0] + shift,) + e[1:]] = c
        return cls._raw(p.variable_count, out)

    @classmethod
    def x1_power(cls, n: int, k: int) -> "LaurentPolynomial":
        return cls._raw(n, {(k,) + (0,) * (n - 1): Fraction(1)})

    @property
    def variable_count(self):
        return self._n

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def min_x1_exponent(self):
        return min((e[0] for e in self._terms), default=0)

    def is_polynomial(self) -> bool:
        return all(e[0] >= 0 for e in self._terms)

    def to_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise DomainError("Laurent polynomial has negative powers of x1")
        return Polynomial._raw(self._n, dict(self._terms))

    def x1_coefficient(self, k: int) -> Polynomial:
        """Coefficient of ``x1**k`` as a polynomial in ``x2..xn`` (x1 slot zero)."""
        out = {(0,) + e[1:]: c for e, c in self._terms.items() if e[0] == k}
        return Polynomial._raw(self._n, out)

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other._n != self._n:
                raise DomainError("variable count mismatch")
            return other
        if isinstance(other, Polynomial):
            if other.variable_count != self._n:
                raise DomainError("variable count mismatch")
            return LaurentPolynomial.from_polynomial(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return LaurentPolynomial._raw(self._n, {(0,) * self._n: c} if c else {})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPolynomial._raw(self._n, add_terms(self._terms, o._terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPolynomial._raw(self._n, add_terms(self._terms, o._terms, -1))

    def __neg__(self):
        return LaurentPolynomial._raw(self._n, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return LaurentPolynomial._raw(self._n, {})
            return LaurentPolynomial._raw(self._n, {e: c * v for e, v in self._terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPolynomial._raw(self._n, mul_terms(self._terms, o._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if not any(e[1:]):
                    return LaurentPolynomial._raw(self._n, {(e[0] * k,) + e[1:]: c ** k})
            raise DomainError("only monomials in x1 can be inverted")
        result = LaurentPolynomial.x1_power(self._n, 0)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, LaurentPolynomial) else other
        if o is NotImplemented:
            return NotImplemented
        return self._n == o._n and self._terms == o._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Canonical text; negative powers of the first variable print as ``X^-k``."""
        if not self._terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(1, self._n + 1)]
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            a = abs(c)
            body = format_rational(a) if not mono else (mono if a == 1 else f"{format_rational(a)}*{mono}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self._n}, {self.to_text()!r})"


# ---------------------------------------------------------------------------
# algebraic independence


def _rank_rational(rows: list[list[Fraction]]) -> int:
    int_rows = []
    for r in rows:
        den = 1
        for v in r:
            den = den * v.denominator // gcd(den, v.denominator)
        int_rows.append({j: int(v * den) for j, v in enumerate(r) if v})
    return len(echelon(int_rows))


def _symbolic_rank(matrix: list[list[Polynomial]]) -> int:
    """Rank over the fraction field by division-free elimination."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                rows[r] = [p * a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def sample_points(n: int, count: int) -> Iterable[list[Fraction]]:
    """Deterministic evaluation points (1,2,..,n), (1,4,..,n^2), ..."""
    for k in range(1, count + 1):
        yield [Fraction(i ** k) for i in range(1, n + 1)]


def jacobian_independent(ps: Sequence[Polynomial], samples: int = 4) -> bool:
    """Characteristic-zero Jacobian test for algebraic independence.

    The Jacobian is evaluated at a few fixed points first; if none of
    them has full row rank the exact fraction-field rank decides.
    """
    if not ps:
        raise DomainError("need at least one polynomial")
    n = ps[0].variable_count
    if any(p.variable_count != n for p in ps):
        raise DomainError("polynomials live in different rings")
    if len(ps) > n:
        warnings.warn(f"{len(ps)} polynomials in {n} variables are always dependent",
                      stacklevel=2)
        return False
    jac = [[p.diff(j) for j in range(1, n + 1)] for p in ps]
    for pt in sample_points(n, samples):
        consts = [Polynomial.constant(n, v) for v in pt]
        rows = [[entry.substitute(consts).constant_term() for entry in row] for row in jac]
        if _rank_rational(rows) == len(ps):
            return True
    return _symbolic_rank(jac) == len(ps)


def exponent_tuples(n: int, degree: int) -> list[Monomial]:
    """All exponent vectors of total degree exactly ``degree``, canonical order."""
    if n == 0:
        return [()] if degree == 0 else []
    return sorted(_compositions(n, degree), key=monomial_key, reverse=True)


def _compositions(n, d):
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            out.append((first,) + rest)
    return out
