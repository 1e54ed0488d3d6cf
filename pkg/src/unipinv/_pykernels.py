"""Pure-Python hot kernels.

Reference implementation of the routines in ``_ckernels.pyx``; the two
modules must stay behaviourally identical (``tests/test_kernels.py``
runs both against each other).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

NAME = "python"


_BITS = 24
_MASK = (1 << _BITS) - 1


def _pack(e):
    k = 0
    for x in e:
        k = (k << _BITS) | x
    return k


def _unpack(k, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = k & _MASK
        k >>= _BITS
    return tuple(out)


def _offsets(terms, n):
    low = [0] * n
    for e in terms:
        for i, x in enumerate(e):
            if x < low[i]:
                low[i] = x
    return tuple(low)


def _cleared(terms, low):
    """Pack exponents (shifted by ``low``) and clear denominators; returns (items, denominator)."""
    den = 1
    for c in terms.values():
        d = c.denominator
        if den % d:
            den = den // gcd(den, d) * d
    if any(low):
        return [(_pack([x - m for x, m in zip(e, low)]), c.numerator * (den // c.denominator))
                for e, c in terms.items()], den
    return [(_pack(e), c.numerator * (den // c.denominator)) for e, c in terms.items()], den


def mul_terms(a, b):
    """Product of two sparse term maps ``{exponent tuple: coefficient}``.

    Exponent vectors are packed into one integer (fields of 24 bits, so
    sums cannot carry) and coefficients are cleared to a common
    denominator, so the inner loop is integer arithmetic only.
    """
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    n = len(next(iter(a)))
    # Laurent inputs may carry negative exponents; shift them out before packing
    la, lb = _offsets(a, n), _offsets(b, n)
    ia, da = _cleared(a, la)
    ib, db = _cleared(b, lb)
    acc = {}
    get = acc.get
    for pa, ca in ia:
        for pb, cb in ib:
            k = pa + pb
            acc[k] = get(k, 0) + ca * cb
    den = da * db
    if any(la) or any(lb):
        low = [x + y for x, y in zip(la, lb)]
        return {tuple(x + m for x, m in zip(_unpack(k, n), low)): Fraction(v, den)
                for k, v in acc.items() if v}
    return {_unpack(k, n): Fraction(v, den) for k, v in acc.items() if v}


def add_terms(a, b, scale=1):
    """Return ``a + scale*b`` for sparse term maps."""
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def echelon(rows):
    """Fraction-free reduced echelon form of sparse integer rows.

    ``rows`` is a list of ``{column: int}`` dicts.  Returns a list of
    ``(pivot_column, row)`` pairs sorted by pivot column.  Each returned
    row is primitive (content 1) with a positive pivot entry, and every
    pivot column is zero in all other returned rows.  Rows are inserted
    in the given order, so the result is deterministic.
    """
    pivots = {}
    for raw in rows:
        row = {k: v for k, v in raw.items() if v}
        while row:
            # reduce against existing pivots in increasing column order
            hit = min((c for c in row if c in pivots), default=None)
            if hit is None:
                break
            prow = pivots[hit]
            p = prow[hit]
            f = row[hit]
            g = gcd(p, f)
            mp, mf = p // g, f // g
            new = {k: mp * v for k, v in row.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - mf * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        if not row:
            continue
        row = _primitive(row)
        pc = min(row)
        pivots[pc] = row
    # back-substitution: clear each pivot column from the other rows
    order = sorted(pivots)
    for pc in reversed(order):
        prow = pivots[pc]
        p = prow[pc]
        for oc in order:
            if oc >= pc:
                break
            orow = pivots[oc]
            f = orow.get(pc)
            if not f:
                continue
            g = gcd(p, f)
            mp, mf = p // g, f // g
            new = {k: mp * v for k, v in orow.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - mf * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            pivots[oc] = _primitive(new)
    return [(pc, pivots[pc]) for pc in order]
