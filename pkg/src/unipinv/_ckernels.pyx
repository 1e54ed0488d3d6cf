# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; see ``_pykernels.py`` for the reference semantics."""
from fractions import Fraction
from math import gcd

NAME = "cython"


cdef int _BITS = 24
cdef object _MASK = (1 << 24) - 1


cdef object _pack(tuple e):
    cdef object k = 0
    for x in e:
        k = (k << _BITS) | x
    return k


cdef tuple _unpack(object k, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        out[i] = k & _MASK
        k = k >> _BITS
    return tuple(out)


cdef tuple _offsets(dict terms, Py_ssize_t n):
    cdef list low = [0] * n
    cdef Py_ssize_t i
    cdef tuple e
    for e in terms:
        for i in range(n):
            if e[i] < low[i]:
                low[i] = e[i]
    return tuple(low)


cdef tuple _cleared(dict terms, tuple low, bint shifted):
    cdef object den = 1
    cdef list items = []
    for c in terms.values():
        d = c.denominator
        if den % d:
            den = den // gcd(den, d) * d
    for e, c in terms.items():
        if shifted:
            e = tuple([x - m for x, m in zip(e, low)])
        items.append((_pack(e), c.numerator * (den // c.denominator)))
    return items, den


def mul_terms(dict a, dict b):
    cdef dict acc = {}
    cdef list ia, ib
    cdef Py_ssize_t n, i, j, la, lb
    cdef tuple ta, tb, lowa, lowb
    cdef bint sa, sb
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    n = len(next(iter(a)))
    lowa = _offsets(a, n)
    lowb = _offsets(b, n)
    sa = any(lowa)
    sb = any(lowb)
    ia, da = _cleared(a, lowa, sa)
    ib, db = _cleared(b, lowb, sb)
    la = len(ia)
    lb = len(ib)
    for i in range(la):
        ta = <tuple>ia[i]
        pa = ta[0]
        ca = ta[1]
        for j in range(lb):
            tb = <tuple>ib[j]
            k = pa + tb[0]
            v = acc.get(k)
            if v is None:
                acc[k] = ca * tb[1]
            else:
                acc[k] = v + ca * tb[1]
    den = da * db
    if sa or sb:
        low = [x + y for x, y in zip(lowa, lowb)]
        return {tuple([x + m for x, m in zip(_unpack(k, n), low)]): Fraction(v, den)
                for k, v in acc.items() if v}
    return {_unpack(k, n): Fraction(v, den) for k, v in acc.items() if v}


def add_terms(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


cdef dict _primitive(dict row):
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


cdef dict _combine(dict row, dict prow, Py_ssize_t col):
    p = prow[col]
    f = row[col]
    g = gcd(p, f)
    mp = p // g
    mf = f // g
    cdef dict new = {k: mp * v for k, v in row.items()}
    for k, v in prow.items():
        w = new.get(k, 0) - mf * v
        if w:
            new[k] = w
        else:
            new.pop(k, None)
    return new


def echelon(list rows):
    cdef dict pivots = {}
    cdef dict row, prow, orow
    cdef object hit
    cdef list order
    cdef Py_ssize_t col, pc, oc
    for raw in rows:
        row = {k: v for k, v in raw.items() if v}
        while row:
            hit = None
            for k in row:
                if k in pivots and (hit is None or k < hit):
                    hit = k
            if hit is None:
                break
            row = _combine(row, pivots[hit], hit)
            if row:
                row = _primitive(row)
        if not row:
            continue
        row = _primitive(row)
        pivots[min(row)] = row
    order = sorted(pivots)
    for pc in reversed(order):
        prow = pivots[pc]
        for oc in order:
            if oc >= pc:
                break
            orow = pivots[oc]
            if not orow.get(pc):
                continue
            pivots[oc] = _primitive(_combine(orow, prow, pc))
    return [(pc, pivots[pc]) for pc in order]
