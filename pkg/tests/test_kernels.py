import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unipinv import _backend, _pykernels

try:
    from unipinv import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

exps = st.tuples(st.integers(-2, 4), st.integers(0, 4), st.integers(0, 4))
coefs = st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(bool)
term_maps = st.dictionaries(exps, coefs, max_size=12)
int_rows = st.lists(st.dictionaries(st.integers(0, 12), st.integers(-9, 9), max_size=6), max_size=10)


def naive_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(p + q for p, q in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@given(term_maps, term_maps)
@settings(max_examples=80)
def test_python_mul_matches_naive(a, b):
    assert _pykernels.mul_terms(a, b) == naive_mul(a, b)


@needs_ext
@given(term_maps, term_maps)
@settings(max_examples=80)
def test_backends_agree_on_mul(a, b):
    assert _ckernels.mul_terms(a, b) == _pykernels.mul_terms(a, b)


@needs_ext
@given(term_maps, term_maps, st.integers(-3, 3))
def test_backends_agree_on_add(a, b, k):
    assert _ckernels.add_terms(a, b, k) == _pykernels.add_terms(a, b, k)


@needs_ext
@given(int_rows)
@settings(max_examples=80)
def test_backends_agree_on_echelon(rows):
    assert _ckernels.echelon(rows) == _pykernels.echelon(rows)


def _rank_by_fractions(rows, ncols):
    m = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank, col = 0, 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


@given(int_rows)
@settings(max_examples=80)
def test_echelon_is_reduced_and_rank_correct(rows):
    ech = _pykernels.echelon(rows)
    assert len(ech) == _rank_by_fractions(rows, 13)
    pivots = [pc for pc, _ in ech]
    assert pivots == sorted(pivots)
    for pc, row in ech:
        assert min(row) == pc and row[pc] > 0
        for other_pc, other in ech:
            if other_pc != pc:
                assert pc not in other


def test_packing_handles_large_and_negative_exponents():
    a = {(-5, 300): Fraction(1, 3), (2, 0): Fraction(2)}
    b = {(-1, 7): Fraction(3, 2)}
    assert _pykernels.mul_terms(a, b) == naive_mul(a, b)


def test_backend_selected():
    assert _backend.BACKEND in ("python", "cython")
    if _ckernels is not None and not os.environ.get("UNIPINV_PURE_PYTHON"):
        assert _backend.BACKEND == "cython"


def test_pure_python_override():
    env = dict(os.environ, UNIPINV_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import unipinv; print(unipinv.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
