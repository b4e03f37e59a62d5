from __future__ import annotations

import pytest
import sympy
from hypothesis import given, strategies as st

from qcoideal import linalg
from qcoideal.qfield import ONE, Q, ZERO, RatFunc, q

entry = st.sampled_from([ZERO, ONE, -ONE, Q, q(-1), Q + ONE, q(2) - ONE, ONE * 2])
square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entry, min_size=n, max_size=n),
                                                      min_size=n, max_size=n))

x = sympy.Symbol("q")


def to_sympy(m):
    return sympy.Matrix([[sympy.sympify(str(c).replace("^", "**"), locals={"q": x}) for c in r]
                         for r in m])


@given(square)
def test_rank_matches_sympy(m):
    assert linalg.matrix_rank(m) == to_sympy(m).rank(simplify=True)


@given(square)
def test_inverse_or_nullspace(m):
    n = len(m)
    ns = linalg.nullspace(m, n)
    assert len(ns) == n - linalg.matrix_rank(m)
    for v in ns:
        assert all(not c for c in linalg.matvec(m, v))
    if not ns:
        inv = linalg.inverse(m)
        assert linalg.matmul(m, inv) == linalg.identity(n)


@given(square)
def test_charpoly_roots_are_eigenvalues(m):
    n = len(m)
    for r in linalg.charpoly_roots(m):
        shifted = [[m[i][j] - (r if i == j else ZERO) for j in range(n)] for i in range(n)]
        assert linalg.matrix_rank(shifted) < n


def test_charpoly_roots_diagonal():
    m = [[Q, ZERO], [ONE, q(-2)]]
    assert set(linalg.charpoly_roots(m)) == {Q, q(-2)}


def test_echelon_express_with_tags():
    e = linalg.Echelon()
    e.add({"a": ONE, "b": Q}, {0: ONE})
    e.add({"b": ONE}, {1: ONE})
    comb = e.express({"a": ONE * 2, "b": ONE})
    assert comb == {0: ONE * 2, 1: ONE - 2 * Q}
    assert e.express({"c": ONE}) is None
    assert not e.add({"a": ONE, "b": ONE})


def test_nilpotent():
    assert linalg.is_nilpotent([[ZERO, ONE], [ZERO, ZERO]])
    assert not linalg.is_nilpotent([[ZERO, ONE], [ONE, ZERO]])


def test_span_equal():
    a = [{0: ONE}, {1: ONE}]
    b = [{0: ONE, 1: ONE}, {0: ONE, 1: -ONE}]
    assert linalg.span_equal(a, b)
    assert not linalg.span_equal(a, [{0: ONE}])
