from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qcoideal.qfield import (ONE, Q, ZERO, FieldError, RatFunc, coerce, parse, q, qbinom,
                             qbrace, qfact, qint)

x = sympy.Symbol("q")

laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(RatFunc.laurent)
nonzero = laurent.filter(bool)


def to_sympy(r: RatFunc):
    return sympy.sympify(str(r).replace("^", "**"), locals={"q": x})


@given(laurent, laurent, nonzero)
def test_field_ops_match_sympy(a, b, c):
    got = (a * b + c) / c - a
    want = sympy.cancel((to_sympy(a) * to_sympy(b) + to_sympy(c)) / to_sympy(c) - to_sympy(a))
    assert sympy.simplify(to_sympy(got) - want) == 0


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE


@given(laurent, nonzero)
def test_str_parse_round_trip(a, b):
    r = a / b
    assert parse(str(r)) == r


@given(laurent, laurent)
def test_bar_is_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert a.bar().bar() == a


@given(laurent, st.fractions(min_value=-3, max_value=3).filter(lambda t: t != 0))
def test_evaluate_matches_sympy(a, t):
    assert Fraction(str(a.evaluate(t))) == Fraction(str(to_sympy(a).subs(x, sympy.Rational(t.numerator, t.denominator))))


def test_canonical_form_is_unique():
    a = (Q - q(-1)) * (Q + q(-1))
    assert a == q(2) - q(-2)
    assert hash(a) == hash(q(2) - q(-2))
    assert (q(2) - ONE) / (Q - ONE) == Q + ONE


@pytest.mark.parametrize("n", range(0, 7))
def test_qint_closed_form(n):
    assert qint(n) * (Q - q(-1)) == q(n) - q(-n)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(1, n)])
def test_qbinom_pascal(n, k):
    assert qbinom(n, k) == q(-k) * qbinom(n - 1, k) + q(n - k) * qbinom(n - 1, k - 1)


def test_qbrace_factorial():
    assert qbrace(2) == qfact(2) * (Q - q(-1)) ** 2
    assert qbrace(2, factorial=False) == qint(2) * (Q - q(-1)) ** 2


def test_errors():
    with pytest.raises(FieldError):
        qint(2, 0)
    with pytest.raises((ZeroDivisionError, FieldError)):
        ONE / ZERO
    assert coerce(Fraction(1, 2)) + coerce(Fraction(1, 2)) == ONE
