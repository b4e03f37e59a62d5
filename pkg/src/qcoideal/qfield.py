"""Exact scalars: rationals, Laurent polynomials in q and the field Q(q).

Polynomial arithmetic is delegated to python-flint's ``fmpq_poly``.  A
:class:`RatFunc` is stored as ``q**shift * num / den`` where ``num`` and
``den`` are ordinary polynomials with nonzero constant terms, ``den`` is
monic and ``gcd(num, den) = 1``.  That representation is unique, so equality
and hashing are structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import flint

BigRat = Fraction

_fq = flint.fmpq
_SCALARS = (int, Fraction, _fq)
_fpoly = flint.fmpq_poly
_ONE_POLY = _fpoly([1])
_ZERO_POLY = _fpoly([])


class FieldError(ArithmeticError):
    """Raised for division by zero or out-of-range q-number arguments."""


def _valuation(p) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise FieldError("valuation of zero polynomial")


def _to_fmpq(c) -> "flint.fmpq":
    if isinstance(c, Fraction):
        return _fq(c.numerator, c.denominator)
    if isinstance(c, _fq):
        return c
    return _fq(c)


class RatFunc:
    """Element of Q(q) in canonical form."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=None, den=None, shift: int = 0, _canonical: bool = False):
        if num is None:
            num = _ZERO_POLY
        if den is None:
            den = _ONE_POLY
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
            self._hash = None
            return
        if den.is_zero():
            raise FieldError("zero denominator")
        if num.is_zero():
            self.num, self.den, self.shift = _ZERO_POLY, _ONE_POLY, 0
            self._hash = None
            return
        vn = _valuation(num)
        vd = _valuation(den)
        if vn:
            num = num.right_shift(vn)
        if vd:
            den = den.right_shift(vd)
        shift += vn - vd
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den, self.shift = num, den, shift
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFunc":
        c = _to_fmpq(c)
        if c == 0:
            return ZERO
        return cls(_fpoly([c]), _ONE_POLY, 0, _canonical=True)

    @classmethod
    def qpow(cls, e: int, c=1) -> "RatFunc":
        c = _to_fmpq(c)
        if c == 0:
            return ZERO
        return cls(_fpoly([c]), _ONE_POLY, e, _canonical=True)

    @classmethod
    def laurent(cls, coeffs: Mapping[int, object]) -> "RatFunc":
        """Build from an exponent -> coefficient map."""
        items = [(e, _to_fmpq(c)) for e, c in coeffs.items() if c != 0]
        if not items:
            return ZERO
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        arr = [_fq(0)] * (hi - lo + 1)
        for e, c in items:
            arr[e - lo] += c
        return cls(_fpoly(arr), _ONE_POLY, lo)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_one(self) -> bool:
        return self.shift == 0 and self.den.is_one() and self.num.is_one()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s1, s2 = self.shift, other.shift
        m = s1 if s1 < s2 else s2
        n1 = self.num.left_shift(s1 - m) if s1 > m else self.num
        n2 = other.num.left_shift(s2 - m) if s2 > m else other.num
        if self.den.is_one() and other.den.is_one():
            n = n1 + n2
            if n.is_zero():
                return ZERO
            v = _valuation(n)
            if v:
                n = n.right_shift(v)
            return RatFunc(n, _ONE_POLY, m + v, _canonical=True)
        if self.den == other.den:
            return RatFunc(n1 + n2, self.den, m)
        return RatFunc(n1 * other.den + n2 * self.den, self.den * other.den, m)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        if self.num.is_zero():
            return self
        return RatFunc(-self.num, self.den, self.shift, _canonical=True)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        sh = self.shift + other.shift
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _ONE_POLY, sh, _canonical=True)
        if other.den.is_one() and other.num.is_constant():
            return RatFunc(self.num * other.num, self.den, sh, _canonical=True)
        if self.den.is_one() and self.num.is_constant():
            return RatFunc(self.num * other.num, other.den, sh, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den, sh)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise FieldError("division by zero in Q(q)")
        return RatFunc(self.den, self.num, -self.shift)

    def __truediv__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = coerce(other)
        if other.num.is_zero():
            raise FieldError("division by zero in Q(q)")
        if other.den.is_one() and other.num.is_constant():
            return RatFunc(self.num / other.num[0], self.den, self.shift - other.shift,
                           _canonical=True) if self.num else ZERO
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return coerce(other) / self

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ONE
        return RatFunc(self.num ** e, self.den ** e, self.shift * e,
                       _canonical=True) if self.num else ZERO

    # comparison -----------------------------------------------------------
    def _key(self):
        return (self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = coerce(other)
            except TypeError:
                return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # conversions ----------------------------------------------------------
    def numerator(self) -> "LaurentPoly":
        return LaurentPoly._from_poly(self.num, self.shift)

    def denominator(self) -> "LaurentPoly":
        return LaurentPoly._from_poly(self.den, 0)

    def laurent_coeffs(self) -> dict[int, Fraction]:
        if not self.den.is_one():
            raise FieldError("not a Laurent polynomial")
        return LaurentPoly._from_poly(self.num, self.shift).coeffs

    def evaluate(self, x):
        """Evaluate at a rational number (exact)."""
        x = _to_fmpq(x)
        val = self.num(x) / self.den(x) * x ** self.shift
        return Fraction(int(val.p), int(val.q))

    def bar(self) -> "RatFunc":
        """Image under q -> q^-1."""
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        rn = _fpoly(list(reversed(self.num.coeffs())))
        rd = _fpoly(list(reversed(self.den.coeffs())))
        return RatFunc(rn, rd, -self.shift - dn + dd)

    def __str__(self) -> str:
        if self.num.is_zero():
            return "0"
        top = _poly_str(self.num, self.shift)
        if self.den.is_one():
            return top
        return "(" + top + ")/(" + _poly_str(self.den, 0) + ")"

    def __repr__(self) -> str:
        return "RatFunc(" + str(self) + ")"


def _mono_str(c, e: int) -> str:
    if e == 0:
        return str(c)
    qs = "q" if e == 1 else "q^" + str(e)
    if c == 1:
        return qs
    if c == -1:
        return "-" + qs
    return str(c) + "*" + qs


def _poly_str(p, shift: int) -> str:
    terms = [(i + shift, c) for i, c in enumerate(p.coeffs()) if c != 0]
    terms.sort(reverse=True)
    out = ""
    for k, (e, c) in enumerate(terms):
        s = _mono_str(c, e)
        if k == 0:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


class LaurentPoly:
    """Finitely supported map exponent -> rational, read-only view."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def _from_poly(cls, p, shift: int) -> "LaurentPoly":
        out = cls()
        for i, c in enumerate(p.coeffs()):
            if c != 0:
                out.coeffs[i + shift] = Fraction(int(c.p), int(c.q))
        return out

    def to_ratfunc(self) -> RatFunc:
        return RatFunc.laurent(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self) -> str:
        return "LaurentPoly(" + str(self.to_ratfunc()) + ")"


def coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, _fq)):
        return RatFunc.const(x)
    if isinstance(x, LaurentPoly):
        return x.to_ratfunc()
    raise TypeError("cannot coerce %r to RatFunc" % (x,))


ZERO = RatFunc(_ZERO_POLY, _ONE_POLY, 0, _canonical=True)
ONE = RatFunc(_ONE_POLY, _ONE_POLY, 0, _canonical=True)
Q = RatFunc(_ONE_POLY, _ONE_POLY, 1, _canonical=True)


def q(e: int = 1) -> RatFunc:
    return RatFunc.qpow(e)


def field_op(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch on op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op " + repr(op))


def parse(text: str) -> RatFunc:
    """Parse the output of ``str(RatFunc)`` (and simple hand-written forms)."""
    text = text.strip()
    if text.startswith("(") and ")/(" in text:
        a, b = text[1:-1].split(")/(")
        return _parse_laurent(a) / _parse_laurent(b)
    return _parse_laurent(text)


def _parse_laurent(text: str) -> RatFunc:
    toks = text.replace(" - ", " + -").split(" + ")
    coeffs: dict[int, Fraction] = {}
    for t in toks:
        t = t.strip()
        if not t:
            continue
        if "q" not in t:
            c, e = Fraction(t), 0
        else:
            if "*" in t:
                cs, qs = t.split("*")
                c = Fraction(cs)
            elif t.startswith("-"):
                c, qs = Fraction(-1), t[1:]
            else:
                c, qs = Fraction(1), t
            e = int(qs[2:]) if qs.startswith("q^") else 1
        coeffs[e] = coeffs.get(e, 0) + c
    return RatFunc.laurent(coeffs)


# q-numbers ----------------------------------------------------------------

@lru_cache(maxsize=None)
def qint(n: int, d: int = 1) -> RatFunc:
    """Balanced q-integer [n] at q_d = q^d."""
    if d <= 0:
        raise FieldError("d must be positive")
    if n < 0:
        return -qint(-n, d)
    return RatFunc.laurent({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> RatFunc:
    if n < 0:
        raise FieldError("qfact needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, d: int = 1) -> RatFunc:
    if n < 0 or k < 0 or k > n:
        raise FieldError("qbinom needs 0 <= k <= n")
    return qfact(n, d) / (qfact(k, d) * qfact(n - k, d))


@lru_cache(maxsize=None)
def qbrace(n: int, d: int = 1, factorial: bool = True) -> RatFunc:
    """{n}_{q_d}; ``factorial`` selects [n]! (q_d - q_d^-1)^n over [n] (q_d - q_d^-1)^n."""
    if n < 0:
        raise FieldError("qbrace needs n >= 0")
    base = qfact(n, d) if factorial else (qint(n, d) if n else ONE)
    return base * (q(d) - q(-d)) ** n


def q_numbers(kind: str, n: int, k: int | None = None, d: int = 1) -> RatFunc:
    if kind == "qint":
        return qint(n, d)
    if kind == "qfact":
        return qfact(n, d)
    if kind == "qbinom":
        if k is None:
            raise FieldError("qbinom needs k")
        return qbinom(n, k, d)
    if kind == "qbrace":
        return qbrace(n, d)
    raise FieldError("unknown q-number kind " + repr(kind))


def rsum(items: Iterable[RatFunc]) -> RatFunc:
    out = ZERO
    for x in items:
        out = out + x
    return out
