"""Exact arithmetic in the base field: rational functions of the uniformizer t.

Every computation in this package takes place over Q(t), the field of
rational functions in one variable t over the rationals, carrying the t-adic
valuation (order of vanishing at t = 0).  This is the computable core of a
complete discretely valued field with residue characteristic zero: all the
formulas in scope use only field arithmetic and the valuation, so Q(t)
realizes them exactly.

Absolute values are handled additively throughout the package: instead of
|x| = exp(-v(x)) we compute with v(x) itself, so comparisons and min/max of
absolute values become comparisons of rationals.  The only non-rational
value anywhere is INFINITY = math.inf, used for the valuation of zero; it is
absorbing under addition and maximal under comparison, which is exactly the
arithmetic the convention v(0) = +infinity requires.
"""
from __future__ import annotations

import math
from fractions import Fraction

INFINITY = math.inf

# Sparse Laurent polynomial in t: exponent -> nonzero rational coefficient.
Coeffs = dict[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_coeffs(value) -> Coeffs:
    if isinstance(value, dict):
        out: Coeffs = {}
        for exp, c in value.items():
            if isinstance(c, float) or not isinstance(exp, int):
                raise TypeError("polynomial data must be {int: rational}, no floats")
            q = Fraction(c)
            if q:
                out[exp] = q
        return out
    if isinstance(value, float):
        raise TypeError("floats are not exact; use Fraction or int")
    q = Fraction(value)
    return {0: q} if q else {}


def _shift(p: Coeffs, k: int) -> Coeffs:
    return {e + k: c for e, c in p.items()} if k else dict(p)


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _ZERO) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _mul(a: Coeffs, b: Coeffs) -> Coeffs:
    out: Coeffs = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, _ZERO) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _scale(p: Coeffs, c: Fraction) -> Coeffs:
    return {e: v * c for e, v in p.items()}


# -- dense helpers for gcd reduction (exponents >= 0, trimmed lists) --------


def _dense(p: Coeffs) -> list[Fraction]:
    out = [_ZERO] * (max(p) + 1)
    for e, c in p.items():
        out[e] = c
    return out


def _sparse(xs: list[Fraction]) -> Coeffs:
    return {e: c for e, c in enumerate(xs) if c}


def _trim_dense(xs: list[Fraction]) -> list[Fraction]:
    while xs and not xs[-1]:
        xs.pop()
    return xs


def _divmod_dense(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    if len(a) < len(b):
        return [], _trim_dense(a)
    q = [_ZERO] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        if c:
            q[k] = c
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return q, _trim_dense(a[: len(b) - 1])


def _content_free(ints: list[int]) -> list[int]:
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def _int_primitive(xs: list[Fraction]) -> list[int]:
    den = 1
    for c in xs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _content_free([int(c * den) for c in xs])


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over the integers."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        la = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def _gcd_dense(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd via a primitive pseudo-remainder sequence over the integers."""
    first = _int_primitive(_trim_dense(list(a)))
    second = _int_primitive(_trim_dense(list(b)))
    if len(second) > len(first):
        first, second = second, first
    while second:
        r = _prem(first, second)
        first, second = second, _content_free(r)
    lead = first[-1]
    return [Fraction(c, lead) for c in first]


def _div_exact(a: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    q, r = _divmod_dense(a, g)
    if r:
        raise ArithmeticError("inexact polynomial division during reduction")
    return q


def _canonical(num: Coeffs, den: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Reduce num/den to the canonical form.

    The denominator ends up with constant term 1 and no common factor with
    the numerator, so equality is structural and the valuation is the lowest
    exponent of the (Laurent) numerator.
    """
    if not den:
        raise ZeroDivisionError("denominator is zero")
    if not num:
        return {}, {0: _ONE}
    low_n, low_d = min(num), min(den)
    num0 = _shift(num, -low_n)
    den0 = _shift(den, -low_d)
    if len(num0) > 1 and len(den0) > 1:
        # a one-term side is c*t^k, whose t-power is already shifted out
        g = _gcd_dense(_dense(num0), _dense(den0))
        if len(g) > 1:
            num0 = _sparse(_div_exact(_dense(num0), g))
            den0 = _sparse(_div_exact(_dense(den0), g))
    c = den0[0]
    if c != 1:
        num0 = _scale(num0, 1 / c)
        den0 = _scale(den0, 1 / c)
    return _shift(num0, low_n - low_d), den0


class BaseElement:
    """An element of the base field Q(t), kept in reduced canonical form.

    The numerator is a Laurent polynomial in t (negative exponents appear
    when the element has negative valuation) and the denominator is a
    polynomial with constant term 1, coprime to the numerator.  Instances
    are immutable; all operations return new elements.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, numerator, denominator=1):
        num, den = _canonical(_as_coeffs(numerator), _as_coeffs(denominator))
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("BaseElement is immutable")

    @classmethod
    def _make(cls, num: Coeffs, den: Coeffs) -> BaseElement:
        self = object.__new__(cls)
        num, den = _canonical(num, den)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        return self

    # -- valuation ----------------------------------------------------------

    def valuation(self):
        """t-adic order of the element; INFINITY exactly for zero."""
        return min(self._num) if self._num else INFINITY

    def __bool__(self) -> bool:
        return bool(self._num)

    # -- field operations ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, BaseElement):
            return other
        if isinstance(other, (int, Fraction)):
            return BaseElement(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = _add(_mul(self._num, o._den), _mul(o._num, self._den))
        return BaseElement._make(num, _mul(self._den, o._den))

    __radd__ = __add__

    def __neg__(self):
        return BaseElement._make(_scale(self._num, Fraction(-1)), dict(self._den))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BaseElement._make(_mul(self._num, o._num), _mul(self._den, o._den))

    __rmul__ = __mul__

    def inverse(self) -> BaseElement:
        if not self._num:
            raise ZeroDivisionError("inversion of zero in the base field")
        return BaseElement._make(dict(self._den), dict(self._num))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = BaseElement(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- comparison and rendering -------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        return hash(
            (tuple(sorted(self._num.items())), tuple(sorted(self._den.items())))
        )

    def __str__(self) -> str:
        if not self._num:
            return "0"
        num = _poly_str(self._num)
        if self._den == {0: _ONE}:
            return num
        den = _poly_str(self._den)
        if len(self._num) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self) -> str:
        return f"BaseElement({str(self)!r})"


def _term_str(c: Fraction, e: int) -> str:
    if e == 0:
        return str(c)
    t = "t" if e == 1 else f"t^{e}"
    if c == 1:
        return t
    if c == -1:
        return f"-{t}"
    return f"{c}*{t}"


def _poly_str(p: Coeffs) -> str:
    parts = []
    for e in sorted(p):
        s = _term_str(p[e], e)
        if not parts:
            parts.append(s)
        elif s.startswith("-"):
            parts.append(f" - {s[1:]}")
        else:
            parts.append(f" + {s}")
    return "".join(parts)


def uniformizer() -> BaseElement:
    """The uniformizer t, of valuation 1."""
    return BaseElement({1: 1})


def format_rational(v) -> str:
    """Render a rational value (or INFINITY) as 'p/q' in lowest terms."""
    if v == INFINITY:
        return "inf"
    return str(Fraction(v))


def parse_rational(text: str):
    """Parse 'p/q', 'p' or 'inf' back into a Fraction (or INFINITY)."""
    text = text.strip()
    if text == "inf":
        return INFINITY
    return Fraction(text)
