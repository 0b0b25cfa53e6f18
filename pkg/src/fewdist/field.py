"""Exact arithmetic in Q and in a single real quadratic field Q(sqrt m).

Rationals are plain :class:`fractions.Fraction` values. :class:`QuadExt`
wraps ``a + b*sqrt(m)`` with rational ``a``, ``b`` and a square-free
radicand ``m``. A value with ``b == 0`` is stored with ``m == 0`` so that
equality is structural.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from functools import total_ordering
from typing import Any, Union

from .errors import MixedRadicands, ParseError

Rational = Fraction
_ZERO = Fraction(0)
Scalar = Union[int, Fraction, "QuadExt"]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, r)`` with ``n == f*f*r`` and ``r`` square-free."""
    if n < 0:
        raise ValueError(f"radicand must be non-negative, got {n}")
    if n in (0, 1):
        return 1, n
    f, r = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1
    return f, r * n


def _fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@total_ordering
class QuadExt:
    """Immutable exact number ``a + b*sqrt(m)``."""

    __slots__ = ("_a", "_b", "_m")

    def __init__(self, a: Any = 0, b: Any = 0, m: int = 0) -> None:
        a = _fraction(a)
        b = _fraction(b)
        m = int(m)
        if b and m > 1:
            f, m = squarefree_split(m)
            b = b * f
        if m == 1:
            a, b = a + b, Fraction(0)
        if not b or m == 0:
            b, m = Fraction(0), 0
        self._a = a
        self._b = b
        self._m = m

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, m: int) -> QuadExt:
        # caller guarantees a square-free m
        obj = object.__new__(cls)
        obj._a = a
        if b:
            obj._b = b
            obj._m = m
        else:
            obj._b = _ZERO
            obj._m = 0
        return obj

    @classmethod
    def coerce(cls, x: Scalar) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        return cls(x)

    @classmethod
    def sqrt(cls, n: int) -> QuadExt:
        """Exact square root of a non-negative integer."""
        f, r = squarefree_split(n)
        if n == 0:
            return cls(0)
        if r == 1:
            return cls(f)
        return cls(0, f, r)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def m(self) -> int:
        return self._m

    def is_rational(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._a.denominator == 1

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self._a, -self._b, self._m)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._m

    def sign(self) -> int:
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins; equality impossible for square-free m > 1
        return sa if a * a > b * b * self._m else sb

    def _common_m(self, other: QuadExt) -> int:
        if self._m == other._m or other._m == 0:
            return self._m
        if self._m == 0:
            return other._m
        raise MixedRadicands(f"cannot combine sqrt({self._m}) with sqrt({other._m})")

    def __add__(self, other: Scalar) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return QuadExt._raw(self._a + other, self._b, self._m)
            return NotImplemented
        if not self._b and not other._b:
            return QuadExt._raw(self._a + other._a, _ZERO, 0)
        m = self._common_m(other)
        return QuadExt._raw(self._a + other._a, self._b + other._b, m)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(-self._a, -self._b, self._m)

    def __pos__(self) -> QuadExt:
        return self

    def __sub__(self, other: Scalar) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return QuadExt._raw(self._a - other, self._b, self._m)
            return NotImplemented
        if not self._b and not other._b:
            return QuadExt._raw(self._a - other._a, _ZERO, 0)
        m = self._common_m(other)
        return QuadExt._raw(self._a - other._a, self._b - other._b, m)

    def __rsub__(self, other: Scalar) -> QuadExt:
        return (-self) + other

    def __mul__(self, other: Scalar) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return QuadExt._raw(self._a * other, self._b * other, self._m)
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if not b1 and not b2:
            return QuadExt._raw(a1 * a2, _ZERO, 0)
        m = self._common_m(other)
        return QuadExt._raw(a1 * a2 + b1 * b2 * m, a1 * b2 + a2 * b1, m)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        if not self._b:
            if not self._a:
                raise ZeroDivisionError("division by zero in QuadExt")
            return QuadExt._raw(1 / self._a, Fraction(0), 0)
        n = self.norm()
        return QuadExt._raw(self._a / n, -self._b / n, self._m)

    def __truediv__(self, other: Scalar) -> QuadExt:
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                if not other:
                    raise ZeroDivisionError("division by zero in QuadExt")
                return QuadExt._raw(self._a / other, self._b / other, self._m)
            return NotImplemented
        self._common_m(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> QuadExt:
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> QuadExt:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExt(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            return self._a == other._a and self._b == other._b and self._m == other._m
        if isinstance(other, (int, Fraction)):
            return not self._b and self._a == other
        return NotImplemented

    def __lt__(self, other: Scalar) -> bool:
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b, self._m))

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __float__(self) -> float:
        return float(self.to_decimal(30))

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        ctx = decimal.Context(prec=digits + 10)
        a = ctx.divide(decimal.Decimal(self._a.numerator), decimal.Decimal(self._a.denominator))
        if not self._b:
            return ctx.plus(a)
        b = ctx.divide(decimal.Decimal(self._b.numerator), decimal.Decimal(self._b.denominator))
        root = ctx.sqrt(decimal.Decimal(self._m))
        return ctx.add(a, ctx.multiply(b, root))

    def __repr__(self) -> str:
        if not self._b:
            return f"QuadExt({render_rational(self._a)!r})"
        return f"QuadExt({render_rational(self._a)!r}, {render_rational(self._b)!r}, {self._m})"

    def __str__(self) -> str:
        if not self._b:
            return render_rational(self._a)
        b = self._b
        head = "" if not self._a else render_rational(self._a)
        op = "-" if b < 0 else ("+" if head else "")
        mag = abs(b)
        coef = "" if mag == 1 else render_rational(mag) + "*"
        return f"{head}{op}{coef}sqrt({self._m})"


def sign_of(x: Scalar) -> int:
    """Exact sign of ``x`` in {-1, 0, 1}."""
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def is_integer(x: Scalar) -> bool:
    if isinstance(x, QuadExt):
        return x.is_integer()
    return Fraction(x).denominator == 1


def arith(x: Scalar, y: Scalar, op: str) -> QuadExt:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two exact values."""
    x = QuadExt.coerce(x)
    y = QuadExt.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def common_radicand(values) -> int:
    """The single radicand shared by ``values`` (0 when all rational)."""
    m = 0
    for v in values:
        vm = v.m if isinstance(v, QuadExt) else 0
        if vm and m and vm != m:
            raise MixedRadicands(f"values mix sqrt({m}) and sqrt({vm})")
        m = m or vm
    return m


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc


def render_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def render(x: Scalar) -> str | dict:
    """Text encoding: ``"p/q"`` for rationals, ``{"a", "b", "m"}`` otherwise."""
    x = QuadExt.coerce(x)
    if x.is_rational():
        return render_rational(x.a)
    return {"a": render_rational(x.a), "b": render_rational(x.b), "m": x.m}


def parse(obj: Any, m: int = 0) -> QuadExt:
    """Inverse of :func:`render`. ``m`` is the context radicand, checked for consistency."""
    if isinstance(obj, bool):
        raise ParseError("booleans are not exact values")
    if isinstance(obj, int):
        return QuadExt(obj)
    if isinstance(obj, str):
        return QuadExt(parse_rational(obj))
    if isinstance(obj, dict):
        try:
            a = parse_rational(str(obj.get("a", "0")))
            b = parse_rational(str(obj.get("b", "0")))
            vm = int(obj.get("m", m))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad quadratic literal: {obj!r}") from exc
        if vm < 0:
            raise ParseError(f"negative radicand in {obj!r}")
        value = QuadExt(a, b, vm)
        if m and value.m and value.m != squarefree_split(m)[1]:
            raise MixedRadicands(f"value uses sqrt({value.m}) in a sqrt({m}) context")
        return value
    raise ParseError(f"cannot parse exact value from {obj!r}")


def format_decimal(x: Scalar, digits: int = 12) -> str:
    """Decimal rendering with ``digits`` significant digits."""
    d = QuadExt.coerce(x).to_decimal(digits + 5)
    if not d:
        return "0"
    return format(d, f".{digits}g")
