"""Exact arithmetic in Q(sqrt(m)) + i*Q(sqrt(m)).

A :class:`Scalar` stores four integer numerators over one positive common
denominator::

    value = (a + b*r + (c + d*r)*i) / den,   r = sqrt(m)

The radicand ``m`` is square-free and fixed per workspace.  Scalars with no
irrational part always carry ``m = 1`` so that rationals and Gaussian
rationals mix freely with any field; combining two irrational scalars over
different radicands is an error.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Scalar",
    "ScalarLike",
    "FieldMismatch",
    "as_scalar",
    "parse_scalar",
    "check_radicand",
    "ZERO",
    "ONE",
    "I",
]


class FieldMismatch(ValueError):
    """Raised when two scalars live in different quadratic fields."""


ScalarLike = Union["Scalar", int, Fraction]


def check_radicand(m: int) -> int:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"radicand must be a positive integer, got {m!r}")
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            raise ValueError(f"radicand must be square-free, got {m}")
        k += 1
    return m


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected an exact rational, got {type(x).__name__}")
    return Fraction(x)


class Scalar:
    __slots__ = ("_a", "_b", "_c", "_d", "_den", "_m", "_hash")

    def __init__(
        self,
        re_rat: int | Fraction = 0,
        re_irr: int | Fraction = 0,
        im_rat: int | Fraction = 0,
        im_irr: int | Fraction = 0,
        m: int = 1,
    ) -> None:
        check_radicand(m)
        parts = [_frac(re_rat), _frac(re_irr), _frac(im_rat), _frac(im_irr)]
        den = math.lcm(*(p.denominator for p in parts))
        a, b, c, d = (p.numerator * (den // p.denominator) for p in parts)
        self._set(a, b, c, d, den, m)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int, m: int) -> Scalar:
        obj = cls.__new__(cls)
        obj._set(a, b, c, d, den, m)
        return obj

    def _set(self, a: int, b: int, c: int, d: int, den: int, m: int) -> None:
        if m == 1:
            a, b, c, d = a + b, 0, c + d, 0
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = math.gcd(a, b, c, d, den)
        if g > 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        if b == 0 and d == 0:
            m = 1
        self._a, self._b, self._c, self._d, self._den, self._m = a, b, c, d, den, m
        self._hash = None

    # -- components -------------------------------------------------------

    @property
    def radicand(self) -> int:
        return self._m

    @property
    def re_rat(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def re_irr(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def im_rat(self) -> Fraction:
        return Fraction(self._c, self._den)

    @property
    def im_irr(self) -> Fraction:
        return Fraction(self._d, self._den)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0 and self._c == 0 and self._d == 0

    def is_real(self) -> bool:
        return self._c == 0 and self._d == 0

    def is_rational(self) -> bool:
        return self._b == 0 and self._c == 0 and self._d == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._a, self._den)

    def real_sign(self) -> int:
        """Sign of a real element ``(a + b*sqrt(m)) / den``."""
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        a, b, m = self._a, self._b, self._m
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with m*b^2
        diff = a * a - m * b * b
        sa = 1 if a > 0 else -1
        return sa if diff > 0 else -sa

    def __complex__(self) -> complex:
        r = math.sqrt(self._m)
        return complex((self._a + self._b * r) / self._den, (self._c + self._d * r) / self._den)

    # -- arithmetic -------------------------------------------------------

    def _field(self, other: Scalar) -> int:
        if self._m == other._m or other._m == 1:
            return self._m
        if self._m == 1:
            return other._m
        raise FieldMismatch(f"cannot combine sqrt({self._m}) and sqrt({other._m}) scalars")

    def __add__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self._field(other)
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Scalar._raw(self._a + other._a, self._b + other._b,
                               self._c + other._c, self._d + other._d, d1, m)
        return Scalar._raw(
            self._a * d2 + other._a * d1,
            self._b * d2 + other._b * d1,
            self._c * d2 + other._c * d1,
            self._d * d2 + other._d * d1,
            d1 * d2,
            m,
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self._a, -self._b, -self._c, -self._d, self._den, self._m)

    def __sub__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self._field(other)
        a, b, c, d = self._a, self._b, self._c, self._d
        e, f, g, h = other._a, other._b, other._c, other._d
        if b == 0 and d == 0 and f == 0 and h == 0:
            return Scalar._raw(a * e - c * g, 0, a * g + c * e, 0, self._den * other._den, 1)
        return Scalar._raw(
            a * e + b * f * m - c * g - d * h * m,
            a * f + b * e - c * h - d * g,
            a * g + b * h * m + c * e + d * f * m,
            a * h + b * g + c * f + d * e,
            self._den * other._den,
            m,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar._raw(self._a, self._b, -self._c, -self._d, self._den, self._m)

    def abs2(self) -> Scalar:
        """``z * conj(z)``, a non-negative real element of the field."""
        return self * self.conjugate()

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        a, b, c, d, m = self._a, self._b, self._c, self._d, self._m
        # |num|^2 = p + q*r with integer p, q
        p = a * a + m * b * b + c * c + m * d * d
        q = 2 * (a * b + c * d)
        norm = p * p - m * q * q
        # den * conj(num) * (p - q r) / norm
        conj = Scalar._raw(a, b, -c, -d, 1, m)
        return conj * Scalar._raw(p * self._den, -q * self._den, 0, 0, norm, m)

    def __truediv__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** -k
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- identity ---------------------------------------------------------

    def _key(self) -> tuple[int, ...]:
        return (self._a, self._b, self._c, self._d, self._den, self._m)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self._a, self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._a, self._den))
            else:
                self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({self.to_literal()!r}, m={self._m})"

    def __str__(self) -> str:
        return self.to_literal()

    def to_literal(self) -> str:
        """Render in the scalar literal grammar, e.g. ``-1/2+1/2*r*i``."""
        terms = []
        for num, suffix in ((self._a, ""), (self._b, "*r"), (self._c, "*i"), (self._d, "*r*i")):
            if num == 0:
                continue
            q = Fraction(num, self._den)
            sign = "-" if q < 0 else "+"
            q = abs(q)
            if q == 1 and suffix:
                body = suffix[1:]
            else:
                body = f"{q}{suffix}"
            terms.append(sign + body)
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text[0] == "+" else text


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return Scalar._raw(x, 0, 0, 0, 1, 1)
    if isinstance(x, Fraction):
        return Scalar._raw(x.numerator, 0, 0, 0, x.denominator, 1)
    return NotImplemented


def as_scalar(x, m: int = 1) -> Scalar:
    """Coerce ``x`` into the field; strings are parsed as literals over ``m``."""
    if isinstance(x, str):
        return parse_scalar(x, m)
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"{x!r} ({type(x).__name__}) is not an element of the scalar field")
    if out._m not in (1, m):
        raise FieldMismatch(f"{out} lies in Q(sqrt({out._m})), workspace radicand is {m}")
    return out


ZERO = Scalar._raw(0, 0, 0, 0, 1, 1)
ONE = Scalar._raw(1, 0, 0, 0, 1, 1)
I = Scalar._raw(0, 0, 1, 0, 1, 1)

_TERM = re.compile(r"([+-])?(\d+(?:/\d+)?)?((?:\*?[ri])*)")


def parse_scalar(text: str, m: int = 1) -> Scalar:
    """Parse a scalar literal such as ``3``, ``-1/2``, ``1+2*r`` or ``-1/2+1/2*r*i``.

    ``r`` denotes sqrt(m) and ``i`` the imaginary unit.  Whitespace is ignored.
    """
    check_radicand(m)
    src = "".join(text.split())
    if not src:
        raise ValueError("empty scalar literal")
    pos = 0
    total = ZERO
    while pos < len(src):
        match = _TERM.match(src, pos)
        sign, coef, factors = match.group(1), match.group(2), match.group(3)
        if match.end() == pos or (coef is None and not factors):
            raise ValueError(f"malformed scalar literal {text!r} at offset {pos}")
        if pos > 0 and sign is None:
            raise ValueError(f"malformed scalar literal {text!r}: missing operator at offset {pos}")
        if coef is None and factors.startswith("*"):
            raise ValueError(f"malformed scalar literal {text!r}: dangling '*'")
        if coef is not None and factors and not factors.startswith("*"):
            raise ValueError(f"malformed scalar literal {text!r}: expected '*' before {factors[0]!r}")
        try:
            value = Fraction(coef) if coef is not None else Fraction(1)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {text!r}") from None
        letters = factors.replace("*", "")
        if letters.count("r") > 1 or letters.count("i") > 1:
            raise ValueError(f"malformed scalar literal {text!r}: repeated factor")
        if sign == "-":
            value = -value
        has_r, has_i = "r" in letters, "i" in letters
        term = Scalar(
            re_rat=value if not has_r and not has_i else 0,
            re_irr=value if has_r and not has_i else 0,
            im_rat=value if has_i and not has_r else 0,
            im_irr=value if has_r and has_i else 0,
            m=m,
        )
        total = total + term
        pos = match.end()
    return total
