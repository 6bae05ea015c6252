"""Gaussian rationals: exact complex numbers ``re + im*i`` with rational parts."""

from fractions import Fraction
from numbers import Rational

import flint

__all__ = ["Scalar", "I", "ZERO", "ONE"]


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot convert %r to an exact rational" % (x,))


class Scalar:
    """An element of Q(i).

    >>> Scalar(1, 2) * Scalar(1, -2)
    Scalar(5)
    >>> (Scalar(3, 4) / 5).abs2()
    Fraction(1, 1)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            # only Gaussian integers such as 2+1j are accepted from Python complex
            if not (x.real.is_integer() and x.imag.is_integer()):
                raise TypeError("refusing inexact complex %r" % (x,))
            return cls(int(x.real), int(x.imag))
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars: %r" % (x,))
        return cls(_frac(x))

    @classmethod
    def from_quad(cls, quad):
        """Build from ``[re_num, re_den, im_num, im_den]``."""
        if len(quad) != 4:
            raise ValueError("expected a quadruple, got %r" % (quad,))
        rn, rd, i_n, i_d = (int(v) for v in quad)
        return cls(Fraction(rn, rd), Fraction(i_n, i_d))

    def to_quad(self):
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        num = self * o.conjugate()
        return Scalar(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return "Scalar(%s)" % self.re
        return "Scalar(%s, %s)" % (self.re, self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "%si" % self.im
        sign = "+" if self.im > 0 else "-"
        return "%s%s%si" % (self.re, sign, abs(self.im))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
