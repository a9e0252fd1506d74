"""Certified real intervals with outward-rounded binary endpoints.

Arithmetic rounds lower endpoints toward -inf and upper endpoints toward
+inf through mpmath's low-level mpf routines, so every result encloses the
exact value. Transcendental kernels (cos, sin, acos, exp, log) are evaluated
with guard bits and widened by an absolute slack far above their error.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

import mpmath
from mpmath.libmp import (
    fzero,
    from_int,
    from_rational,
    mpf_add,
    mpf_div,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_sqrt,
    mpf_sub,
    mpf_sign,
    mpf_shift,
    to_str,
)

_F, _C = "f", "c"


class Sign(Enum):
    NEGATIVE = -1
    UNKNOWN = 0
    POSITIVE = 1


def _min(a, b):
    return a if mpf_lt(a, b) else b


def _max(a, b):
    return b if mpf_lt(a, b) else a


class RealInterval:
    """Closed interval [lo, hi] carrying a working precision in bits."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if mpf_lt(hi, lo):
            raise ValueError("empty interval")
        self.lo, self.hi, self.prec = lo, hi, prec

    # -- constructors -----------------------------------------------------
    @classmethod
    def exact(cls, n: int, prec: int) -> RealInterval:
        v = from_int(n)
        return cls(v, v, prec)

    @classmethod
    def from_fraction(cls, q, prec: int) -> RealInterval:
        q = Fraction(q)
        if q.denominator == 1:
            return cls.exact(q.numerator, prec)
        return cls(
            from_rational(q.numerator, q.denominator, prec, _F),
            from_rational(q.numerator, q.denominator, prec, _C),
            prec,
        )

    @classmethod
    def around(cls, value: mpmath.mpf, slack_bits: int, prec: int) -> RealInterval:
        """Ball around an mpmath value with absolute slack 2^-slack_bits
        (relative to max(1, |value|))."""
        v = value._mpf_
        mag = mpmath.mag(value) if value else 0
        slack = mpf_shift(from_int(1), max(mag, 0) - slack_bits)
        return cls(mpf_sub(v, slack, prec, _F), mpf_add(v, slack, prec, _C), prec)

    # -- views -------------------------------------------------------------
    @property
    def mid(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_shift(mpf_add(self.lo, self.hi, self.prec + 2, "n"), -1))

    @property
    def rad(self) -> mpmath.mpf:
        m = mpf_shift(mpf_add(self.lo, self.hi, self.prec + 2, "n"), -1)
        r = _max(mpf_sub(self.hi, m, 53, _C), mpf_sub(m, self.lo, 53, _C))
        return mpmath.mp.make_mpf(r)

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.lo)

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.hi)

    def sign(self) -> Sign:
        if mpf_sign(self.lo) > 0:
            return Sign.POSITIVE
        if mpf_sign(self.hi) < 0:
            return Sign.NEGATIVE
        return Sign.UNKNOWN

    def contains(self, x) -> bool:
        if isinstance(x, RealInterval):
            return not mpf_lt(x.lo, self.lo) and not mpf_lt(self.hi, x.hi)
        if isinstance(x, Fraction) or isinstance(x, int):
            q = Fraction(x)
            lo = from_rational(q.numerator, q.denominator, self.prec + 64, _F)
            hi = from_rational(q.numerator, q.denominator, self.prec + 64, _C)
            return not mpf_lt(lo, self.lo) and not mpf_lt(self.hi, hi)
        v = mpmath.mpf(x)._mpf_
        return not mpf_lt(v, self.lo) and not mpf_lt(self.hi, v)

    def contains_zero(self) -> bool:
        return self.sign() is Sign.UNKNOWN

    def overlaps(self, other: RealInterval) -> bool:
        return not (mpf_lt(self.hi, other.lo) or mpf_lt(other.hi, self.lo))

    def width(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_sub(self.hi, self.lo, 53, _C))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> RealInterval:
        if isinstance(other, RealInterval):
            return other
        return RealInterval.from_fraction(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return RealInterval(mpf_add(self.lo, o.lo, p, _F), mpf_add(self.hi, o.hi, p, _C), p)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return RealInterval(mpf_sub(self.lo, o.hi, p, _F), mpf_sub(self.hi, o.lo, p, _C), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lows = [mpf_mul(a, b, p, _F) for a, b in pairs]
        highs = [mpf_mul(a, b, p, _C) for a, b in pairs]
        lo, hi = lows[0], highs[0]
        for x in lows[1:]:
            lo = _min(lo, x)
        for x in highs[1:]:
            hi = _max(hi, x)
        return RealInterval(lo, hi, p)

    __rmul__ = __mul__

    def reciprocal(self) -> RealInterval:
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        one = from_int(1)
        return RealInterval(mpf_div(one, self.hi, self.prec, _F), mpf_div(one, self.lo, self.prec, _C), self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, e: int):
        if e < 0:
            return (self ** (-e)).reciprocal()
        result = RealInterval.exact(1, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def sqrt(self) -> RealInterval:
        if mpf_sign(self.hi) < 0:
            raise ValueError("sqrt of negative interval")
        lo = self.lo if mpf_sign(self.lo) > 0 else fzero
        return RealInterval(mpf_sqrt(lo, self.prec, _F), mpf_sqrt(self.hi, self.prec, _C), self.prec)

    def __repr__(self):
        return f"RealInterval([{to_str(self.lo, 20)}, {to_str(self.hi, 20)}], prec={self.prec})"


def _kernel(fn, args, bits: int) -> RealInterval:
    with mpmath.workprec(bits + 40):
        val = fn(*args)
    return RealInterval.around(val, bits + 20, bits)


def cos_2pi_frac(a: int, m: int, bits: int) -> RealInterval:
    """Enclosure of cos(2 pi a / m)."""
    a %= m
    if 4 * a % m == 0:
        return RealInterval.exact((1, 0, -1, 0)[4 * a // m], bits)
    return _kernel(lambda: mpmath.cospi(mpmath.mpf(2 * a) / m), (), bits)


def sin_2pi_frac(a: int, m: int, bits: int) -> RealInterval:
    a %= m
    if 4 * a % m == 0:
        return RealInterval.exact((0, 1, 0, -1)[4 * a // m], bits)
    return _kernel(lambda: mpmath.sinpi(mpmath.mpf(2 * a) / m), (), bits)


def acos_interval(x: RealInterval) -> RealInterval:
    """Enclosure of arccos over x intersected with [-1, 1]."""
    bits = x.prec
    one = mpmath.mpf(1)
    lo = max(min(x.lower, one), -one)
    hi = max(min(x.upper, one), -one)
    # arccos is decreasing
    a = _kernel(mpmath.acos, (hi,), bits)
    b = _kernel(mpmath.acos, (lo,), bits)
    return RealInterval(a.lo, b.hi, bits)


def rational_power(p: int, s: Fraction, bits: int) -> RealInterval:
    """Enclosure of p**s for integer p > 0 and rational s."""
    s = Fraction(s)
    if s.denominator == 1:
        e = s.numerator
        return RealInterval.from_fraction(Fraction(p) ** e, bits)
    return _kernel(lambda: mpmath.power(p, mpmath.mpf(s.numerator) / s.denominator), (), bits)
