"""Dense univariate polynomials over Q or a cyclotomic field."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .cyclotomic import CycNumber

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def scalar(x):
    """Normalize a field element: rationals become Fraction, CycNumbers
    lying in Q are demoted to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, CycNumber):
        return x.coeffs[0] if x.order == 1 else x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"unsupported coefficient {x!r}")


def compact(x):
    """Like scalar, but integral rationals become int (fast path for tables)."""
    x = scalar(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def unrotate(x, c, e: int = 1):
    """x / c^e for a root of unity c, kept exact (1/c is the conjugate)."""
    if c == 1 or e == 0:
        return compact(x)
    ce = c ** e
    inv = ce.conj() if isinstance(ce, CycNumber) else ce
    return compact(x * inv)


def is_rational(x) -> bool:
    return not isinstance(x, CycNumber) or x.order == 1


class Poly:
    """Polynomial with coefficients listed lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs) -> Poly:
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(scalar(c) if isinstance(c, CycNumber) else c for c in cs)
        return obj

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, c, n: int) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-scalar(r), 1])
        return p

    # -- structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Rational, CycNumber)):
                other = Poly([other])
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            if isinstance(c, CycNumber) and " " in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational, CycNumber)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly._raw([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, CycNumber)):
            c = scalar(other)
            if not c:
                return Poly()
            return Poly._raw([x * c for x in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for k, y in enumerate(b):
                if y:
                    out[i + k] = out[i + k] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Poly(), self
        inv = 1 / other.lc
        q = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c * inv
            q[i - db] = f
            for k in range(db + 1):
                if bc[k]:
                    rem[i - db + k] = rem[i - db + k] - f * bc[k]
        return Poly._raw(q), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return Poly._raw([c * inv for c in self.coeffs])

    def scale_var(self, c) -> Poly:
        """p(c*X)."""
        out, pw = [], Fraction(1)
        c = scalar(c)
        for a in self.coeffs:
            out.append(a * pw)
            pw = pw * c
        return Poly._raw(out)

    def reflect(self) -> Poly:
        """p(-X)."""
        return Poly._raw([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def inflate(self, j: int) -> Poly:
        """p(X^j)."""
        if j == 1 or not self.coeffs:
            return self
        out = [Fraction(0)] * (j * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[i * j] = c
        return Poly._raw(out)

    def support_gcd(self) -> int:
        g = 0
        for i, c in enumerate(self.coeffs):
            if c:
                g = gcd(g, i)
        return g

    def deflate(self, g: int) -> Poly:
        """Inverse of inflate(g); caller guarantees support on multiples of g."""
        if g <= 1:
            return self
        return Poly._raw(self.coeffs[::g])

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return ZERO_DEGREE

    def map(self, fn) -> Poly:
        return Poly([fn(c) for c in self.coeffs])

    def conj(self) -> Poly:
        return Poly._raw([c.conj() if isinstance(c, CycNumber) else c for c in self.coeffs])


# -- integer models ----------------------------------------------------------

def integer_model(f: Poly) -> list[int]:
    """Primitive integer polynomial proportional to a rational f."""
    if not f.is_rational():
        raise ValueError("integer model needs rational coefficients")
    cs = [Fraction(c) for c in f.coeffs]
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    if content:
        if ints[-1] < 0:
            content = -content
        ints = [c // content for c in ints]
    return ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polys (lists low-first, nonzero lc)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for k in range(db + 1):
            a[shift + k] -= c * b[k]
        while a and a[-1] == 0:
            a.pop()
    return a


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for x in a:
        g = gcd(g, x)
    if g == 0:
        return a
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _gcd_rational(f: Poly, g: Poly) -> Poly:
    a, b = integer_model(f), integer_model(g)
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return Poly(a).monic() if a else Poly()
    if _coprime_mod_q(a, b):
        return Poly([1])
    while b:
        r = _int_prem(a, b)
        a, b = b, _primitive(r)
    return Poly(a).monic()


_SMALL_PRIMES = (1000003, 1000033, 1000037)


def _coprime_mod_q(a: list[int], b: list[int]) -> bool:
    """True if gcd(a, b) mod q is constant for a q not dividing the leading
    coefficients, which certifies gcd over Q is constant."""
    from .factor import gcd_mod, trim_mod

    for q in _SMALL_PRIMES:
        if a[-1] % q == 0 or b[-1] % q == 0:
            continue
        g = gcd_mod(trim_mod([x % q for x in a], q), trim_mod([x % q for x in b], q), q)
        return len(g) == 1
    return False


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_rational() and g.is_rational():
        s = gcd(f.support_gcd(), g.support_gcd())
        if s > 1:
            return _gcd_rational(f.deflate(s), g.deflate(s)).inflate(s)
        return _gcd_rational(f, g)
    s = gcd(f.support_gcd(), g.support_gcd())
    if s > 1:
        return poly_gcd(f.deflate(s), g.deflate(s)).inflate(s)
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def poly_resultant(f: Poly, g: Poly):
    """Resultant Res(f, g) over the coefficient field."""
    if not f or not g:
        return Fraction(0)
    if f.is_rational() and g.is_rational():
        return _resultant_euclid(Poly(f.coeffs), Poly(g.coeffs))
    return _resultant_euclid(f, g)


def _resultant_euclid(f: Poly, g: Poly):
    result = Fraction(1)
    while True:
        df, dg = f.degree, g.degree
        if dg == 0:
            return scalar(result * g.lc ** df)
        r = f % g
        if not r:
            return Fraction(0)
        if (df * dg) % 2:
            result = -result
        result = result * g.lc ** (df - r.degree)
        f, g = g, r


def squarefree_part(f: Poly) -> Poly:
    if f.degree <= 0:
        return f
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g) if g.degree > 0 else f
