"""Closed-form rational generating functions for prime-power coefficient
sequences, root-of-unity filters and Dirichlet-series evaluation.

Everything is written in the symmetric data t = alpha + beta and
N = alpha * beta, so alpha and beta are never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import mpmath

from .exactmath import CycNumber, Poly, RealInterval, poly_gcd, real_sign
from .exactmath.interval import rational_power
from .exactmath.poly import compact, unrotate
from .qexpand import CoeffTable, DirichletCharacter, PowerSeriesQ


class DegeneratePair(ValueError):
    """alpha = beta (t^2 = 4N): formulas dividing by alpha - beta break down."""


class EvenJ(ValueError):
    pass


class PoleAt(ArithmeticError):
    def __init__(self, s):
        super().__init__(f"denominator vanishes (or cannot be separated from 0) at s = {s}")
        self.s = s


# -- conjugate pair -----------------------------------------------------------

@dataclass(frozen=True)
class ConjugatePairData:
    """t = a(p)/chi0(p) and N = p^(k-1) for one form and prime."""

    trace: object
    norm: int
    weight: int
    prime: int

    def __post_init__(self):
        if isinstance(self.trace, CycNumber) and not self.trace.is_real():
            raise ValueError("trace must be real")

    @classmethod
    def from_table(cls, t: CoeffTable, p: int, chi0: DirichletCharacter | None = None) -> ConjugatePairData:
        a = t.coeff(p)
        if chi0 is not None:
            a = unrotate(a, chi0(p))
        return cls(compact(a), p ** (t.weight - 1), t.weight, p)

    @property
    def margin(self):
        """Deligne margin 4N - t^2."""
        return compact(4 * self.norm - self.trace * self.trace)

    def margin_sign(self) -> int:
        return real_sign(self.margin)

    def is_degenerate(self) -> bool:
        return self.trace * self.trace == 4 * self.norm


def V_sequence(d: ConjugatePairData, n: int):
    """(alpha^n - beta^n)/(alpha - beta)."""
    return V_list(d, n)[n]


def V_list(d: ConjugatePairData, n: int) -> list:
    v = [0, 1]
    t, N = d.trace, d.norm
    while len(v) <= n:
        v.append(compact(t * v[-1] - N * v[-2]))
    return v[: n + 1] if n >= 1 else v[:1]


def power_sum(d: ConjugatePairData, j: int):
    """alpha^j + beta^j."""
    a, b = 2, d.trace
    if j == 0:
        return a
    for _ in range(j - 1):
        a, b = b, compact(d.trace * b - d.norm * a)
    return b


# -- rational functions ----------------------------------------------------

def _is_one(x) -> bool:
    return x == 1


class RationalFunction:
    """num/den in lowest terms with den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num and den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        if not num:
            den = Poly([1])
        c0 = den[0]
        if not c0:
            raise ValueError("denominator vanishes at X = 0")
        if not _is_one(c0):
            inv = 1 / c0
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, CycNumber)):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction(Poly([other]))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def scale_var(self, c) -> RationalFunction:
        """R(c X)."""
        return RationalFunction(self.num.scale_var(c), self.den.scale_var(c), reduce=False)

    def inflate(self, j: int) -> RationalFunction:
        """R(X^j)."""
        return RationalFunction(self.num.inflate(j), self.den.inflate(j), reduce=False)

    def is_rational(self) -> bool:
        return self.num.is_rational() and self.den.is_rational()


# -- closed forms -------------------------------------------------------------

def _pair_den(d: ConjugatePairData, j: int = 1) -> Poly:
    """(1 - alpha^j X^j)(1 - beta^j X^j)."""
    return Poly([1, -power_sum(d, j), d.norm ** j]).inflate(j)


def closed_P(d: ConjugatePairData) -> RationalFunction:
    return RationalFunction(Poly([1]), _pair_den(d), reduce=False)


def closed_multiples(d: ConjugatePairData, j: int) -> RationalFunction:
    """Sum over n of V_{jn+1} X^(jn), i.e. P restricted to exponents divisible by j:
    (1 + N V_{j-1} X^j) / ((1 - alpha^j X^j)(1 - beta^j X^j))."""
    c = compact(d.norm * V_sequence(d, j - 1))
    return RationalFunction(Poly([1, c]).inflate(j), _pair_den(d, j))


def closed_S1(d: ConjugatePairData) -> RationalFunction:
    """Odd-exponent part of P: t X / ((1 - alpha^2 X^2)(1 - beta^2 X^2))."""
    return RationalFunction(Poly([0, d.trace]), _pair_den(d, 2))


def closed_S1j(d: ConjugatePairData, j: int) -> RationalFunction:
    """P restricted to odd multiples of j (j odd), closed form:

    (V_{j+1} Y + N^(j+1) V_{j-1} Y^3) / ((1 - alpha^(2j) Y^2)(1 - beta^(2j) Y^2)), Y = X^j."""
    if j < 1 or j % 2 == 0:
        raise EvenJ(f"j must be odd and positive, got {j}")
    v = V_list(d, j + 1)
    num = Poly([0, v[j + 1], 0, compact(d.norm ** (j + 1) * v[j - 1])]).inflate(j)
    return RationalFunction(num, _pair_den(d, 2 * j))


def closed_S1j_difference(d: ConjugatePairData, j: int) -> RationalFunction:
    """Same series as closed_S1j, built as multiples(j) - multiples(2j)."""
    if j < 1 or j % 2 == 0:
        raise EvenJ(f"j must be odd and positive, got {j}")
    return closed_multiples(d, j) - closed_multiples(d, 2 * j)


def theorem5_poly(d: ConjugatePairData, m: int) -> Poly:
    """(beta alpha^m - alpha beta^m) X^m + (beta^m - alpha^m) X^(m-1) + (alpha - beta),
    divided by alpha - beta: N V_{m-1} X^m - V_m X^(m-1) + 1."""
    v = V_list(d, m)
    out = [0] * (m + 1)
    out[m] = compact(d.norm * v[m - 1])
    out[m - 1] = out[m - 1] - v[m]
    out[0] = out[0] + 1
    return Poly(out)


def closed_Sl(d: ConjugatePairData, l: int, m: int) -> RationalFunction:
    """P restricted to exponents = l mod m, assembled from S_0 = P filtered to
    multiples of m and the two-term linear system in alpha^l, beta^l:

    S_l = X^(l-1) [V_l - S_0 (V_l - V_{l+1} X + N^l V_{m-l} X^m - N^(l+1) V_{m-l-1} X^(m+1))] / Q_m
    with Q_m = N V_{m-1} X^m - V_m X^(m-1) + 1."""
    if not 0 <= l < m:
        raise ValueError("need 0 <= l < m")
    if d.is_degenerate():
        raise DegeneratePair("t^2 = 4N")
    if m == 1:
        return closed_P(d)
    N = d.norm
    v = V_list(d, m + 1)
    s0 = _multiples_part(d, m)
    bracket = [0] * (m + 2)
    bracket[0] = v[l]
    bracket[1] = -v[l + 1]
    bracket[m] = bracket[m] + N ** l * v[m - l]
    bracket[m + 1] = -N ** (l + 1) * v[m - l - 1]
    inner = RationalFunction(v[l]) - s0 * Poly(bracket)
    num = inner.num
    if l == 0:
        num = _drop_x(num)
    else:
        num = num * Poly.monomial(1, l - 1)
    q = theorem5_poly(d, m)
    return RationalFunction(num, inner.den * q)


@lru_cache(maxsize=256)
def _multiples_part(d: ConjugatePairData, m: int) -> RationalFunction:
    # shared by every class l mod m
    return filter_series(closed_P(d), AllMultiples(m))


def _drop_x(f: Poly) -> Poly:
    if f[0]:
        raise ArithmeticError("numerator not divisible by X")
    return Poly(f.coeffs[1:])


def closed_Sl_direct(d: ConjugatePairData, l: int, m: int) -> RationalFunction:
    """X^l (V_{l+1} + N^(l+1) V_{m-l-1} X^m) / ((1 - alpha^m X^m)(1 - beta^m X^m))."""
    v = V_list(d, m + 1)
    num = [0] * (l + m + 1)
    num[l] = v[l + 1]
    num[l + m] = compact(d.norm ** (l + 1) * v[m - l - 1])
    return RationalFunction(Poly(num), _pair_den(d, m))


# -- filters -------------------------------------------------------------------

@dataclass(frozen=True)
class FilterSpec:
    """Select exponents e with e = offset mod modulus."""

    kind: str
    j: int
    l: int = 0
    m: int = 0

    @property
    def modulus(self) -> int:
        return {"all": self.j, "odd": 2 * self.j, "class": self.m}[self.kind]

    @property
    def offset(self) -> int:
        return {"all": 0, "odd": self.j, "class": self.l}[self.kind]

    def exponent(self, n: int) -> int:
        return self.offset + self.modulus * n

    def label(self) -> str:
        if self.kind == "class":
            return f"class(l={self.l},m={self.m})"
        return f"{self.kind}(j={self.j})"


def AllMultiples(j: int) -> FilterSpec:
    if j < 1:
        raise ValueError("j must be >= 1")
    return FilterSpec("all", j)


def OddMultiples(j: int) -> FilterSpec:
    if j < 1 or j % 2 == 0:
        raise EvenJ(f"odd multiples need odd j, got {j}")
    return FilterSpec("odd", j)


def ResidueClass(l: int, m: int) -> FilterSpec:
    if m < 1 or not 0 <= l < m:
        raise ValueError("need 0 <= l < m")
    return FilterSpec("class", 0, l, m)


def filter_series(R: RationalFunction, spec: FilterSpec) -> RationalFunction:
    """(1/M) sum_mu w^(-r mu) R(w^mu X) with w a primitive M-th root of unity,
    keeping the exponents = r mod M."""
    M, r = spec.modulus, spec.offset
    if M == 1:
        return R
    dens = [R.den.scale_var(CycNumber.zeta(M, mu)) for mu in range(M)]
    full = Poly([1])
    for q in dens:
        full = full * q
    total = Poly()
    for mu in range(M):
        w = CycNumber.zeta(M, -r * mu)
        cof = full.exact_div(dens[mu])
        total = total + R.num.scale_var(CycNumber.zeta(M, mu)) * cof * w
    return RationalFunction(total * Fraction(1, M), full)


# -- expansion and evaluation -------------------------------------------------------

def expand(R: RationalFunction, order: int) -> PowerSeriesQ:
    """Coefficients of X^0 .. X^(order-1) from den * series = num."""
    den = R.den.coeffs
    num = R.num.coeffs
    if den[0] != 1:
        raise ValueError("den(0) must be 1")
    ints = all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) for c in den + num)
    if ints:
        den = tuple(int(c) for c in den)
        num = tuple(int(c) for c in num)
    support = [(i, c) for i, c in enumerate(den) if i and c]
    out = []
    for n in range(order):
        s = num[n] if n < len(num) else 0
        for i, c in support:
            if i > n:
                break
            s = s - c * out[n - i]
        out.append(s if ints else compact(s))
    return PowerSeriesQ(out, order)


def _coeff_interval(c, bits: int) -> RealInterval:
    if isinstance(c, CycNumber) and c.order != 1:
        if not c.is_real():
            raise ValueError("non-real coefficient")
        return c.embed(bits)[0]
    return RealInterval.from_fraction(Fraction(compact(c) if isinstance(c, CycNumber) else c), bits)


def _horner(f: Poly, x: RealInterval, bits: int) -> RealInterval:
    acc = RealInterval.exact(0, bits)
    for c in reversed(f.coeffs):
        acc = acc * x + _coeff_interval(c, bits)
    return acc


def dirichlet_eval(R: RationalFunction, p: int, s, bits: int = 256) -> RealInterval:
    """Certified enclosure of R(p^(-s)) for real rational s."""
    s = Fraction(s)
    x = rational_power(p, -s, bits)
    den = _horner(R.den, x, bits)
    if den.contains_zero():
        raise PoleAt(s)
    return _horner(R.num, x, bits) / den


def partial_sum(t: CoeffTable, p: int, spec: FilterSpec, s, nterms: int, bits: int = 256,
                chi0: DirichletCharacter | None = None) -> RealInterval:
    """Enclosure of the full sum over the class, from nterms terms plus a tail
    bound; the tail uses |V_{e+1}| <= (e+1) N^(e/2)."""
    s = Fraction(s)
    x = rational_power(p, -s, bits)
    N = p ** (t.weight - 1)
    emax = spec.exponent(nterms - 1)
    seq = t.prime_power_seq(p, emax)
    acc = RealInterval.exact(0, bits)
    c0 = chi0(p) if chi0 is not None else 1
    for n in range(nterms):
        e = spec.exponent(n)
        v = unrotate(seq[e], c0, e)
        acc = acc + _coeff_interval(compact(v), bits) * x ** e
    E = spec.exponent(nterms)
    with mpmath.workprec(bits + 20):
        r = mpmath.sqrt(N) * mpmath.power(p, -mpmath.mpf(s.numerator) / s.denominator)
        r = r * (1 + mpmath.mpf(2) ** (-bits))
        if r >= 1:
            raise ValueError("s outside the region where the tail bound applies")
        tail = r ** E * ((E + 1) / (1 - r) + r / (1 - r) ** 2)
    return acc + _symmetric(tail, bits)


def _symmetric(radius, bits: int) -> RealInterval:
    with mpmath.workprec(bits + 20):
        up = mpmath.mpf(radius) * (1 + mpmath.mpf(2) ** (-bits))
    return RealInterval(mpmath.mpf(-up)._mpf_, up._mpf_, bits)


__all__ = [
    "DegeneratePair",
    "EvenJ",
    "PoleAt",
    "ConjugatePairData",
    "V_sequence",
    "V_list",
    "power_sum",
    "RationalFunction",
    "closed_P",
    "closed_multiples",
    "closed_S1",
    "closed_S1j",
    "closed_S1j_difference",
    "closed_Sl",
    "closed_Sl_direct",
    "theorem5_poly",
    "FilterSpec",
    "AllMultiples",
    "OddMultiples",
    "ResidueClass",
    "filter_series",
    "expand",
    "dirichlet_eval",
    "partial_sum",
]
