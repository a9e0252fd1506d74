"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, z, ..., z^(phi(m)-1) of the
smallest cyclotomic field that contains them, so equality is coordinate
equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .interval import RealInterval, cos_2pi_frac, sin_2pi_frac


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for k, c in enumerate(den):
            num[i + k] -= q * c
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Precomputed tables for Q(zeta_m); pure constants, shared read-only."""

    def __init__(self, m: int):
        self.m = m
        self.phi = euler_phi(m)
        phi_poly = cyclotomic_polynomial(m)
        phi = self.phi
        # powers[e] = zeta^e in the power basis, e = 0..m-1
        powers = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(m):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * phi_poly[i]
        self.powers = powers
        self.units = [a for a in range(1, m + 1) if gcd(a, m) == 1] if m > 1 else [1]

    def reduce(self, raw) -> list:
        """Reduce sum raw[e] zeta^e (any length) to the power basis."""
        phi, m, powers = self.phi, self.m, self.powers
        out = [0] * phi
        for e, c in enumerate(raw):
            if not c:
                continue
            if e < phi:
                out[e] += c
                continue
            for i, v in enumerate(powers[e % m]):
                if v:
                    out[i] += c * v
        return out

    def galois(self, coeffs, a: int) -> list:
        raw = [0] * self.m
        for i, c in enumerate(coeffs):
            if c:
                raw[(a * i) % self.m] += c
        return self.reduce(raw)


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


def _subgroup_generators(m: int, d: int) -> tuple[int, ...]:
    """Generators of {a in (Z/m)^*: a = 1 mod d}, i.e. Gal(Q(z_m)/Q(z_d))."""
    members = [a for a in _field(m).units if a % d == 1 % d]
    gens: list[int] = []
    span = {1 % m}
    for a in members:
        if a % m in span:
            continue
        gens.append(a)
        frontier = set(span)
        while True:
            new = {(x * g) % m for x in frontier for g in gens} - span
            if not new:
                break
            span |= new
            frontier = new
    return tuple(gens)


@lru_cache(maxsize=None)
def _subfield_data(m: int):
    """For each proper divisor d of m (d = 2 mod 4 skipped): (d, gens, solver)."""
    out = []
    for d in _divisors(m)[1:-1]:
        if d % 4 == 2:
            continue
        gens = _subgroup_generators(m, d)
        out.append((d, gens))
    return tuple(out)


@lru_cache(maxsize=None)
def _coords_solver(m: int, d: int):
    """Rows and inverse matrix mapping Q(z_m) coordinates of an element of
    Q(z_d) to its Q(z_d) coordinates."""
    fm, fd = _field(m), _field(d)
    step = m // d
    cols = [fm.powers[(step * i) % m] for i in range(fd.phi)]
    # pick independent rows by elimination on the transposed system
    n = fd.phi
    rows: list[int] = []
    basis: list[list[Fraction]] = []
    for r in range(fm.phi):
        vec = [Fraction(cols[c][r]) for c in range(n)]
        work = list(vec)
        for piv, b in basis:
            if work[piv]:
                f = work[piv]
                work = [w - f * x for w, x in zip(work, b)]
        nz = next((i for i, w in enumerate(work) if w), None)
        if nz is None:
            continue
        inv = 1 / work[nz]
        basis.append((nz, [w * inv for w in work]))
        rows.append(r)
        if len(rows) == n:
            break
    sq = [[Fraction(cols[c][r]) for c in range(n)] for r in rows]
    return tuple(rows), _invert(sq)


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _canonical(m: int, coeffs: list) -> tuple[int, tuple[Fraction, ...]]:
    coeffs = [Fraction(c) for c in coeffs]
    if m == 1 or not any(coeffs[1:]):
        return 1, (coeffs[0] if coeffs else Fraction(0),)
    if m % 4 == 2:
        # Q(z_m) = Q(z_{m/2}); z_m = -z_{m/2}^((m/2+1)/2)
        half = m // 2
        k = (half + 1) // 2
        fh = _field(half)
        raw = [0] * half
        for i, c in enumerate(coeffs):
            if c:
                raw[(k * i) % half] += -c if i % 2 else c
        return _canonical(half, fh.reduce(raw))
    fm = _field(m)
    for d, gens in _subfield_data(m):
        if all(fm.galois(coeffs, g) == coeffs for g in gens):
            rows, inv = _coords_solver(m, d)
            rhs = [coeffs[r] for r in rows]
            sub = [sum(inv[i][k] * rhs[k] for k in range(len(rows))) for i in range(len(rows))]
            return _canonical(d, sub)
    return m, tuple(coeffs)


class CycNumber:
    """An element of a cyclotomic field, canonically represented.

    ``order`` is the conductor of the smallest cyclotomic field containing
    the value (never 2 mod 4); ``coeffs`` are Fractions in the power basis.
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = list(coeffs)
        if len(coeffs) > order and order > 1:
            raise ValueError("raw coefficient vector longer than order")
        fm = _field(order)
        self.order, self.coeffs = _canonical(order, fm.reduce(coeffs))
        self._hash = None

    @classmethod
    def _make(cls, order: int, coeffs: tuple) -> CycNumber:
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def _from_work(cls, m: int, coeffs: list) -> CycNumber:
        return cls._make(*_canonical(m, coeffs))

    @classmethod
    def zeta(cls, m: int, e: int = 1) -> CycNumber:
        e %= m
        raw = [0] * (e + 1)
        raw[e] = 1
        return cls._from_work(m, _field(m).reduce(raw))

    @classmethod
    def rational(cls, q) -> CycNumber:
        return cls._make(1, (Fraction(q),))

    # -- conversions ------------------------------------------------------
    def is_rational(self) -> bool:
        return self.order == 1

    def to_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def _lift(self, n: int) -> list:
        """Coordinates in Q(z_n); requires self.order | n."""
        if n == self.order:
            return list(self.coeffs)
        step = n // self.order
        raw = [0] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            raw[step * i] = c
        return _field(n).reduce(raw)

    @staticmethod
    def _coerce(other) -> CycNumber | None:
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Rational)):
            return CycNumber._make(1, (Fraction(other),))
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.order == 1 and o.order == 1:
            return CycNumber._make(1, (self.coeffs[0] + o.coeffs[0],))
        n = _lcm(self.order, o.order)
        return CycNumber._from_work(n, [x + y for x, y in zip(self._lift(n), o._lift(n))])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._make(self.order, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

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
        if o.order == 1:
            c = o.coeffs[0]
            if not c:
                return CycNumber._make(1, (Fraction(0),))
            return CycNumber._make(self.order, tuple(x * c for x in self.coeffs))
        if self.order == 1:
            return o * self
        n = _lcm(self.order, o.order)
        a, b = self._lift(n), o._lift(n)
        raw = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for k, y in enumerate(b):
                    if y:
                        raw[i + k] += x * y
        return CycNumber._from_work(n, _field(n).reduce(raw))

    __rmul__ = __mul__

    def galois(self, a: int) -> CycNumber:
        """Apply the automorphism zeta -> zeta^a (gcd(a, order) = 1)."""
        if gcd(a, self.order) != 1:
            raise ValueError("automorphism exponent must be a unit")
        if self.order == 1:
            return self
        return CycNumber._from_work(self.order, _field(self.order).galois(self.coeffs, a))

    def conj(self) -> CycNumber:
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm down to Q from the field of this element."""
        if self.order == 1:
            return self.coeffs[0]
        prod = self
        for a in _field(self.order).units[1:]:
            prod = prod * self.galois(a)
        return prod.to_fraction()

    def inverse(self) -> CycNumber:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return CycNumber._make(1, (1 / self.coeffs[0],))
        rest = CycNumber.rational(1)
        for a in _field(self.order).units[1:]:
            rest = rest * self.galois(a)
        nrm = (self * rest).to_fraction()
        return rest * (1 / nrm)

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

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = CycNumber.rational(1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> CycNumber:
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> CycNumber:
        """Im(x) as an element of the real subfield."""
        i = CycNumber.zeta(4)
        return (self - self.conj()) / (2 * i)

    def is_root_of_unity(self) -> bool:
        e = _lcm(2, self.order)
        return self ** e == 1

    def multiplicative_order(self) -> int | None:
        """Order of a root of unity, None if not a root of unity."""
        e = _lcm(2, self.order)
        if self ** e != 1:
            return None
        for d in _divisors(e):
            if self ** d == 1:
                return d
        return e  # pragma: no cover

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.order == o.order and self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.order == 1 else hash((self.order, self.coeffs))
        return self._hash

    # -- embeddings -------------------------------------------------------
    def embed(self, bits: int = 128) -> tuple[RealInterval, RealInterval]:
        """Certified box (re, im) around the value at zeta_m = exp(2 pi i/m)."""
        re = RealInterval.exact(0, bits)
        im = RealInterval.exact(0, bits)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cq = RealInterval.from_fraction(c, bits)
            if i == 0:
                re = re + cq
                continue
            re = re + cq * cos_2pi_frac(i, self.order, bits)
            im = im + cq * sin_2pi_frac(i, self.order, bits)
        return re, im

    def __complex__(self):
        re, im = self.embed(64)
        return complex(float(re.mid), float(im.mid))

    # -- display / serialization -----------------------------------------
    def __repr__(self):
        return f"CycNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.order == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}


def cyc_canonicalize(order: int, raw) -> CycNumber:
    """Canonical CycNumber for sum raw[i] * zeta_order^i."""
    return CycNumber(order, raw)


def cyc_embed(x, bits: int = 128) -> tuple[RealInterval, RealInterval]:
    if bits < 32:
        raise ValueError("bits must be >= 32")
    return as_cyc(x).embed(bits)


def as_cyc(x) -> CycNumber:
    c = CycNumber._coerce(x)
    if c is None:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")
    return c
