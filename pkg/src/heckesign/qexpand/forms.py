"""Eigenform specifications, coefficient tables and the built-in registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from ..exactmath import CycNumber
from ..exactmath.poly import compact
from .characters import DirichletCharacter, _factor
from .series import PowerSeriesQ, delta_series, eisenstein, eta_quotient


class OutOfRange(IndexError):
    """Coefficient index not reachable from the table."""


@dataclass(frozen=True)
class EtaQuotient:
    factors: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Level1Construction:
    """Delta^delta_power * E_eis_weight (eis_weight 0 means no Eisenstein factor)."""

    delta_power: int = 1
    eis_weight: int = 0


@dataclass(frozen=True)
class Ingested:
    path: str


@dataclass(frozen=True)
class EigenformSpec:
    label: str
    weight: int
    level: int
    character: DirichletCharacter = field(default_factory=DirichletCharacter.trivial)
    source: object = None

    def __post_init__(self):
        if self.weight % 2 or self.weight < 2:
            raise ValueError("weight must be even and >= 2")
        if self.level % self.character.modulus:
            raise ValueError("character modulus must divide the level")

    def chi(self, n: int):
        """Character value at n, zero when gcd(n, level) > 1."""
        if gcd(n, self.level) != 1:
            return 0
        return self.character(n)


class CoeffTable:
    """Fourier coefficients a(1..nmax) of a normalized form.

    Prime powers beyond nmax are produced by the Hecke recurrence and
    general n > nmax by multiplicativity; both need ``eigenform=True``.
    """

    __slots__ = ("spec", "nmax", "_a", "eigenform")

    def __init__(self, spec: EigenformSpec, coeffs, eigenform: bool = True):
        """``coeffs[i]`` is a(i + 1)."""
        self.spec = spec
        self._a = (0,) + tuple(compact(c) for c in coeffs)
        self.nmax = len(self._a) - 1
        self.eigenform = eigenform

    @classmethod
    def from_series(cls, spec: EigenformSpec, f: PowerSeriesQ, nmax: int | None = None, eigenform: bool = True):
        nmax = f.prec - 1 if nmax is None else nmax
        return cls(spec, [f[n] for n in range(1, nmax + 1)], eigenform)

    @property
    def weight(self) -> int:
        return self.spec.weight

    @property
    def level(self) -> int:
        return self.spec.level

    def chi(self, n: int):
        return self.spec.chi(n)

    def __getitem__(self, n: int):
        return self.coeff(n)

    def coeff(self, n: int):
        if n < 1:
            return 0
        if n <= self.nmax:
            return self._a[n]
        if not self.eigenform:
            raise OutOfRange(f"a({n}) beyond nmax={self.nmax}")
        out = 1
        for p, e in _factor(n):
            out = out * self.prime_power(p, e)
        return out

    def prime_power(self, p: int, e: int):
        return self.prime_power_seq(p, e)[e]

    def prime_power_seq(self, p: int, emax: int) -> list:
        """[a(1), a(p), ..., a(p^emax)] from the table, continued by
        a(p^(n+1)) = a(p) a(p^n) - chi(p) p^(k-1) a(p^(n-1))."""
        if p > self.nmax:
            raise OutOfRange(f"a({p}) beyond nmax={self.nmax}")
        seq = [1, self._a[p]]
        pe = p
        for _ in range(emax - 1):
            pe *= p
            if pe <= self.nmax:
                seq.append(self._a[pe])
            elif not self.eigenform:
                raise OutOfRange(f"a({pe}) beyond nmax={self.nmax}")
            else:
                break
        if len(seq) <= emax:
            c = self.chi(p) * p ** (self.weight - 1)
            ap = seq[1]
            while len(seq) <= emax:
                seq.append(compact(ap * seq[-1] - c * seq[-2]))
        return seq[: emax + 1]

    def with_coeffs(self, changes: dict[int, object]) -> CoeffTable:
        """Copy with some a(n) replaced (for planted-violation tests)."""
        a = list(self._a[1:])
        for n, v in changes.items():
            a[n - 1] = v
        return CoeffTable(self.spec, a, self.eigenform)

    def as_series(self) -> PowerSeriesQ:
        return PowerSeriesQ(self._a, self.nmax + 1)

    def __repr__(self):
        return f"CoeffTable({self.spec.label!r}, k={self.weight}, N={self.level}, nmax={self.nmax})"


# -- built-ins ---------------------------------------------------------------

BUILTIN_SPECS: dict[str, EigenformSpec] = {}


def _register(spec: EigenformSpec, *aliases: str):
    BUILTIN_SPECS[spec.label] = spec
    for a in aliases:
        BUILTIN_SPECS[a] = spec


_register(EigenformSpec("1.12.a.a", 12, 1, source=Level1Construction()), "delta")
for _k in (16, 18, 20, 22, 26):
    _register(EigenformSpec(f"1.{_k}.a.a", _k, 1, source=Level1Construction(1, _k - 12)))
for _n, _k in ((11, 2), (5, 4), (3, 6), (2, 8)):
    _register(
        EigenformSpec(
            f"{_n}.{_k}.a.a",
            _k,
            _n,
            DirichletCharacter.trivial(_n),
            EtaQuotient(((1, _k), (_n, _k))),
        )
    )


def builtin_labels() -> list[str]:
    """Canonical labels (aliases excluded)."""
    seen = []
    for label, spec in BUILTIN_SPECS.items():
        if spec.label == label:
            seen.append(label)
    return seen


def build_series(spec: EigenformSpec, prec: int) -> PowerSeriesQ:
    src = spec.source
    if isinstance(src, EtaQuotient):
        return eta_quotient(src.factors, prec)
    if isinstance(src, Level1Construction):
        f = delta_series(prec)
        if src.delta_power != 1:
            f = f ** src.delta_power
        if src.eis_weight:
            f = f * eisenstein(src.eis_weight, prec)
        return f
    raise ValueError(f"no series construction for {spec.label}")


def builtin_table(label: str, nmax: int) -> CoeffTable:
    spec = BUILTIN_SPECS[label]
    return CoeffTable.from_series(spec, build_series(spec, nmax + 1), nmax)


def delta_table(nmax: int) -> CoeffTable:
    """tau(n) for n <= nmax."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    return builtin_table("delta", nmax)


# -- validation ----------------------------------------------------------------

def verify_eigenform(t: CoeffTable) -> int | None:
    """Smallest n violating multiplicativity or the prime-power recurrence,
    None when the table is consistent."""
    n_max = t.nmax
    k = t.weight
    bad: list[int] = []
    # a(n) = prod a(p^e): equivalent to a(mn) = a(m)a(n) for coprime m, n
    for n in range(2, n_max + 1):
        fac = _factor(n)
        if len(fac) < 2:
            continue
        prod = 1
        for p, e in fac:
            prod = prod * t.coeff(p ** e)
        if prod != t.coeff(n):
            bad.append(n)
            break
    p = 2
    while p <= n_max:
        if all(p % q for q in range(2, int(p ** 0.5) + 1)):
            c = t.chi(p) * p ** (k - 1)
            ap = t.coeff(p)
            prev, cur, pe = 1, ap, p
            while pe * p <= n_max:
                pe *= p
                nxt = t.coeff(pe)
                if nxt != ap * cur - c * prev:
                    bad.append(pe)
                    break
                prev, cur = cur, nxt
        p += 1
    if t.coeff(1) != 1:
        bad.append(1)
    return min(bad) if bad else None


def verify_reality(t: CoeffTable) -> int | None:
    """Smallest n coprime to N with a(n) != chi(n) conj(a(n))."""
    for n in range(1, t.nmax + 1):
        if gcd(n, t.level) != 1:
            continue
        a = t.coeff(n)
        if isinstance(a, CycNumber):
            rhs = t.chi(n) * a.conj()
        else:
            rhs = t.chi(n) * a
        if a != rhs:
            return n
    return None
