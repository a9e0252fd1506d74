"""Dirichlet characters as full value tables."""

from __future__ import annotations

from itertools import product
from math import gcd, lcm

from ..exactmath import CycNumber
from ..exactmath.poly import compact


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _mult_order(a: int, n: int) -> int:
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def _primitive_root(pe: int, phi: int) -> int:
    for g in range(2, pe):
        if gcd(g, pe) == 1 and _mult_order(g, pe) == phi:
            return g
    return 1


def _crt_lift(residue: int, modulus: int, total: int) -> int:
    """x = residue mod modulus and x = 1 mod total/modulus."""
    other = total // modulus
    for x in range(residue % modulus, total, modulus):
        if x % other == 1 % other:
            return x
    raise ValueError("CRT failure")  # pragma: no cover


def unit_group_generators(n: int) -> list[tuple[int, int]]:
    """(generator, order) pairs giving (Z/n)^* as a product of cyclic groups."""
    gens = []
    for p, e in _factor(n):
        pe = p ** e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(3, pe, n), 2))
            elif e >= 3:
                gens.append((_crt_lift(pe - 1, pe, n), 2))
                gens.append((_crt_lift(5, pe, n), 2 ** (e - 2)))
        else:
            phi = pe - pe // p
            gens.append((_crt_lift(_primitive_root(pe, phi), pe, n), phi))
    return gens


def _discrete_logs(n: int, gens) -> dict[int, tuple[int, ...]]:
    logs = {}
    for exps in product(*(range(o) for _, o in gens)):
        u = 1 % n
        for (g, _), e in zip(gens, exps):
            u = u * pow(g, e, n) % n
        logs[u] = exps
    return logs


class DirichletCharacter:
    """Completely multiplicative, N-periodic map to roots of unity and 0."""

    __slots__ = ("modulus", "values")

    def __init__(self, modulus: int, values):
        values = tuple(compact(v) if v else 0 for v in values)
        if len(values) != modulus:
            raise ValueError("need one value per residue class")
        self.modulus = modulus
        self.values = values

    @classmethod
    def trivial(cls, modulus: int = 1) -> DirichletCharacter:
        return cls(modulus, [1 if gcd(n, modulus) == 1 else 0 for n in range(modulus)])

    @classmethod
    def from_exponents(cls, n: int, exps) -> DirichletCharacter:
        """chi(g_i) = zeta_{o_i}^{exps[i]} on unit_group_generators(n)."""
        gens = unit_group_generators(n)
        orders = [o for _, o in gens]
        L = 1
        for o in orders:
            L = lcm(L, o)
        logs = _discrete_logs(n, gens)
        values = [0] * n
        for u, ls in logs.items():
            e = sum(c * l * (L // o) for c, l, o in zip(exps, ls, orders))
            values[u] = CycNumber.zeta(L, e)
        if n == 1:
            values = [1]
        return cls(n, values)

    def __call__(self, n: int):
        return self.values[n % self.modulus]

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.modulus == other.modulus and self.values == other.values

    def __hash__(self):
        return hash((self.modulus, self.values))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise ValueError("characters must share a modulus")
        return DirichletCharacter(self.modulus, [a * b for a, b in zip(self.values, other.values)])

    def square(self) -> DirichletCharacter:
        return self * self

    def value_order(self, n: int) -> int:
        v = self(n)
        if not v:
            raise ValueError(f"chi({n}) = 0")
        if not isinstance(v, CycNumber):
            return 1 if v == 1 else 2
        return v.multiplicative_order()

    @property
    def order(self) -> int:
        o = 1
        for n in range(self.modulus):
            if gcd(n, self.modulus) == 1:
                o = lcm(o, self.value_order(n))
        return o

    def is_trivial(self) -> bool:
        return self.order == 1

    def extend(self, modulus: int) -> DirichletCharacter:
        """The induced character modulo a multiple of the modulus."""
        if modulus % self.modulus:
            raise ValueError("new modulus must be a multiple")
        return DirichletCharacter(
            modulus, [self(n) if gcd(n, modulus) == 1 else 0 for n in range(modulus)]
        )

    def exponents(self) -> tuple[int, ...]:
        """Exponents c_i with chi(g_i) = zeta_{o_i}^{c_i}."""
        out = []
        for g, o in unit_group_generators(self.modulus):
            v = self(g)
            out.append(next(c for c in range(o) if CycNumber.zeta(o, c) == v))
        return tuple(out)

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}, order={self.order})"


def characters_mod(n: int) -> list[DirichletCharacter]:
    gens = unit_group_generators(n)
    return [DirichletCharacter.from_exponents(n, e) for e in product(*(range(o) for _, o in gens))]


def sqrt_characters(chi: DirichletCharacter) -> list[DirichletCharacter]:
    """All chi0 with chi0^2 = chi, by halving exponents on each generator."""
    n = chi.modulus
    gens = unit_group_generators(n)
    choices = []
    for (_, o), c in zip(gens, chi.exponents()):
        choices.append([e for e in range(o) if (2 * e - c) % o == 0])
    return [DirichletCharacter.from_exponents(n, e) for e in product(*choices)]
