"""Generalized Hecke operators T_j(p) = G_j(T(p)) on coefficients and on
level-1 cusp spaces."""

from __future__ import annotations

from dataclasses import dataclass

from .exactmath import Poly, Verdict, irreducibility_certificate, poly_resultant
from .exactmath.poly import compact
from .qexpand import CoeffTable, dim_cusp_forms_level1, miller_basis


class PrecisionTooLow(ValueError):
    """The q-expansion precision cannot determine the matrix."""


@dataclass(frozen=True)
class TjPolynomial:
    """G_j(T) with G_0 = 2, G_1 = T, G_{j+1} = T G_j - c G_{j-1}, c = chi(p) p^(k-1)."""

    j: int
    c: object
    poly: Poly

    def __call__(self, x):
        if isinstance(x, (list, tuple)):
            return _poly_at_matrix(self.poly, [list(r) for r in x])
        return compact(self.poly(x))


def tj_in_t(j: int, pk1, chi_p=1) -> TjPolynomial:
    if j < 0:
        raise ValueError("j must be >= 0")
    c = compact(chi_p * pk1)
    T = Poly.x()
    prev, cur = Poly([2]), T
    if j == 0:
        return TjPolynomial(0, c, prev)
    for _ in range(j - 1):
        prev, cur = cur, T * cur - prev * c
    return TjPolynomial(j, c, cur)


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def apply_tj_coeffs(t: CoeffTable, p: int, j: int, n: int):
    """n-th coefficient of G_j(T(p)) f.

    b(n) = a(p^j n) + c^j a(n / p^j) - c^(v+1) a(p^(j-2v-2) n) when v <= j - 2,
    with c = chi(p) p^(k-1) and v = v_p(n). Without the last term this is
    G_j(T(p)) only for j <= 1."""
    if j == 0:
        return compact(2 * t.coeff(n))
    c = t.chi(p) * p ** (t.weight - 1)
    pj = p ** j
    out = t.coeff(pj * n)
    if n % pj == 0:
        out = out + c ** j * t.coeff(n // pj)
    v = _vp(n, p)
    if v <= j - 2:
        out = out - c ** (v + 1) * t.coeff(n // p ** v * p ** (j - v - 2))
    return compact(out)


def lambda_j(t: CoeffTable, p: int, j: int):
    """Eigenvalue of T_j(p) on t: G_j(a(p)) = alpha^j + beta^j.

    For j = 1 this is a(p); in general it differs from a(p^j)."""
    g = tj_in_t(j, p ** (t.weight - 1), t.chi(p))
    return g(t.coeff(p))


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class HeckeMatrix:
    weight: int
    prime: int
    j: int
    entries: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]


def _mat(rows) -> tuple[tuple, ...]:
    return tuple(tuple(compact(x) for x in r) for r in rows)


def _matmul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][jj] for k in range(len(b))), 0) for jj in range(m)] for i in range(n)]


def _poly_at_matrix(f: Poly, m):
    d = len(m)
    ident = [[int(i == k) for k in range(d)] for i in range(d)]
    acc = [[0] * d for _ in range(d)]
    for c in reversed(f.coeffs):
        acc = _matmul(acc, m)
        for i in range(d):
            acc[i][i] = acc[i][i] + c
    return acc if d else ident


def hecke_matrix(k: int, p: int, prec: int | None = None) -> HeckeMatrix:
    """Matrix of T(p) on the Miller basis; column i is the image of f_i."""
    d = dim_cusp_forms_level1(k)
    if prec is None:
        prec = p * d + 1
    if prec <= p * d:
        raise PrecisionTooLow(f"need prec > p*dim = {p * d}, got {prec}")
    basis = miller_basis(k, prec) if d else []
    pk1 = p ** (k - 1)
    entries = [[0] * d for _ in range(d)]
    for i, f in enumerate(basis):
        for r in range(1, d + 1):
            b = f[p * r]
            if r % p == 0:
                b += pk1 * f[r // p]
            entries[r - 1][i] = b
    return HeckeMatrix(k, p, 1, _mat(entries))


def tj_matrix(m: HeckeMatrix, j: int) -> HeckeMatrix:
    if m.j != 1:
        raise ValueError("expected a T(p) matrix")
    g = tj_in_t(j, m.prime ** (m.weight - 1))
    return HeckeMatrix(m.weight, m.prime, j, _mat(g(m.entries)))


def char_poly(rows) -> Poly:
    """det(X I - M) by fraction-free Bareiss elimination over Q[X]."""
    d = len(rows)
    if d == 0:
        return Poly([1])
    a = [[Poly([-rows[i][k], 1]) if i == k else Poly([-rows[i][k]]) for k in range(d)] for i in range(d)]
    sign = 1
    prev = Poly([1])
    for c in range(d - 1):
        if not a[c][c]:
            swap = next((r for r in range(c + 1, d) if a[r][c]), None)
            if swap is None:
                return Poly()
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, d):
            for k in range(c + 1, d):
                a[r][k] = (a[r][k] * a[c][c] - a[r][c] * a[c][k]).exact_div(prev)
            a[r][c] = Poly()
        prev = a[c][c]
    det = a[d - 1][d - 1]
    return det if sign > 0 else -det


@dataclass(frozen=True)
class Theorem4Report:
    weight: int
    prime: int
    j: int
    char_poly: Poly
    irreducible: Verdict
    irreducible_reason: str
    resultant: object
    eigen_sum_zero: bool
    zero_multiplicity: int
    note: str = "hypotheses checked on level 1 only"


def hypotheses_for_matrix(rows, k: int = 0, p: int = 0, j: int = 0) -> Theorem4Report:
    """Irreducibility and eigenvalue-pair checks for an explicit matrix."""
    cp = char_poly(rows)
    verdict, reason = irreducibility_certificate(cp)
    raw = poly_resultant(cp, cp.reflect())
    v = cp.valuation()
    # Only distinct eigenvalues count, so the zero root is removed first.
    stripped = Poly(cp.coeffs[v:])
    res = poly_resultant(stripped, stripped.reflect()) if stripped.degree > 0 else 1
    return Theorem4Report(k, p, j, cp, verdict, reason, compact(raw), res == 0, v)


def theorem4_hypotheses(k: int, p: int, j: int) -> Theorem4Report:
    m = tj_matrix(hecke_matrix(k, p), j)
    return hypotheses_for_matrix(m.entries, k, p, j)


__all__ = [
    "PrecisionTooLow",
    "TjPolynomial",
    "tj_in_t",
    "apply_tj_coeffs",
    "lambda_j",
    "HeckeMatrix",
    "hecke_matrix",
    "tj_matrix",
    "char_poly",
    "Theorem4Report",
    "hypotheses_for_matrix",
    "theorem4_hypotheses",
]
