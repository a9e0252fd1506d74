"""Factor-degree certificates over finite fields and irreducibility over Q.

Polynomials mod q are lists of ints in [0, q), lowest degree first,
without trailing zeros.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

import mpmath

from .poly import Poly, integer_model, poly_gcd


class BadPrime(ValueError):
    """q divides the leading coefficient or f mod q is not squarefree."""


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


def trim_mod(a: list[int], q: int) -> list[int]:
    a = [x % q for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub_mod(a, b, q):
    n = max(len(a), len(b))
    return trim_mod([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], q)


def mul_mod(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return trim_mod(out, q)


def divmod_mod(a, b, q):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, q)
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % q
        if not c:
            continue
        f = c * inv % q
        quo[i - db] = f
        for k in range(db + 1):
            a[i - db + k] -= f * b[k]
    return trim_mod(quo, q), trim_mod(a[:db], q)


def gcd_mod(a, b, q):
    while b:
        a, b = b, divmod_mod(a, b, q)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return [x * inv % q for x in a]


def powmod_poly(base, e, mod, q):
    result = [1]
    base = divmod_mod(base, mod, q)[1]
    while e:
        if e & 1:
            result = divmod_mod(mul_mod(result, base, q), mod, q)[1]
        e >>= 1
        if e:
            base = divmod_mod(mul_mod(base, base, q), mod, q)[1]
    return result


def _derivative_mod(a, q):
    return trim_mod([i * c for i, c in enumerate(a)][1:], q)


def degree_pattern_mod_p(f, q: int) -> list[int]:
    """Sorted degrees of the irreducible factors of f mod q (distinct-degree
    factorization). ``f`` is a rational Poly or an integer coefficient list."""
    ints = integer_model(f) if isinstance(f, Poly) else list(f)
    if ints[-1] % q == 0:
        raise BadPrime(f"{q} divides the leading coefficient")
    a = trim_mod(ints, q)
    if len(a) <= 1:
        return []
    if len(gcd_mod(a, _derivative_mod(a, q), q)) > 1:
        raise BadPrime(f"f is not squarefree mod {q}")
    inv = pow(a[-1], -1, q)
    a = [x * inv % q for x in a]
    degrees: list[int] = []
    h = [0, 1]
    d = 0
    while len(a) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod_poly(h, q, a, q)
        g = gcd_mod(a, _sub_mod(h, [0, 1], q), q)
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            a = divmod_mod(a, g, q)[0]
            h = divmod_mod(h, a, q)[1] if len(a) > 1 else []
    if len(a) > 1:
        degrees.append(len(a) - 1)
    return sorted(degrees)


def _primes():
    n = 2
    while True:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


def subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def rational_roots(f: Poly) -> list[Fraction]:
    """Rational roots of a rational polynomial, verified exactly.

    Candidates come from high-precision real roots; each candidate a/b has b
    dividing the leading coefficient of the integer model."""
    ints = integer_model(f)
    if len(ints) <= 1:
        return []
    if len(ints) == 2:
        return [Fraction(-ints[0], ints[1])]
    found: set[Fraction] = set()
    if ints[0] == 0:
        found.add(Fraction(0))
    lead = abs(ints[-1])
    dens = [d for d in range(1, min(lead, 10 ** 4) + 1) if lead % d == 0]
    digits = 30 + max(len(str(abs(c))) for c in ints)
    with mpmath.workdps(digits):
        try:
            roots = mpmath.polyroots(ints[::-1], maxsteps=400, extraprec=4 * digits)
        except mpmath.libmp.NoConvergence:
            roots = []
        for r in roots:
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-digits // 3) * (1 + abs(r)):
                continue
            x = mpmath.re(r)
            for b in dens:
                cand = Fraction(int(mpmath.nint(x * b)), b)
                if f(cand) == 0:
                    found.add(cand)
    return sorted(found)


def irreducibility_certificate(f: Poly, nprimes: int = 25) -> tuple[Verdict, str]:
    """Decide irreducibility of a rational polynomial over Q where possible.

    Returns (verdict, reason). Irreducible mod one usable prime certifies
    YES; otherwise the achievable factor-degree sums are intersected over
    the usable primes and YES is certified when only {0, deg} remain."""
    n = f.degree
    if n <= 0:
        return Verdict.NO, "constant"
    if n == 1:
        return Verdict.YES, "degree 1"
    if poly_gcd(f, f.derivative()).degree > 0:
        return Verdict.NO, "repeated factor"
    roots = rational_roots(f)
    if roots:
        return Verdict.NO, f"rational root {roots[0]}"
    if n <= 3:
        return Verdict.YES, "no rational root, degree <= 3"
    ints = integer_model(f)
    possible = set(range(n + 1))
    used = 0
    for q in _primes():
        if used >= nprimes:
            break
        try:
            pattern = degree_pattern_mod_p(ints, q)
        except BadPrime:
            continue
        used += 1
        if pattern == [n]:
            return Verdict.YES, f"irreducible mod {q}"
        possible &= subset_sums(pattern)
        if possible == {0, n}:
            return Verdict.YES, f"degree patterns incompatible up to q={q}"
    return Verdict.INCONCLUSIVE, f"possible factor degrees {sorted(possible - {0, n})}"
