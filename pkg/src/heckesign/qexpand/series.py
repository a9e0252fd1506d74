"""Truncated power series and the classical q-expansions built from them."""

from __future__ import annotations

from fractions import Fraction


class PowerSeriesQ:
    """Coefficients of q^0 .. q^(prec-1); nothing beyond prec is known."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        if len(coeffs) < prec:
            coeffs += [0] * (prec - len(coeffs))
        self.coeffs = tuple(coeffs[:prec])
        self.prec = prec

    def __getitem__(self, n: int):
        if n >= self.prec:
            raise IndexError(f"coefficient q^{n} beyond precision {self.prec}")
        return self.coeffs[n] if n >= 0 else 0

    def __len__(self):
        return self.prec

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PowerSeriesQ):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __repr__(self):
        shown = " + ".join(f"{c}*q^{i}" for i, c in enumerate(self.coeffs[:8]) if c)
        return f"PowerSeriesQ({shown or '0'} + O(q^{self.prec}))"

    def truncate(self, prec: int) -> PowerSeriesQ:
        return PowerSeriesQ(self.coeffs[:prec], min(prec, self.prec))

    def __add__(self, other):
        if not isinstance(other, PowerSeriesQ):
            return PowerSeriesQ([self.coeffs[0] + other] + list(self.coeffs[1:]), self.prec)
        p = min(self.prec, other.prec)
        return PowerSeriesQ([a + b for a, b in zip(self.coeffs[:p], other.coeffs[:p])], p)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeriesQ([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeriesQ):
            return PowerSeriesQ([c * other for c in self.coeffs], self.prec)
        p = min(self.prec, other.prec)
        a, b = self.coeffs[:p], other.coeffs[:p]
        # iterate over the sparser factor
        if sum(1 for x in a if x) > sum(1 for x in b if x):
            a, b = b, a
        out = [0] * p
        for i, x in enumerate(a):
            if not x:
                continue
            for k in range(p - i):
                y = b[k]
                if y:
                    out[i + k] += x * y
        return PowerSeriesQ(out, p)

    __rmul__ = __mul__

    def __pow__(self, r: int):
        return series_power(self, r)

    def shift(self, s: int) -> PowerSeriesQ:
        """Multiply by q^s (s >= 0); precision grows by s."""
        return PowerSeriesQ([0] * s + list(self.coeffs), self.prec + s)

    def inflate(self, d: int, prec: int | None = None) -> PowerSeriesQ:
        """f(q^d) to the given precision (default d * prec)."""
        prec = d * self.prec if prec is None else min(prec, d * self.prec)
        out = [0] * prec
        for i, c in enumerate(self.coeffs):
            if i * d >= prec:
                break
            out[i * d] = c
        return PowerSeriesQ(out, prec)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


def series_power(f: PowerSeriesQ, r: int) -> PowerSeriesQ:
    """f^r for f = 1 + O(q) by the power recurrence
    n g_n = sum_{k=1}^n ((r+1)k - n) f_k g_{n-k}; linear in the support of f."""
    if f[0] != 1:
        if r < 0:
            raise ValueError("negative power needs constant term 1")
        result = PowerSeriesQ([1], f.prec)
        base = f
        while r:
            if r & 1:
                result = result * base
            r >>= 1
            if r:
                base = base * base
        return result
    prec = f.prec
    support = [(k, c) for k, c in enumerate(f.coeffs) if k and c]
    g = [0] * prec
    g[0] = 1
    for n in range(1, prec):
        s = 0
        for k, c in support:
            if k > n:
                break
            s += ((r + 1) * k - n) * c * g[n - k]
        if isinstance(s, int):
            q, rem = divmod(s, n)
            g[n] = q if rem == 0 else Fraction(s, n)
        else:
            g[n] = s / n
    return PowerSeriesQ(g, prec)


def eta_expand(prec: int) -> PowerSeriesQ:
    """prod_{n>=1} (1 - q^n) to O(q^prec) via pentagonal numbers."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    out = [0] * prec
    out[0] = 1
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= prec:
            break
        out[e1] += sign
        if e2 < prec:
            out[e2] += sign
        k += 1
    return PowerSeriesQ(out, prec)


def eta_quotient(factors, prec: int) -> PowerSeriesQ:
    """prod eta(d z)^r_d as a q-series to O(q^prec); the total q-shift
    sum(d r_d)/24 must be a non-negative integer."""
    shift24 = sum(d * r for d, r in factors)
    if shift24 % 24 or shift24 < 0:
        raise ValueError("eta quotient has non-integral q-shift")
    shift = shift24 // 24
    body_prec = max(prec - shift, 1)
    result = PowerSeriesQ([1], body_prec)
    for d, r in factors:
        base = eta_expand((body_prec - 1) // d + 1)
        result = result * series_power(base, r).inflate(d, body_prec)
    return PowerSeriesQ([0] * shift + list(result.coeffs), prec)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention irrelevant for even n)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if n == 1 else b


def divisor_sums(power: int, nmax: int) -> list[int]:
    """sigma_power(n) for n = 0..nmax-1 (entry 0 unused)."""
    s = [0] * nmax
    for d in range(1, nmax):
        dp = d ** power
        for m in range(d, nmax, d):
            s[m] += dp
    return s


def eisenstein(k: int, prec: int) -> PowerSeriesQ:
    """Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    c = -Fraction(2 * k) / bernoulli(k)
    sig = divisor_sums(k - 1, prec)
    coeffs = [1] + [c * sig[n] for n in range(1, prec)]
    if c.denominator == 1:
        ci = c.numerator
        coeffs = [1] + [ci * sig[n] for n in range(1, prec)]
    return PowerSeriesQ(coeffs, prec)


def delta_series(prec: int) -> PowerSeriesQ:
    """Delta = q prod (1 - q^n)^24."""
    body = series_power(eta_expand(max(prec - 1, 1)), 24)
    return PowerSeriesQ([0] + list(body.coeffs), prec)


def dim_cusp_forms_level1(k: int) -> int:
    if k % 2 or k < 12:
        return 0
    d = k // 12
    return d - 1 if k % 12 == 2 else d


def miller_basis(k: int, prec: int) -> list[PowerSeriesQ]:
    """Echelonized basis f_i = q^i + O(q^(d+1)) of level-1 cusp forms."""
    d = dim_cusp_forms_level1(k)
    if d == 0:
        return []
    if prec <= d:
        raise ValueError(f"prec must exceed dim S_{k} = {d}")
    delta = delta_series(prec)
    e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
    gens = []
    for i in range(1, d + 1):
        rest = k - 12 * i
        c = 1 if rest % 4 == 2 else 0
        b = (rest - 6 * c) // 4
        g = delta ** i
        if b:
            g = g * series_power(e4, b)
        if c:
            g = g * e6
        gens.append(g)
    basis: list[PowerSeriesQ] = [None] * d
    for i in range(d, 0, -1):
        g = gens[i - 1]
        for r in range(i + 1, d + 1):
            c = g[r]
            if c:
                g = g - basis[r - 1] * c
        basis[i - 1] = g
    return basis
