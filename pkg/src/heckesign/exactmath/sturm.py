"""Real-root counting with Sturm sequences over Q and real cyclotomic fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber
from .interval import Sign
from .poly import Poly, squarefree_part

DEFAULT_MAX_BITS = 4096


@dataclass(frozen=True)
class Undecided:
    """Certified sign evaluation ran out of precision."""

    bits: int

    def __str__(self):
        return f"Undecided({self.bits} bits)"


class UndecidedSign(ArithmeticError):
    def __init__(self, bits: int):
        super().__init__(f"sign undecided at {bits} bits")
        self.bits = bits


def real_sign(x, max_bits: int = DEFAULT_MAX_BITS, start_bits: int = 64) -> int:
    """Exact sign of a real field element (-1, 0, 1).

    Zero is decided exactly; nonzero cyclotomic reals are embedded with
    doubling precision until the enclosure excludes zero."""
    if not isinstance(x, CycNumber) or x.order == 1:
        q = Fraction(x if not isinstance(x, CycNumber) else x.coeffs[0])
        return (q > 0) - (q < 0)
    if not x:
        return 0
    bits = start_bits
    while bits <= max_bits:
        re, _ = x.embed(bits)
        s = re.sign()
        if s is not Sign.UNKNOWN:
            return s.value
        bits *= 2
    raise UndecidedSign(bits // 2)


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _variations(signs) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs_at(seq: list[Poly], x, max_bits: int) -> list[int]:
    if x == float("inf"):
        return [real_sign(p.lc, max_bits) for p in seq]
    if x == float("-inf"):
        return [real_sign(p.lc, max_bits) * (-1) ** (p.degree % 2) for p in seq]
    return [real_sign(p(x), max_bits) for p in seq]


def sturm_count_real_roots(f: Poly, interval=(float("-inf"), float("inf")), max_bits: int = DEFAULT_MAX_BITS):
    """Number of distinct real roots of f in the open interval (a, b).

    Endpoints are rationals or +-inf. Returns an ``Undecided`` record if a
    certified sign could not be resolved within ``max_bits``."""
    a, b = interval
    a = a if a in (float("-inf"), float("inf")) else Fraction(a)
    b = b if b in (float("-inf"), float("inf")) else Fraction(b)
    if not f:
        raise ValueError("zero polynomial has infinitely many roots")
    if f.degree == 0 or not a < b:
        return 0
    g = squarefree_part(f)
    seq = sturm_sequence(g)
    try:
        count = _variations(_signs_at(seq, a, max_bits)) - _variations(_signs_at(seq, b, max_bits))
        if b != float("inf") and not g(b):
            count -= 1
    except UndecidedSign as exc:
        return Undecided(exc.bits)
    return count
