"""Sign-change censuses of normalized prime-power coefficient sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .exactmath import CycNumber, RealInterval, Undecided, real_sign, sturm_count_real_roots
from .exactmath.interval import acos_interval
from .exactmath.poly import compact, unrotate
from .genfun import ConjugatePairData, DegeneratePair, FilterSpec, theorem5_poly
from .qexpand import CoeffTable, DirichletCharacter


class NotReal(ValueError):
    """A value that must be real is not (corrupt table or wrong chi0)."""


class PrimeDividesLevel(ValueError):
    pass


class AllZero(ValueError):
    """Every entry of the sequence vanishes; sign changes are undefined."""


class BoundaryAngle(ValueError):
    pass


@dataclass(frozen=True)
class SignSequenceSpec:
    form: str
    prime: int
    pattern: FilterSpec
    nmax: int


def _sign(x) -> int:
    return real_sign(x)


def realize_sequence(t: CoeffTable, spec: SignSequenceSpec, chi0: DirichletCharacter | None = None) -> list:
    """[a(p^e_n) / chi0(p)^e_n] for the exponents e_n selected by the pattern.

    For a residue class l mod m with chi0(p)^m = 1 this equals
    a(p^(l+mn)) / chi0(p)^l."""
    p = spec.prime
    if t.level % p == 0:
        raise PrimeDividesLevel(f"p={p} divides N={t.level}")
    pat = spec.pattern
    c = chi0(p) if chi0 is not None else 1
    if pat.kind == "class" and c ** pat.m != 1:
        raise ValueError(f"chi0({p})^{pat.m} != 1")
    seq = t.prime_power_seq(p, pat.exponent(spec.nmax - 1))
    out = []
    for n in range(spec.nmax):
        e = pat.exponent(n)
        v = unrotate(seq[e], c, e)
        if isinstance(v, CycNumber) and not v.is_real():
            raise NotReal(f"value at exponent {e} is not real")
        out.append(v)
    return out


@dataclass(frozen=True)
class ComponentCensus:
    """Re/Im sequences of the undivided a(p^(l+mn)) = chi0(p)^l * (real)."""

    rotation: object
    case: str  # "real", "pm_i" or "other"
    re: list
    im: list


def remark_components(t: CoeffTable, p: int, l: int, m: int, nmax: int, chi0: DirichletCharacter) -> ComponentCensus:
    """Re and Im of a(p^(l+mn)). When chi0(p)^l = +-i only Im carries the signs,
    when it is real only Re does; any other rotation is reported with both."""
    base = realize_sequence(t, SignSequenceSpec("", p, FilterSpec("class", 0, l, m), nmax), chi0)
    z = chi0(p) ** l
    z = z if isinstance(z, CycNumber) else CycNumber.rational(z)
    re_z, im_z = compact(z.real_part()), compact(z.imag_part())
    case = "real" if not im_z else ("pm_i" if not re_z else "other")
    return ComponentCensus(z, case, [compact(re_z * v) for v in base], [compact(im_z * v) for v in base])


@dataclass(frozen=True)
class SignCensus:
    first_change_index: int | None
    change_count: int
    zero_count: int


def detect_sign_changes(v) -> SignCensus:
    """Count consecutive nonzero entries of opposite sign; zeros are skipped."""
    first = None
    count = zeros = 0
    last = 0
    for i, x in enumerate(v):
        s = _sign(x)
        if s == 0:
            zeros += 1
            continue
        if last and s != last:
            count += 1
            if first is None:
                first = i
        last = s
    if zeros == len(v):
        raise AllZero("all entries are zero")
    return SignCensus(first, count, zeros)


def exclusion_eq7_check(d: ConjugatePairData, j: int) -> list[int]:
    """mu in [0, j) with t = +-sqrt(N) (zeta_j^mu + zeta_j^-mu).

    Squaring gives the exact test t^2 = N (zeta^mu + zeta^-mu)^2 in one field;
    either sign of the square root is admissible, so no sign resolution is
    needed to decide a hit (see eq7_sign)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    t2 = d.trace * d.trace
    hits = []
    for mu in range(j):
        z = CycNumber.zeta(j, mu) + CycNumber.zeta(j, -mu)
        if t2 == d.norm * z * z:
            hits.append(mu)
    return hits


def eq7_sign(d: ConjugatePairData, j: int, mu: int) -> int:
    """Sign s with t = s sqrt(N) (zeta^mu + zeta^-mu) for a hit (0 if t = 0)."""
    z = CycNumber.zeta(j, mu) + CycNumber.zeta(j, -mu)
    return _sign(d.trace) * _sign(compact(z))


class T5Status(str, Enum):
    NO_REAL_ROOT = "NoRealRoot"
    HAS_REAL_ROOT = "HasRealRoot"
    UNDECIDED = "Undecided"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Theorem5Result:
    status: T5Status
    real_roots: int | None
    positive_roots: int | None
    poly: object = None
    detail: str = ""

    def __str__(self):
        if self.status is T5Status.HAS_REAL_ROOT:
            return f"HasRealRoot({self.real_roots})"
        return self.status.value


def theorem5_realroot_check(d: ConjugatePairData, m: int, max_bits: int = 4096) -> Theorem5Result:
    """Real zeros of N V_{m-1} X^m - V_m X^(m-1) + 1 on R and on X > 0.

    At m = 1 the polynomial is identically zero, reported as NotApplicable."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if d.is_degenerate():
        raise DegeneratePair("t^2 = 4N")
    q = theorem5_poly(d, m)
    if not q:
        return Theorem5Result(T5Status.NOT_APPLICABLE, None, None, q, "polynomial vanishes identically")
    whole = sturm_count_real_roots(q, max_bits=max_bits)
    pos = sturm_count_real_roots(q, (0, float("inf")), max_bits=max_bits)
    if isinstance(whole, Undecided) or isinstance(pos, Undecided):
        bits = whole.bits if isinstance(whole, Undecided) else pos.bits
        return Theorem5Result(T5Status.UNDECIDED, None, None, q, f"precision cap {bits} bits")
    status = T5Status.NO_REAL_ROOT if whole == 0 else T5Status.HAS_REAL_ROOT
    return Theorem5Result(status, whole, pos, q)


def char_value_order(chi0: DirichletCharacter, p: int) -> int:
    if chi0.modulus > 1 and p % chi0.modulus == 0:
        raise ValueError("p divides the modulus")
    return chi0.value_order(p)


@dataclass(frozen=True)
class SatakeAngle:
    theta: RealInterval
    prime: int


def satake_angle(d: ConjugatePairData, bits: int = 128) -> SatakeAngle:
    """theta in [0, pi] with cos(theta) = t / (2 sqrt(N))."""
    if d.margin_sign() <= 0:
        raise BoundaryAngle("Deligne margin is zero")
    t = d.trace
    if isinstance(t, CycNumber) and t.order != 1:
        ti = t.embed(bits + 32)[0]
    else:
        ti = RealInterval.from_fraction(compact(t), bits + 32)
    c = ti / (RealInterval.exact(d.norm, bits + 32).sqrt() * 2)
    theta = acos_interval(c)
    return SatakeAngle(theta, d.prime)


@dataclass
class ScanReport:
    spec: SignSequenceSpec
    realized: list = field(default_factory=list)
    first_change_index: int | None = None
    change_count: int = 0
    zero_count: int = 0
    deligne_margin: object = None
    exclusion_hits: list = field(default_factory=list)
    theorem5_status: str = ""
    status: str = "OK"


def scan(t: CoeffTable, p: int, pattern: FilterSpec, nmax: int, chi0: DirichletCharacter | None = None,
         m: int | None = None) -> ScanReport:
    """One census row. m overrides the residue modulus used for the real-zero
    polynomial (defaults to the pattern's m, or the order of chi0(p))."""
    spec = SignSequenceSpec(t.spec.label, p, pattern, nmax)
    rep = ScanReport(spec)
    rep.realized = realize_sequence(t, spec, chi0)
    d = ConjugatePairData.from_table(t, p, chi0)
    rep.deligne_margin = d.margin
    j = pattern.j if pattern.kind != "class" else pattern.m
    rep.exclusion_hits = exclusion_eq7_check(d, j)
    if m is None:
        m = pattern.m if pattern.kind == "class" else (char_value_order(chi0, p) if chi0 is not None else 1)
    try:
        rep.theorem5_status = str(theorem5_realroot_check(d, m))
    except DegeneratePair:
        rep.theorem5_status = "DegeneratePair"
    try:
        c = detect_sign_changes(rep.realized)
    except AllZero:
        rep.status = "ALL_ZERO"
    else:
        rep.first_change_index, rep.change_count, rep.zero_count = c.first_change_index, c.change_count, c.zero_count
    return rep


__all__ = [
    "NotReal",
    "PrimeDividesLevel",
    "AllZero",
    "BoundaryAngle",
    "SignSequenceSpec",
    "realize_sequence",
    "ComponentCensus",
    "remark_components",
    "SignCensus",
    "detect_sign_changes",
    "exclusion_eq7_check",
    "eq7_sign",
    "T5Status",
    "Theorem5Result",
    "theorem5_realroot_check",
    "char_value_order",
    "SatakeAngle",
    "satake_angle",
    "ScanReport",
    "scan",
]
