from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from heckesign.exactmath import CycNumber
from heckesign.genfun import AllMultiples, ConjugatePairData, DegeneratePair, OddMultiples, ResidueClass
from heckesign.qexpand import CoeffTable, EigenformSpec, builtin_table
from heckesign.signscan import (
    AllZero,
    BoundaryAngle,
    NotReal,
    PrimeDividesLevel,
    SignSequenceSpec,
    T5Status,
    char_value_order,
    detect_sign_changes,
    eq7_sign,
    exclusion_eq7_check,
    realize_sequence,
    remark_components,
    satake_angle,
    scan,
    theorem5_realroot_check,
)


def planted(coeffs, k=12, level=1):
    return CoeffTable(EigenformSpec("planted", k, level), coeffs)


def pair(t, N):
    return ConjugatePairData(t, N, 2, 2)


def test_realize_examples(delta):
    v = realize_sequence(delta, SignSequenceSpec("delta", 2, AllMultiples(1), 4))
    assert v == [1, -24, -1472, 84480]
    v = realize_sequence(delta, SignSequenceSpec("delta", 2, OddMultiples(1), 3))
    assert v == [delta[2], delta[8], delta[32]]
    v = realize_sequence(delta, SignSequenceSpec("delta", 3, ResidueClass(1, 3), 3))
    assert v == [delta[3], delta.prime_power(3, 4), delta.prime_power(3, 7)]


def test_realize_twisted_normalizes(delta, twisted, quartic_psi):
    chi0 = quartic_psi.extend(twisted.level)
    v = realize_sequence(twisted, SignSequenceSpec("tw", 2, AllMultiples(1), 12), chi0)
    assert v == delta.prime_power_seq(2, 11)


def test_realize_not_real():
    i = CycNumber.zeta(4)
    t = planted([1, i, 0, -1])
    with pytest.raises(NotReal):
        realize_sequence(t, SignSequenceSpec("x", 2, AllMultiples(1), 3))


def test_prime_divides_level(twisted):
    with pytest.raises(PrimeDividesLevel):
        realize_sequence(twisted, SignSequenceSpec("tw", 5, AllMultiples(1), 3))


def test_detect_examples():
    c = detect_sign_changes([1, -24, -1472, 84480])
    assert (c.first_change_index, c.change_count, c.zero_count) == (1, 2, 0)
    c = detect_sign_changes([0, 3, 0, 0, -1, 0])
    assert (c.first_change_index, c.change_count, c.zero_count) == (4, 1, 4)
    c = detect_sign_changes([5, 5, 2])
    assert c.first_change_index is None and c.change_count == 0
    with pytest.raises(AllZero):
        detect_sign_changes([0, 0, 0])


def test_detect_cyclotomic_entries():
    r5 = CycNumber.zeta(5) + CycNumber.zeta(5, -1)  # 2 cos(2 pi / 5) > 0
    c = detect_sign_changes([r5, -r5 * r5, Fraction(1, 3)])
    assert c.change_count == 2


def _naive_changes(v):
    nz = [x for x in v if x]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a > 0) != (b > 0))


seqs = st.lists(st.integers(-50, 50), min_size=1, max_size=40).filter(any)


@settings(max_examples=150, deadline=None)
@given(seqs, st.integers(1, 1000))
def test_detect_invariants(v, scale):
    c = detect_sign_changes(v)
    assert c.change_count == _naive_changes(v)
    assert c.zero_count == v.count(0)
    assert detect_sign_changes([scale * x for x in v]) == c
    assert detect_sign_changes([-x for x in v]) == c
    padded = detect_sign_changes([x for y in v for x in (y, 0)])
    assert padded.change_count == c.change_count
    assert c.change_count <= len(v) - c.zero_count - 1 or c.change_count == 0
    if c.first_change_index is not None:
        assert v[c.first_change_index] != 0


def test_exclusion_examples():
    assert exclusion_eq7_check(pair(-24, 2 ** 11), 3) == []
    assert exclusion_eq7_check(pair(4, 4), 1) == [0]
    assert exclusion_eq7_check(pair(4, 4), 3) == [0]
    assert exclusion_eq7_check(pair(0, 2 ** 11), 4) == [1, 3]
    # zeta_6 + zeta_6^-1 = 1 and zeta_3 + zeta_3^-1 = -1; either sign is allowed
    assert exclusion_eq7_check(pair(3, 9), 6) == [1, 2, 4, 5]
    assert eq7_sign(pair(3, 9), 6, 1) == 1
    assert eq7_sign(pair(-3, 9), 6, 1) == -1
    assert eq7_sign(pair(3, 9), 6, 2) == -1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_exclusion_numeric_oracle(delta, p):
    d = ConjugatePairData.from_table(delta, p)
    with mpmath.workdps(50):
        for j in range(1, 9):
            want = [mu for mu in range(j)
                    if abs(abs(d.trace) - mpmath.sqrt(d.norm) * abs(2 * mpmath.cos(2 * mpmath.pi * mu / j))) < 1e-30]
            assert exclusion_eq7_check(d, j) == want


def test_realroot_m1_not_applicable():
    r = theorem5_realroot_check(pair(-24, 2 ** 11), 1)
    assert r.status is T5Status.NOT_APPLICABLE and str(r) == "NotApplicable"


def test_realroot_m2_none():
    r = theorem5_realroot_check(pair(-24, 2 ** 11), 2)
    assert r.status is T5Status.NO_REAL_ROOT and r.real_roots == 0


def _numeric_real_roots(poly):
    with mpmath.workdps(100):
        cs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(poly.coeffs)]
        roots = mpmath.polyroots(cs, maxsteps=500, extraprec=400)
        real = [r for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -60]
        return len(real), sum(1 for r in real if mpmath.re(r) > 0)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_realroot_numeric_oracle(delta, m, p):
    d = ConjugatePairData.from_table(delta, p)
    r = theorem5_realroot_check(d, m)
    assert (r.real_roots, r.positive_roots) == _numeric_real_roots(r.poly)
    if m % 2:
        assert r.status is T5Status.HAS_REAL_ROOT


def test_realroot_degenerate():
    with pytest.raises(DegeneratePair):
        theorem5_realroot_check(pair(4, 4), 3)


def test_char_value_order(quartic_psi):
    assert char_value_order(quartic_psi, 2) == 4
    assert char_value_order(quartic_psi, 4) == 2
    assert char_value_order(quartic_psi, 11) == 1
    with pytest.raises(ValueError):
        char_value_order(quartic_psi, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_satake_angle_oracle(delta, p):
    d = ConjugatePairData.from_table(delta, p)
    a = satake_angle(d)
    with mpmath.workdps(60):
        want = mpmath.acos(mpmath.mpf(d.trace) / (2 * mpmath.sqrt(d.norm)))
        assert abs(a.theta.mid - want) < mpmath.mpf(10) ** -40
    assert a.theta.rad < 1e-30


def test_satake_boundary():
    with pytest.raises(BoundaryAngle):
        satake_angle(pair(4, 4))


def test_remark_components(delta, twisted, quartic_psi):
    chi0 = quartic_psi.extend(twisted.level)
    c = remark_components(twisted, 2, 1, 4, 6, chi0)
    assert c.case == "pm_i"
    assert all(x == 0 for x in c.re)
    assert [abs(x) for x in c.im] == [abs(delta.prime_power(2, 1 + 4 * n)) for n in range(6)]
    assert remark_components(twisted, 2, 2, 4, 4, chi0).case == "real"
    assert remark_components(twisted, 2, 0, 4, 4, chi0).case == "real"
    with pytest.raises(PrimeDividesLevel):
        remark_components(twisted, 5, 1, 4, 4, chi0)


def test_scan_delta(delta):
    r = scan(delta, 2, AllMultiples(1), 20)
    assert r.status == "OK"
    assert r.first_change_index == 1 and r.change_count >= 1
    assert r.deligne_margin == 4 * 2 ** 11 - 576
    assert r.theorem5_status == "NotApplicable"
    assert scan(delta, 3, ResidueClass(0, 2), 20).theorem5_status == "NoRealRoot"


def test_scan_all_zero():
    t = planted([1, 0, 0, 0])
    r = scan(t, 2, OddMultiples(1), 10)
    assert r.status == "ALL_ZERO" and r.first_change_index is None
    assert r.exclusion_hits == []
    assert scan(t, 2, OddMultiples(1), 10).deligne_margin == 4 * 2 ** 11


def test_near_boundary_angle_delays_first_change():
    """6 theta_11 sits just below 2 pi, so a(11^(3+6n)) holds its sign for a long run."""
    t = builtin_table("1.12.a.a", 100)
    d = ConjugatePairData.from_table(t, 11)
    theta = satake_angle(d).theta.mid
    with mpmath.workdps(50):
        signs = [mpmath.sign(mpmath.sin((4 + 6 * n) * theta)) for n in range(400)]
    want = next(n for n in range(1, 400) if signs[n] != signs[n - 1])
    assert want == 346
    assert scan(t, 11, OddMultiples(3), 100).change_count == 0
    assert scan(t, 11, OddMultiples(3), 400).first_change_index == want


def test_every_other_delta_census_changes_sign():
    t = builtin_table("1.12.a.a", 100)
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]:
        for j in (1, 2, 3, 4):
            assert scan(t, p, AllMultiples(j), 100).change_count >= 1
            if j % 2 and (p, j) != (11, 3):
                assert scan(t, p, OddMultiples(j), 100).change_count >= 1
