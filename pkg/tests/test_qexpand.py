import json
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckesign.exactmath import CycNumber
from heckesign.qexpand import (
    CoeffTable,
    DirichletCharacter,
    EigenformSpec,
    OutOfRange,
    ParseError,
    PowerSeriesQ,
    ValidationError,
    builtin_labels,
    builtin_table,
    characters_mod,
    cyc_to_json,
    delta_series,
    delta_table,
    dim_cusp_forms_level1,
    dump_form,
    eisenstein,
    eta_expand,
    eta_quotient,
    form_to_json,
    ingest_form,
    miller_basis,
    sqrt_characters,
    verify_eigenform,
    verify_reality,
)


def brute_eta(prec):
    out = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        new = out[:]
        for i in range(prec - n):
            new[i + n] -= out[i]
        out = new
    return out


def brute_product(factors, prec):
    """prod over (d, r) of prod_n (1 - q^(dn))^r, by repeated multiplication."""
    out = [1] + [0] * (prec - 1)
    for d, r in factors:
        for n in range(1, prec):
            if d * n >= prec:
                break
            for _ in range(r):
                new = out[:]
                for i in range(prec - d * n):
                    new[i + d * n] -= out[i]
                out = new
    return out


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


# -- series -----------------------------------------------------------------

def test_eta_examples():
    assert list(eta_expand(6)) == [1, -1, -1, 0, 0, 1]
    assert list(eta_expand(1)) == [1]
    assert list(eta_expand(60)) == brute_eta(60)
    assert eta_expand(60)[57] == brute_eta(60)[57]


def test_eta_precision_guard():
    with pytest.raises(ValueError):
        eta_expand(0)
    with pytest.raises(IndexError):
        eta_expand(5)[5]


def test_eisenstein_leading_terms():
    assert eisenstein(4, 3)[1] == 240
    assert eisenstein(6, 3)[1] == -504
    assert eisenstein(8, 5)[2] == 480 * sigma(7, 2)


def test_delta_two_constructions_agree():
    prec = 200
    e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
    other = (e4 * e4 * e4 - e6 * e6) * Fraction(1, 1728)
    assert list(other) == list(delta_series(prec))


def test_tau_values(delta):
    assert delta[1] == 1
    assert delta[2] == -24 and delta[3] == 252
    assert delta[8] == delta[2] * delta[4] - 2 ** 11 * delta[2]


def test_ramanujan_congruence(delta):
    for n in range(1, 1001):
        assert (delta[n] - sigma(11, n)) % 691 == 0


def test_delta_table_guard():
    with pytest.raises(ValueError):
        delta_table(0)


def test_power_series_precision_rules():
    a = PowerSeriesQ([1, 2, 3], 3)
    b = PowerSeriesQ([1, 1], 2)
    assert (a * b).prec == 2
    assert (a + b).prec == 2


@pytest.mark.parametrize("label,factors,values", [
    ("11.2.a.a", ((1, 2), (11, 2)), {2: -2, 3: -1, 5: 1, 7: -2}),
    ("5.4.a.a", ((1, 4), (5, 4)), {2: -4, 3: 2}),
    ("3.6.a.a", ((1, 6), (3, 6)), {2: -6, 3: 9}),
    ("2.8.a.a", ((1, 8), (2, 8)), {2: -8, 3: 12}),
])
def test_eta_quotient_forms(label, factors, values):
    t = builtin_table(label, 120)
    series = eta_quotient(factors, 120)
    shift = sum(d * r for d, r in factors) // 24
    body = brute_product(factors, 120 - shift)
    assert list(series) == [0] * shift + body
    for n, v in values.items():
        assert t[n] == v


def test_builtin_registry_contents():
    labels = builtin_labels()
    for k in (12, 16, 18, 20, 22, 26):
        assert f"1.{k}.a.a" in labels
    assert builtin_table("delta", 10)[2] == -24


@pytest.mark.parametrize("label", builtin_labels())
def test_builtins_are_eigenforms(label):
    t = builtin_table(label, 1000)
    assert verify_eigenform(t) is None
    assert verify_reality(t) is None


def test_level1_products_match_miller_basis():
    for k in (16, 18, 20, 22, 26):
        (f,) = miller_basis(k, 60)
        t = builtin_table(f"1.{k}.a.a", 59)
        assert [t[n] for n in range(1, 60)] == [f[n] for n in range(1, 60)]


# -- Miller basis -------------------------------------------------------------------

def test_dimension_formula():
    assert [dim_cusp_forms_level1(k) for k in (12, 14, 24, 26, 36, 38)] == [1, 0, 2, 1, 3, 2]


def test_miller_basis_shapes():
    (f,) = miller_basis(12, 30)
    assert list(f) == list(delta_series(30))
    assert len(miller_basis(26, 10)) == 1
    f1, f2 = miller_basis(24, 10)
    assert (f1[1], f1[2], f2[1], f2[2]) == (1, 0, 0, 1)
    assert f1[3] == 195660 and f2[3] == -48


def _solve_in_span(basis, g, d):
    """Coefficients c with g = sum c_i f_i, read from the echelon positions."""
    c = [g[i + 1] for i in range(d)]
    recon = [sum(c[i] * basis[i][n] for i in range(d)) for n in range(len(g))]
    return c, recon


@pytest.mark.parametrize("k", [24, 28, 36])
@pytest.mark.parametrize("p", [2, 3])
def test_miller_basis_hecke_stable(k, p):
    prec = 40
    basis = miller_basis(k, p * prec)
    d = len(basis)
    for f in basis:
        g = [f[p * n] + (p ** (k - 1) * f[n // p] if n % p == 0 else 0) for n in range(prec)]
        _, recon = _solve_in_span(basis, g, d)
        assert recon == g


# -- characters --------------------------------------------------------------------------

def test_sqrt_characters_mod8():
    roots = sqrt_characters(DirichletCharacter.trivial(8))
    assert len(roots) == 4
    assert DirichletCharacter.trivial(8) in roots
    assert all(r.order <= 2 for r in roots)


def test_sqrt_characters_mod1():
    assert sqrt_characters(DirichletCharacter.trivial(1)) == [DirichletCharacter.trivial(1)]


def test_sqrt_characters_quartic_mod5():
    chars = characters_mod(5)
    quad = next(c for c in chars if c(2) == -1)
    roots = sqrt_characters(quad)
    brute = [c for c in chars if all(c(n) * c(n) == quad(n) for n in range(5))]
    assert set(roots) == set(brute)
    assert {r(2) for r in roots} == {CycNumber.zeta(4), -CycNumber.zeta(4)}
    assert all(r.order == 4 for r in roots)


@pytest.mark.parametrize("n", [5, 7, 8, 9, 12, 15, 16, 20, 21, 24])
def test_sqrt_characters_pointwise(n):
    for chi in characters_mod(n):
        for chi0 in sqrt_characters(chi):
            assert all(chi0(a) * chi0(a) == chi(a) for a in range(n))


@pytest.mark.parametrize("n", [3, 8, 12, 15, 16])
def test_character_group_laws(n):
    chars = characters_mod(n)
    phi = sum(1 for a in range(n) if gcd(a, n) == 1)
    assert len(set(chars)) == phi
    for chi in chars:
        assert chi(1) == 1
        for a in range(n):
            for b in range(n):
                assert chi(a * b) == chi(a) * chi(b)


# -- tables ---------------------------------------------------------------------------------

def test_recurrence_extension_beyond_table():
    small = delta_table(50)
    big = delta_table(1100)
    assert small.prime_power(2, 10) == big[1024]
    assert small.coeff(3 ** 6) == big[729]
    assert small.coeff(96) == big[96]


def test_out_of_range():
    t = delta_table(10)
    with pytest.raises(OutOfRange):
        t.coeff(13)
    plain = CoeffTable(t.spec, [t[n] for n in range(1, 11)], eigenform=False)
    with pytest.raises(OutOfRange):
        plain.coeff(11)


def test_planted_violation_at_4(delta):
    assert verify_eigenform(delta.with_coeffs({4: 0})) == 4


def test_weight_and_level_checks():
    with pytest.raises(ValueError):
        EigenformSpec("x", 3, 1)
    with pytest.raises(ValueError):
        EigenformSpec("x", 12, 10, DirichletCharacter.trivial(3))


def test_twist_fixture(twisted, quartic_psi):
    assert twisted.level == 25
    assert twisted.spec.character.order == 2
    assert twisted[2] == -24 * CycNumber.zeta(4)
    assert verify_eigenform(twisted) is None
    assert verify_reality(twisted) is None
    # the reality law really is non-trivial here: a(2) is not real
    assert not twisted[2].is_real()


# -- ingestion --------------------------------------------------------------------------------

def test_ingest_level11(tmp_path, level11):
    path = tmp_path / "e11.json"
    dump_form(level11, path)
    t = ingest_form(path)
    assert t[2] == -2 and t[3] == -1
    assert t.nmax == 500
    assert verify_eigenform(t) is None


def test_ingest_twist_round_trip(tmp_path, twisted):
    path = tmp_path / "tw.json"
    dump_form(twisted, path)
    t = ingest_form(path)
    assert all(t[n] == twisted[n] for n in range(1, 100))
    assert t.spec.character == twisted.spec.character


def _write(tmp_path, data):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(data))
    return path


def test_ingest_planted_violation(tmp_path, level11):
    data = form_to_json(level11)
    data["coefficients"][5] = {"order": 1, "coeffs": ["7/1"]}
    with pytest.raises(ValidationError) as err:
        ingest_form(_write(tmp_path, data))
    assert err.value.n == 6


def test_ingest_non_root_of_unity(tmp_path, level11):
    data = form_to_json(level11)
    data["char_values"][0][1] = {"order": 1, "coeffs": ["2/1"]}
    with pytest.raises(ParseError):
        ingest_form(_write(tmp_path, data))


def test_ingest_unknown_and_missing_fields(tmp_path, level11):
    data = form_to_json(level11)
    data["extra"] = 1
    with pytest.raises(ParseError):
        ingest_form(_write(tmp_path, data))
    data = form_to_json(level11)
    del data["weight"]
    with pytest.raises(ParseError):
        ingest_form(_write(tmp_path, data))


def test_ingest_rejects_bad_rationals_and_json(tmp_path, level11):
    data = form_to_json(level11)
    data["coefficients"][1] = {"order": 1, "coeffs": [2]}
    with pytest.raises(ParseError):
        ingest_form(_write(tmp_path, data))
    bad = tmp_path / "b.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        ingest_form(bad)


def test_ingest_rejects_odd_character(tmp_path):
    psi = DirichletCharacter.from_exponents(5, (1,))  # psi(-1) = psi(4) = -1
    data = {
        "label": "odd", "weight": 2, "level": 5, "char_modulus": 5,
        "char_values": [[n, cyc_to_json(psi(n))] for n in range(1, 5)],
        "coefficients": [cyc_to_json(1)] + [cyc_to_json(0)] * 9,
    }
    with pytest.raises(ValidationError) as err:
        ingest_form(_write(tmp_path, data))
    assert "odd character" in err.value.reason


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 300), st.integers(1, 50))
def test_single_corruption_located(n, shift):
    t = delta_table(300)
    found = verify_eigenform(t.with_coeffs({n: t[n] + shift}))
    if not _is_prime(n):
        assert found == n
    elif 2 * n <= 300:
        # a(p) is only constrained through a(2p) = a(2) a(p) and a(p^2)
        assert found is not None and found > n
    else:
        assert found is None
