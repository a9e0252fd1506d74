"""Reading and writing eigenform data files.

Schema (all fields required, no others allowed)::

    {"label": str, "weight": int, "level": int, "char_modulus": int,
     "char_values": [[n, cyc], ...],   # every unit n mod char_modulus
     "coefficients": [cyc, ...]}       # index i holds a(i + 1)

    cyc = {"order": m, "coeffs": ["p/q", ...]}
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from pathlib import Path

from ..exactmath import CycNumber
from ..exactmath.poly import compact
from .characters import DirichletCharacter
from .forms import CoeffTable, EigenformSpec, Ingested, verify_eigenform, verify_reality

FIELDS = ("label", "weight", "level", "char_modulus", "char_values", "coefficients")


class ParseError(ValueError):
    """Malformed data file."""


class ValidationError(ValueError):
    """Well-formed data violating an eigenform identity at index n."""

    def __init__(self, n: int, reason: str):
        super().__init__(f"n={n}: {reason}")
        self.n = n
        self.reason = reason


def _int(obj, name: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ParseError(f"{name} must be an integer")
    return obj


def parse_cyc(obj, where: str = "") -> CycNumber:
    if not isinstance(obj, dict) or set(obj) != {"order", "coeffs"}:
        raise ParseError(f"{where}: cyc must be an object with fields order, coeffs")
    m = _int(obj["order"], f"{where}.order")
    coeffs = obj["coeffs"]
    if m < 1 or not isinstance(coeffs, list) or len(coeffs) > max(m, 1):
        raise ParseError(f"{where}: bad order or coefficient list")
    vals = []
    for c in coeffs:
        if not isinstance(c, str):
            raise ParseError(f"{where}: coefficients must be strings 'p/q'")
        try:
            vals.append(Fraction(c))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad rational {c!r}") from exc
    return CycNumber(m, vals)


def cyc_to_json(x) -> dict:
    if isinstance(x, CycNumber):
        return x.to_json()
    q = Fraction(x)
    return {"order": 1, "coeffs": [f"{q.numerator}/{q.denominator}"]}


def parse_form(data: dict, path: str = "<memory>") -> CoeffTable:
    """Build an unvalidated table from decoded JSON."""
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    unknown = set(data) - set(FIELDS)
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    missing = [f for f in FIELDS if f not in data]
    if missing:
        raise ParseError(f"missing fields {missing}")
    label = data["label"]
    if not isinstance(label, str) or not label:
        raise ParseError("label must be a non-empty string")
    k = _int(data["weight"], "weight")
    level = _int(data["level"], "level")
    mod = _int(data["char_modulus"], "char_modulus")
    if level < 1 or mod < 1:
        raise ParseError("level and char_modulus must be positive")
    if not isinstance(data["char_values"], list) or not isinstance(data["coefficients"], list):
        raise ParseError("char_values and coefficients must be arrays")
    values = [0] * mod
    seen = set()
    for entry in data["char_values"]:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError("char_values entries must be [n, cyc] pairs")
        n = _int(entry[0], "char_values n") % mod
        v = parse_cyc(entry[1], f"char_values[{n}]")
        if not v.is_root_of_unity():
            raise ParseError(f"character value at {n} is not a root of unity")
        values[n] = v
        seen.add(n)
    units = {n for n in range(mod) if gcd(n, mod) == 1}
    if seen != units:
        raise ParseError(f"char_values must cover exactly the units mod {mod}")
    if mod == 1:
        values = [1]
    coeffs = [parse_cyc(c, f"coefficients[{i}]") for i, c in enumerate(data["coefficients"])]
    if not coeffs:
        raise ParseError("no coefficients")
    try:
        spec = EigenformSpec(label, k, level, DirichletCharacter(mod, values), Ingested(path))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return CoeffTable(spec, coeffs)


def validate(t: CoeffTable) -> None:
    """Raise ValidationError at the first violated identity."""
    chi = t.spec.character
    mod = chi.modulus
    for a in range(mod):
        for b in range(mod):
            if chi(a * b) != chi(a) * chi(b):
                raise ValidationError(a * b % mod, "character is not multiplicative")
    if chi(1) != 1:
        raise ValidationError(1, "chi(1) != 1")
    if mod > 1 and chi(mod - 1) == -1:
        raise ValidationError(mod - 1, "odd character (chi(-1) = -1) with even weight")
    if t.nmax < 4:
        raise ValidationError(t.nmax, "need at least 4 coefficients")
    if t.coeff(1) != 1:
        raise ValidationError(1, "not normalized: a(1) != 1")
    n = verify_eigenform(t)
    if n is not None:
        raise ValidationError(n, "Hecke multiplicativity or prime-power recurrence fails")
    n = verify_reality(t)
    if n is not None:
        raise ValidationError(n, "a(n) != chi(n) conj(a(n))")


def load_form(path, check: bool = True) -> CoeffTable:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    t = parse_form(data, str(path))
    if check:
        validate(t)
    return t


def ingest_form(path) -> CoeffTable:
    """Parse and validate a form file."""
    return load_form(path, check=True)


def form_to_json(t: CoeffTable) -> dict:
    chi = t.spec.character
    return {
        "label": t.spec.label,
        "weight": t.weight,
        "level": t.level,
        "char_modulus": chi.modulus,
        "char_values": [[n, cyc_to_json(chi(n))] for n in range(chi.modulus) if gcd(n, chi.modulus) == 1],
        "coefficients": [cyc_to_json(t.coeff(n)) for n in range(1, t.nmax + 1)],
    }


def dump_form(t: CoeffTable, path) -> None:
    Path(path).write_text(json.dumps(form_to_json(t), indent=1, sort_keys=True) + "\n")


def twist(t: CoeffTable, psi: DirichletCharacter, label: str) -> CoeffTable:
    """Twist f by psi: coefficients a(n) psi(n), character chi psi^2.

    The level is taken as lcm(N, M^2) for psi mod M, which holds for the
    coprime-level twists used here."""
    m = psi.modulus
    level = t.level * m * m // gcd(t.level, m * m)
    chi = t.spec.character.extend(level) * psi.square().extend(level)
    spec = EigenformSpec(label, t.weight, level, chi, t.spec.source)
    return CoeffTable(spec, [compact(t.coeff(n) * psi(n)) for n in range(1, t.nmax + 1)])
