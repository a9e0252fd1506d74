"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .exactmath.poly import unrotate
from .genfun import (
    AllMultiples,
    ConjugatePairData,
    DegeneratePair,
    EvenJ,
    OddMultiples,
    RationalFunction,
    ResidueClass,
    closed_P,
    closed_S1,
    closed_S1j,
    closed_Sl,
    expand,
    filter_series,
)
from .hecketheory import lambda_j, theorem4_hypotheses
from .qexpand import (
    BUILTIN_SPECS,
    CoeffTable,
    DirichletCharacter,
    OutOfRange,
    ParseError,
    ValidationError,
    builtin_table,
    dump_form,
    ingest_form,
    load_form,
    sqrt_characters,
    verify_eigenform,
)
from .signscan import (
    AllZero,
    SignSequenceSpec,
    char_value_order,
    detect_sign_changes,
    realize_sequence,
    scan,
    theorem5_realroot_check,
)

CSV_COLUMNS = [
    "form", "p", "pattern", "j", "l", "m", "nmax", "first_change", "change_count",
    "zero_count", "deligne_margin", "exclusion_mus", "theorem5_status",
]


class CliError(Exception):
    pass


def primes_between(a: int, b: int) -> list[int]:
    sieve = bytearray([1]) * (b + 1)
    for i in range(min(2, b + 1)):
        sieve[i] = 0
    for i in range(2, int(b ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [p for p in range(max(a, 2), b + 1) if sieve[p]]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# -- registry ------------------------------------------------------------------

def _registry_file(registry: Path, label: str) -> Path:
    return registry / (label.replace("/", "_") + ".json")


def registry_labels(registry: Path) -> list[Path]:
    if not registry.is_dir():
        return []
    return sorted(registry.glob("*.json"))


def resolve_form(name: str, registry: Path, nmax: int) -> CoeffTable:
    """Built-in label, registry label, or a JSON path (loaded without validation)."""
    if name in BUILTIN_SPECS:
        return builtin_table(name, nmax)
    f = _registry_file(registry, name)
    if f.is_file():
        return load_form(f, check=False)
    if Path(name).is_file():
        return load_form(name, check=False)
    raise CliError(f"unknown form {name!r}")


def pick_chi0(t: CoeffTable, index: int | None) -> DirichletCharacter | None:
    """Square root of the nebentypus; None stands for the trivial one."""
    chi = t.spec.character
    if chi.is_trivial() and not index:
        return None
    roots = sqrt_characters(chi)
    if not roots:
        raise CliError("the character has no square root")
    root = roots[index or 0]
    return root.extend(t.level) if t.level != root.modulus else root


# -- commands ------------------------------------------------------------------

def cmd_forms_list(args) -> int:
    for label, spec in BUILTIN_SPECS.items():
        alias = "" if spec.label == label else f" (alias of {spec.label})"
        print(f"{label}\tk={spec.weight}\tN={spec.level}\tchi_order={spec.character.order}\tbuilt-in{alias}")
    for path in registry_labels(Path(args.registry)):
        try:
            t = load_form(path, check=False)
        except (ParseError, OSError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        print(f"{t.spec.label}\tk={t.weight}\tN={t.level}\tchi_order={t.spec.character.order}\t{path}")
    return 0


def cmd_ingest(args) -> int:
    try:
        t = ingest_form(args.file)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"ValidationError at n={exc.n}: {exc.reason}", file=sys.stderr)
        return 2
    registry = Path(args.registry)
    registry.mkdir(parents=True, exist_ok=True)
    out = _registry_file(registry, t.spec.label)
    dump_form(t, out)
    print(f"ingested {t.spec.label} -> {out}")
    return 0


def cmd_coeffs(args) -> int:
    t = resolve_form(args.form, Path(args.registry), max(args.prime, 2))
    chi0 = pick_chi0(t, args.chi0)
    p, j = args.prime, args.j
    seq = t.prime_power_seq(p, j * args.n)
    c = chi0(p) if chi0 is not None else 1
    print(f"# {t.spec.label} p={p} j={j} lambda_j={lambda_j(t, p, j)}")
    print("n\texponent\ta(p^e)\ta(p^e)/chi0(p)^e")
    for n in range(args.n + 1):
        e = j * n
        print(f"{n}\t{e}\t{seq[e]}\t{unrotate(seq[e], c, e)}")
    return 0


class _Suite:
    def __init__(self):
        self.results: dict[str, str | None] = {}

    def record(self, name: str, failure: str | None):
        """Keep the first failure seen for each identity."""
        if self.results.get(name) is None:
            self.results[name] = failure

    def report(self) -> int:
        bad = 0
        for name, failure in self.results.items():
            if failure is None:
                print(f"PASS {name}")
            else:
                bad += 1
                print(f"FAIL {name}: {failure}")
        return 1 if bad else 0


def _first_mismatch(series, expected: dict[int, object], order: int) -> int | None:
    for e in range(order):
        if series[e] != expected.get(e, 0):
            return e
    return None


def verify_form(t: CoeffTable, pmax: int, jmax: int, order: int, chi0=None, mmax: int = 5) -> _Suite:
    suite = _Suite()
    bad = verify_eigenform(t)
    suite.record("table-eigenform", None if bad is None else f"first violation at n={bad}")
    for p in primes_between(2, pmax):
        if t.level % p == 0 or p > t.nmax:
            continue
        c = chi0(p) if chi0 is not None else 1
        c_p = t.chi(p) * p ** (t.weight - 1)
        emax = max(order - 1, jmax)
        seq = t.prime_power_seq(p, emax)
        norm = [unrotate(seq[e], c, e) for e in range(emax + 1)]
        # prime-power recurrence along p^(jn)
        fail = None
        for j in range(1, jmax + 1):
            lam = lambda_j(t, p, j)
            n = 1
            while j * (n + 1) <= emax:
                lhs = seq[j * (n + 1)]
                rhs = lam * seq[j * n] - c_p ** j * seq[j * (n - 1)]
                if lhs != rhs:
                    fail = fail or f"p={p} j={j} first failing index n={p ** (j * (n + 1))}"
                    break
                n += 1
        suite.record("hecke-recurrence", fail)
        d = ConjugatePairData.from_table(t, p, chi0)
        P = closed_P(d)
        for j in range(1, jmax + 1):
            R = filter_series(P, AllMultiples(j))
            e = _first_mismatch(expand(R, order), {k: norm[k] for k in range(0, order, j)}, order)
            suite.record("multiples-filter-expansion", None if e is None else f"p={p} j={j} first failing index n={p ** e}")
        suite.record("odd-part", None if closed_S1(d) + filter_series(P, AllMultiples(2)) == P else f"p={p}")
        for j in range(1, jmax + 1, 2):
            ok = filter_series(closed_S1(d), AllMultiples(j)) == closed_S1j(d, j)
            suite.record("odd-multiples-dual-path", None if ok else f"p={p} j={j}")
        if d.is_degenerate():
            suite.record("residue-partition", f"p={p} degenerate pair")
            continue
        for m in range(1, mmax + 1):
            total = RationalFunction(0)
            for l in range(m):
                total = total + closed_Sl(d, l, m)
            suite.record("residue-partition", None if total == P else f"p={p} m={m}")
    return suite


def cmd_verify(args) -> int:
    t = resolve_form(args.form, Path(args.registry), max(args.pmax, args.nmax))
    chi0 = pick_chi0(t, args.chi0)
    suite = verify_form(t, args.pmax, args.j_max, args.order, chi0, args.m_max)
    return suite.report()


def _pattern_list(kind: str, js: list[int], l: int | None, m: int | None, p: int, chi0) -> list:
    if kind == "all":
        return [AllMultiples(j) for j in js]
    if kind == "odd":
        return [OddMultiples(j) for j in js]
    mm = m if m is not None else (char_value_order(chi0, p) if chi0 is not None else 1)
    if l is not None:
        return [ResidueClass(l, mm)]
    return [ResidueClass(ll, mm) for ll in range(1, mm)]


def _row_for(job) -> dict:
    t, p, pattern, nmax, chi0, m = job
    base = {
        "form": t.spec.label, "p": p, "pattern": pattern.kind,
        "j": pattern.j if pattern.kind != "class" else "",
        "l": pattern.l if pattern.kind == "class" else "",
        "m": pattern.m if pattern.kind == "class" else (m if m is not None else ""),
        "nmax": nmax, "first_change": "", "change_count": "", "zero_count": "",
        "deligne_margin": "", "exclusion_mus": "", "theorem5_status": "",
    }
    try:
        rep = scan(t, p, pattern, nmax, chi0, m)
    except (OutOfRange, ValueError, ArithmeticError) as exc:
        base["first_change"] = f"ERROR:{type(exc).__name__}: {exc}"
        return base
    base.update(
        deligne_margin=str(rep.deligne_margin),
        exclusion_mus=";".join(str(mu) for mu in rep.exclusion_hits),
        theorem5_status=rep.theorem5_status,
    )
    if rep.status == "ALL_ZERO":
        base["first_change"] = "ALL_ZERO"
        base["zero_count"] = nmax
        base["change_count"] = 0
    else:
        base["first_change"] = "" if rep.first_change_index is None else rep.first_change_index
        base["change_count"] = rep.change_count
        base["zero_count"] = rep.zero_count
    return base


def scan_rows(tables: list[CoeffTable], primes: list[int], kind: str, js: list[int], l, m, nmax: int,
              chi0_index: int | None, jobs: int = 1) -> list[dict]:
    work = []
    for t in tables:
        chi0 = pick_chi0(t, chi0_index)
        for p in primes:
            if t.level % p == 0:
                print(f"note: skipping {t.spec.label} p={p}: p divides N", file=sys.stderr)
                continue
            patterns = _pattern_list(kind, js, l, m, p, chi0)
            if not patterns:
                print(f"note: {t.spec.label} p={p}: no residue classes with 1 <= l < m", file=sys.stderr)
            for pat in patterns:
                work.append((t, p, pat, nmax, chi0, m))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_row_for, work, chunksize=4))
    else:
        rows = [_row_for(w) for w in work]
    rows.sort(key=lambda r: (r["form"], r["p"], r["pattern"], str(r["j"]), str(r["l"])))
    return rows


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_scan(args) -> int:
    if args.pmin < 2 or args.pmax < args.pmin:
        raise CliError("need pmax >= pmin >= 2")
    if args.nmax < 2:
        raise CliError("need nmax >= 2")
    labels = [x for x in args.form.split(",") if x]
    tables = [resolve_form(x, Path(args.registry), max(args.pmax, 2)) for x in labels]
    rows = scan_rows(tables, primes_between(args.pmin, args.pmax), args.pattern, _int_list(args.j),
                     args.l, args.m, args.nmax, args.chi0, args.jobs)
    text = format_rows(rows, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = sum(1 for r in rows if str(r["first_change"]).startswith("ERROR"))
    return 1 if rows and failed == len(rows) else 0


def cmd_theorem4(args) -> int:
    out = 0
    for j in _int_list(args.j):
        r = theorem4_hypotheses(args.weight, args.prime, j)
        print(f"k={r.weight} p={r.prime} j={r.j}")
        print(f"  char_poly: {r.char_poly}")
        print(f"  coefficients (low to high): {[str(c) for c in r.char_poly.coeffs]}")
        print(f"  irreducible: {r.irreducible.value} ({r.irreducible_reason})")
        print(f"  resultant Res(P(X), P(-X)): {r.resultant}")
        print(f"  eigen_sum_zero: {'Yes' if r.eigen_sum_zero else 'No'}")
        print(f"  zero eigenvalue multiplicity: {r.zero_multiplicity}")
        print(f"  note: {r.note}")
    return out


def cmd_theorem5(args) -> int:
    t = resolve_form(args.form, Path(args.registry), max(args.prime, 2))
    p = args.prime
    if t.level % p == 0:
        raise CliError(f"p={p} divides N={t.level}")
    chi0 = pick_chi0(t, args.chi0)
    m_p = char_value_order(chi0, p) if chi0 is not None else 1
    m = args.m if args.m is not None else m_p
    if m % m_p:
        raise CliError(f"m={m} is not a multiple of the order {m_p} of chi0(p)")
    d = ConjugatePairData.from_table(t, p, chi0)
    try:
        r = theorem5_realroot_check(d, m)
    except DegeneratePair as exc:
        print(f"DegeneratePair: {exc}")
        return 0
    print(f"{t.spec.label} p={p} m={m} (order of chi0(p) = {m_p})")
    print(f"  polynomial: {r.poly}")
    print(f"  status: {r}")
    print(f"  real roots: {r.real_roots}  positive roots: {r.positive_roots}")
    for l in range(1, m):
        spec = SignSequenceSpec(t.spec.label, p, ResidueClass(l, m), args.nmax)
        try:
            c = detect_sign_changes(realize_sequence(t, spec, chi0))
            print(f"  l={l}: changes={c.change_count} first={c.first_change_index} zeros={c.zero_count}")
        except AllZero:
            print(f"  l={l}: ALL_ZERO")
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heckesign", description=__doc__)
    ap.add_argument("--registry", default="forms", help="directory of ingested forms (default ./forms)")
    sub = ap.add_subparsers(dest="command", required=True)

    forms = sub.add_parser("forms", help="form registry")
    fsub = forms.add_subparsers(dest="forms_command", required=True)
    fsub.add_parser("list").set_defaults(func=cmd_forms_list)

    ing = sub.add_parser("ingest", help="validate a JSON form file and store it")
    ing.add_argument("file")
    ing.set_defaults(func=cmd_ingest)

    co = sub.add_parser("coeffs", help="a(p^(jn)) for n <= N")
    co.add_argument("--form", required=True)
    co.add_argument("--prime", type=int, required=True)
    co.add_argument("--j", type=int, default=1)
    co.add_argument("--n", type=int, default=10)
    co.add_argument("--chi0", type=int, default=None)
    co.set_defaults(func=cmd_coeffs)

    ve = sub.add_parser("verify", help="exact identity suite")
    ve.add_argument("--form", required=True)
    ve.add_argument("--pmax", type=int, default=13)
    ve.add_argument("--j-max", type=int, default=3)
    ve.add_argument("--order", type=int, default=200)
    ve.add_argument("--m-max", type=int, default=5)
    ve.add_argument("--nmax", type=int, default=100)
    ve.add_argument("--chi0", type=int, default=None)
    ve.set_defaults(func=cmd_verify)

    sc = sub.add_parser("scan", help="sign-change census")
    sc.add_argument("--form", required=True, help="label(s), comma separated")
    sc.add_argument("--pmin", type=int, default=2)
    sc.add_argument("--pmax", type=int, default=97)
    sc.add_argument("--pattern", choices=["all", "odd", "class"], default="all")
    sc.add_argument("--j", default="1", help="comma-separated j values")
    sc.add_argument("--l", type=int, default=None)
    sc.add_argument("--m", type=int, default=None)
    sc.add_argument("--nmax", type=int, default=100)
    sc.add_argument("--out", default=None)
    sc.add_argument("--format", choices=["csv", "json"], default="csv")
    sc.add_argument("--chi0", type=int, default=None)
    sc.add_argument("--jobs", type=int, default=1)
    sc.set_defaults(func=cmd_scan)

    t4 = sub.add_parser("theorem4", help="irreducibility and eigenvalue-pair checks on level 1")
    t4.add_argument("--weight", type=int, required=True)
    t4.add_argument("--prime", type=int, required=True)
    t4.add_argument("--j", default="1")
    t4.set_defaults(func=cmd_theorem4)

    t5 = sub.add_parser("theorem5", help="real-zero test and residue-class censuses")
    t5.add_argument("--form", required=True)
    t5.add_argument("--prime", type=int, required=True)
    t5.add_argument("--m", type=int, default=None)
    t5.add_argument("--nmax", type=int, default=100)
    t5.add_argument("--chi0", type=int, default=None)
    t5.set_defaults(func=cmd_theorem5)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, OutOfRange, EvenJ, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
