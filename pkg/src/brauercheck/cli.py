"""Command-line front end.

    brauercheck verify-symbolic [--case even|odd|both] [--out DIR]
    brauercheck verify-prime --p P [--r R] [--u auto|INT] [--case auto|even|odd] [--out DIR]
    brauercheck scan --pmin A --pmax B [--jobs N] [--out DIR]
    brauercheck check-identity [FILE ...] [--bundled] [--p P]
    brauercheck sl2z [--kmax K] [--out FILE]
    brauercheck revalidate FILE ...

Exit status is 0 iff everything checked is valid.
"""

from __future__ import annotations

import argparse
from concurrent.futures import ProcessPoolExecutor
import json
from pathlib import Path
import sys

from . import __version__
from .cohomology import abelianization, mayer_vietoris
from .corpus import bundled_identity_files, check_text, corpus_consistency
from .local_brauer import (
    LocalField,
    ParityMismatch,
    case_for_field,
    displayed_alpha2,
    etale_algebra_of_surface,
    gamma_of_curve,
    hilbert_symbol,
)
from .reduction import SCHEMA_VERSION, Check, revalidate, stable_reduction_certificate
from .ring import DomainError, FiniteField, is_prime


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# Library-level entry points
# --------------------------------------------------------------------------


def resolve_field_and_u(p, r=1, u="auto"):
    if p < 11:
        raise UsageError(f"p >= 11 required (got p = {p})")
    try:
        field = FiniteField(p, r)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if u in (None, "auto"):
        local = LocalField.of(field)
    else:
        idx = int(u)
        if not 0 < idx < field.q:
            raise UsageError(f"u must index a nonzero element of {field.name}")
        try:
            local = LocalField.of(field, field.element(idx))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return field, local


def gamma_check(case, local):
    g = gamma_of_curve(case, local)
    shown = displayed_alpha2(case, local.q)
    L = local
    witness = {
        "half_order": (L.q - 1) // 2,
        "etale_algebra": dict(etale_algebra_of_surface(case).factors),
        "symbols": {
            "t,u": hilbert_symbol(L.t(), L.u_class()),
            "-1,tu": hilbert_symbol(L.minus_one(), L.tu()),
            "t,t": hilbert_symbol(L.t(), L.t()),
            "u,u": hilbert_symbol(L.u_class(), L.u_class()),
        },
        "alpha2": g,
        "displayed": shown,
    }
    return g, Check("gamma_nontrivial", g == shown == -1, witness)


def prime_certificate(p, r=1, u="auto", case="auto"):
    """Instance certificate for F_q((t)), q = p^r, including gamma(C)."""
    field, local = resolve_field_and_u(p, r, u)
    if case == "auto":
        case = case_for_field(field)
    try:
        g, chk = gamma_check(case, local)
    except ParityMismatch as exc:
        raise UsageError(str(exc)) from None
    cert = stable_reduction_certificate(case, field, local.u)
    cert.subcommand = "verify-prime"
    cert.checks.append(chk)
    cert.gamma = g
    return cert


def symbolic_certificate(case):
    return stable_reduction_certificate(case)


def primes_in(pmin, pmax):
    return [p for p in range(max(pmin, 11), pmax + 1) if is_prime(p)]


def _scan_one(p):
    cert = prime_certificate(p)
    cert.subcommand = "scan"
    return p, cert.case, cert.u, cert.gamma, cert.valid, cert.dumps()


def scan(pmin, pmax, jobs=1):
    """Certificates for every prime in [pmin, pmax], ordered by p."""
    if pmin < 11:
        raise UsageError(f"p >= 11 required (got pmin = {pmin})")
    ps = primes_in(pmin, pmax)
    if jobs > 1 and len(ps) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, ps))
    else:
        results = [_scan_one(p) for p in ps]
    return sorted(results)


def scan_summary(pmin, pmax, results):
    rows = [
        {"p": p, "case": case, "u": u, "gamma": gamma, "valid": valid}
        for p, case, u, gamma, valid, _ in results
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "scan",
        "pmin": pmin,
        "pmax": pmax,
        "results": rows,
        "valid": bool(rows) and all(r["valid"] for r in rows),
    }


def sl2z_table(kmax=4):
    segs = mayer_vietoris(4, 6, 2, kmax)
    groups = [str(s.group) for s in segs]
    ab = abelianization(4, 6, 2)
    checks = {"H1 = 0": kmax < 1 or groups[1] == "0"}
    if kmax >= 2:
        checks["H2 = Z/12"] = groups[2] == "Z/12"
        checks["H2 torsion = abelianization"] = str(ab) == groups[2]
    if kmax >= 3:
        checks["H3 = 0"] = groups[3] == "0"
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "sl2z",
        "amalgam": "Z/4 *_{Z/2} Z/6",
        "degrees": [
            {
                "k": s.k,
                "H(A)+H(B)": str(s.source),
                "H(C)": str(s.target),
                "ker": str(s.kernel),
                "coker": str(s.cokernel),
                "H(G)": str(s.group),
            }
            for s in segs
        ],
        "abelianization": str(ab),
        "checks": checks,
        "valid": all(checks.values()),
    }


# --------------------------------------------------------------------------
# Command handlers
# --------------------------------------------------------------------------


def _write(out, name, text):
    if out is None:
        return None
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    path = d / name
    path.write_text(text, encoding="utf-8")
    return path


def _report(cert, path, stream):
    status = "VALID" if cert.valid else "INVALID"
    label = "symbolic" if cert.p is None else f"p={cert.p} r={cert.r} u={cert.u}"
    print(f"[{status}] {cert.case:4s} {label}" + (f" gamma={cert.gamma}" if cert.gamma is not None else ""), file=stream)
    for c in cert.checks:
        if not c.passed:
            print(f"    FAILED {c.name}", file=stream)
    if path:
        print(f"    wrote {path}", file=stream)


def cmd_verify_symbolic(args, stream):
    cases = ("even", "odd") if args.case == "both" else (args.case,)
    ok = True
    for case in cases:
        cert = symbolic_certificate(case)
        path = _write(args.out, f"symbolic_{case}.json", cert.dumps())
        _report(cert, path, stream)
        ok = ok and cert.valid
    return 0 if ok else 1


def cmd_verify_prime(args, stream):
    cert = prime_certificate(args.p, args.r, args.u, args.case)
    suffix = "" if args.r == 1 else f"_r{args.r}"
    path = _write(args.out, f"prime_{args.p}{suffix}.json", cert.dumps())
    _report(cert, path, stream)
    return 0 if cert.valid else 1


def cmd_scan(args, stream):
    results = scan(args.pmin, args.pmax, args.jobs)
    for p, *_rest, text in results:
        _write(args.out, f"prime_{p}.json", text)
    summary = scan_summary(args.pmin, args.pmax, results)
    _write(args.out, "summary.json", json.dumps(summary, indent=2) + "\n")
    print(f"{'p':>5} {'case':>5} {'u':>4} {'gamma':>6}  valid", file=stream)
    for row in summary["results"]:
        print(f"{row['p']:>5} {row['case']:>5} {row['u']:>4} {row['gamma']:>6}  {row['valid']}", file=stream)
    n = len(summary["results"])
    good = sum(r["valid"] for r in summary["results"])
    print(f"{good}/{n} primes valid", file=stream)
    return 0 if summary["valid"] else 1


def cmd_check_identity(args, stream):
    domain = None
    if args.p is not None:
        _, local = resolve_field_and_u(args.p)
        domain = local.field
    texts = {}
    if args.bundled:
        texts.update(bundled_identity_files())
    for f in args.files:
        try:
            texts[f] = Path(f).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"{f}: cannot read ({exc.strerror})", file=stream)
            return 2
    if not texts:
        raise UsageError("no identity files given (pass FILE ... or --bundled)")
    ok = True
    for name, text in texts.items():
        good, msg = check_text(text, name, domain)
        print(f"{name}: {msg}", file=stream)
        ok = ok and good
    if len(texts) > 1:
        conflicts = corpus_consistency(texts)
        for c in conflicts:
            print(f"inconsistent: {c}", file=stream)
        ok = ok and not conflicts
    return 0 if ok else 1


def cmd_sl2z(args, stream):
    table = sl2z_table(args.kmax)
    print(f"SL2(Z) = {table['amalgam']}", file=stream)
    print(f"{'k':>2}  {'H(A)+H(B)':<14} {'H(C)':<6} {'ker':<8} {'coker':<6} H^k(SL2(Z))", file=stream)
    for d in table["degrees"]:
        print(
            f"{d['k']:>2}  {d['H(A)+H(B)']:<14} {d['H(C)']:<6} {d['ker']:<8} {d['coker']:<6} {d['H(G)']}",
            file=stream,
        )
    print(f"abelianization: {table['abelianization']}", file=stream)
    for name, good in table["checks"].items():
        print(f"[{'PASS' if good else 'FAIL'}] {name}", file=stream)
    if args.out:
        Path(args.out).write_text(json.dumps(table, indent=2) + "\n", encoding="utf-8")
    return 0 if table["valid"] else 1


def cmd_revalidate(args, stream):
    ok = True
    for f in args.files:
        try:
            data = json.loads(Path(f).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"{f}: cannot load ({exc})", file=stream)
            ok = False
            continue
        valid, results = revalidate(data)
        agree = valid == data.get("valid")
        print(f"{f}: revalidated={valid} recorded={data.get('valid')}", file=stream)
        for name, good in results.items():
            if not good:
                print(f"    FAILED {name}", file=stream)
        ok = ok and valid and agree
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="brauercheck", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-symbolic", help="symbolic certificates over Z[1/210][t, u]")
    s.add_argument("--case", choices=("even", "odd", "both"), default="both")
    s.add_argument("--out", metavar="DIR")
    s.set_defaults(func=cmd_verify_symbolic)

    s = sub.add_parser("verify-prime", help="instance certificate and gamma(C) for one prime")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--u", default="auto", help="'auto' or the index of u in the canonical enumeration of F_q")
    s.add_argument("--case", choices=("auto", "even", "odd"), default="auto")
    s.add_argument("--out", metavar="DIR")
    s.set_defaults(func=cmd_verify_prime)

    s = sub.add_parser("scan", help="instance certificates for a range of primes")
    s.add_argument("--pmin", type=int, required=True)
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", metavar="DIR")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("check-identity", help="check identity files")
    s.add_argument("files", nargs="*", metavar="FILE")
    s.add_argument("--bundled", action="store_true", help="include the bundled corpus")
    s.add_argument("--p", type=int, help="evaluate over F_p instead of Z[1/210]")
    s.set_defaults(func=cmd_check_identity)

    s = sub.add_parser("sl2z", help="cohomology of SL2(Z) = Z/4 *_{Z/2} Z/6")
    s.add_argument("--kmax", type=int, default=4)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_sl2z)

    s = sub.add_parser("revalidate", help="re-check certificates from their JSON witnesses")
    s.add_argument("files", nargs="+", metavar="FILE")
    s.set_defaults(func=cmd_revalidate)
    return ap


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stream)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2
