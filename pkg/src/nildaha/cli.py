"""Command-line front end: batch verification and report emission.

Every run prints one JSON document (or CSV for window output) that embeds
the parsed configuration and a schema version.  Output is deterministic:
no timestamps, sorted keys, rationals rendered as "p/q" strings.

Exit codes: 0 all checks passed, 1 a verification failed (the report
carries the counterexample), 2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import KernelError, NotExact
from .filtration_kit import (GradedFilteredWindow, kazhdan_regrade,
                             kazhdan_regrade_inverse, koszul_check)
from .kostant_slice import big_cell_pair, fiber_vs_big_cell, parse_group
from .nil_daha import verify_presentation
from .root_data import build_root_datum, fundamental_invariants
from .toda_modules import (classify_parameter, hc_weight_module,
                           simplicity_certificate)
from .torus_diffops import sandwich_report

SCHEMA = 1


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def parse_vector(text: str) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(part) for part in text.split(","))


def _thread_count() -> int:
    raw = os.environ.get("TODA_KERNEL_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def jsonable(value):
    """Rebuild a report out of JSON-safe pieces; rationals become strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def emit_json(document: dict, out: Optional[str]) -> None:
    text = json.dumps(jsonable(document), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_csv(rows, out: Optional[str]) -> None:
    import csv as _csv

    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_echo(args: argparse.Namespace) -> dict:
    skip = {"func"}
    out = {}
    for key, value in vars(args).items():
        if key in skip:
            continue
        out[key] = jsonable(value)
    return out


# -- subcommand handlers --------------------------------------------------------


def cmd_verify_presentation(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    report = verify_presentation(datum, max_degree=args.degree,
                                 level=args.level, threads=_thread_count())
    return (0 if report["all_ok"] else 1), report


def cmd_classify(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    records = [classify_parameter(datum, nu).to_json() for nu in args.nu]
    return 0, {"parameters": records}


_SAMPLE_BOX = (0, 1, -1)


def _sample_mus(n: int):
    out = [(0,) * n]
    for i in range(n):
        for s in (1, -1):
            out.append(tuple(s if j == i else 0 for j in range(n)))
    out.append((1,) * n)
    return out


def cmd_hc_module(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    module = hc_weight_module(datum, args.nu)
    mus = _sample_mus(datum.n)
    relations = module.verify_line_relations(mus, mus)
    invariants = [p for _, p in fundamental_invariants(datum)]
    central = module.central_character_report(invariants, mus)
    ok = relations["ok"] and central["generator_lines_ok"] \
        and central["block_stable_ok"]
    report = module.to_json()
    report["line_relations"] = relations
    report["central_character"] = central
    report["all_ok"] = ok
    return (0 if ok else 1), report


def cmd_simplicity(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    records = []
    ok = True
    for nu in args.nu:
        cert = simplicity_certificate(datum, nu)
        if cert["simple_certified"] != cert["regular"]:
            ok = False
        records.append(cert)
    return (0 if ok else 1), {"certificates": records,
                              "certificate_matches_regularity": ok}


def cmd_koszul(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    try:
        report = koszul_check(datum, args.nu, args.degree)
    except NotExact as err:
        return 1, {"all_ok": False, "witness": str(err)}
    return (0 if report["all_ok"] else 1), report


def cmd_kostant(args) -> Tuple[int, dict]:
    kind, n = parse_group(args.group)
    report = fiber_vs_big_cell(args.group, args.nu)
    ok = report["all_meet_big_cell"]
    if args.pairs:
        rng = random.Random(args.seed)
        pool = [Fraction(v) for v in (1, 2, 3, -1, -2, Fraction(1, 2),
                                      Fraction(-1, 3), Fraction(5, 2))]
        pair_ok = 0
        failures = []
        for _ in range(args.pairs):
            h = [rng.choice(pool) for _ in range(n - 1)]
            t = [Fraction(rng.randrange(-4, 5)) for _ in range(n - 1)]
            if kind == "SL":
                prod = Fraction(1)
                for v in h:
                    prod *= v
                h.append(1 / prod)
                t.append(-sum(t))
            else:
                h.append(rng.choice(pool))
                t.append(Fraction(rng.randrange(-4, 5)))
            pair = big_cell_pair(args.group, h, t)
            good = pair["ad_fixes_slice_element"] \
                and pair["normalized_big_cell"] and pair["raw_big_cell"]
            if good:
                pair_ok += 1
            else:
                failures.append({"h": [str(v) for v in h],
                                 "t": [str(v) for v in t]})
        report["pair_samples"] = args.pairs
        report["pair_samples_ok"] = pair_ok
        report["pair_failures"] = failures
        ok = ok and not failures
    return (0 if ok else 1), report


def cmd_regrade(args) -> Tuple[int, dict]:
    with open(args.input) as fh:
        data = json.load(fh)
    window = GradedFilteredWindow.from_json(data)
    result = kazhdan_regrade_inverse(window) if args.inverse \
        else kazhdan_regrade(window)
    if args.format == "csv":
        return 0, {"_csv_rows": result.to_csv_rows()}
    return 0, {"input": window.to_json(), "output": result.to_json()}


def cmd_sandwich_check(args) -> Tuple[int, dict]:
    datum = build_root_datum(args.type)
    report = sandwich_report(datum, args.count, seed=args.seed,
                             level=args.level)
    return (0 if report["all_ok"] else 1), report


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nildaha",
        description="Exact verification kit for the nil Hecke realization "
                    "of the quantum Toda lattice.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify-presentation",
                       help="check the defining relations exactly")
    p.add_argument("--type", required=True, help="root datum, e.g. A2 or A1xT1")
    p.add_argument("--degree", type=int, default=3,
                   help="monomial degree bound for the module check")
    p.add_argument("--level", type=parse_rational, default=None,
                   help="specialize hbar to this rational")
    common(p)
    p.set_defaults(func=cmd_verify_presentation)

    p = sub.add_parser("classify", help="classify infinitesimal characters")
    p.add_argument("--type", required=True)
    p.add_argument("--nu", type=parse_vector, action="append", required=True,
                   help="parameter vector, comma-separated rationals")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hc-module", help="build a weight module and verify it")
    p.add_argument("--type", required=True)
    p.add_argument("--nu", type=parse_vector, required=True)
    common(p)
    p.set_defaults(func=cmd_hc_module)

    p = sub.add_parser("simplicity", help="issue simplicity certificates")
    p.add_argument("--type", required=True)
    p.add_argument("--nu", type=parse_vector, action="append", required=True)
    common(p)
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("koszul",
                       help="certify the central character resolution")
    p.add_argument("--type", required=True)
    p.add_argument("--nu", type=parse_vector, required=True)
    p.add_argument("--degree", type=int, default=6,
                   help="weighted degree bound of the certificate window")
    common(p)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("kostant",
                       help="slice fibers, components, big-cell witnesses")
    p.add_argument("--group", required=True, help="SLn or GLn, n <= 4")
    p.add_argument("--nu", type=parse_vector, required=True,
                   help="characteristic polynomial coefficients a_1..a_n")
    p.add_argument("--pairs", type=int, default=0,
                   help="also sample this many random big-cell pairs")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_kostant)

    p = sub.add_parser("regrade", help="regrade a filtration window")
    p.add_argument("--input", required=True, help="window JSON file")
    p.add_argument("--inverse", action="store_true",
                   help="invert a regraded window instead")
    common(p)
    p.set_defaults(func=cmd_regrade)

    p = sub.add_parser("sandwich-check",
                       help="verify the spherical sandwich on random input")
    p.add_argument("--type", required=True)
    p.add_argument("--count", type=int, default=10,
                   help="number of random invariant pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=parse_rational, default=None)
    common(p)
    p.set_defaults(func=cmd_sandwich_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.subcommand != "regrade":
        parser.error("csv output is only available for regrade")
    try:
        code, payload = args.func(args)
    except NotExact as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return 1
    except KernelError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if "_csv_rows" in payload:
        emit_csv(payload["_csv_rows"], args.out)
        return code
    document = {"schema": SCHEMA, "config": _config_echo(args)}
    document.update(payload)
    emit_json(document, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
