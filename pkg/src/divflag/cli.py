"""Command-line front end.

Exit codes follow a certification contract: 0 means success or a positive
verdict, 2 means a sound negative verdict (not divisionally free, not
free, refuted, or search budget exhausted), 1 means a usage or input
error.  All output orderings are deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import intpoly
from .arrangement import Arrangement
from .catalog import CATALOG_NAMES, CatalogError, build_entry
from .exactalg import QQ, FieldError
from .freeness import (
    IF_CERTIFIED,
    division_equivalences,
    divisional_flag_search,
    hereditarily_df,
    inductively_free,
)
from .jsonio import (
    SchemaError,
    arrangement_to_json,
    flag_to_json,
    if_certificate_to_json,
    load_arrangement,
    poly_to_json,
    save_json,
    verify_certificate,
)
from .lattice import BadPrimeError, build_lattice, char_data, point_count_oracle, whitney_oracle
from .multi import free3_decide, remainder_division, ziegler_restriction

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CERTIFIED = 2


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="arrangement JSON file")
    parser.add_argument("--catalog", choices=CATALOG_NAMES, help="use a catalog arrangement")
    parser.add_argument("--l", "--rank", dest="rank", type=int, help="catalog rank parameter")
    parser.add_argument("--k", type=int, help="catalog k parameter (shi, intermediate)")
    parser.add_argument("--r", type=int, help="catalog r parameter (intermediate)")
    parser.add_argument("--p", type=int, help="catalog prime parameter")
    parser.add_argument("--roots", choices=("A", "B", "C", "D"), help="root system type (shi)")
    parser.add_argument("--json", dest="json_out", metavar="OUT", help="write a JSON report")


def _resolve_arrangement(args) -> Arrangement:
    if args.catalog and args.input:
        raise SchemaError("give either an input file or --catalog, not both")
    if args.catalog:
        params = {}
        if args.rank is not None:
            params["rank"] = args.rank
        if args.k is not None:
            params["k"] = args.k
        if args.r is not None:
            params["r"] = args.r
        if args.p is not None:
            params["p"] = args.p
        if args.roots is not None:
            params["roots"] = args.roots
        entry = build_entry(args.catalog, **params)
        arrangement = entry.arrangement
        if hasattr(arrangement, "arrangement"):  # pentagon returns extra data
            arrangement = arrangement.arrangement
        return arrangement
    if not args.input:
        raise SchemaError("an input file or --catalog is required")
    return load_arrangement(args.input)


def _threads(args) -> int:
    value = args.threads
    if value is None:
        value = os.environ.get("DIVFLAG_THREADS", "1")
    n = int(value)
    if n < 1:
        raise SchemaError("--threads must be a positive integer")
    return n


def _emit(args, report: dict) -> None:
    if args.json_out:
        save_json(args.json_out, report)


def _cmd_charpoly(args) -> int:
    arr = _resolve_arrangement(args)
    data = char_data(arr)
    print(f"hyperplanes: {len(arr)}  dim: {arr.dim}")
    print(f"chi: {intpoly.to_string(data.chi)}")
    if len(arr):
        print(f"chi0: {intpoly.to_string(data.chi0)}")
    roots = intpoly.linear_roots(data.chi)
    print(f"integer roots: {list(roots) if roots is not None else 'does not split'}")
    report = {
        "dim": arr.dim,
        "hyperplanes": len(arr),
        "chi": poly_to_json(data.chi),
        "chi0": poly_to_json(data.chi0) if len(arr) else None,
        "roots": list(roots) if roots is not None else None,
    }
    _emit(args, report)
    return EXIT_OK


def _cmd_lattice(args) -> int:
    arr = _resolve_arrangement(args)
    lat = build_lattice(arr)
    data = char_data(arr, lat)
    sizes = lat.level_sizes()
    print(f"level sizes: {list(sizes)}")
    flats_json = []
    for codim, (level, mob) in enumerate(zip(lat.levels, lat.mobius)):
        for flat, mu in zip(level, mob):
            flats_json.append({"codim": codim, "members": list(flat.members), "mobius": mu})
    print(f"flats: {len(flats_json)}")
    print(f"chi: {intpoly.to_string(data.chi)}")
    report = {
        "level_sizes": list(sizes),
        "flats": flats_json,
        "chi": poly_to_json(data.chi),
    }
    _emit(args, report)
    return EXIT_OK


def _cmd_df_check(args) -> int:
    arr = _resolve_arrangement(args)
    flag = divisional_flag_search(arr)
    if flag is None:
        print("not divisionally free (exhaustive flag search)")
        _emit(args, {"divisionally_free": False})
        return EXIT_NOT_CERTIFIED
    members = [list(f.members) for f in flag.flats]
    print(f"divisionally free; flag members per level: {members}")
    for chi in flag.charpolys:
        print(f"  chi: {intpoly.to_string(chi)}")
    if flag.exponents is not None:
        print(f"exponents: {list(flag.exponents)}")
    report = {"divisionally_free": True, "certificate": flag_to_json(flag)}
    if args.certificate:
        save_json(args.certificate, flag_to_json(flag))
    _emit(args, report)
    return EXIT_OK


def _cmd_if_check(args) -> int:
    arr = _resolve_arrangement(args)
    result = inductively_free(arr, budget=args.budget)
    print(f"inductive freeness: {result.status} (nodes: {result.nodes})")
    report = {"status": result.status, "nodes": result.nodes}
    if result.status == IF_CERTIFIED:
        cert = if_certificate_to_json(result.certificate)
        report["certificate"] = cert
        if args.certificate:
            save_json(args.certificate, cert)
        _emit(args, report)
        return EXIT_OK
    _emit(args, report)
    return EXIT_NOT_CERTIFIED


def _cmd_hdf_check(args) -> int:
    arr = _resolve_arrangement(args)
    ok, failing = hereditarily_df(arr)
    if ok:
        print("hereditarily divisionally free")
    else:
        print(f"not hereditarily divisionally free; failing flats: "
              f"{[list(f.members) for f in failing]}")
    _emit(args, {
        "hereditarily_divisionally_free": ok,
        "failing_flats": [list(f.members) for f in failing],
    })
    return EXIT_OK if ok else EXIT_NOT_CERTIFIED


def _cmd_free3(args) -> int:
    arr = _resolve_arrangement(args)
    report = free3_decide(arr)
    if report.free:
        print(f"free; exponents {list(report.exponents)} "
              f"(b2 gap 0 at hyperplane {report.witness_h})")
    else:
        print(f"not free (b2 gap {report.gap} at hyperplane {report.witness_h})")
    _emit(args, {
        "free": report.free,
        "exponents": list(report.exponents) if report.exponents else None,
        "witness_h": report.witness_h,
        "gap": report.gap,
        "b2_deconed": report.b2_dec,
        "b2_ziegler": report.b2_ziegler,
    })
    return EXIT_OK if report.free else EXIT_NOT_CERTIFIED


def _cmd_ziegler(args) -> int:
    arr = _resolve_arrangement(args)
    ma = ziegler_restriction(arr, args.pivot)
    print(f"restriction size: {len(ma.base)}  multiplicities: {list(ma.mult.values)}  "
          f"|m| = {ma.mult.total}")
    _emit(args, {
        "pivot": args.pivot,
        "restriction": arrangement_to_json(ma.base),
        "multiplicities": list(ma.mult.values),
        "total": ma.mult.total,
    })
    return EXIT_OK


def _cmd_remainder(args) -> int:
    arr = _resolve_arrangement(args)
    rep = remainder_division(arr, args.pivot)
    print(f"chi0 = (t - {rep.quotient_root}) * chi0_restriction + r")
    print(f"r: {intpoly.to_string(rep.r)}  r0: {rep.r0}  alternating view: {list(rep.alternating_r)}")
    _emit(args, {
        "pivot": rep.pivot,
        "quotient_root": rep.quotient_root,
        "r": poly_to_json(rep.r),
        "r0": rep.r0,
        "alternating_coefficients": list(rep.alternating_r),
        "chi0": poly_to_json(rep.chi0),
        "chi0_restriction": poly_to_json(rep.chi0_restriction),
    })
    return EXIT_OK


def _cmd_same_eq(args) -> int:
    arr = _resolve_arrangement(args)
    rep = division_equivalences(arr, args.pivot)
    names = (
        "chi(A^H) | chi(A)",
        "chi(A^H) | chi(A')",
        "gcd degree dim-1",
        "r0 = 0",
        "r0' = 0",
    )
    for name, value in zip(names, rep.all_conditions()):
        print(f"{name}: {value}")
    print(f"restriction certified free: {rep.restriction_certified_free}")
    _emit(args, {
        "divides_full": rep.divides_full,
        "divides_deleted": rep.divides_deleted,
        "gcd_degree_full": rep.gcd_degree_full,
        "remainder_zero": rep.remainder_zero,
        "deleted_remainder_zero": rep.deleted_remainder_zero,
        "restriction_certified_free": rep.restriction_certified_free,
    })
    return EXIT_OK


def _cmd_catalog(args) -> int:
    params = {}
    if args.rank is not None:
        params["rank"] = args.rank
    if args.k is not None:
        params["k"] = args.k
    if args.r is not None:
        params["r"] = args.r
    if args.p is not None:
        params["p"] = args.p
    if args.roots is not None:
        params["roots"] = args.roots
    entry = build_entry(args.name, **params)
    arrangement = entry.arrangement
    if hasattr(arrangement, "arrangement"):
        arrangement = arrangement.arrangement
    print(f"{entry.name}: {len(arrangement)} hyperplanes in dim {arrangement.dim}")
    if args.emit:
        save_json(args.emit, arrangement_to_json(arrangement))
        print(f"wrote {args.emit}")
    return EXIT_OK


def _oracle_verify_one(arr: Arrangement, primes) -> list[str]:
    failures = []
    data = char_data(arr)
    if len(arr) <= 16:
        whitney = whitney_oracle(arr)
        if whitney != data.chi:
            failures.append("whitney oracle disagrees with the Moebius computation")
    if arr.field == QQ:
        for q in primes:
            try:
                count = point_count_oracle(arr, q)
            except BadPrimeError:
                continue
            if count != intpoly.eval_at(data.chi, q):
                failures.append(f"point count at q={q} disagrees with chi({q})")
    return failures


def _cmd_oracle_verify(args) -> int:
    primes = args.primes or [5, 7]
    reports = []
    if args.random:
        rng = random.Random(args.seed)
        checked = 0
        while checked < args.random:
            dim = rng.randint(2, 4)
            n = rng.randint(1, 8)
            covs = set()
            while len(covs) < n:
                cov = tuple(rng.randint(-2, 2) for _ in range(dim))
                if any(cov):
                    from .exactalg import normalize_covector

                    covs.add(normalize_covector(QQ, cov))
            from .arrangement import make_arrangement

            arr = make_arrangement(QQ, dim, sorted(covs))
            failures = _oracle_verify_one(arr, primes)
            reports.extend(failures)
            checked += 1
        print(f"checked {checked} random arrangements (seed {args.seed})")
    else:
        arr = _resolve_arrangement(args)
        reports = _oracle_verify_one(arr, primes)
        print(f"checked 1 arrangement against {len(primes)} primes")
    if reports:
        for line in reports:
            print(f"MISMATCH: {line}")
        _emit(args, {"agree": False, "failures": reports})
        return EXIT_NOT_CERTIFIED
    print("oracles agree")
    _emit(args, {"agree": True, "failures": []})
    return EXIT_OK


def _cmd_verify_cert(args) -> int:
    arr = load_arrangement(args.arrangement)
    with open(args.certificate) as fh:
        cert = json.load(fh)
    ok = verify_certificate(arr, cert)
    print("certificate valid" if ok else "certificate INVALID")
    _emit(args, {"valid": ok})
    return EXIT_OK if ok else EXIT_NOT_CERTIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divflag",
        description="Exact lattice computations and freeness certification "
        "for central hyperplane arrangements.",
    )
    parser.add_argument("--threads", type=int, default=None,
                        help="worker hint (execution is deterministic; "
                        "defaults to DIVFLAG_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, extra in (
        ("charpoly", _cmd_charpoly, ()),
        ("lattice", _cmd_lattice, ()),
        ("df-check", _cmd_df_check, ("certificate",)),
        ("if-check", _cmd_if_check, ("certificate", "budget")),
        ("hdf-check", _cmd_hdf_check, ()),
        ("free3", _cmd_free3, ()),
        ("ziegler", _cmd_ziegler, ("pivot",)),
        ("remainder", _cmd_remainder, ("pivot",)),
        ("same-eq", _cmd_same_eq, ("pivot",)),
    ):
        p = sub.add_parser(name)
        _add_input_options(p)
        if "certificate" in extra:
            p.add_argument("--certificate", metavar="OUT", help="write the certificate JSON")
        if "budget" in extra:
            p.add_argument("--budget", type=int, default=200_000, help="search node budget")
        if "pivot" in extra:
            p.add_argument("--pivot", type=int, default=0, help="hyperplane index")
        p.set_defaults(fn=fn)

    p = sub.add_parser("catalog")
    p.add_argument("name", choices=CATALOG_NAMES)
    p.add_argument("--l", "--rank", dest="rank", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--roots", choices=("A", "B", "C", "D"))
    p.add_argument("--emit", metavar="FILE", help="write the arrangement JSON")
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("oracle-verify")
    _add_input_options(p)
    p.add_argument("--random", type=int, metavar="N", help="verify N random arrangements")
    p.add_argument("--seed", type=int, default=0, help="seed for --random")
    p.add_argument("--primes", type=int, nargs="*", help="point-count primes")
    p.set_defaults(fn=_cmd_oracle_verify)

    p = sub.add_parser("verify-cert")
    p.add_argument("arrangement", help="arrangement JSON file")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--json", dest="json_out", metavar="OUT")
    p.set_defaults(fn=_cmd_verify_cert)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    try:
        if hasattr(args, "threads"):
            _threads(args)
        return args.fn(args)
    except (SchemaError, CatalogError, BadPrimeError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, IndexError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
