"""Command line entry point: analyze, construct, present, verify, enumerate.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource bound.
"""
import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import _config, report, suites
from .dsl import load, parse_product_expr
from .errors import InputError, PreconditionError, ResourceError, TheoremViolation
from .goursat import GoursatData, construct_from_goursat, goursat_data, pullback_construct
from .groups import enumerate_subgroups
from .presentation import HomPresentation, PullbackData, from_pullback, to_pullback
from .product import ProductGroup, ProductSubgroup, as_product_subgroup, is_subdirect

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _target(doc, env, name, kinds):
    if name is None:
        for d in reversed(doc.declarations):
            if d.kind in kinds and (d.kind != "subgroup"
                                    or isinstance(env[d.name], ProductSubgroup)):
                return d.name, env[d.name]
        raise InputError(f"no declaration of kind {'/'.join(kinds)} in the file")
    if name not in env:
        raise InputError(f"no declaration named {name!r}")
    return name, env[name]


def _as_subgroup(obj, name):
    """Turn an analyzable declaration into a ProductSubgroup."""
    if isinstance(obj, ProductSubgroup):
        return obj
    if isinstance(obj, HomPresentation):
        return obj.U
    if isinstance(obj, GoursatData):
        return construct_from_goursat(obj)
    if isinstance(obj, PullbackData):
        return pullback_construct(obj.taus)
    if isinstance(obj, ProductGroup):
        from .product import full
        return full(obj)
    raise InputError(f"{name} is not a subgroup of a direct product")


def _emit(args, rep):
    out = report.to_json(rep) if args.json else report.to_text(rep)
    sys.stdout.write(out)


def cmd_analyze(args):
    doc, env = load(args.file)
    name, obj = _target(doc, env, args.name, ("subgroup", "present", "goursat", "pullback"))
    u = _as_subgroup(obj, name)
    split = report.parse_index_set(args.split, u.n) if args.split else None
    rep = report.analyze_report(u, name=name, source=os.path.basename(args.file), split=split,
                                system=args.system, threads=args.threads)
    _emit(args, rep)
    return EXIT_OK


def cmd_construct(args):
    doc, env = load(args.file)
    name, obj = _target(doc, env, args.name, ("goursat", "pullback"))
    if isinstance(obj, GoursatData):
        u = construct_from_goursat(obj)
        back = goursat_data(u)
        trip = bool(construct_from_goursat(back) == u
                    and back.I == obj.I and back.K == obj.K
                    and back.J == obj.J and back.L == obj.L)
        kind = "goursat"
    elif isinstance(obj, PullbackData):
        u = pullback_construct(obj.taus)
        kind = "pullback"
        trip = None
        if not u.notes and u.n >= 2:
            from .presentation import canonical_presentation
            trip = bool(from_pullback(to_pullback(canonical_presentation(u))).U == u)
    else:
        raise InputError(f"{name} is not a goursat or pullback declaration")
    rep = report.construct_report(u, name, kind, trip, source=os.path.basename(args.file),
                                  threads=args.threads)
    _emit(args, rep)
    return EXIT_OK if trip is not False else EXIT_FAIL


def cmd_present(args):
    doc, env = load(args.file)
    name, obj = _target(doc, env, args.name, ("present",))
    if not isinstance(obj, HomPresentation):
        raise InputError(f"{name} is not a presentation")
    rep = report.presentation_report(obj, name, source=os.path.basename(args.file),
                                     threads=args.threads)
    _emit(args, rep)
    return EXIT_OK if rep["identities"]["ok"] else EXIT_FAIL


def _verify_one(u, names):
    out = {}
    for s in names:
        try:
            out[s] = suites.SUITES[s](u)
        except (TheoremViolation, PreconditionError) as exc:
            out[s] = [str(exc)]
    return out


def cmd_verify(args):
    names = suites.select(args.suite or [])
    if args.enumerate:
        amb = parse_product_expr(args.enumerate)
        label = args.enumerate
        subs = [as_product_subgroup(s) for s in enumerate_subgroups(amb)]
    elif args.file:
        doc, env = load(args.file)
        name, obj = _target(doc, env, args.name, ("product", "subgroup"))
        label = name
        if isinstance(obj, ProductGroup):
            subs = [as_product_subgroup(s) for s in enumerate_subgroups(obj)]
        else:
            subs = [_as_subgroup(obj, name)]
    else:
        raise InputError("give a spec file or --enumerate")
    if args.threads and args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(lambda u: _verify_one(u, names), subs))
    else:
        results = [_verify_one(u, names) for u in subs]

    summary = {}
    failed_any = False
    for s in names:
        bad = [(u, r[s]) for u, r in zip(subs, results) if r[s]]
        entry = {"checked": len(subs), "failed": len(bad)}
        if bad:
            failed_any = True
            u, msgs = bad[0]
            entry["witness"] = {"order": int(u.order),
                                "elements": [u.parent.element_name(int(c)) for c in u.elements],
                                "messages": msgs}
        summary[s] = entry
    rep = {"schema": report.SCHEMA, "ambient": label, "subgroups": len(subs),
           "suites": summary, "ok": not failed_any}
    if args.json:
        sys.stdout.write(report.to_json(rep))
    else:
        print(f"{label}: {len(subs)} subgroups")
        for s, e in summary.items():
            status = "pass" if not e["failed"] else f"FAIL ({e['failed']})"
            print(f"  {s:<8} {e['checked']} checked  {status}")
            if "witness" in e:
                print(f"    witness: {{{', '.join(e['witness']['elements'])}}}")
                for m in e["witness"]["messages"]:
                    print(f"      {m}")
    return EXIT_FAIL if failed_any else EXIT_OK


def cmd_enumerate(args):
    amb = parse_product_expr(args.expr)
    subs = [as_product_subgroup(s) for s in enumerate_subgroups(amb, max_index=args.max_index)]
    rows = []
    for u in subs:
        row = {"order": int(u.order), "subdirect": bool(is_subdirect(u))}
        if args.elements:
            row["elements"] = [amb.element_name(int(c)) for c in u.elements]
        rows.append(row)
    rep = {"schema": report.SCHEMA, "ambient": amb.label, "order": int(amb.order),
           "count": len(subs), "subgroups": rows}
    if args.json:
        sys.stdout.write(report.to_json(rep))
    else:
        print(f"{amb.label}: {len(subs)} subgroups")
        for i, r in enumerate(rows, 1):
            extra = "  {" + ", ".join(r["elements"]) + "}" if args.elements else ""
            print(f"  {i:>4}  order {r['order']:<5} subdirect={'yes' if r['subdirect'] else 'no'}"
                  f"{extra}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (schema 1)")
    common.add_argument("--max-order", type=int, metavar="N",
                        help="bound on product and enumeration orders")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker threads; output does not depend on this")

    p = argparse.ArgumentParser(prog="subdirect",
                                description="Structure of subgroups of finite direct products.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyze a subgroup of a product")
    a.add_argument("file")
    a.add_argument("name", nargs="?")
    a.add_argument("--split", metavar="LAMBDA", help="1-based index set, e.g. 1,3")
    a.add_argument("--system", action="store_true", help="include isomorphism systems")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", parents=[common], help="build U from goursat or pullback data")
    c.add_argument("file")
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("present", parents=[common], help="check a presentation by homomorphisms")
    r.add_argument("file")
    r.add_argument("name", nargs="?")
    r.set_defaults(func=cmd_present)

    v = sub.add_parser("verify", parents=[common], help="run property suites over subgroups")
    v.add_argument("file", nargs="?")
    v.add_argument("name", nargs="?")
    v.add_argument("--enumerate", metavar="EXPR", help='product such as "Z2xZ2" or "Z2^3"')
    v.add_argument("--suite", action="append", metavar="NAME",
                   help=f"one of {', '.join(suites.SUITES)} or all (repeatable, or comma list)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", parents=[common], help="list the subgroups of a product")
    e.add_argument("expr")
    e.add_argument("--max-index", type=int)
    e.add_argument("--elements", action="store_true")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None):
        args.suite = [s.strip() for item in args.suite for s in item.split(",")]
    if args.max_order is not None:
        _config.MAX_PRODUCT_ORDER = args.max_order
        _config.ENUM_BOUND = args.max_order
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except TheoremViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
