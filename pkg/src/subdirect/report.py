"""Deterministic analysis reports (schema 1) and their text rendering.

Index sets are printed 1-based, elements by their per-factor names.  Every
list is in a canonical order so that two runs, with any thread count,
produce byte-identical JSON.
"""
import itertools
import json
import warnings
from concurrent.futures import ThreadPoolExecutor

from .decomposition import (SWeakRangeWarning, cohesive_blocks, connected_components, is_smashed,
                            is_s_weakly_smashed, s_weak_range_ok)
from .errors import InputError, PreconditionError, TheoremViolation
from .goursat import block_system, smashed_system, structural_iso_split
from .presentation import (cor41_smashed_check, is_terse, lemma35_verify, prop40_split_check,
                           to_pullback, from_pullback)
from .product import (E_subgroup, I_subgroup, L_subgroup, bipartitions, complement, core,
                      index_set, projection_flags, touch_classes)

SCHEMA = 1
LIST_LIMIT = 512      # element listings above this size are omitted
TABLE_MAX_N = 10      # per-index-set tables need 2^n rows


def one_based(lam):
    return [int(i) + 1 for i in lam]


def parse_index_set(text, n):
    """'1,3' or '{1,3}' (1-based) -> 0-based tuple."""
    body = text.strip().strip("{}[]()")
    try:
        idx = [int(s) - 1 for s in body.replace(" ", "").split(",") if s]
    except ValueError:
        raise InputError(f"cannot read index set {text!r}") from None
    lam = index_set(idx, n)
    if len(lam) == n:
        raise InputError("the split index set must be a proper subset")
    return lam


def _names(amb, codes):
    return [amb.element_name(int(c)) for c in codes]


def _listing(amb, sub):
    out = {"order": int(sub.order)}
    if sub.order <= LIST_LIMIT:
        out["elements"] = _names(amb, sub.elements)
    else:
        out["elements_omitted"] = True
    return out


def _family_row(u, lam):
    return {"indices": one_based(lam),
            "E": int(E_subgroup(u, lam).order),
            "L": int(L_subgroup(u, lam).order),
            "I": int(I_subgroup(u, lam).order)}


def _quotient_summary(q):
    return {"numerator_order": int(q.group.order), "normal_order": int(q.normal.order),
            "order": int(q.order)}


def iso_summary(u, lam):
    s = structural_iso_split(u, lam)
    hat = complement(s.lam, u.n)
    src_amb, tgt_amb = s.source.parent, s.target.parent
    return {
        "indices": one_based(s.lam),
        "source": dict(indices=one_based(hat), **_quotient_summary(s.source)),
        "target": dict(indices=one_based(s.lam), **_quotient_summary(s.target)),
        "map": [[src_amb.element_name(int(s.source.reps[c])),
                 tgt_amb.element_name(int(s.target.reps[s.map[c]]))]
                for c in range(s.source.order)],
        "prolongation_order": int(s.prolongation.order),
        "verified": True,
    }


def system_summary(system):
    u = system.u
    ref = system.reference
    comps = []
    for lam, q, m in zip(system.indices, system.quotients, system.maps):
        amb = q.parent
        comps.append({
            "indices": one_based(lam),
            **_quotient_summary(q),
            "map": [[u.parent.element_name(int(ref.reps[c])),
                     amb.element_name(int(q.reps[m[c]]))] for c in range(ref.order)],
        })
    return {"R_order": int(ref.order), "components": comps,
            "verified": bool(system.verify()), "notes": list(system.notes)}


def _decomposition(dec):
    return {"blocks": [{"indices": one_based(lam), "order": int(s.order)}
                       for lam, s in dec.blocks],
            "complete": bool(dec.complete)}


def _guard(fn, *args):
    try:
        return fn(*args)
    except PreconditionError as exc:
        return {"precondition": str(exc)}
    except TheoremViolation as exc:
        return {"violation": str(exc)}


def analyze_report(u, name="U", source="", split=None, system=False, threads=1):
    """Report dict for a subgroup u of a direct product."""
    amb = u.parent
    n = u.n
    warn = []
    flags = projection_flags(u)
    for i in flags["trivial_projections"]:
        warn.append(f"factor {i + 1}: projection of U is trivial")
    if not flags["subdirect"]:
        warn.append("U is not a subdirect product; quotients use the projections of U")

    families = None
    if n <= TABLE_MAX_N:
        lams = [lam for r in range(1, n + 1) for lam in itertools.combinations(range(n), r)]
        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                families = list(pool.map(lambda lam: _family_row(u, lam), lams))
        else:
            families = [_family_row(u, lam) for lam in lams]
    else:
        warn.append(f"index-set table omitted for n = {n} > {TABLE_MAX_N}")

    c = core(u)
    smashed = bool(is_smashed(u))
    weak = []
    for s in range(1, n):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SWeakRangeWarning)
            value = bool(is_s_weakly_smashed(u, s))
        ok = s_weak_range_ok(n, s)
        weak.append({"s": s, "value": value, "in_range": ok})
        if not ok:
            warn.append(f"{s}-weak smashedness evaluated outside n > s+2")

    rep = {
        "schema": SCHEMA,
        "input": {"source": source, "name": name},
        "ambient": {"factors": [f.label for f in amb.factors],
                    "orders": [int(f.order) for f in amb.factors], "order": int(amb.order)},
        "subgroup": _listing(amb, u),
        "flags": {"subdirect": bool(flags["subdirect"]),
                  "proper_projections": one_based(flags["proper_projections"]),
                  "trivial_projections": one_based(flags["trivial_projections"]),
                  "trivial_factor_intersections":
                      one_based(flags["trivial_factor_intersections"])},
        "families": families,
        "core": _listing(amb, c),
        "touch_classes": {"count": len(touch_classes(u))},
        "connected": _decomposition(connected_components(u)),
        "cohesive": _decomposition(cohesive_blocks(u)),
        "smashed": smashed,
        "s_weakly_smashed": weak,
    }
    if n == 2:
        rep["structural"] = iso_summary(u, (1,))
    if split is not None:
        rep["split"] = iso_summary(u, split)
    if system:
        rep["systems"] = {
            "smashed": _guard(lambda v: system_summary(smashed_system(v)), u),
            "blocks": _guard(lambda v: system_summary(block_system(v)), u),
        }
    rep["warnings"] = warn
    return rep


def presentation_report(p, name, source="", threads=1):
    terse = bool(is_terse(p))
    checks = lemma35_verify(p)
    rep = {
        "schema": SCHEMA,
        "input": {"source": source, "name": name},
        "presentation": {
            "source_group": p.source.label, "source_order": int(p.source.order),
            "codomains": [g.label for g in p.ambient.factors],
            "terse": terse,
            "kernels": [{"indices": one_based((i,)), "order": int(p.K[(i,)].order)}
                        for i in range(p.n)],
            "notes": list(p.notes),
        },
        "identities": {"ok": bool(checks.ok),
                       "failures": [[c.clause, one_based(c.lam)] for c in checks.failures()]},
    }
    if terse:
        splits = []
        for r in range(2, p.n + 1):
            for lam in itertools.combinations(range(p.n), r):
                for m, k in bipartitions(lam):
                    lhs, rhs = prop40_split_check(p, lam, m, k)
                    splits.append({"indices": one_based(lam), "parts": [one_based(m), one_based(k)],
                                   "splits": bool(lhs)})
        rep["split_criterion"] = splits
        rep["kernel_smashed"] = bool(cor41_smashed_check(p))
        back = _guard(lambda q: from_pullback(to_pullback(q)).U == q.U, p)
        rep["pullback_round_trip"] = back if isinstance(back, dict) else bool(back)
    rep["analysis"] = analyze_report(p.U, name=name, source=source, threads=threads)
    return rep


def construct_report(u, name, kind, round_trip, source="", threads=1):
    rep = {"schema": SCHEMA,
           "input": {"source": source, "name": name},
           "construction": kind,
           "elements": _names(u.parent, u.elements),
           "round_trip": round_trip}
    if getattr(u, "notes", None):
        rep["notes"] = list(u.notes)
    rep["analysis"] = analyze_report(u, name=name, source=source, threads=threads)
    return rep


def to_json(rep):
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"


def to_text(rep, indent=0):
    """Plain nested rendering of a report dict."""
    pad = "  " * indent
    lines = []
    for key, val in rep.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(to_text(val, indent + 1).rstrip("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                body = ", ".join(f"{k}={_flat(v)}" for k, v in item.items())
                lines.append(f"{pad}  - {body}")
        else:
            lines.append(f"{pad}{key}: {_flat(val)}")
    return "\n".join(line for line in lines if line) + "\n"


def _flat(v):
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}={_flat(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
