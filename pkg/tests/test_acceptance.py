"""Acceptance criteria 1-9.

Each criterion is a function returning (ok, detail).  Under pytest the
results are collected and printed as one PASS/FAIL line per criterion at the
end of the session; run this file directly for the same lines on stdout.
"""
import contextlib
import io
import os
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

# flake8: noqa: E402
from subdirect import cli
from subdirect.decomposition import SWeakRangeWarning, is_s_weakly_smashed, is_smashed
from subdirect.fixtures import F5, F6, cyclic, symmetric
from subdirect.goursat import (block_system, construct_from_goursat, construct_from_split,
                               goursat_data, smashed_system, split_data, structural_iso_split,
                               structural_iso_two)
from subdirect.groups import enumerate_subgroups, verify_iso
from subdirect.presentation import (all_partitions_checks, cor41_smashed_check, first_iso_check,
                                    from_pullback, is_terse, lemma35_verify, tersify, to_pullback)
from subdirect.product import (ProductGroup, as_product_subgroup, core, core_as_ordered_product,
                               is_subdirect, proper_subsets)
from subdirect.suites import permutations_for

import generators
import oracles

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
RESULTS = {}

Z2, Z4, S3 = cyclic(2), cyclic(4), symmetric(3)
CORPUS_FACTORS = {"Z2xZ2": [Z2, Z2], "Z2^3": [Z2, Z2, Z2], "Z4xZ2": [Z4, Z2],
                  "Z4xZ2xZ2": [Z4, Z2, Z2], "S3xS3": [S3, S3]}


def corpus(names=None):
    out = []
    for name, factors in CORPUS_FACTORS.items():
        if names is None or name in names:
            out.extend(as_product_subgroup(s) for s in enumerate_subgroups(ProductGroup(factors)))
    return out


def _rows(amb, codes):
    return frozenset(tuple(int(v) for v in r) for r in amb.decode(np.asarray(codes)))


def touch_partition():
    start = time.perf_counter()
    members, bad = corpus(), 0
    for u in members:
        oracle = oracles.naive_touch_blocks(oracles.tuples_of(u))
        c = core(u).elements
        cosets = {_rows(u.parent, u.parent.multiply(int(x), c)) for x in u.elements}
        bad += cosets != oracle
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 60, f"{len(members)} subgroups, {bad} mismatches, {elapsed:.1f}s"


def ordered_products():
    members, bad, checks = corpus(), 0, 0
    for u in members:
        c = core(u)
        for tau in permutations_for(u.n):
            checks += 1
            bad += core_as_ordered_product(u, tau) != c
    return bad == 0, f"{checks} orderings over {len(members)} subgroups, {bad} mismatches"


def round_trips():
    members, bad, isos, checks = corpus(), 0, 0, 0
    for u in members:
        for lam in proper_subsets(u.n):
            checks += 1
            bad += construct_from_split(split_data(u, lam)) != u
            s = structural_iso_split(u, lam)
            isos += not verify_iso(s.source, s.target, s.map)
        if u.n == 2:
            checks += 1
            bad += construct_from_goursat(goursat_data(u)) != u
            s = structural_iso_two(u)
            isos += not verify_iso(s.source, s.target, s.map)
    return bad == 0 and isos == 0, f"{checks} round trips, {bad} mismatches, {isos} bad sigma"


def uniqueness():
    counts = []
    for name in ("Z2xZ2", "Z4xZ2"):
        a, b = CORPUS_FACTORS[name]
        ta, tb = oracles.table(a), oracles.table(b)
        for u in corpus([name]):
            counts.append(len(oracles.goursat_structures(ta, tb, oracles.tuples_of(u))))
    ok = all(c == 1 for c in counts)
    return ok, f"{len(counts)} subgroups, structure counts {sorted(set(counts))}"


def smashed_vs_weak():
    members = [u for u in corpus() if u.n >= 2]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SWeakRangeWarning)
        bad = sum(is_smashed(u) != is_s_weakly_smashed(u, 1) for u in members)
    return bad == 0, f"{len(members)} subgroups, {bad} disagreements"


def systems():
    members, smashed_ok, smashed_n, block_bad = corpus(), 0, 0, 0
    for u in members:
        block_bad += not block_system(u).verify()
        if is_subdirect(u) and is_smashed(u):
            smashed_n += 1
            s = smashed_system(u)
            smashed_ok += s.verify() and s.reference.order == u.order // core(u).order
    f5 = smashed_system(F5().U)
    f6 = block_system(F6().U)
    f6_ok = (f6.indices == [(0, 1), (2,), (3,), (4,)] and len(f6.quotients) == 4
             and f6.verify())
    orders = [q.order for q in f6.quotients]
    ok = (smashed_ok == smashed_n and block_bad == 0 and f5.reference.order == 2
          and f5.verify() and f6_ok)
    return ok, (f"{smashed_ok}/{smashed_n} smashed systems, {block_bad} bad block systems, "
                f"F5 R={f5.reference.order}, F6 blocks {[[i + 1 for i in b] for b in f6.indices]}"
                f" quotient orders {orders}")


def presentation_suite():
    start = time.perf_counter()
    ps = generators.presentations(210, seed=2024)
    failures = {"lemma35": 0, "prop40": 0, "cor41": 0, "tersify": 0, "pullback": 0}
    terse = pulled = 0
    for p in ps:
        failures["lemma35"] += not lemma35_verify(p).ok
        t = tersify(p)
        failures["tersify"] += not (is_terse(t) and t.U == p.U)
        if is_terse(p):
            terse += 1
            failures["prop40"] += sum(lhs != rhs for *_, (lhs, rhs) in all_partitions_checks(p))
        failures["cor41"] += cor41_smashed_check(t) != is_smashed(t.U)
        if is_subdirect(t.U) and is_smashed(t.U):
            pulled += 1
            failures["pullback"] += from_pullback(to_pullback(t)).U != t.U
    elapsed = time.perf_counter() - start
    ok = not any(failures.values()) and elapsed < 120
    return ok, (f"{len(ps)} presentations ({terse} terse, {pulled} pulled back), "
                f"failures {failures}, {elapsed:.1f}s")


def first_iso():
    fs = generators.epimorphisms(50, seed=31)
    bad = sum(not first_iso_check(f) for f in fs)
    return bad == 0, f"{len(fs)} epimorphisms, {bad} failures"


def _analyze_json(path, threads):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["analyze", str(path), "--json", "--system", "--threads", str(threads)])
    return code, buf.getvalue()


def determinism():
    paths = sorted(FIXTURES.glob("*.spec"))
    bad = []
    for path in paths:
        runs = [_analyze_json(path, t) for t in (1, 1, 4)]
        if any(code != 0 for code, _ in runs) or len({out for _, out in runs}) != 1:
            bad.append(path.name)
    return not bad, f"{len(paths)} fixtures, differing: {bad or 'none'}"


CRITERIA = [
    (1, "touch partition equals core cosets", touch_partition),
    (2, "ordered E products equal the core", ordered_products),
    (3, "structural data round trips", round_trips),
    (4, "structural isomorphism is unique", uniqueness),
    (5, "smashed iff 1-weakly smashed", smashed_vs_weak),
    (6, "isomorphism systems verify", systems),
    (7, "random presentation identities", presentation_suite),
    (8, "first isomorphism recovery", first_iso),
    (9, "deterministic JSON reports", determinism),
]


def line(number, title, ok, detail):
    return f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, fn):
    ok, detail = fn()
    RESULTS[number] = line(number, title, ok, detail)
    print(RESULTS[number])
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(line(number, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
