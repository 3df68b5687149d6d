"""Property suites run by ``subdirect verify`` over every subgroup of a product.

Each suite takes a ProductSubgroup and returns a list of failure strings;
an empty list means the subgroup passed.  Checks that raise
TheoremViolation are reported as failures, not propagated.
"""
import itertools
import random
import warnings

import numpy as np

from .decomposition import (SWeakRangeWarning, cohesive_blocks, connected_components,
                            is_smashed, is_s_weakly_smashed)
from .errors import PreconditionError, TheoremViolation
from .goursat import (block_system, construct_from_goursat, construct_from_split, goursat_data,
                      smashed_system, split_data, structural_iso_split)
from .groups import SubgroupSet, cosets, verify_iso
from .presentation import (canonical_presentation, cor41_smashed_check, from_pullback, is_terse,
                           lemma35_verify, prop40_split_check, to_pullback)
from .product import (I_subgroup, bipartitions, core, core_as_ordered_product, is_subdirect,
                      proper_subsets, touch_classes)

TAU_SEED = 20240917
TAU_SAMPLES = 20


def permutations_for(n, seed=TAU_SEED, samples=TAU_SAMPLES):
    """All orderings of range(n) for n <= 3, else a fixed random sample."""
    if n <= 3:
        return list(itertools.permutations(range(n)))
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        tau = list(range(n))
        rng.shuffle(tau)
        out.append(tuple(tau))
    return out


def prop3(u):
    ref = core(u)
    bad = []
    for tau in permutations_for(u.n):
        got = core_as_ordered_product(u, tau)
        if not np.array_equal(got.elements, ref.elements):
            bad.append(f"ordered product for tau={tau} differs from the core")
    return bad


def prop4(u):
    """Touch classes (union-find) against the cosets of the core."""
    touch = sorted(tuple(b.tolist()) for b in touch_classes(u).blocks)
    expected = sorted(tuple(c.tolist()) for c in cosets(u, core(u)))
    return [] if touch == expected else ["touch partition differs from the core cosets"]


def thm5(u):
    bad = []
    for lam in proper_subsets(u.n):
        try:
            s = structural_iso_split(u, lam)
            if not verify_iso(s.source, s.target, s.map):
                bad.append(f"sigma at {lam} is not an isomorphism")
            if construct_from_split(split_data(u, lam)) != u:
                bad.append(f"split round trip at {lam} changed U")
        except TheoremViolation as exc:
            bad.append(f"{lam}: {exc}")
    if u.n == 2 and not bad:
        if construct_from_goursat(goursat_data(u)) != u:
            bad.append("two-factor round trip changed U")
    return bad


def lemma8(u):
    bad = []
    subsets = [lam for r in range(1, u.n + 1) for lam in itertools.combinations(range(u.n), r)]
    for m, n in itertools.combinations(subsets, 2):
        union = tuple(sorted(set(m) | set(n)))
        prod = SubgroupSet(u.parent, np.unique(u.parent.multiply(
            I_subgroup(u, m).elements[:, None], I_subgroup(u, n).elements[None, :])))
        if prod != I_subgroup(u, union):
            bad.append(f"I_{m} I_{n} != I_{union}")
        meet = tuple(sorted(set(m) & set(n)))
        if meet and not I_subgroup(u, meet).issubset(
                I_subgroup(u, m).intersection(I_subgroup(u, n))):
            bad.append(f"I_{meet} not inside I_{m} and I_{n}")
    return bad


def lemma13(u):
    bad = []
    for name, fn in (("connected", connected_components), ("cohesive", cohesive_blocks)):
        try:
            a, b = fn(u), fn(u, reverse=True)
        except TheoremViolation as exc:
            bad.append(f"{name}: {exc}")
            continue
        if not a.complete:
            bad.append(f"{name} blocks do not give the core")
        if a.subgroup_set() != b.subgroup_set():
            bad.append(f"{name} blocks depend on the split order")
    return bad


def lemma17(u):
    if u.n < 2:
        return []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SWeakRangeWarning)
        weak = is_s_weakly_smashed(u, 1)
    return [] if weak == is_smashed(u) else [f"smashed={not weak} but 1-weakly smashed={weak}"]


def thm20(u):
    if not (is_subdirect(u) and is_smashed(u)):
        return []
    try:
        return [] if smashed_system(u).verify() else ["smashed system fails to verify"]
    except (TheoremViolation, PreconditionError) as exc:
        return [str(exc)]


def thm29(u):
    try:
        return [] if block_system(u).verify() else ["block system fails to verify"]
    except TheoremViolation as exc:
        return [str(exc)]


def _presentation(u):
    return canonical_presentation(u) if u.n >= 2 else None


def lemma35(u):
    p = _presentation(u)
    if p is None:
        return []
    rep = lemma35_verify(p)
    return [] if rep.ok else [str(c) for c in rep.failures()]


def prop40(u):
    p = _presentation(u)
    if p is None or not is_terse(p):
        return []
    bad = []
    for r in range(2, u.n + 1):
        for lam in itertools.combinations(range(u.n), r):
            for m, n in bipartitions(lam):
                try:
                    prop40_split_check(p, lam, m, n)
                except TheoremViolation as exc:
                    bad.append(str(exc))
    return bad


def cor41(u):
    p = _presentation(u)
    if p is None:
        return []
    got = cor41_smashed_check(p)
    if got == is_smashed(u):
        return []
    return [f"kernel criterion says {got}, is_smashed says {not got}"]


def lemma37(u):
    p = _presentation(u)
    if p is None or not (is_subdirect(u) and is_smashed(u)):
        return []
    try:
        back = from_pullback(to_pullback(p))
    except (TheoremViolation, PreconditionError) as exc:
        return [str(exc)]
    return [] if back.U == u else ["pullback round trip changed U"]


SUITES = {
    "prop3": prop3, "prop4": prop4, "thm5": thm5, "lemma8": lemma8, "lemma13": lemma13,
    "lemma17": lemma17, "thm20": thm20, "thm29": thm29, "lemma35": lemma35,
    "prop40": prop40, "cor41": cor41, "lemma37": lemma37,
}


def select(names):
    """Resolve a suite selection ('all' or names) to an ordered list."""
    from .errors import InputError
    names = [s for s in names if s]
    if not names:
        raise InputError("empty suite selection")
    if "all" in names:
        return list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise InputError(f"unknown suites {unknown}; choose from {sorted(SUITES)} or 'all'")
    return list(dict.fromkeys(names))
