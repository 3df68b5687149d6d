"""Connected and cohesive decompositions of the core, and smashedness."""
import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, TheoremViolation
from .groups import setwise_product
from .product import (E_subgroup, I_subgroup, L_subgroup, bipartitions, complement, core,
                      index_set, project)


class SWeakRangeWarning(UserWarning):
    """s-weak smashedness evaluated outside the range n > s + 2."""


@dataclass
class Decomposition:
    kind: str                       # "connected" or "cohesive"
    blocks: list                    # (index tuple, SubgroupSet) pairs, by first index
    complete: bool = False
    notes: list = field(default_factory=list)

    @property
    def partition(self):
        return [lam for lam, _ in self.blocks]

    @property
    def subgroups(self):
        return [s for _, s in self.blocks]

    def subgroup_set(self):
        """Block subgroups as a set of element tuples (the order-free invariant)."""
        return {tuple(s.elements.tolist()) for s in self.subgroups}


def is_internal_direct(whole, parts):
    """whole == parts[0]...parts[k] as a set product with pairwise trivial meets."""
    for a, b in itertools.combinations(parts, 2):
        if np.intersect1d(a.elements, b.elements).size != 1:
            return False
    size = 1
    for p in parts:
        size *= p.order
    if size != whole.order:
        return False
    return np.array_equal(setwise_product(*parts), whole.elements)


# ----------------------------------------------------------------------------
# connectedness

def connected_split(u, lam, splits=None):
    """First bipartition (M, N) with I_lam = I_M x I_N, or None."""
    lam = index_set(lam, u.n)
    whole = I_subgroup(u, lam)
    for m, n in splits(lam) if splits else bipartitions(lam):
        im, in_ = I_subgroup(u, m), I_subgroup(u, n)
        if is_internal_direct(whole, [im, in_]):
            return m, n
    return None


def is_connected(u, lam):
    return connected_split(u, lam) is None


def _decompose(u, kind, split_fn, splits):
    stack = [tuple(range(u.n))]
    done = []
    while stack:
        lam = stack.pop()
        s = split_fn(u, lam, splits)
        if s is None:
            done.append(lam)
        else:
            stack.extend(reversed(s))
    done.sort()
    return done


def _reversed_bipartitions(lam):
    return reversed(list(bipartitions(lam)))


def connected_components(u, reverse=False):
    """Partition of the factors whose I-subgroups are maximal connected.

    Splits depth first at the lexicographically least valid bipartition (or
    the greatest, with reverse=True).
    """
    splits = _reversed_bipartitions if reverse else None
    parts = _decompose(u, "connected", connected_split, splits)
    blocks = [(lam, I_subgroup(u, lam)) for lam in parts]
    complete = is_internal_direct(core(u), [s for _, s in blocks])
    return Decomposition("connected", blocks, complete)


# ----------------------------------------------------------------------------
# cohesion

def _truncate(u, xs, keep):
    """Codes of xs with every coordinate outside keep set to the identity."""
    coords = u.parent.decode(xs).copy()
    drop = complement(keep, u.n)
    coords[:, list(drop)] = 0
    return u.parent.encode(coords)


def anti_split_witness(u, lam, m):
    """Some x in L_lam whose truncation to m is not in L_m, or None."""
    xs = L_subgroup(u, lam).elements
    lm = L_subgroup(u, m)
    trunc = _truncate(u, xs, m)
    bad = ~np.isin(trunc, lm.elements)
    if bad.any():
        return int(xs[np.argmax(bad)])
    return None


def cohesive_split(u, lam, splits=None):
    """First bipartition (M, N) with L_lam = L_M x L_N, or None.

    Uses the truncation test: L_lam splits at (M, N) iff the M-part of every
    element of L_lam lies in L_M.
    """
    lam = index_set(lam, u.n)
    for m, n in splits(lam) if splits else bipartitions(lam):
        if anti_split_witness(u, lam, m) is None:
            return m, n
    return None


def is_cohesive(u, lam):
    return cohesive_split(u, lam) is None


def cohesive_blocks(u, reverse=False):
    """The cohesion decomposition of the core.

    An index whose L-contribution is trivial ends up as its own singleton
    block, which fixes one partition among the possibly several that carry
    the same block subgroups.
    """
    splits = _reversed_bipartitions if reverse else None
    parts = _decompose(u, "cohesive", cohesive_split, splits)
    blocks = [(lam, L_subgroup(u, lam)) for lam in parts]
    complete = is_internal_direct(core(u), [s for _, s in blocks])
    if not complete:
        raise TheoremViolation("cohesive blocks do not multiply to the core")
    return Decomposition("cohesive", blocks, complete)


def is_smashed(u):
    ls = [L_subgroup(u, (i,)) for i in range(u.n)]
    return is_internal_direct(core(u), ls)


def s_weak_range_ok(n, s):
    return n > s + 2


def is_s_weakly_smashed(u, s):
    """Every E_N with |N| = s lies in the product of the L_k, k outside N."""
    if not 1 <= s <= u.n - 1:
        raise InputError(f"s must lie in 1..{u.n - 1}")
    if not s_weak_range_ok(u.n, s):
        warnings.warn(f"s-weak smashedness with n={u.n}, s={s} is outside n > s+2",
                      SWeakRangeWarning, stacklevel=2)
    for nset in itertools.combinations(range(u.n), s):
        outside = [L_subgroup(u, (k,)) for k in complement(nset, u.n)]
        if not np.isin(E_subgroup(u, nset).elements, setwise_product(*outside)).all():
            return False
    return True


def lemma12_split(u, m):
    """If the padded projection of U onto m lies in U, return (L_m, L_mhat)."""
    m = index_set(m, u.n)
    if len(m) == u.n:
        raise InputError("index set must be a proper subset")
    mhat = complement(m, u.n)
    padded = u.parent.embed_codes(project(u, m).elements, m)
    if not u.contains_all(padded):
        return None
    lm, lmhat = L_subgroup(u, m), L_subgroup(u, mhat)
    other = u.parent.embed_codes(project(u, mhat).elements, mhat)
    if not (np.array_equal(np.sort(padded), lm.elements)
            and np.array_equal(np.sort(other), lmhat.elements)
            and is_internal_direct(u, [lm, lmhat])):
        raise TheoremViolation("padded projection lies in U but U does not split")
    return lm, lmhat

