"""Structural isomorphisms between projection quotients, their converse
constructions, isomorphism systems and pullbacks.

Every isomorphism here is read off the tuples of U (scan and record) and
then verified; nothing is searched for.  A record that turns out
multi-valued or a map that fails verification raises TheoremViolation.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .decomposition import cohesive_blocks, is_smashed
from .errors import InputError, PreconditionError, TheoremViolation
from .groups import QuotientGroup, SubgroupSet, is_normal, setwise_product, verify_iso
from .product import (E_subgroup, L_subgroup, ProductGroup, ProductSubgroup, complement, core,
                      index_set, is_subdirect, project)


def _record(src_labels, tgt_labels, size):
    """Single-valued map src label -> tgt label from paired scans."""
    pairs = np.unique(np.stack([src_labels, tgt_labels], axis=1), axis=0)
    if pairs.shape[0] != np.unique(pairs[:, 0]).size:
        i = np.flatnonzero(np.diff(pairs[:, 0]) == 0)[0]
        raise TheoremViolation(
            f"structural correspondence is multi-valued at coset {int(pairs[i, 0])}")
    out = np.full(size, -1, dtype=np.int64)
    out[pairs[:, 0]] = pairs[:, 1]
    if (out < 0).any():
        raise TheoremViolation("structural correspondence is not total")
    return out


def _verified(src, tgt, mapping, what):
    check = verify_iso(src, tgt, mapping)
    if not check:
        raise TheoremViolation(f"{what}: {check.reason} {check.witness}")
    return mapping


@dataclass
class StructuralIso:
    """sigma: source -> target on coset indices, plus the prolongation to
    U/(E_lam x E_lamhat) with its bijections onto source and target."""
    u: ProductSubgroup
    lam: tuple
    source: QuotientGroup
    target: QuotientGroup
    map: np.ndarray
    prolongation: QuotientGroup = None
    to_source: np.ndarray = None
    to_target: np.ndarray = None

    @property
    def order(self):
        return self.source.order

    def __call__(self, c):
        return self.map[c]


def structural_iso_split(u, lam):
    """sigma between pi_lamhat(U)/E_lam and pi_lam(U)/E_lamhat.

    Both E subgroups are taken through their faithful projection onto the
    coordinates where they can be nontrivial.
    """
    lam = index_set(lam, u.n)
    if len(lam) == u.n:
        raise InputError("index set must be a proper subset")
    hat = complement(lam, u.n)
    amb = u.parent
    e_lam, e_hat = E_subgroup(u, lam), E_subgroup(u, hat)
    src_group, tgt_group = project(u, hat), project(u, lam)
    src_normal = SubgroupSet(src_group.parent, amb.project_codes(e_lam.elements, hat))
    tgt_normal = SubgroupSet(tgt_group.parent, amb.project_codes(e_hat.elements, lam))
    qs = QuotientGroup(src_group, src_normal)
    qt = QuotientGroup(tgt_group, tgt_normal)
    cs = qs.coset_of(amb.project_codes(u.elements, hat))
    ct = qt.coset_of(amb.project_codes(u.elements, lam))
    sigma = _verified(qs, qt, _record(cs, ct, qs.order), "sigma")

    both = SubgroupSet(amb, setwise_product(e_lam, e_hat))
    qp = QuotientGroup(u, both)
    cp = qp.labels
    to_s = _verified(qp, qs, _record(cp, cs, qp.order), "prolongation to source")
    to_t = _verified(qp, qt, _record(cp, ct, qp.order), "prolongation to target")
    if not np.array_equal(sigma[to_s], to_t):
        raise TheoremViolation("prolongation does not commute with sigma")
    return StructuralIso(u, lam, qs, qt, sigma, qp, to_s, to_t)


def structural_iso_two(u):
    """sigma: pi_A(U)/(U cap A) -> pi_B(U)/(U cap B) for U <= A x B."""
    if u.n != 2:
        raise InputError("structural_iso_two needs a two-factor product")
    return structural_iso_split(u, (1,))


def naturality_check(u, f_a, f_b):
    """Push U through f_a x f_b and compare the induced sigma with sigma(U')."""
    if u.n != 2:
        raise InputError("naturality_check needs a two-factor product")
    a, b = u.parent.factors
    if f_a.domain is not a or f_b.domain is not b:
        raise InputError("homomorphisms must start at the factors of U's product")
    amb2 = ProductGroup([f_a.codomain, f_b.codomain])
    rows = np.stack([f_a.map[u.coords[:, 0]], f_b.map[u.coords[:, 1]]], axis=1)
    u2 = ProductSubgroup(amb2, amb2.encode(rows))
    s1, s2 = structural_iso_two(u), structural_iso_two(u2)
    src_img = s2.source.coset_of(f_a.map[s1.source.reps])
    tgt_img = s2.target.coset_of(f_b.map[s1.target.reps[s1.map]])
    return bool(np.array_equal(s2.map[src_img], tgt_img))


# ----------------------------------------------------------------------------
# converse constructions

@dataclass
class GoursatData:
    group_a: object
    group_b: object
    I: SubgroupSet
    K: SubgroupSet
    J: SubgroupSet
    L: SubgroupSet
    sigma: np.ndarray      # over cosets of I/K, values cosets of J/L

    def quotients(self):
        for small, big in ((self.K, self.I), (self.L, self.J)):
            if not small.issubset(big) or not is_normal(small, big):
                raise InputError("kernel is not a normal subgroup of its numerator")
        qi, qj = QuotientGroup(self.I, self.K), QuotientGroup(self.J, self.L)
        check = verify_iso(qi, qj, self.sigma)
        if not check:
            raise InputError(f"sigma is not an isomorphism: {check.reason} {check.witness}")
        return qi, qj


def goursat_data(u):
    s = structural_iso_two(u)
    a, b = u.parent.factors
    return GoursatData(a, b,
                       SubgroupSet(a, s.source.group.elements),
                       SubgroupSet(a, s.source.normal.elements),
                       SubgroupSet(b, s.target.group.elements),
                       SubgroupSet(b, s.target.normal.elements),
                       s.map.copy())


def _interleave(amb, left_codes, left_idx, right_codes, right_idx):
    """Full codes from all pairs of left x right partial tuples."""
    lc = amb.subproduct(left_idx).decode(left_codes)
    rc = amb.subproduct(right_idx).decode(right_codes)
    rows = np.zeros((lc.shape[0], rc.shape[0], amb.n), dtype=np.int64)
    rows[:, :, list(left_idx)] = lc[:, None, :]
    rows[:, :, list(right_idx)] = rc[None, :, :]
    return amb.encode(rows.reshape(-1, amb.n))


def construct_from_goursat(data):
    """U as the union of the pair cosets c x sigma(c)."""
    qi, qj = data.quotients()
    amb = ProductGroup([data.group_a, data.group_b])
    ci, cj = qi.cosets, qj.cosets
    codes = np.concatenate([_interleave(amb, ci[c], (0,), cj[data.sigma[c]], (1,))
                            for c in range(qi.order)])
    return ProductSubgroup(amb, codes, check=True)


@dataclass
class SplitData:
    ambient: ProductGroup
    lam: tuple
    P: SubgroupSet         # in the subproduct over the complement of lam
    Q: SubgroupSet         # in the subproduct over lam
    e_source: SubgroupSet  # normal in P
    e_target: SubgroupSet  # normal in Q
    sigma: np.ndarray


def split_data(u, lam):
    s = structural_iso_split(u, lam)
    return SplitData(u.parent, s.lam, s.source.group, s.target.group,
                     s.source.normal, s.target.normal, s.map.copy())


def construct_from_split(data):
    amb = data.ambient
    lam = index_set(data.lam, amb.n)
    hat = complement(lam, amb.n)
    for small, big in ((data.e_source, data.P), (data.e_target, data.Q)):
        if not small.issubset(big) or not is_normal(small, big):
            raise InputError("kernel is not a normal subgroup of its numerator")
    qs, qt = QuotientGroup(data.P, data.e_source), QuotientGroup(data.Q, data.e_target)
    check = verify_iso(qs, qt, data.sigma)
    if not check:
        raise InputError(f"sigma is not an isomorphism: {check.reason} {check.witness}")
    cs, ct = qs.cosets, qt.cosets
    codes = np.concatenate([_interleave(amb, cs[c], hat, ct[data.sigma[c]], lam)
                            for c in range(qs.order)])
    return ProductSubgroup(amb, codes, check=True)


# ----------------------------------------------------------------------------
# isomorphism systems

@dataclass
class IsoSystem:
    """Quotients of projections of U, each identified with R = U/I.

    maps[k] sends cosets of R to cosets of quotients[k]; the pairwise maps
    are composed through R.
    """
    u: ProductSubgroup
    reference: QuotientGroup
    indices: list
    quotients: list
    maps: list
    notes: list = field(default_factory=list)

    def pair(self, i, j):
        inv = np.empty_like(self.maps[i])
        inv[self.maps[i]] = np.arange(inv.size)
        return self.maps[j][inv]

    def compatible(self):
        k = len(self.maps)
        for i, j, l in itertools.product(range(k), repeat=3):
            if not np.array_equal(self.pair(i, l), self.pair(j, l)[self.pair(i, j)]):
                return False
        return True

    def verify(self):
        for i, j in itertools.product(range(len(self.maps)), repeat=2):
            if not verify_iso(self.quotients[i], self.quotients[j], self.pair(i, j)):
                return False
        return self.compatible()

    def multi(self, ks):
        """R -> pi_N(U)/(product of the component kernels), N the union of ks."""
        lam = tuple(sorted(i for k in ks for i in self.indices[k]))
        normals = [_ambient_kernel(self, k) for k in ks]
        return _component(self.u, self.reference, lam, normals)


def _ambient_kernel(system, k):
    q = system.quotients[k]
    lam = system.indices[k]
    return SubgroupSet(system.u.parent, system.u.parent.embed_codes(q.normal.elements, lam))


def _component(u, ref, lam, normals):
    amb = u.parent
    normal_full = SubgroupSet(amb, setwise_product(*normals)) if normals else None
    target = project(u, lam)
    normal = SubgroupSet(target.parent, amb.project_codes(normal_full.elements, lam))
    q = QuotientGroup(target, normal)
    ct = q.coset_of(amb.project_codes(u.elements, lam))
    m = _verified(ref, q, _record(ref.labels, ct, ref.order), f"R -> component {lam}")
    return q, m


def _system(u, groups):
    ref = QuotientGroup(u, core(u))
    quotients, maps = [], []
    for lam, normals in groups:
        q, m = _component(u, ref, lam, normals)
        quotients.append(q)
        maps.append(m)
    return IsoSystem(u, ref, [g[0] for g in groups], quotients, maps)


def projection_smashed_system(u):
    """pi_i(U)/L_i ~ U/I for a smashed U, without requiring U subdirect."""
    if not is_smashed(u):
        raise PreconditionError("U is not smashed")
    return _system(u, [((i,), [L_subgroup(u, (i,))]) for i in range(u.n)])


def smashed_system(u):
    """The system A_i/L_i ~ U/I of a smashed subdirect product."""
    if not is_subdirect(u):
        raise PreconditionError("U is not a subdirect product")
    if not is_smashed(u):
        raise PreconditionError("U is not smashed")
    return projection_smashed_system(u)


def block_system(u):
    """pi^k(U)/L_{N_k} ~ U/I over the cohesive blocks N_k."""
    dec = cohesive_blocks(u)
    system = _system(u, [(lam, [sub]) for lam, sub in dec.blocks])
    for lam, q in zip(system.indices, system.quotients):
        full = int(np.prod([u.parent.factors[i].order for i in lam]))
        if q.group.order != full:
            system.notes.append(f"projection onto block {lam} is not the whole subproduct")
    return system


def trivialE_iso_system(u):
    """For subdirect U with every E_i trivial: A_i ~ A_j read off the tuples."""
    if not is_subdirect(u):
        raise PreconditionError("U is not a subdirect product")
    bad = [i for i in range(u.n) if E_subgroup(u, (i,)).order != 1]
    if bad:
        raise PreconditionError(f"E_i is nontrivial for i in {bad}")
    system = _system(u, [((i,), [SubgroupSet(u.parent, [0])]) for i in range(u.n)])
    # the factors are then copies of U itself
    for i in range(u.n):
        if u.parent.factors[i].order != u.order:
            raise TheoremViolation("factor order differs from |U|")
    return system


def factor_maps(system):
    """Pairwise factor maps of a trivial-E system as arrays over factor ids."""
    out = {}
    u = system.u
    for i, j in itertools.permutations(range(len(system.maps)), 2):
        qi, qj = system.quotients[i], system.quotients[j]
        m = np.empty(u.parent.factors[i].order, dtype=np.int64)
        m[qi.reps] = qj.reps[system.pair(i, j)]
        out[(i, j)] = m
    return out


# ----------------------------------------------------------------------------
# pullbacks

def pullback_construct(taus):
    """{(g_1..g_n): tau_1(g_1) = ... = tau_n(g_n)} for homs into a common R."""
    if len(taus) < 1:
        raise InputError("need at least one homomorphism")
    r = taus[0].codomain
    if any(t.codomain is not r for t in taus):
        raise InputError("homomorphisms must share their codomain")
    amb = ProductGroup([t.domain for t in taus])
    notes = [f"tau_{i + 1} is not surjective" for i, t in enumerate(taus) if not t.is_surjective()]
    chunks = []
    for value in range(r.order):
        fibres = [np.flatnonzero(t.map == value) for t in taus]
        if any(f.size == 0 for f in fibres):
            continue
        grid = np.stack(np.meshgrid(*fibres, indexing="ij"), axis=-1).reshape(-1, amb.n)
        chunks.append(amb.encode(grid))
    u = ProductSubgroup(amb, np.concatenate(chunks), check=True)
    u.notes = notes
    if not notes:
        if not is_subdirect(u) or not is_smashed(u):
            raise TheoremViolation("pullback of epimorphisms is not a smashed subdirect product")
    return u
