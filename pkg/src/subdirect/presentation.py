"""Subgroups of products presented as images a -> (f_1(a), ..., f_n(a))."""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .decomposition import is_internal_direct, is_smashed
from .errors import InputError, PreconditionError, TheoremViolation
from .goursat import pullback_construct, structural_iso_split, structural_iso_two
from .groups import (GroupTable, Homomorphism, QuotientGroup, SubgroupSet, hom, identity_hom,
                     image, induced_first_iso, is_normal, join, kernel, setwise_product)
from .product import (E_subgroup, L_subgroup, ProductGroup, ProductSubgroup, complement, core,
                      index_set, is_subdirect, proper_subsets)


class KernelLattice:
    """K_lam = intersection of ker(f_i) over i in lam; K_() is the source."""

    def __init__(self, source, maps):
        self.source = source
        self.maps = maps
        self._memo = {(): SubgroupSet(source, source.elements)}

    def __getitem__(self, lam):
        lam = tuple(sorted(set(lam)))
        if lam not in self._memo:
            els = self.source.elements
            for i in lam:
                els = els[self.maps[i].map[els] == 0]
            self._memo[lam] = SubgroupSet(self.source, els)
        return self._memo[lam]


class HomPresentation:
    def __init__(self, source, maps, notes=()):
        self.source = source
        self.maps = list(maps)
        self.n = len(self.maps)
        self.notes = list(notes)
        self.ambient = ProductGroup([f.codomain for f in self.maps])
        rows = np.stack([f.map for f in self.maps], axis=1)
        self.u = Homomorphism(source, self.ambient, self.ambient.encode(rows))
        self.U = ProductSubgroup(self.ambient, self.u.map)
        self.K = KernelLattice(source, self.maps)

    def __repr__(self):
        return f"HomPresentation({self.source.label} -> {self.ambient.label})"

    def xi(self, lam):
        """pi_lam o u as codes in the subproduct over lam."""
        return self.ambient.project_codes(self.u.map, index_set(lam, self.n))

    def u_of(self, sub):
        return SubgroupSet(self.ambient, self.u.map[sub.elements])

    @property
    def full(self):
        return tuple(range(self.n))


def present(source, fs, substitute_images=True):
    """[A; (f_1, ..., f_n)].

    Non-surjective maps get their image as codomain (a note is recorded)
    unless substitute_images is False.
    """
    fs = list(fs)
    if len(fs) < 2:
        raise InputError("a presentation needs at least two homomorphisms")
    if any(f.domain is not source for f in fs):
        raise InputError("all homomorphisms must share the source group")
    maps, notes = [], []
    for i, f in enumerate(fs):
        if substitute_images and not f.is_surjective():
            img = image(f)
            label = f"Im(f{i + 1})"
            table = GroupTable.from_subgroup(img, label=label)
            f = Homomorphism(source, table, np.searchsorted(img.elements, f.map))
            notes.append(f"f{i + 1} is not surjective; codomain replaced by its image "
                         f"(order {img.order})")
        maps.append(f)
    for (i, f), (j, g) in itertools.combinations(enumerate(fs), 2):
        if f.codomain is g.codomain and np.array_equal(f.map, g.map):
            notes.append(f"f{j + 1} repeats f{i + 1}")
    return HomPresentation(source, maps, notes)


def is_terse(p):
    return p.K[p.full].order == 1


def tersify(p):
    """Factor every f_i through A/K_{1..n}; the presented U is unchanged."""
    q = QuotientGroup(p.source, p.K[p.full])
    abar = q.as_table(label=f"{p.source.label or 'A'}/K")
    maps = [hom(abar, f.codomain, f.map[q.reps]) for f in p.maps]
    out = HomPresentation(abar, maps, p.notes)
    if out.U != p.U:
        raise TheoremViolation("tersified presentation gives a different U")
    return out


# ----------------------------------------------------------------------------
# identities

@dataclass
class Check:
    clause: str
    lam: tuple
    ok: bool


@dataclass
class IdentityReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def kernel_product(p):
    """The set product K_1 K_2 ... K_n (a subgroup, the K_i being normal)."""
    return SubgroupSet(p.source, setwise_product(*[p.K[(i,)] for i in range(p.n)]))


def lemma35_verify(p):
    """Check ker(xi_lam) = K_lam, L_lam = u(K_lamhat), E_lam = u(K_lam) for every
    nonempty proper lam, ker(u) = K_{1..n}, and core(U) = u(K_1...K_n)."""
    rep = IdentityReport()
    U = p.U
    rep.checks.append(Check("ker(u)=K_all", p.full,
                            np.array_equal(np.flatnonzero(p.u.map == 0), p.K[p.full].elements)))
    for lam in proper_subsets(p.n):
        hat = complement(lam, p.n)
        ker_xi = np.flatnonzero(p.xi(lam) == 0)
        rep.checks.append(Check("a", lam, np.array_equal(ker_xi, p.K[lam].elements)))
        rep.checks.append(Check("b", lam, L_subgroup(U, lam) == p.u_of(p.K[hat])))
        rep.checks.append(Check("E", lam, E_subgroup(U, lam) == p.u_of(p.K[lam])))
    kp = kernel_product(p)
    kjoin = join(*[p.K[(i,)] for i in range(p.n)])
    rep.checks.append(Check("c", p.full, kp == kjoin and core(U) == p.u_of(kp)))
    return rep


def _k_hat(p, lam):
    """K of the complement of lam; for the full index set, the preimage K_1...K_n
    of the core, matching L_{1..n} = core."""
    if len(lam) == p.n:
        return kernel_product(p)
    return p.K[complement(lam, p.n)]


def prop40_split_check(p, lam, m, n):
    """(L_lam = L_m x L_n in U, K_lamhat = K_mhat x K_nhat in A); raises if they differ."""
    if not is_terse(p):
        raise PreconditionError("presentation is not terse")
    lam = index_set(lam, p.n)
    m, n = index_set(m, p.n), index_set(n, p.n)
    if len(lam) < 2:
        raise InputError("a singleton index set has no nontrivial partition")
    if set(m) & set(n) or set(m) | set(n) != set(lam):
        raise InputError("m and n must partition lam")
    U = p.U
    lhs = is_internal_direct(L_subgroup(U, lam), [L_subgroup(U, m), L_subgroup(U, n)])
    rhs = is_internal_direct(_k_hat(p, lam), [p.K[complement(m, p.n)], p.K[complement(n, p.n)]])
    if lhs != rhs:
        raise TheoremViolation(f"split criterion disagrees at {lam} = {m} | {n}")
    return lhs, rhs


def cor41_smashed_check(p):
    """<K_1, ..., K_n> equals the product of the K_ihat; agrees with is_smashed(U)."""
    if not is_terse(p):
        raise PreconditionError("presentation is not terse")
    gen = join(*[p.K[(i,)] for i in range(p.n)])
    hats = setwise_product(*[p.K[complement((i,), p.n)] for i in range(p.n)])
    verdict = bool(np.array_equal(gen.elements, hats))
    if verdict != is_smashed(p.U):
        raise TheoremViolation("kernel criterion disagrees with is_smashed")
    return verdict


# ----------------------------------------------------------------------------
# pullbacks

@dataclass
class PullbackData:
    taus: list

    @property
    def R(self):
        return self.taus[0].codomain


def to_pullback(p):
    """Epimorphisms tau_i: G_i -> R with U = {tau_1(g_1) = ... = tau_n(g_n)}.

    For two factors R is G_2/f_2(ker f_1), tau_2 the natural map and
    tau_1 = sigma o (natural map of G_1); for more factors R = U/I and
    tau_i(x_i) is the class of any x in U with i-th coordinate x_i.
    """
    if not is_terse(p):
        raise PreconditionError("presentation is not terse")
    U = p.U
    if not is_subdirect(U):
        raise PreconditionError("U is not a subdirect product")
    if not is_smashed(U):
        raise PreconditionError("U is not smashed")
    if p.n == 2:
        s = structural_iso_two(U)
        r = s.target.as_table(label="R")
        g1, g2 = p.ambient.factors
        tau1 = hom(g1, r, s.map[s.source.coset_of(g1.elements)])
        tau2 = hom(g2, r, s.target.coset_of(g2.elements))
        return PullbackData([tau1, tau2])
    ref = QuotientGroup(U, core(U))
    r = ref.as_table(label="R")
    taus = []
    for i, g in enumerate(p.ambient.factors):
        m = np.full(g.order, -1, dtype=np.int64)
        m[U.coords[:, i]] = ref.labels
        if (m[U.coords[:, i]] != ref.labels).any():
            raise TheoremViolation(f"tau_{i + 1} is not well defined")
        taus.append(hom(g, r, m))
    return PullbackData(taus)


def from_pullback(data):
    """[U; (p_1, ..., p_n)] with u the identity on the pullback U."""
    U = pullback_construct(data.taus)
    src = GroupTable.from_subgroup(U, label="U")
    maps = [Homomorphism(src, g, U.coords[:, i]) for i, g in enumerate(U.parent.factors)]
    p = present(src, maps, substitute_images=False)
    if not np.array_equal(p.u.map, U.elements):
        raise TheoremViolation("u is not the identity on U")
    return p


def canonical_presentation(u):
    """[U; projections] for any subgroup U of a product (always terse)."""
    src = GroupTable.from_subgroup(u, label="U")
    maps = [Homomorphism(src, g, u.coords[:, i]) for i, g in enumerate(u.parent.factors)]
    return present(src, maps, substitute_images=False)


# ----------------------------------------------------------------------------
# quotient isomorphisms

@dataclass
class DoubleIso:
    """source ~ target ~ prolongation, with the verified structural maps."""
    sigma: object
    first_normal: SubgroupSet
    second_normal: SubgroupSet

    @property
    def orders(self):
        s = self.sigma
        return s.source.order, s.target.order, s.prolongation.order


def _same(sub_codes, expected_codes):
    return np.array_equal(np.unique(sub_codes), np.unique(expected_codes))


def prop30_quotients(f1, f2):
    """Im(f1)/f1(ker f2) ~ Im(f2)/f2(ker f1) ~ U/(f1(ker f2) x f2(ker f1))."""
    if f1.domain is not f2.domain:
        raise InputError("homomorphisms must share their domain")
    p = present(f1.domain, [f1, f2], substitute_images=False)
    s = structural_iso_two(p.U)
    n1, n2 = f1.image_of(kernel(f2)), f2.image_of(kernel(f1))
    if not (_same(s.source.normal.elements, n1.elements)
            and _same(s.target.normal.elements, n2.elements)
            and _same(s.source.group.elements, image(f1).elements)
            and _same(s.target.group.elements, image(f2).elements)):
        raise TheoremViolation("structural quotients differ from the kernel images")
    return DoubleIso(s, n1, n2)


def first_iso_check(f):
    """The double isomorphism with f2 = identity, against the canonical A/ker(f) -> Im(f)."""
    res = prop30_quotients(f, identity_hom(f.domain))
    q, img, canon = induced_first_iso(f)
    s = res.sigma
    if s.source.order != img.order or s.target.order != q.order:
        return False
    return bool(np.array_equal(s.map[canon], np.arange(q.order)))


def split_quotients(p, lam):
    """xi_lamhat(A)/xi_lamhat(K_lam) ~ xi_lam(A)/xi_lam(K_lamhat) ~ u(A)/(...)."""
    lam = index_set(lam, p.n)
    s = structural_iso_split(p.U, lam)
    hat = complement(lam, p.n)
    n1 = p.ambient.project_codes(p.u.map[p.K[lam].elements], hat)
    n2 = p.ambient.project_codes(p.u.map[p.K[hat].elements], lam)
    if not (_same(s.source.normal.elements, n1) and _same(s.target.normal.elements, n2)):
        raise TheoremViolation("split quotients differ from the kernel images")
    return DoubleIso(s, SubgroupSet(s.source.parent, n1), SubgroupSet(s.target.parent, n2))


def cor39_triple(p, i):
    """G_i/f_i(K_jk) ~ xi_jk(A)/xi_jk(K_i) ~ u(A)/(...) for n = 3."""
    if p.n != 3:
        raise InputError("cor39_triple needs exactly three homomorphisms")
    i = index_set([i], 3)[0]
    return split_quotients(p, complement((i,), 3))


# ----------------------------------------------------------------------------
# representations from normal direct factors

def example24_representation(g, bs):
    """Present g through g -> g/K_i, K_i the product of the B_j with j != i."""
    bs = list(bs)
    if len(bs) < 2:
        raise InputError("need at least two direct factors")
    for b in bs:
        if b.parent is not g or not is_normal(b, g):
            raise InputError("every B_i must be a normal subgroup of G")
    whole_b = SubgroupSet(g, setwise_product(*bs))
    if not is_internal_direct(whole_b, bs):
        raise InputError("the B_i do not form an internal direct product")
    maps = []
    for i in range(len(bs)):
        others = [b for j, b in enumerate(bs) if j != i]
        k = SubgroupSet(g, setwise_product(*others))
        q = QuotientGroup(g, k)
        maps.append(q.projection(q.as_table(label=f"G/K{i + 1}")))
    p = present(g, maps)
    U = p.U
    ok = (is_terse(p) and is_subdirect(U) and is_smashed(U)
          and all(L_subgroup(U, (i,)).order == b.order for i, b in enumerate(bs))
          and U.order // core(U).order == g.order // whole_b.order)
    if not ok:
        raise TheoremViolation("representation lacks a property it must have")
    return p


def all_partitions_checks(p):
    """The split criterion on every partition of every index set of size >= 2."""
    out = []
    for k in range(2, p.n + 1):
        for lam in itertools.combinations(range(p.n), k):
            for r in range(1, k):
                for m in itertools.combinations(lam, r):
                    if m[0] != lam[0]:
                        continue
                    n = tuple(i for i in lam if i not in m)
                    out.append((lam, m, n, prop40_split_check(p, lam, m, n)))
    return out
