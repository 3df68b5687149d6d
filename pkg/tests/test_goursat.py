import itertools

import numpy as np
import pytest

from subdirect.errors import InputError, PreconditionError
from subdirect.fixtures import (F4, F5, F6, F6R, W, antidiagonal, cyclic, diagonal, full_product,
                                symmetric)
from subdirect.goursat import (GoursatData, SplitData, block_system, construct_from_goursat,
                               construct_from_split, factor_maps, goursat_data, naturality_check,
                               projection_smashed_system, pullback_construct, smashed_system,
                               split_data, structural_iso_split, structural_iso_two,
                               trivialE_iso_system)
from subdirect.groups import (Homomorphism, SubgroupSet, closure, enumerate_subgroups, hom,
                              identity_hom, trivial, trivial_hom, verify_iso, whole)
from subdirect.product import (ProductGroup, as_product_subgroup, core, generate,
                               proper_subsets)

import oracles

Z2, Z3, Z4, S3 = cyclic(2), cyclic(3), cyclic(4), symmetric(3)
PARITY = hom(Z4, Z2, [0, 1, 0, 1])


def corpus():
    out = []
    for factors in ([Z2, Z2], [Z2, Z2, Z2], [Z4, Z2], [Z4, Z2, Z2], [S3, S3]):
        out.extend(as_product_subgroup(s) for s in enumerate_subgroups(ProductGroup(factors)))
    return out


CORPUS = corpus()


# ---------------------------------------------------------------- two factors

def test_structural_iso_two_examples():
    s = structural_iso_two(diagonal(S3))
    assert s.order == 6 and np.array_equal(s.map, np.arange(6))
    s = structural_iso_two(F4())
    assert (s.source.group.order, s.source.normal.order) == (4, 2)
    assert (s.target.group.order, s.target.normal.order) == (2, 1)
    assert s.map.tolist() == [0, 1]
    s = structural_iso_two(full_product(S3, Z2))
    assert s.order == 1


def test_structural_iso_two_needs_two_factors():
    with pytest.raises(InputError):
        structural_iso_two(W())


def test_structural_property():
    for u in CORPUS:
        for lam in proper_subsets(u.n):
            s = structural_iso_split(u, lam)
            amb = u.parent
            hat = tuple(i for i in range(u.n) if i not in s.lam)
            src = s.source.coset_of(amb.project_codes(u.elements, hat))
            tgt = s.target.coset_of(amb.project_codes(u.elements, s.lam))
            assert np.array_equal(s.map[src], tgt)
            assert verify_iso(s.source, s.target, s.map)
            assert verify_iso(s.prolongation, s.source, s.to_source)


def test_naturality_examples():
    ident4, ident2 = identity_hom(Z4), identity_hom(Z2)
    assert naturality_check(F4(), ident4, ident2)
    assert naturality_check(diagonal(Z4), PARITY, PARITY)
    assert naturality_check(F4(), PARITY, ident2)


def test_naturality_over_corpus():
    amb = ProductGroup([Z4, Z2])
    to_z2 = [PARITY, trivial_hom(Z4, Z2)]
    for s in enumerate_subgroups(amb):
        u = as_product_subgroup(s)
        for fa in to_z2 + [identity_hom(Z4)]:
            for fb in (identity_hom(Z2), trivial_hom(Z2, Z2)):
                assert naturality_check(u, fa, fb)


# ---------------------------------------------------------------- split

def test_split_examples():
    assert structural_iso_split(F4(), (1,)).map.tolist() == structural_iso_two(F4()).map.tolist()
    s = structural_iso_split(W(), (2,))
    assert s.source.group.order == 4 and s.source.normal.order == 2
    assert s.target.group.order == 2 and s.target.normal.order == 1
    assert s.order == 2
    full = full_product(Z2, Z2, Z2)
    assert structural_iso_split(full, (0, 2)).order == 1
    with pytest.raises(InputError):
        structural_iso_split(W(), (0, 1, 2))


# ---------------------------------------------------------------- converse constructions

def test_construct_from_goursat_examples():
    whole_s3, whole_z2 = whole(S3), whole(Z2)
    full = construct_from_goursat(GoursatData(S3, Z2, whole_s3, whole_s3, whole_z2, whole_z2,
                                              np.array([0])))
    assert full.order == 12
    d = construct_from_goursat(GoursatData(S3, S3, whole_s3, trivial(S3), whole_s3, trivial(S3),
                                           np.arange(6)))
    assert d == diagonal(S3)
    f4 = construct_from_goursat(GoursatData(Z4, Z2, whole(Z4), closure(Z4, [2]), whole(Z2),
                                            trivial(Z2), np.array([0, 1])))
    assert f4 == F4()


def test_construct_rejects_bad_sigma():
    with pytest.raises(InputError):
        construct_from_goursat(GoursatData(Z4, Z4, whole(Z4), trivial(Z4), whole(Z4),
                                           trivial(Z4), np.array([0, 1, 1, 3])))
    with pytest.raises(InputError):
        construct_from_goursat(GoursatData(S3, S3, whole(S3), closure(S3, [1]), whole(S3),
                                           closure(S3, [1]), np.array([0, 1, 2])))


def test_split_construction_examples():
    u = F4()
    assert construct_from_split(split_data(u, (1,))) == construct_from_goursat(goursat_data(u))
    assert construct_from_split(split_data(W(), (2,))) == W()
    amb = ProductGroup([Z2, Z2, Z2])
    p = amb.subproduct((0, 1))
    q = amb.subproduct((2,))
    whole_p, whole_q = SubgroupSet(p, [0, 1, 2, 3]), SubgroupSet(q, [0, 1])
    data = SplitData(amb, (2,), whole_p, whole_q, whole_p, whole_q, np.array([0]))
    assert construct_from_split(data).order == 8


@pytest.mark.parametrize("u", CORPUS, ids=lambda u: f"{u.parent.label}:{u.order}:{u.elements[-1]}")
def test_round_trips(u):
    for lam in proper_subsets(u.n):
        assert construct_from_split(split_data(u, lam)) == u
    if u.n == 2:
        assert construct_from_goursat(goursat_data(u)) == u


@pytest.mark.parametrize("factors", [[Z2, Z2], [Z4, Z2]], ids=["Z2xZ2", "Z4xZ2"])
def test_uniqueness_by_exhaustive_search(factors):
    amb = ProductGroup(factors)
    ta, tb = oracles.table(factors[0]), oracles.table(factors[1])
    for s in enumerate_subgroups(amb):
        u = as_product_subgroup(s)
        pairs = {tuple(r) for r in u.coords.tolist()}
        hits = oracles.goursat_structures(ta, tb, pairs)
        assert len(hits) == 1
        I, K, J, L, _ = hits[0]
        g = goursat_data(u)
        assert (set(g.I.elements.tolist()), set(g.K.elements.tolist())) == (set(I), set(K))
        assert (set(g.J.elements.tolist()), set(g.L.elements.tolist())) == (set(J), set(L))


# ---------------------------------------------------------------- systems

def test_smashed_system_examples():
    sysd = smashed_system(diagonal(S3))
    assert sysd.reference.order == 6 and sysd.verify()
    f5 = smashed_system(F5().U)
    assert f5.reference.order == 2
    assert [q.order for q in f5.quotients] == [2, 2]
    assert f5.verify()
    with pytest.raises(PreconditionError):
        smashed_system(W())


def test_smashed_system_requires_subdirect():
    u = generate(ProductGroup([Z4, Z2]), [(2, 0)])
    with pytest.raises(PreconditionError):
        smashed_system(u)
    assert projection_smashed_system(u).verify()


def test_block_system_examples():
    u = F4()
    a, b = block_system(u), smashed_system(u)
    assert a.indices == b.indices
    assert all(np.array_equal(x, y) for x, y in zip(a.maps, b.maps))
    w = block_system(W())
    assert w.indices == [(0, 1, 2)] and w.quotients[0].order == 1 and w.verify()


def test_block_system_F6():
    sysf = block_system(F6().U)
    assert sysf.indices == [(0, 1), (2,), (3,), (4,)]
    assert sysf.verify()
    # the hand-constructed F6 has B = A, so U = I and every block quotient is trivial
    assert sysf.reference.order == 1
    assert [q.order for q in sysf.quotients] == [1, 1, 1, 1]
    sysr = block_system(F6R().U)
    assert sysr.indices == [(0, 1), (2,), (3,), (4,)]
    assert sysr.reference.order == 2 and sysr.verify()
    assert [q.order for q in sysr.quotients] == [2, 2, 2, 2]


def test_system_multi_components():
    sysr = block_system(F6R().U)
    for ks in itertools.combinations(range(4), 2):
        q, m = sysr.multi(ks)
        assert verify_iso(sysr.reference, q, m)


def test_trivial_E_systems():
    sysd = trivialE_iso_system(diagonal(S3))
    maps = factor_maps(sysd)
    assert np.array_equal(maps[(0, 1)], np.arange(6))
    neg = factor_maps(trivialE_iso_system(antidiagonal(Z4)))
    assert neg[(0, 1)].tolist() == [0, 3, 2, 1]
    three = trivialE_iso_system(diagonal(S3, 3))
    assert all(np.array_equal(m, np.arange(6)) for m in factor_maps(three).values())
    assert three.compatible()
    with pytest.raises(PreconditionError):
        trivialE_iso_system(F4())


@pytest.mark.parametrize("u", CORPUS, ids=lambda u: f"{u.parent.label}:{u.order}:{u.elements[-1]}")
def test_systems_over_corpus(u):
    assert block_system(u).verify()
    flags_ok = all(np.unique(u.coords[:, i]).size == f.order
                   for i, f in enumerate(u.parent.factors))
    from subdirect.decomposition import is_smashed
    if flags_ok and is_smashed(u):
        s = smashed_system(u)
        assert s.verify()
        assert s.reference.order == u.order // core(u).order


# ---------------------------------------------------------------- pullbacks

def test_pullback_examples():
    triv = [trivial_hom(S3, cyclic(1)), trivial_hom(Z2, cyclic(1))]
    assert pullback_construct(triv).order == 12
    d = pullback_construct([identity_hom(S3), Homomorphism(S3, S3, np.arange(6))])
    assert d == diagonal(S3)
    assert pullback_construct([PARITY, identity_hom(Z2)]) == F4()


def test_pullback_needs_shared_codomain():
    with pytest.raises(InputError):
        pullback_construct([PARITY, identity_hom(Z4)])


def test_pullback_non_surjective_note():
    inc = hom(Z2, Z4, [0, 2])
    u = pullback_construct([identity_hom(Z4), inc])
    assert u.notes == ["tau_2 is not surjective"]
    assert u.order == 2
