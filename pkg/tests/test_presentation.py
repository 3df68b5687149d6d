import itertools

import numpy as np
import pytest

from subdirect.decomposition import is_smashed
from subdirect.errors import InputError, PreconditionError
from subdirect.fixtures import (F4, F5, F6, F6R, F6_parts, cyclic, diagonal, elementary, span,
                                symmetric)
from subdirect.groups import (GroupTable, QuotientGroup, closure,
                              hom, identity_hom, trivial_hom)
from subdirect.presentation import (PullbackData, all_partitions_checks, canonical_presentation,
                                    cor39_triple, cor41_smashed_check, example24_representation,
                                    first_iso_check, from_pullback, is_terse, lemma35_verify,
                                    present, prop30_quotients, prop40_split_check,
                                    split_quotients, to_pullback, tersify)
from subdirect.product import L_subgroup, core, is_subdirect

import generators

Z2, Z4, S3 = cyclic(2), cyclic(4), symmetric(3)
PARITY = hom(Z4, Z2, [0, 1, 0, 1])


def ident(g):
    return identity_hom(g)


# ---------------------------------------------------------------- present

def test_present_examples():
    p = present(S3, [ident(S3), ident(S3)])
    assert p.U == diagonal(S3)
    q = present(Z4, [PARITY, ident(Z4)])
    rows = sorted(map(tuple, q.U.coords.tolist()))
    assert rows == [(0, 0), (0, 2), (1, 1), (1, 3)]
    f5 = F5()
    assert f5.U.order == 8 and f5.ambient.order == 16 and is_smashed(f5.U)


def test_present_rules():
    with pytest.raises(InputError):
        present(Z4, [PARITY])
    with pytest.raises(InputError):
        present(Z4, [PARITY, ident(Z2)])
    inc = hom(Z2, Z4, [0, 2])
    p = present(Z2, [inc, ident(Z2)])
    assert p.maps[0].codomain.order == 2 and p.notes
    raw = present(Z2, [inc, ident(Z2)], substitute_images=False)
    assert raw.maps[0].codomain is Z4


def test_kernel_lattice():
    f6 = F6()
    assert f6.K[()].order == 64
    for lam, mu in itertools.combinations([(0,), (1,), (2, 3), (0, 4)], 2):
        both = tuple(sorted(set(lam) | set(mu)))
        assert f6.K[both] == f6.K[lam].intersection(f6.K[mu])
    assert f6.K[f6.full].order == 1
    np.testing.assert_array_equal(np.flatnonzero(f6.u.map == 0), [0])


def test_u_matches_components():
    p = F6R()
    for a in range(p.source.order):
        row = p.ambient.decode(p.u.map[a])
        assert row.tolist() == [int(f.map[a]) for f in p.maps]


# ---------------------------------------------------------------- terseness

def test_terse_examples():
    assert is_terse(present(S3, [ident(S3), ident(S3)]))
    assert not is_terse(present(Z4, [PARITY, PARITY]))
    assert is_terse(F6())


def test_tersify_examples():
    p = F5()
    t = tersify(p)
    assert t.U == p.U and t.source.order == p.source.order
    t2 = tersify(present(Z4, [PARITY, PARITY]))
    assert t2.source.order == 2 and t2.U == diagonal(Z2)
    t3 = tersify(present(S3, [trivial_hom(S3, Z2), trivial_hom(S3, Z2)]))
    assert t3.source.order == 1 and t3.U.order == 1


# ---------------------------------------------------------------- identities

def test_identities_examples():
    assert lemma35_verify(present(S3, [ident(S3), ident(S3)])).ok
    f5 = F5()
    assert lemma35_verify(f5).ok
    b1 = span(3, [0])
    assert L_subgroup(f5.U, (0,)) == f5.u_of(f5.K[(1,)]) == f5.u_of(b1)
    assert L_subgroup(f5.U, (0,)).order == 2
    f6 = F6()
    rep = lemma35_verify(f6)
    assert rep.ok
    b12 = F6_parts()[0]
    assert L_subgroup(f6.U, (0, 1)) == f6.u_of(f6.K[(2, 3, 4)]) == f6.u_of(b12)
    assert L_subgroup(f6.U, (0, 1)).order == 8


def test_L_orders_F6():
    f6 = F6()
    assert [L_subgroup(f6.U, (i,)).order for i in range(5)] == [2, 2, 2, 2, 2]
    assert core(f6.U).order == 64


def test_split_criterion_examples():
    assert prop40_split_check(F6(), (0, 1), (0,), (1,)) == (False, False)
    assert prop40_split_check(F5(), (0, 1), (0,), (1,)) == (True, True)
    with pytest.raises(InputError):
        prop40_split_check(F5(), (0,), (0,), ())
    with pytest.raises(PreconditionError):
        prop40_split_check(present(Z4, [PARITY, PARITY]), (0, 1), (0,), (1,))


def test_split_criterion_all_partitions():
    for p in (F5(), F6(), F6R()):
        for lam, m, n, (lhs, rhs) in all_partitions_checks(p):
            assert lhs == rhs


def test_kernel_smashed_examples():
    assert cor41_smashed_check(F5())
    assert not cor41_smashed_check(F6())
    assert cor41_smashed_check(present(S3, [ident(S3), ident(S3)]))


# ---------------------------------------------------------------- pullbacks

def test_pullback_examples():
    d = present(S3, [ident(S3), ident(S3)])
    data = to_pullback(d)
    assert data.R.order == 6
    assert all(np.array_equal(t.map, np.arange(6)) for t in data.taus)
    assert from_pullback(data).U == d.U
    for p in (canonical_presentation(F4()), F5()):
        assert from_pullback(to_pullback(p)).U == p.U
    q = from_pullback(PullbackData([PARITY, ident(Z2)]))
    assert q.U == F4() and np.array_equal(q.u.map, F4().elements)


def test_to_pullback_needs_smashed():
    with pytest.raises(PreconditionError):
        to_pullback(F6())


def test_pullback_three_factors():
    p = F6R()
    with pytest.raises(PreconditionError):
        to_pullback(p)
    g = elementary(3)
    q = example24_representation(g, [span(3, [0]), span(3, [1]), span(3, [2])])
    assert from_pullback(to_pullback(q)).U == q.U


# ---------------------------------------------------------------- quotient isomorphisms

def test_double_iso_examples():
    res = prop30_quotients(PARITY, ident(Z4))
    assert res.orders == (2, 2, 2)
    # ker(x -> 2x) = {0, 2} and parity kills it, so neither quotient collapses
    double = hom(Z4, Z4, [0, 2, 0, 2])
    res = prop30_quotients(PARITY, double)
    assert res.orders == (2, 2, 2)
    assert res.first_normal.order == 1 and res.second_normal.order == 1
    # equal maps give a diagonal U; the quotients are all of Im(f)
    res = prop30_quotients(PARITY, PARITY)
    assert res.orders == (2, 2, 2)
    assert prop30_quotients(PARITY, hom(Z4, Z2, [0, 0, 0, 0])).orders == (1, 1, 1)


def test_first_iso_recovery():
    for f in generators.epimorphisms(20, seed=5):
        assert first_iso_check(f)


def test_triple_examples():
    # K_jk = 1 for identities, so each quotient is the whole of S3
    p = present(S3, [ident(S3)] * 3)
    for i in range(3):
        assert cor39_triple(p, i).orders == (6, 6, 6)
    g = elementary(3)
    maps = []
    for i in range(3):
        q = QuotientGroup(g, span(3, [i]))
        maps.append(q.projection(q.as_table()))
    p = present(g, maps)
    # again K_jk = 1, leaving G_i = A/<e_i> of order 4
    for i in range(3):
        assert cor39_triple(p, i).orders == (4, 4, 4)
    f5 = F5()
    ext = present(f5.source, f5.maps + [f5.maps[1]])
    assert "f3 repeats f2" in ext.notes
    assert [cor39_triple(ext, i).orders for i in range(3)] == [(2, 2, 2), (4, 4, 4), (4, 4, 4)]
    with pytest.raises(InputError):
        cor39_triple(F5(), 0)


def test_split_quotients_match_kernels():
    for p in (F5(), F6R()):
        for r in range(1, p.n):
            for lam in itertools.combinations(range(p.n), r):
                split_quotients(p, lam)


# ---------------------------------------------------------------- normal direct factors

def test_representation_examples():
    g = GroupTable.direct_product([Z2, Z2], label="Z2^2")
    b1, b2 = closure(g, [2]), closure(g, [1])
    p = example24_representation(g, [b1, b2])
    assert core(p.U) == p.U and p.U.order == 4
    f5 = F5()
    s = f5.U
    assert s.order == 8 and s.order // core(s).order == 2
    h = GroupTable.direct_product([S3, Z2], label="S3 x Z2")
    a3 = closure(h, [h.parse_element("<(1 2 3),0>")])
    z = closure(h, [h.parse_element("<(),1>")])
    q = example24_representation(h, [a3, z])
    assert is_smashed(q.U) and is_subdirect(q.U)
    assert q.U.order // core(q.U).order == 2


def test_representation_rejects_bad_factors():
    g = elementary(3)
    with pytest.raises(InputError):
        example24_representation(g, [span(3, [0]), span(3, [0, 1])])
    with pytest.raises(InputError):
        example24_representation(S3, [closure(S3, [1]), closure(S3, [3])])


# ---------------------------------------------------------------- random presentations

@pytest.mark.parametrize("seed", range(4))
def test_random_presentations(seed):
    for p in generators.presentations(15, seed=100 + seed):
        assert lemma35_verify(p).ok
        t = p if is_terse(p) else tersify(p)
        assert t.U == p.U
        for lam, m, n, (lhs, rhs) in all_partitions_checks(t):
            assert lhs == rhs
        assert cor41_smashed_check(t) == is_smashed(t.U)
        if is_subdirect(t.U) and is_smashed(t.U):
            assert from_pullback(to_pullback(t)).U == t.U
