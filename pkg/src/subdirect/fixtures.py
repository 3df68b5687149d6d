"""Small named subgroups used by the tests, the CLI and the README.

W    {(a,b,c) in Z2^3 : a+b+c = 0}
F4   <(1,1)> in Z4 x Z2
F5   Z2^3 presented through G/K_1, G/K_2 with B_1 = <e1>, B_2 = <e2>
F6   Z2^6 with five quotient maps whose kernels are
     K1 = C2 B3 B4 B5, K2 = C1 B3 B4 B5, K3 = B12 B4 B5, K4 = B12 B3 B5,
     K5 = B12 B3 B4 where B12 = <e1,e2,e3>, C1 = <e1>, C2 = <e2>,
     B3 = <e4>, B4 = <e5>, B5 = <e6>
F6R  F6 over Z2^7, the extra generator e7 outside B so that U/I ~ Z2
"""
from functools import lru_cache

import numpy as np

from .groups import GroupTable, QuotientGroup, SubgroupSet, closure
from .presentation import example24_representation, present
from .product import ProductGroup, from_coords, generate


@lru_cache(maxsize=None)
def cyclic(n):
    return GroupTable.cyclic(n)


@lru_cache(maxsize=None)
def symmetric(d):
    return GroupTable.symmetric(d)


@lru_cache(maxsize=None)
def dihedral(order):
    return GroupTable.dihedral(order)


@lru_cache(maxsize=None)
def quaternion():
    return GroupTable.quaternion()


@lru_cache(maxsize=None)
def elementary(rank):
    return GroupTable.direct_product([cyclic(2)] * rank, label=f"Z2^{rank}")


def basis(rank, i):
    """Id of the i-th standard basis vector (0-based) of Z2^rank."""
    return 1 << (rank - 1 - i)


def span(rank, idx):
    g = elementary(rank)
    return closure(g, [basis(rank, i) for i in idx])


def diagonal(g, n=2):
    amb = ProductGroup([g] * n)
    return from_coords(amb, [[x] * n for x in range(g.order)])


def antidiagonal(g):
    amb = ProductGroup([g, g])
    return from_coords(amb, [[x, int(g.inv[x])] for x in range(g.order)])


def W():
    z2 = cyclic(2)
    amb = ProductGroup([z2, z2, z2])
    return from_coords(amb, [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 0, 1]])


def F4():
    return generate(ProductGroup([cyclic(4), cyclic(2)]), [(1, 1)])


def F5():
    g = elementary(3)
    return example24_representation(g, [span(3, [0]), span(3, [1])])


def _quotient_maps(g, kernels):
    maps = []
    for i, k in enumerate(kernels):
        q = QuotientGroup(g, k)
        maps.append(q.projection(q.as_table(label=f"G{i + 1}")))
    return maps


def _f6_kernels(rank):
    return [span(rank, [1, 3, 4, 5]),        # C2 B3 B4 B5
            span(rank, [0, 3, 4, 5]),        # C1 B3 B4 B5
            span(rank, [0, 1, 2, 4, 5]),     # B12 B4 B5
            span(rank, [0, 1, 2, 3, 5]),     # B12 B3 B5
            span(rank, [0, 1, 2, 3, 4])]     # B12 B3 B4


def F6():
    g = elementary(6)
    return present(g, _quotient_maps(g, _f6_kernels(6)))


def F6R():
    g = elementary(7)
    return present(g, _quotient_maps(g, _f6_kernels(7)))


def F6_parts(rank=6):
    """(B12, C1, C2, B3, B4, B5) as subgroups of Z2^rank."""
    return (span(rank, [0, 1, 2]), span(rank, [0]), span(rank, [1]),
            span(rank, [3]), span(rank, [4]), span(rank, [5]))


def full_product(*groups):
    amb = ProductGroup(groups)
    from .product import full
    return full(amb)


def subgroup_of(g, elements):
    return SubgroupSet(g, np.asarray(elements), check=True)
