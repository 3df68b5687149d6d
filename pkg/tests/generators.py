"""Seeded random homomorphisms and presentations between small groups."""
import random
from functools import lru_cache

import numpy as np

from subdirect.errors import InputError
from subdirect.fixtures import cyclic, dihedral, elementary, quaternion, symmetric
from subdirect.groups import (GroupTable, Homomorphism, QuotientGroup, closure, extend_hom,
                              image, normal_subgroups)
from subdirect.presentation import present


@lru_cache(maxsize=None)
def pool():
    """Groups of order at most 16."""
    z2, z4 = cyclic(2), cyclic(4)
    return (cyclic(1), z2, cyclic(3), z4, cyclic(5), cyclic(6), cyclic(8), elementary(2),
            elementary(3), GroupTable.direct_product([z4, z2], label="Z4 x Z2"),
            symmetric(3), dihedral(8), quaternion(), dihedral(10), dihedral(12),
            GroupTable.direct_product([symmetric(3), z2], label="S3 x Z2"), elementary(4))


@lru_cache(maxsize=None)
def generators(g):
    gens, span = [], closure(g, [])
    for x in range(g.order):
        if x not in span:
            gens.append(x)
            span = closure(g, gens)
    return tuple(gens)


@lru_cache(maxsize=None)
def _normals(g):
    return tuple(normal_subgroups(g))


def quotient_map(rng, a):
    n = rng.choice(_normals(a))
    q = QuotientGroup(a, n)
    return q.projection(q.as_table(label=f"{a.label}/N{n.order}"))


def random_hom(rng, a, b, tries=30):
    """Random generator images in b, rejecting inconsistent choices."""
    gens = generators(a)
    for _ in range(tries):
        images = {x: rng.randrange(b.order) for x in gens}
        try:
            return extend_hom(a, b, images)
        except InputError:
            continue
    return Homomorphism(a, b, np.zeros(a.order, dtype=np.int64))


def random_map(rng, a):
    if rng.random() < 0.4:
        return quotient_map(rng, a)
    return random_hom(rng, a, rng.choice(pool()))


def random_presentation(rng, n=None):
    a = rng.choice(pool()[1:])
    n = n or rng.choice((2, 2, 3))
    return present(a, [random_map(rng, a) for _ in range(n)])


def presentations(count, seed):
    rng = random.Random(seed)
    return [random_presentation(rng) for _ in range(count)]


def epimorphisms(count, seed):
    """Quotient maps and random homomorphisms restricted onto their image."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = rng.choice(pool()[1:])
        if rng.random() < 0.5:
            out.append(quotient_map(rng, a))
            continue
        f = random_hom(rng, a, rng.choice(pool()))
        img = image(f)
        table = GroupTable.from_subgroup(img, label="Im")
        out.append(Homomorphism(a, table, np.searchsorted(img.elements, f.map)))
    return out
