"""Finite groups as full multiplication tables, with subgroups, cosets,
quotients and homomorphisms.

Elements are integer ids 0..order-1 and id 0 is always the identity.  The
same subgroup/coset/quotient machinery also runs over a ProductGroup, whose
elements are mixed-radix codes of coordinate tuples (see _kernels).
"""
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _config, _kernels
from .errors import HomomorphismError, InputError, NormalityError, ResourceError


# ----------------------------------------------------------------------------
# permutations

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse cycle notation with 1-based points into a 0-based image tuple."""
    text = text.strip()
    images = list(range(degree))
    if text in ("", "()", "1", "e", "id"):
        return tuple(images)
    pos = 0
    seen = set()
    for m in _CYCLE_RE.finditer(text):
        if text[pos : m.start()].strip():
            raise InputError(f"bad cycle notation {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(p) - 1 for p in body]
        except ValueError:
            raise InputError(f"bad cycle notation {text!r}") from None
        for p in pts:
            if not 0 <= p < degree:
                raise InputError(f"point {p + 1} outside degree {degree} in {text!r}")
            if p in seen:
                raise InputError(f"point {p + 1} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    if text[pos:].strip():
        raise InputError(f"bad cycle notation {text!r}")
    return tuple(images)


def cycle_string(perm):
    """Cycle notation, 1-based, fixed points omitted, '()' for the identity."""
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "()"


def _compose(p, q):
    # (p*q)(x) = p(q(x))
    return tuple(p[x] for x in q)


# ----------------------------------------------------------------------------
# groups

class GroupTable:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the id of ``x*y``.  For permutation groups the product is
    composition with the right factor applied first, and ``perm_rep[x]`` is
    the 0-based image tuple of element x.
    """

    def __init__(self, mul, label="", names=None, perm_rep=None, check=True):
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise InputError("multiplication table must be a nonempty square array")
        n = mul.shape[0]
        if n > _config.MAX_TABLE_ORDER:
            raise ResourceError(f"group order {n} exceeds {_config.MAX_TABLE_ORDER}")
        if check:
            _check_table(mul)
        mul.setflags(write=False)
        self.mul = mul
        self.order = n
        inv = np.argmax(mul == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        self.inv = inv
        self.label = label
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        if len(self.names) != n or len(set(self.names)) != n:
            raise InputError("element names must be distinct, one per element")
        self._name_index = {s: i for i, s in enumerate(self.names)}
        self.perm_rep = None if perm_rep is None else [tuple(p) for p in perm_rep]
        if self.perm_rep is not None:
            self._perm_index = {p: i for i, p in enumerate(self.perm_rep)}

    def __repr__(self):
        return f"GroupTable({self.label or '?'}, order={self.order})"

    # ambient protocol shared with ProductGroup
    identity = 0

    @cached_property
    def kdata(self):
        return _kernels.KernelData([self.mul], [self.inv])

    @property
    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def multiply(self, a, b):
        return self.mul[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def invert(self, a):
        return self.inv[np.asarray(a, dtype=np.int64)]

    def element_name(self, x):
        return self.names[int(x)]

    def parse_element(self, text):
        text = text.strip()
        if text in self._name_index:
            return self._name_index[text]
        if self.perm_rep is not None and text.startswith("("):
            perm = parse_cycles(text, len(self.perm_rep[0]))
            if perm in self._perm_index:
                return self._perm_index[perm]
            raise InputError(f"permutation {text} is not in {self.label}")
        raise InputError(f"unknown element {text!r} of {self.label}")

    # constructors

    @classmethod
    def from_permutations(cls, gens, degree, label=""):
        """Close a set of permutations (image tuples or cycle strings)."""
        perms = []
        for g in gens:
            p = parse_cycles(g, degree) if isinstance(g, str) else tuple(int(v) for v in g)
            if sorted(p) != list(range(degree)):
                raise InputError(f"{g!r} is not a permutation of degree {degree}")
            perms.append(p)
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in perms:
                    y = _compose(x, g)
                    if y not in seen:
                        if len(seen) >= _config.MAX_TABLE_ORDER:
                            raise ResourceError(
                                f"permutation group exceeds order {_config.MAX_TABLE_ORDER}")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        elems = sorted(seen)  # identity is lexicographically least
        index = {p: i for i, p in enumerate(elems)}
        mul = np.array([[index[_compose(p, q)] for q in elems] for p in elems], dtype=np.int64)
        names = [cycle_string(p) for p in elems]
        return cls(mul, label=label, names=names, perm_rep=elems, check=False)

    @classmethod
    def from_table(cls, rows, label="", names=None):
        """Build from an explicit Cayley table over ids 0..n-1.

        The identity is moved to position 0; other elements keep their order.
        """
        mul = np.array(rows, dtype=np.int64)
        n = mul.shape[0]
        if mul.ndim != 2 or mul.shape != (n, n) or mul.min() < 0 or mul.max() >= n:
            raise InputError("table rows must form an n x n array over 0..n-1")
        ids = np.arange(n)
        ident = [e for e in range(n)
                 if np.array_equal(mul[e], ids) and np.array_equal(mul[:, e], ids)]
        if not ident:
            raise InputError("table has no identity element")
        e = ident[0]
        order = [e] + [x for x in range(n) if x != e]
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n)
        new = pos[mul[np.ix_(order, order)]]
        if names is not None:
            names = [names[x] for x in order]
        else:
            names = [str(x) for x in order]
        return cls(new, label=label, names=names)

    @classmethod
    def cyclic(cls, n, label=None):
        i = np.arange(n)
        return cls((i[:, None] + i[None, :]) % n, label=label or f"Z{n}", check=False)

    @classmethod
    def symmetric(cls, degree, label=None):
        gens = [tuple(range(degree))]
        if degree >= 2:
            gens = [(1, 0) + tuple(range(2, degree)), tuple(list(range(1, degree)) + [0])]
        return cls.from_permutations(gens, degree, label=label or f"S{degree}")

    @classmethod
    def dihedral(cls, order, label=None):
        """Dihedral group of the given (even) order, acting on order/2 points."""
        m = order // 2
        if order % 2 or m < 3:
            raise InputError("dihedral order must be even and at least 6")
        rot = tuple((i + 1) % m for i in range(m))
        ref = tuple((-i) % m for i in range(m))
        return cls.from_permutations([rot, ref], m, label=label or f"D{order}")

    @classmethod
    def quaternion(cls, label="Q8"):
        return cls.from_permutations(["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 8, label=label)

    @classmethod
    def direct_product(cls, groups, label=None):
        """Internal direct product as a single table; ids in lexicographic tuple order."""
        kd = _kernels.KernelData([g.mul for g in groups], [g.inv for g in groups])
        n = int(np.prod(kd.orders))
        if n > _config.MAX_TABLE_ORDER:
            raise ResourceError(f"group order {n} exceeds {_config.MAX_TABLE_ORDER}")
        ids = np.arange(n, dtype=np.int64)
        mul = _kernels.multiply(ids[:, None], ids[None, :], kd)
        coords = _kernels.decode(ids, kd.orders, kd.strides)
        names = ["<" + ",".join(g.names[c] for g, c in zip(groups, row)) + ">" for row in coords]
        label = label or " x ".join(g.label for g in groups)
        return cls(mul, label=label, names=names, check=False)

    @classmethod
    def from_subgroup(cls, sub, label=None):
        """The subgroup as a group in its own right, ids in parent id order."""
        els = sub.elements
        mul = np.searchsorted(els, sub.parent.multiply(els[:, None], els[None, :]))
        names = [sub.parent.element_name(x) for x in els]
        return cls(mul, label=label or f"sub({sub.parent.label})", names=names, check=False)


def _check_table(mul):
    n = mul.shape[0]
    ids = np.arange(n)
    if mul.min() < 0 or mul.max() >= n:
        raise InputError("table entries out of range")
    if not (np.array_equal(mul[0], ids) and np.array_equal(mul[:, 0], ids)):
        raise InputError("id 0 must be the identity")
    srt = np.sort(mul, axis=1)
    if not (srt == ids).all() or not (np.sort(mul, axis=0) == ids[:, None]).all():
        raise InputError("table is not a latin square")
    # associativity, exhaustive
    for x in range(n):
        lhs = mul[mul[x]]          # (x*y)*z over all y, z
        rhs = mul[x][mul]          # x*(y*z)
        if not np.array_equal(lhs, rhs):
            y, z = map(int, np.argwhere(lhs != rhs)[0])
            raise InputError(f"table is not associative at ({x}, {y}, {z})")


# ----------------------------------------------------------------------------
# subgroups

class SubgroupSet:
    """A subgroup of a GroupTable or ProductGroup as a sorted id array."""

    def __init__(self, parent, elements, check=False):
        els = np.unique(np.asarray(elements, dtype=np.int64))
        els.setflags(write=False)
        self.parent = parent
        self.elements = els
        if check and not is_subgroup(parent, els):
            raise InputError("element set is not a subgroup")

    @property
    def order(self):
        return int(self.elements.size)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements.tolist())

    def __contains__(self, x):
        i = np.searchsorted(self.elements, x)
        return bool(i < self.elements.size and self.elements[i] == x)

    def contains_all(self, xs):
        return bool(np.isin(np.asarray(xs, dtype=np.int64), self.elements).all())

    def issubset(self, other):
        return self.parent == other.parent and other.contains_all(self.elements)

    def is_trivial(self):
        return self.order == 1

    def __eq__(self, other):
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent == other.parent and np.array_equal(self.elements, other.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements.tobytes()))

    def __repr__(self):
        return f"SubgroupSet(order={self.order} in {self.parent!r})"

    def intersection(self, other):
        return SubgroupSet(self.parent, np.intersect1d(self.elements, other.elements))


def whole(parent):
    return SubgroupSet(parent, parent.elements)


def trivial(parent):
    return SubgroupSet(parent, [0])


def is_subgroup(parent, elements):
    els = np.unique(np.asarray(elements, dtype=np.int64))
    if els.size == 0 or els[0] != 0:
        return False
    prods = _kernels.setwise_product(els, els, parent.kdata)
    return prods.size == els.size and np.array_equal(prods, els)


def _check_ids(parent, ids):
    ids = np.asarray(list(ids), dtype=np.int64).ravel()
    if ids.size and (ids.min() < 0 or ids.max() >= parent.order):
        raise InputError(f"element id out of range for {parent!r}")
    return ids


def closure(parent, generators):
    """Smallest subgroup of parent containing the generators."""
    gens = _check_ids(parent, generators)
    return SubgroupSet(parent, _kernels.closure(gens, parent.kdata))


def setwise_product(*subsets):
    """The set product X1*X2*...*Xk as a sorted id array (not closed up)."""
    parent = subsets[0].parent
    acc = subsets[0].elements
    for s in subsets[1:]:
        acc = _kernels.setwise_product(acc, s.elements, parent.kdata)
    return acc


def join(*subgroups):
    parent = subgroups[0].parent
    gens = np.concatenate([s.elements for s in subgroups])
    return closure(parent, gens)


def _as_subgroup(g):
    return g if isinstance(g, SubgroupSet) else whole(g)


def is_normal(n, g):
    g = _as_subgroup(g)
    if not n.issubset(g):
        raise InputError("first argument is not contained in the second")
    kd = g.parent.kdata
    x = np.repeat(g.elements, n.order)
    y = np.tile(n.elements, g.order)
    conj = _kernels.multiply(_kernels.multiply(x, y, kd), _kernels.invert(x, kd), kd)
    return n.contains_all(conj)


def coset_labels(g, h):
    g = _as_subgroup(g)
    if not h.issubset(g):
        raise InputError("subgroup is not contained in the group")
    return _kernels.coset_labels(g.elements, h.elements, g.parent.kdata)


def cosets(g, h):
    """Left cosets x*h partitioning g, ordered by minimum element."""
    g = _as_subgroup(g)
    labels = coset_labels(g, h)
    order = np.argsort(labels, kind="stable")
    bounds = np.cumsum(np.bincount(labels))[:-1]
    return [np.asarray(b) for b in np.split(g.elements[order], bounds)]


# ----------------------------------------------------------------------------
# quotients

class QuotientGroup:
    """g/n with cosets indexed by increasing minimum element."""

    def __init__(self, g, n):
        g = _as_subgroup(g)
        if not is_normal(n, g):
            raise NormalityError("subgroup is not normal")
        self.parent = g.parent
        self.group = g
        self.normal = n
        self.labels = coset_labels(g, n)
        k = int(self.labels.max()) + 1
        reps = np.full(k, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(reps, self.labels, g.elements)
        self.reps = reps
        self.order = k
        prod = _kernels.multiply(reps[:, None], reps[None, :], self.parent.kdata)
        self.mul = self.coset_of(prod)
        self.inv = np.argmax(self.mul == 0, axis=1).astype(np.int64)

    def __repr__(self):
        return f"QuotientGroup(order={self.order}, |g|={self.group.order}, |n|={self.normal.order})"

    identity = 0

    @property
    def law(self):
        return self.mul

    @property
    def cosets(self):
        return [self.group.elements[self.labels == c] for c in range(self.order)]

    def coset_of(self, x):
        """Coset index of each element of g in x; InputError outside g."""
        x = np.asarray(x, dtype=np.int64)
        pos = np.searchsorted(self.group.elements, x)
        pos = np.minimum(pos, self.group.order - 1)
        if not np.array_equal(self.group.elements[pos], x):
            raise InputError("element outside the quotiented group")
        return self.labels[pos]

    def multiply(self, a, b):
        return self.mul[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def invert(self, a):
        return self.inv[np.asarray(a, dtype=np.int64)]

    @property
    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def element_name(self, c):
        return "[" + self.parent.element_name(self.reps[int(c)]) + "]"

    def as_table(self, label=None):
        names = [self.element_name(c) for c in range(self.order)]
        return GroupTable(self.mul, label=label or "quotient", names=names, check=False)

    def projection(self, table=None):
        """The natural map from the quotiented group onto the quotient (as a table)."""
        table = table or self.as_table()
        src = self.parent
        if not isinstance(src, GroupTable) or self.group.order != src.order:
            raise InputError("projection needs the whole of a GroupTable as numerator")
        return Homomorphism(src, table, self.labels.copy())


def quotient(g, n):
    return QuotientGroup(g, n)


# ----------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True, eq=False)
class Homomorphism:
    domain: object
    codomain: object
    map: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.map, dtype=np.int64).copy()
        m.setflags(write=False)
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return self.map[np.asarray(x, dtype=np.int64)]

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.domain is other.domain and self.codomain == other.codomain
                and np.array_equal(self.map, other.map))

    __hash__ = object.__hash__

    def image_of(self, sub):
        return SubgroupSet(self.codomain, self.map[sub.elements])

    def preimage_of(self, sub):
        return SubgroupSet(self.domain, np.flatnonzero(np.isin(self.map, sub.elements)))

    def is_surjective(self):
        return np.unique(self.map).size == self.codomain.order

    def compose(self, after):
        """after o self."""
        return Homomorphism(self.domain, after.codomain, after.map[self.map])


def homomorphism_witness(domain, codomain, mapping):
    """First pair (x, y) with f(xy) != f(x)f(y), or None."""
    m = np.asarray(mapping, dtype=np.int64)
    ids = domain.elements
    xy = domain.multiply(ids[:, None], ids[None, :])
    lhs = m[xy]
    rhs = codomain.multiply(m[:, None], m[None, :])
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return tuple(int(v) for v in bad[0])
    return None


def hom(domain, codomain, mapping):
    """Validated homomorphism from a total map (sequence, array or dict)."""
    if isinstance(mapping, dict):
        try:
            mapping = [mapping[x] for x in range(domain.order)]
        except KeyError as exc:
            raise InputError(f"map is not total: missing {exc.args[0]}") from None
    m = np.asarray(mapping, dtype=np.int64).ravel()
    if m.size != domain.order:
        raise InputError("map is not total on the domain")
    if m.min() < 0 or m.max() >= codomain.order:
        raise InputError("map values out of range for the codomain")
    if m[0] != 0:
        raise HomomorphismError("identity is not sent to the identity", witness=(0, 0))
    w = homomorphism_witness(domain, codomain, m)
    if w is not None:
        raise HomomorphismError(f"law fails on the pair {w}", witness=w)
    return Homomorphism(domain, codomain, m)


def extend_hom(domain, codomain, images):
    """Extend generator images {x: f(x)} to a homomorphism, or raise.

    The generators must generate the domain.
    """
    table = {0: 0}
    gens = [(int(x), int(y)) for x, y in images.items()]
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, fg in gens:
                y = int(domain.multiply(x, g))
                fy = int(codomain.multiply(table[x], fg))
                if y in table:
                    if table[y] != fy:
                        raise HomomorphismError(
                            f"generator images are inconsistent at element {y}", witness=(x, g))
                else:
                    table[y] = fy
                    nxt.append(y)
        frontier = nxt
    for g, fg in gens:
        if table[g] != fg:
            raise HomomorphismError(f"generator {g} forced to {table[g]}, not {fg}", witness=(g, g))
    if len(table) != domain.order:
        raise InputError("generators do not generate the domain")
    return hom(domain, codomain, table)


def kernel(f):
    return SubgroupSet(f.domain, np.flatnonzero(f.map == 0))


def image(f):
    return SubgroupSet(f.codomain, f.map)


def identity_hom(g):
    return Homomorphism(g, g, g.elements)


def trivial_hom(domain, codomain):
    return Homomorphism(domain, codomain, np.zeros(domain.order, dtype=np.int64))


# ----------------------------------------------------------------------------
# isomorphism verification

@dataclass
class IsoCheck:
    ok: bool
    reason: str = ""
    witness: tuple = field(default=())

    def __bool__(self):
        return self.ok


def verify_iso(source, target, mapping):
    """Check that mapping (array over source ids) is a group isomorphism.

    Failure is reported in the result, with a collision pair or a pair
    violating the law as the witness.
    """
    m = np.asarray(mapping, dtype=np.int64).ravel()
    if m.size != source.order:
        return IsoCheck(False, "map is not total", ())
    if source.order != target.order:
        return IsoCheck(False, "orders differ", (source.order, target.order))
    if m.min() < 0 or m.max() >= target.order:
        return IsoCheck(False, "value outside target", ())
    order = np.argsort(m, kind="stable")
    dup = np.flatnonzero(m[order][1:] == m[order][:-1])
    if dup.size:
        i = dup[0]
        return IsoCheck(False, "not injective", (int(order[i]), int(order[i + 1])))
    w = homomorphism_witness(source, target, m)
    if w is not None:
        return IsoCheck(False, "not multiplicative", w)
    return IsoCheck(True)


def induced_first_iso(f):
    """The canonical bijection A/ker(f) -> image(f), as an array over cosets."""
    q = QuotientGroup(f.domain, kernel(f))
    img = image(f)
    return q, img, np.searchsorted(img.elements, f.map[q.reps])


# ----------------------------------------------------------------------------
# enumeration

def element_order(parent, x):
    return closure(parent, [x]).order


def enumerate_subgroups(g, max_index=None, bound=None):
    """All subgroups of g, each exactly once, sorted by (order, elements).

    Built by repeatedly joining a cyclic subgroup onto subgroups already
    found, starting from the trivial group.  With max_index only subgroups
    of index at most max_index are returned.  bound overrides the
    configured limit on |g|.
    """
    bound = _config.ENUM_BOUND if bound is None else bound
    if g.order > bound:
        raise ResourceError(f"group order {g.order} exceeds enumeration bound {bound}")
    kd = g.kdata
    cyclic = {}
    for x in range(1, g.order):
        c = _kernels.closure(np.array([x]), kd)
        cyclic.setdefault(c.tobytes(), (x, c))
    cyc = sorted(cyclic.values(), key=lambda t: (t[1].size, t[1].tolist()))
    found = {np.zeros(1, dtype=np.int64).tobytes(): ((), np.zeros(1, dtype=np.int64))}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for gens, els in frontier:
            for x, c in cyc:
                if np.isin(x, els):
                    continue
                new = _kernels.closure(np.array(gens + (x,)), kd)
                key = new.tobytes()
                if key not in found:
                    found[key] = (gens + (x,), new)
                    nxt.append(found[key])
        frontier = nxt
    subs = [SubgroupSet(g, els) for _, els in found.values()]
    if max_index is not None:
        subs = [s for s in subs if g.order // s.order <= max_index]
    subs.sort(key=lambda s: (s.order, s.elements.tolist()))
    return subs


def normal_subgroups(g):
    return [s for s in enumerate_subgroups(g) if is_normal(s, g)]
