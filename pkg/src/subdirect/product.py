"""Subgroups of direct products: projections, the E and L families, the
touch relation and the core.

Index sets are 0-based here (factor 0 is the first factor); reports render
them 1-based.  E(lam) is the set of elements of U that are the identity at
every position in lam; L(lam) is the set supported inside lam, which equals
E of the complement for proper lam and is the core for the full index set.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _config, _kernels
from .errors import InputError, ResourceError, TheoremViolation
from .groups import SubgroupSet, closure, is_normal, setwise_product

MATERIALIZE_LIMIT = 4096


class ProductGroup:
    """Direct product of GroupTables; elements are mixed-radix tuple codes."""

    identity = 0

    def __init__(self, factors, max_order=None):
        factors = tuple(factors)
        if not factors:
            raise InputError("a direct product needs at least one factor")
        bound = _config.MAX_PRODUCT_ORDER if max_order is None else max_order
        order = 1
        for f in factors:
            order *= f.order
        if order > bound:
            raise ResourceError(f"product order {order} exceeds bound {bound}")
        self.factors = factors
        self.n = len(factors)
        self.order = order
        self.kdata = _kernels.KernelData([f.mul for f in factors], [f.inv for f in factors])
        self._sub = {}

    def __eq__(self, other):
        if not isinstance(other, ProductGroup):
            return NotImplemented
        return len(self.factors) == len(other.factors) and all(
            a is b for a, b in zip(self.factors, other.factors))

    def __hash__(self):
        return hash(tuple(id(f) for f in self.factors))

    def __repr__(self):
        return f"ProductGroup({self.label}, order={self.order})"

    @property
    def label(self):
        return " x ".join(f.label or "?" for f in self.factors)

    @property
    def elements(self):
        if self.order > MATERIALIZE_LIMIT:
            raise ResourceError(f"refusing to list all {self.order} elements of {self.label}")
        return np.arange(self.order, dtype=np.int64)

    def multiply(self, a, b):
        return _kernels.multiply(a, b, self.kdata)

    def invert(self, a):
        return _kernels.invert(a, self.kdata)

    def decode(self, codes):
        return _kernels.decode(codes, self.kdata.orders, self.kdata.strides)

    def encode(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        if coords.shape[-1] != self.n:
            raise InputError(f"tuples must have {self.n} coordinates")
        if (coords < 0).any() or (coords >= self.kdata.orders).any():
            raise InputError("coordinate out of range")
        return _kernels.encode(coords, self.kdata.strides)

    def element_name(self, code):
        row = self.decode(int(code))
        return "[" + ",".join(f.names[int(c)] for f, c in zip(self.factors, row)) + "]"

    def parse_element(self, text):
        parts = split_top_level(strip_brackets(text, "[", "]"))
        if len(parts) != self.n:
            raise InputError(f"element {text!r} needs {self.n} coordinates")
        return int(self.encode([f.parse_element(p) for f, p in zip(self.factors, parts)]))

    def subproduct(self, lam):
        lam = tuple(lam)
        if lam not in self._sub:
            self._sub[lam] = ProductGroup([self.factors[i] for i in lam], max_order=self.order)
        return self._sub[lam]

    def project_codes(self, codes, lam):
        coords = self.decode(codes)
        return self.subproduct(lam).encode(coords[..., list(lam)])

    def embed_codes(self, codes, lam):
        """Codes of the subproduct on lam, padded with identities elsewhere."""
        sub = self.subproduct(lam)
        small = sub.decode(codes)
        coords = np.zeros(small.shape[:-1] + (self.n,), dtype=np.int64)
        coords[..., list(lam)] = small
        return self.encode(coords)


def strip_brackets(text, left, right):
    text = text.strip()
    if not (text.startswith(left) and text.endswith(right)):
        raise InputError(f"expected {left}...{right}, got {text!r}")
    return text[1:-1]


def split_top_level(text, sep=","):
    """Split on sep outside (), [] and <>."""
    depth = 0
    parts, cur = [], []
    for ch in text:
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def direct_product(factors, max_order=None):
    return ProductGroup(factors, max_order=max_order)


# ----------------------------------------------------------------------------
# index sets

def index_set(lam, n, allow_empty=False):
    lam = tuple(sorted({int(i) for i in lam}))
    if not lam and not allow_empty:
        raise InputError("index set must be nonempty")
    if lam and (lam[0] < 0 or lam[-1] >= n):
        raise InputError(f"index set {lam} outside 0..{n - 1}")
    return lam


def complement(lam, n):
    s = set(lam)
    return tuple(i for i in range(n) if i not in s)


def proper_subsets(n):
    """Nonempty proper subsets of range(n), by size then lexicographically."""
    for k in range(1, n):
        yield from itertools.combinations(range(n), k)


def bipartitions(lam):
    """Unordered splits lam = M | N with M, N nonempty, M holding lam[0].

    Ordered lexicographically by M's members after the first.
    """
    lam = tuple(lam)
    if len(lam) < 2:
        return
    head, rest = lam[0], lam[1:]
    for k in range(0, len(rest)):
        for extra in itertools.combinations(rest, k):
            m = (head,) + extra
            nset = tuple(i for i in lam if i not in m)
            yield m, nset


# ----------------------------------------------------------------------------
# product subgroups

class ProductSubgroup(SubgroupSet):
    """A subgroup U of a ProductGroup, with lazily cached E/L/core data."""

    def __init__(self, parent, elements, check=False):
        if not isinstance(parent, ProductGroup):
            raise InputError("ambient of a ProductSubgroup must be a ProductGroup")
        super().__init__(parent, elements, check=check)
        self._cache = {}

    @property
    def ambient(self):
        return self.parent

    @property
    def n(self):
        return self.parent.n

    @cached_property
    def coords(self):
        c = self.parent.decode(self.elements)
        c.setflags(write=False)
        return c

    def memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def sub(self, elements):
        return SubgroupSet(self.parent, elements)

    def __repr__(self):
        return f"ProductSubgroup(order={self.order} in {self.parent.label})"


def as_product_subgroup(s):
    if isinstance(s, ProductSubgroup):
        return s
    return ProductSubgroup(s.parent, s.elements)


def generate(ambient, generators):
    """Closure of tuples (coordinate sequences) or codes in a ProductGroup."""
    gens = []
    for g in generators:
        if np.ndim(g) == 0:
            gens.append(int(g))
        else:
            gens.append(int(ambient.encode(g)))
    return as_product_subgroup(closure(ambient, gens))


def full(ambient):
    return ProductSubgroup(ambient, ambient.elements)


def from_coords(ambient, rows, check=True):
    return ProductSubgroup(ambient, ambient.encode(np.asarray(rows, dtype=np.int64)), check=check)


def project(u, lam):
    lam = index_set(lam, u.n)
    return u.memo(("proj", lam), lambda: ProductSubgroup(
        u.parent.subproduct(lam), u.parent.project_codes(u.elements, lam)))


def factor_projection(u, i):
    """pi_i(U) as a subgroup of the i-th factor GroupTable."""
    return SubgroupSet(u.parent.factors[i], u.coords[:, i])


def E_subgroup(u, lam):
    lam = index_set(lam, u.n, allow_empty=True)

    def compute():
        mask = (u.coords[:, list(lam)] == 0).all(axis=1) if lam else np.ones(u.order, bool)
        return u.sub(u.elements[mask])

    return u.memo(("E", lam), compute)


def L_subgroup(u, lam):
    lam = index_set(lam, u.n)
    if len(lam) == u.n:
        return core(u)
    return E_subgroup(u, complement(lam, u.n))


def L_by_intersection(u, lam):
    """(prod_{i in lam} A_i) intersected with the core, computed directly."""
    lam = index_set(lam, u.n)
    c = core(u)
    rest = complement(lam, u.n)
    cc = u.parent.decode(c.elements)
    mask = (cc[:, list(rest)] == 0).all(axis=1) if rest else np.ones(c.order, bool)
    return u.sub(c.elements[mask])


@dataclass
class TouchPartition:
    labels: np.ndarray        # block index per element of U, in U's order
    blocks: list              # sorted code arrays, ordered by minimum

    def __len__(self):
        return len(self.blocks)


def touch_classes(u):
    def compute():
        labels = _kernels.touch_labels(u.coords)
        order = np.argsort(labels, kind="stable")
        bounds = np.cumsum(np.bincount(labels))[:-1]
        blocks = [np.asarray(b) for b in np.split(u.elements[order], bounds)]
        return TouchPartition(labels, blocks)

    return u.memo("touch", compute)


def core(u):
    """Subgroup generated by E_{i}, i = 1..n, checked against the touch class
    of the identity and for normality."""
    def compute():
        gens = np.concatenate([E_subgroup(u, (i,)).elements for i in range(u.n)])
        c = closure(u.parent, gens)
        ident_class = touch_classes(u).blocks[0]
        if not np.array_equal(c.elements, ident_class):
            raise TheoremViolation("core differs from the touch class of the identity")
        if not is_normal(c, u):
            raise TheoremViolation("core is not normal in U")
        return c

    return u.memo("core", compute)


def core_as_ordered_product(u, tau):
    """The setwise product E_{tau[0]} E_{tau[1]} ... (no closure taken)."""
    tau = [int(t) for t in tau]
    if sorted(tau) != list(range(u.n)):
        raise InputError(f"{tau} is not a permutation of 0..{u.n - 1}")
    return u.sub(setwise_product(*[E_subgroup(u, (i,)) for i in tau]))


def I_subgroup(u, lam):
    lam = index_set(lam, u.n, allow_empty=True)

    def compute():
        if not lam:
            return u.sub([0])
        return u.sub(setwise_product(*[E_subgroup(u, (i,)) for i in lam]))

    return u.memo(("I", lam), compute)


def variation_space(u, a, fixed):
    """Elements of U agreeing with a on the fixed positions; equals a*E_fixed."""
    fixed = index_set(fixed, u.n)
    a = int(a)
    if a not in u:
        raise InputError("element is not in U")
    arow = u.parent.decode(a)
    cols = list(fixed)
    mask = (u.coords[:, cols] == arow[cols]).all(axis=1)
    space = u.elements[mask]
    coset = np.sort(u.parent.multiply(a, E_subgroup(u, fixed).elements))
    if not np.array_equal(space, coset):
        raise TheoremViolation("variation space is not the coset a*E")
    return space


def projection_flags(u):
    """Indices where pi_i(U) is trivial and where U meets A_i trivially."""
    trivial_proj = [i for i in range(u.n) if (u.coords[:, i] == 0).all()]
    trivial_meet = [i for i in range(u.n)
                    if E_subgroup(u, complement((i,), u.n)).order == 1]
    proper_proj = [i for i in range(u.n)
                   if np.unique(u.coords[:, i]).size != u.parent.factors[i].order]
    return {
        "subdirect": not proper_proj,
        "proper_projections": proper_proj,
        "trivial_projections": trivial_proj,
        "trivial_factor_intersections": trivial_meet,
    }


def is_subdirect(u):
    return projection_flags(u)["subdirect"]
