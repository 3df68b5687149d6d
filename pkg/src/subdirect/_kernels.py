"""Hot loops over coded group elements.

Every ambient group (a single multiplication table or a direct product of
them) is handed to the kernels as padded per-factor tables plus a
mixed-radix encoding: the element with coordinates (x_1, ..., x_n) has code
sum(x_i * stride_i), the last factor varying fastest, so numeric order on
codes is lexicographic order on tuples and the identity is code 0.

Each kernel has a numba version and a numpy version with identical output.
The numba path is the default; SUBDIRECT_DISABLE_NUMBA=1 or set_backend()
selects numpy.
"""
from contextlib import contextmanager

import numpy as np

from . import _config

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

_state = {"numba": _config.USE_NUMBA and njit is not None}


def backend():
    return "numba" if _state["numba"] else "numpy"


def set_backend(name):
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and njit is None:  # pragma: no cover
        raise RuntimeError("numba is not importable")
    _state["numba"] = name == "numba"


@contextmanager
def using(name):
    old = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def _as_codes(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64).ravel())


# ----------------------------------------------------------------------------
# encoding

def decode(codes, orders, strides):
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[..., None] // strides) % orders


def encode(coords, strides):
    return np.asarray(coords, dtype=np.int64) @ strides


# ----------------------------------------------------------------------------
# numpy reference kernels

def _mul_np(a, b, tables, orders, strides):
    xa = decode(a, orders, strides)
    xb = decode(b, orders, strides)
    out = np.zeros(a.shape, dtype=np.int64)
    for i in range(len(orders)):
        out += tables[i][xa[:, i], xb[:, i]].astype(np.int64) * strides[i]
    return out


def _inv_np(a, invs, orders, strides):
    xa = decode(a, orders, strides)
    out = np.zeros(a.shape, dtype=np.int64)
    for i in range(len(orders)):
        out += invs[i][xa[:, i]].astype(np.int64) * strides[i]
    return out


def _closure_np(gens, tables, orders, strides):
    found = np.zeros(1, dtype=np.int64)
    frontier = found
    if gens.size == 0:
        return found
    while frontier.size:
        a = np.repeat(frontier, gens.size)
        b = np.tile(gens, frontier.size)
        new = np.unique(_mul_np(a, b, tables, orders, strides))
        new = new[~np.isin(new, found, assume_unique=True)]
        found = np.union1d(found, new)
        frontier = new
    return found


def _setwise_np(xs, ys, tables, orders, strides):
    a = np.repeat(xs, ys.size)
    b = np.tile(ys, xs.size)
    return np.unique(_mul_np(a, b, tables, orders, strides))


def _coset_labels_np(gs, hs, tables, orders, strides):
    a = np.repeat(gs, hs.size)
    b = np.tile(hs, gs.size)
    prods = _mul_np(a, b, tables, orders, strides).reshape(gs.size, hs.size)
    _, labels = np.unique(prods.min(axis=1), return_inverse=True)
    return labels.astype(np.int64).ravel()


def _touch_labels_np(coords):
    k, n = coords.shape
    lab = np.arange(k, dtype=np.int64)
    if k == 0:
        return lab
    width = int(coords.max()) + 1
    while True:
        prev = lab
        for i in range(n):
            col = coords[:, i]
            low = np.full(width, k, dtype=np.int64)
            np.minimum.at(low, col, lab)
            lab = np.minimum(lab, low[col])
        # pointer jumping: every label is itself an index into lab
        lab = lab[lab]
        if np.array_equal(lab, prev):
            break
    _, labels = np.unique(lab, return_inverse=True)
    return labels.astype(np.int64).ravel()


# ----------------------------------------------------------------------------
# numba kernels

if njit is not None:

    @njit(cache=True)
    def _mul1(x, y, tables, orders, strides):
        r = 0
        for i in range(orders.shape[0]):
            xi = (x // strides[i]) % orders[i]
            yi = (y // strides[i]) % orders[i]
            r += tables[i, xi, yi] * strides[i]
        return r

    @njit(cache=True)
    def _mul_nb(a, b, tables, orders, strides):
        out = np.empty(a.shape[0], dtype=np.int64)
        for k in range(a.shape[0]):
            out[k] = _mul1(a[k], b[k], tables, orders, strides)
        return out

    @njit(cache=True)
    def _inv_nb(a, invs, orders, strides):
        out = np.empty(a.shape[0], dtype=np.int64)
        for k in range(a.shape[0]):
            r = 0
            for i in range(orders.shape[0]):
                r += invs[i, (a[k] // strides[i]) % orders[i]] * strides[i]
            out[k] = r
        return out

    @njit(cache=True)
    def _closure_nb(gens, tables, orders, strides):
        seen = {np.int64(0)}
        queue = [np.int64(0)]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for j in range(gens.shape[0]):
                y = _mul1(x, gens[j], tables, orders, strides)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out = np.empty(len(queue), dtype=np.int64)
        for k in range(len(queue)):
            out[k] = queue[k]
        out.sort()
        return out

    @njit(cache=True)
    def _setwise_nb(xs, ys, tables, orders, strides):
        seen = {np.int64(0)}
        seen.clear()
        for i in range(xs.shape[0]):
            for j in range(ys.shape[0]):
                seen.add(_mul1(xs[i], ys[j], tables, orders, strides))
        out = np.empty(len(seen), dtype=np.int64)
        k = 0
        for v in seen:
            out[k] = v
            k += 1
        out.sort()
        return out

    @njit(cache=True)
    def _coset_labels_nb(gs, hs, tables, orders, strides):
        k = gs.shape[0]
        labels = np.full(k, -1, dtype=np.int64)
        nxt = 0
        for i in range(k):
            if labels[i] >= 0:
                continue
            for j in range(hs.shape[0]):
                y = _mul1(gs[i], hs[j], tables, orders, strides)
                pos = np.searchsorted(gs, y)
                labels[pos] = nxt
            nxt += 1
        return labels

    @njit(cache=True)
    def _find(parent, x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    @njit(cache=True)
    def _touch_labels_nb(coords):
        k, n = coords.shape
        parent = np.arange(k)
        if k == 0:
            return parent.astype(np.int64)
        width = coords.max() + 1
        for i in range(n):
            first = np.full(width, -1, dtype=np.int64)
            for r in range(k):
                v = coords[r, i]
                if first[v] < 0:
                    first[v] = r
                else:
                    a = _find(parent, first[v])
                    b = _find(parent, r)
                    # smaller index wins so roots are block minima
                    if a < b:
                        parent[b] = a
                    elif b < a:
                        parent[a] = b
        labels = np.full(k, -1, dtype=np.int64)
        root_label = np.full(k, -1, dtype=np.int64)
        nxt = 0
        for r in range(k):
            root = _find(parent, r)
            if root_label[root] < 0:
                root_label[root] = nxt
                nxt += 1
            labels[r] = root_label[root]
        return labels


# ----------------------------------------------------------------------------
# dispatch

def multiply(a, b, kdata):
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    shape = np.broadcast_shapes(a.shape, b.shape)
    a, b = np.broadcast_to(a, shape), np.broadcast_to(b, shape)
    a, b = _as_codes(a), _as_codes(b)
    fn = _mul_nb if _state["numba"] else _mul_np
    return fn(a, b, *kdata.mul_args).reshape(shape)


def invert(a, kdata):
    a = np.asarray(a, dtype=np.int64)
    shape = a.shape
    fn = _inv_nb if _state["numba"] else _inv_np
    return fn(_as_codes(a), kdata.invs, kdata.orders, kdata.strides).reshape(shape)


def closure(gens, kdata):
    gens = np.unique(_as_codes(gens))
    gens = gens[gens != 0]
    fn = _closure_nb if _state["numba"] else _closure_np
    return fn(gens, *kdata.mul_args)


def setwise_product(xs, ys, kdata):
    xs, ys = _as_codes(xs), _as_codes(ys)
    if xs.size == 0 or ys.size == 0:
        return np.zeros(0, dtype=np.int64)
    fn = _setwise_nb if _state["numba"] else _setwise_np
    return fn(xs, ys, *kdata.mul_args)


def coset_labels(gs, hs, kdata):
    """Label each element of the sorted array gs by its left coset g*hs.

    Labels are numbered by increasing coset minimum.
    """
    gs, hs = _as_codes(gs), _as_codes(hs)
    fn = _coset_labels_nb if _state["numba"] else _coset_labels_np
    return fn(gs, hs, *kdata.mul_args)


def touch_labels(coords):
    """Connected components of rows that agree in some column.

    Rows must be given in increasing element order; components are numbered
    by their smallest row.
    """
    coords = np.ascontiguousarray(np.asarray(coords, dtype=np.int64))
    fn = _touch_labels_nb if _state["numba"] else _touch_labels_np
    return fn(coords)


class KernelData:
    """Packed multiplication data for one ambient group."""

    __slots__ = ("tables", "invs", "orders", "strides")

    def __init__(self, tables, invs):
        orders = np.array([t.shape[0] for t in tables], dtype=np.int64)
        width = int(orders.max())
        packed = np.zeros((len(tables), width, width), dtype=np.int64)
        pinv = np.zeros((len(tables), width), dtype=np.int64)
        for i, (t, v) in enumerate(zip(tables, invs)):
            packed[i, : t.shape[0], : t.shape[0]] = t
            pinv[i, : v.shape[0]] = v
        strides = np.ones(len(tables), dtype=np.int64)
        for i in range(len(tables) - 2, -1, -1):
            strides[i] = strides[i + 1] * orders[i + 1]
        self.tables = packed
        self.invs = pinv
        self.orders = orders
        self.strides = strides

    @property
    def mul_args(self):
        return self.tables, self.orders, self.strides
