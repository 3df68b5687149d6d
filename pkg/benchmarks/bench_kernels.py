"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are checked for equal output before timing.  The first numba
call per kernel includes compilation and is reported separately.
"""
import argparse
import time

import numpy as np

from subdirect import _kernels
from subdirect.fixtures import cyclic, symmetric
from subdirect.groups import enumerate_subgroups
from subdirect.product import ProductGroup, ProductSubgroup, as_product_subgroup, core


def cases():
    s4 = symmetric(4)
    amb = ProductGroup([s4, s4])
    rng = np.random.default_rng(7)
    a = rng.integers(0, amb.order, 200_000)
    b = rng.integers(0, amb.order, 200_000)
    gens = amb.encode([[1, 1], [5, 9]])
    elems = _kernels.closure(gens, amb.kdata)
    whole = np.arange(amb.order)
    small = _kernels.closure(amb.encode([[1, 0], [0, 1]]), amb.kdata)
    z = ProductGroup([cyclic(4), cyclic(2), cyclic(2)])
    subs = [as_product_subgroup(s) for s in enumerate_subgroups(z)]
    diag = [as_product_subgroup(s) for s in enumerate_subgroups(ProductGroup([symmetric(3)] * 2))]
    return {
        "multiply": lambda: _kernels.multiply(a, b, amb.kdata),
        "closure": lambda: _kernels.closure(gens, amb.kdata),
        "setwise": lambda: _kernels.setwise_product(elems, small, amb.kdata),
        "coset_labels": lambda: _kernels.coset_labels(whole, elems, amb.kdata),
        "touch_labels": lambda: [_kernels.touch_labels(u.coords) for u in subs + diag],
        "core (end to end)": lambda: [core(ProductSubgroup(u.parent, u.elements)) for u in subs],
    }


def _same(x, y):
    if isinstance(x, list):
        return all(_same(p, q) for p, q in zip(x, y))
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels.njit is None:
        print("numba is not importable; only the numpy backend can run")
        return 1
    work = cases()
    print(f"{'kernel':<20}{'numpy ms':>12}{'numba ms':>12}{'first numba ms':>16}{'speedup':>10}")
    for name, fn in work.items():
        with _kernels.using("numpy"):
            ref = fn()
            t_np = timed(fn, args.repeat)
        with _kernels.using("numba"):
            t0 = time.perf_counter()
            out = fn()
            first = time.perf_counter() - t0
            t_nb = timed(fn, args.repeat)
        if not _same(ref, out):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<20}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{first * 1e3:>16.1f}"
              f"{t_np / t_nb:>10.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
