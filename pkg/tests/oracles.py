"""Independent brute-force oracles.

Nothing here calls the package kernels: products are formed tuple by tuple
from the factor tables with plain Python, subgroups are found by testing
every subset, and the touch relation is a graph search.
"""
import itertools
from collections import deque


def table(g):
    return [list(map(int, row)) for row in g.mul]


def tuples_mul(tables, x, y):
    return tuple(t[a][b] for t, a, b in zip(tables, x, y))


def tuples_of(u):
    return [tuple(int(v) for v in row) for row in u.coords]


def naive_closure(mul, gens):
    """Closure in a single table by repeated multiplication."""
    out = {0} | set(gens)
    grew = True
    while grew:
        grew = False
        for a, b in itertools.product(list(out), repeat=2):
            c = mul[a][b]
            if c not in out:
                out.add(c)
                grew = True
    return frozenset(out)


def subset_subgroups(mul):
    """Every subgroup of a table by testing each subset containing 0."""
    n = len(mul)
    found = []
    rest = list(range(1, n))
    for mask in range(1 << len(rest)):
        s = [0] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
        ss = set(s)
        if all(mul[a][b] in ss for a in s for b in s):
            found.append(frozenset(s))
    return found


def naive_E(rows, lam):
    return sorted(r for r in rows if all(r[i] == 0 for i in lam))


def naive_L(rows, lam, core_rows):
    outside = [i for i in range(len(rows[0])) if i not in lam]
    return sorted(r for r in core_rows if all(r[i] == 0 for i in outside))


def naive_touch_blocks(rows):
    """Connected components of 'agree at some coordinate'."""
    rows = list(rows)
    seen, blocks = set(), []
    for start in rows:
        if start in seen:
            continue
        comp, todo = [], deque([start])
        seen.add(start)
        while todo:
            x = todo.popleft()
            comp.append(x)
            for y in rows:
                if y not in seen and any(a == b for a, b in zip(x, y)):
                    seen.add(y)
                    todo.append(y)
        blocks.append(frozenset(comp))
    return set(blocks)


def naive_core(tables, rows):
    n = len(tables)
    gens = {r for i in range(n) for r in rows if r[i] == 0}
    ident = tuple(0 for _ in tables)
    out = {ident} | gens
    grew = True
    while grew:
        grew = False
        for a, b in itertools.product(list(out), repeat=2):
            c = tuples_mul(tables, a, b)
            if c not in out:
                out.add(c)
                grew = True
    return sorted(out)


def left_cosets(tables, rows, sub):
    sub = set(sub)
    blocks = set()
    for x in rows:
        blocks.add(frozenset(tuples_mul(tables, x, h) for h in sub))
    return blocks


def is_normal_in(mul, n, g):
    inv = {x: next(y for y in range(len(mul)) if mul[x][y] == 0) for x in g}
    return all(mul[mul[x][k]][inv[x]] in n for x in g for k in n)


def goursat_structures(mul_a, mul_b, u_pairs):
    """All (I, K, J, L, sigma) whose coset-pair union is exactly u_pairs.

    I, J range over all subgroups, K and L over normal subgroups of them
    with equal index, sigma over every bijection of cosets that respects
    the coset products.
    """
    target = set(u_pairs)
    hits = []
    subs_a, subs_b = subset_subgroups(mul_a), subset_subgroups(mul_b)
    for I, J in itertools.product(subs_a, subs_b):
        for K in subs_a:
            if not K <= I or not is_normal_in(mul_a, K, I):
                continue
            ca = sorted({frozenset(mul_a[x][k] for k in K) for x in I}, key=min)
            for L in subs_b:
                if not L <= J or not is_normal_in(mul_b, L, J):
                    continue
                cb = sorted({frozenset(mul_b[y][l] for l in L) for y in J}, key=min)
                if len(ca) != len(cb):
                    continue
                idx_a = {x: i for i, c in enumerate(ca) for x in c}
                idx_b = {y: i for i, c in enumerate(cb) for y in c}
                for perm in itertools.permutations(range(len(cb))):
                    ok = all(perm[idx_a[mul_a[min(ca[i])][min(ca[j])]]]
                             == idx_b[mul_b[min(cb[perm[i]])][min(cb[perm[j]])]]
                             for i in range(len(ca)) for j in range(len(ca)))
                    if not ok:
                        continue
                    pairs = {(x, y) for i, c in enumerate(ca) for x in c for y in cb[perm[i]]}
                    if pairs == target:
                        hits.append((I, K, J, L, perm))
    return hits
