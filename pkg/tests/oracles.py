"""Small brute-force references written without the library's tables."""

from __future__ import annotations

from itertools import product


def compose(a, b):
    """Left-to-right product: apply ``a`` then ``b``."""
    return tuple(b[a[i]] for i in range(len(a)))


def invert(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def perm_comm(a, b):
    return compose(compose(compose(invert(a), invert(b)), a), b)


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def unipotent_count(n, p):
    """Upper unitriangular n x n matrices over F_p, counted by enumeration."""
    slots = n * (n - 1) // 2
    return sum(1 for _ in product(range(p), repeat=slots))


def table_comm(t, inv, a, b):
    return t[t[t[inv[a]][inv[b]]][a]][b]
