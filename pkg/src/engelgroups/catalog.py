"""Named test groups.

Names accepted by :func:`parse_catalog_name`:

* short forms ``c6``, ``d6`` (dihedral of order 12), ``s4``, ``a5``, ``q8``,
  ``ut3_2`` (``UT_3(F_2)``), ``sl2_3``, ``gl2_5``;
* long forms ``cyclic,6``, ``dihedral,6``, ``symmetric,4``, ``alternating,5``,
  ``quaternion8``, ``ut,3,2``, ``sl2,3``, ``gl2,5``;
* direct products joined by ``x``: ``a4xa5``, ``s3xc2xc2``.
"""

from __future__ import annotations

import re
from functools import reduce

from .group import (DEFAULT_MAX_ORDER, FiniteGroup, GroupError, _is_prime,
                    direct_product, from_matrices, from_permutations)


class CatalogError(GroupError, ValueError):
    pass


def _cycle(points: list[int], degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    for i, p in enumerate(points):
        img[p] = points[(i + 1) % len(points)]
    return tuple(img)


def cyclic(n: int, **kw) -> FiniteGroup:
    if n < 1:
        raise CatalogError("cyclic group needs n >= 1")
    gens = [] if n == 1 else [_cycle(list(range(n)), n)]
    return from_permutations(gens, n, name=f"c{n}", **kw)


def dihedral(n: int, **kw) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    if n < 1:
        raise CatalogError("dihedral group needs n >= 1")
    if n == 1:
        gens, deg = [(1, 0)], 2
    elif n == 2:
        gens, deg = [(1, 0, 2, 3), (0, 1, 3, 2)], 4
    else:
        gens = [_cycle(list(range(n)), n), tuple((n - i) % n for i in range(n))]
        deg = n
    return from_permutations(gens, deg, name=f"d{n}", **kw)


def symmetric(n: int, **kw) -> FiniteGroup:
    if n < 1:
        raise CatalogError("symmetric group needs n >= 1")
    if n == 1:
        gens = []
    elif n == 2:
        gens = [(1, 0)]
    else:
        gens = [_cycle(list(range(n)), n), _cycle([0, 1], n)]
    return from_permutations(gens, n, name=f"s{n}", **kw)


def alternating(n: int, **kw) -> FiniteGroup:
    if n < 1:
        raise CatalogError("alternating group needs n >= 1")
    gens = [_cycle([0, 1, i], n) for i in range(2, n)]
    return from_permutations(gens, n, name=f"a{n}", **kw)


def quaternion8(**kw) -> FiniteGroup:
    """``Q_8`` inside ``SL_2(F_3)``."""
    i = [[0, 2], [1, 0]]
    j = [[1, 1], [1, 2]]
    return from_matrices([i, j], 3, 2, name="q8", **kw)


def ut(n: int, p: int, **kw) -> FiniteGroup:
    """Upper unitriangular ``n x n`` matrices over ``F_p``."""
    if n < 1 or not _is_prime(p):
        raise CatalogError("ut needs n >= 1 and prime p")
    gens = []
    for i in range(n - 1):
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        m[i][i + 1] = 1
        gens.append(m)
    return from_matrices(gens, p, n, name=f"ut{n}_{p}", **kw)


def sl2(p: int, **kw) -> FiniteGroup:
    if not _is_prime(p):
        raise CatalogError("sl2 needs a prime p")
    return from_matrices([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], p, 2, name=f"sl2_{p}", **kw)


def _primitive_root(p: int) -> int:
    for w in range(1, p):
        if len({pow(w, k, p) for k in range(1, p)}) == p - 1:
            return w
    raise CatalogError(f"no primitive root mod {p}")


def gl2(p: int, **kw) -> FiniteGroup:
    if not _is_prime(p):
        raise CatalogError("gl2 needs a prime p")
    w = _primitive_root(p)
    gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[w, 0], [0, 1]]]
    return from_matrices(gens, p, 2, name=f"gl2_{p}", **kw)


_SHORT = [
    (re.compile(r"c(\d+)$"), lambda m: ("cyclic", int(m[1]))),
    (re.compile(r"d(\d+)$"), lambda m: ("dihedral", int(m[1]))),
    (re.compile(r"s(\d+)$"), lambda m: ("symmetric", int(m[1]))),
    (re.compile(r"a(\d+)$"), lambda m: ("alternating", int(m[1]))),
    (re.compile(r"q8$"), lambda m: ("quaternion8",)),
    (re.compile(r"ut(\d+)_(\d+)$"), lambda m: ("ut", int(m[1]), int(m[2]))),
    (re.compile(r"sl2_(\d+)$"), lambda m: ("sl2", int(m[1]))),
    (re.compile(r"gl2_(\d+)$"), lambda m: ("gl2", int(m[1]))),
]

_BUILDERS = {
    "cyclic": (cyclic, 1),
    "dihedral": (dihedral, 1),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "quaternion8": (quaternion8, 0),
    "ut": (ut, 2),
    "sl2": (sl2, 1),
    "gl2": (gl2, 1),
}

# symmetric/alternating beyond this degree overflow any sensible order cap
_MAX_DEGREE = 8


def catalog(name: str, *params: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Construct a named group, e.g. ``catalog("ut", 4, 2)``."""
    if name == "direct_product":
        if len(params) < 2:
            raise CatalogError("direct_product needs at least two factor names")
        factors = [parse_catalog_name(str(f), max_order=max_order) for f in params]
        return reduce(lambda a, b: direct_product(a, b, max_order=max_order), factors)
    if name not in _BUILDERS:
        raise CatalogError(f"unknown catalog group {name!r}")
    fn, arity = _BUILDERS[name]
    if len(params) != arity:
        raise CatalogError(f"{name} takes {arity} parameter(s), got {len(params)}")
    if name in ("symmetric", "alternating") and params[0] > _MAX_DEGREE:
        raise CatalogError(f"{name} degree {params[0]} out of supported range")
    return fn(*params, max_order=max_order)


def parse_catalog_name(text: str, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    text = text.strip().lower()
    if not text:
        raise CatalogError("empty catalog name")
    if "," in text:
        head, *rest = [t.strip() for t in text.split(",")]
        if head == "direct_product":
            return catalog(head, *rest, max_order=max_order)
        try:
            nums = [int(r) for r in rest]
        except ValueError:
            raise CatalogError(f"bad catalog parameters in {text!r}") from None
        return catalog(head, *nums, max_order=max_order)
    parts = text.split("x")
    if len(parts) > 1:
        factors = [parse_catalog_name(p, max_order=max_order) for p in parts]
        g = reduce(lambda a, b: direct_product(a, b, max_order=max_order), factors)
        g.name = text
        return g
    if text in _BUILDERS and _BUILDERS[text][1] == 0:
        return catalog(text, max_order=max_order)
    for pat, conv in _SHORT:
        m = pat.match(text)
        if m:
            head, *nums = conv(m)
            return catalog(head, *nums, max_order=max_order)
    raise CatalogError(f"unknown catalog group {text!r}")


PRODUCTS = [
    "s3xc2", "s3xc3", "s3xs3", "a4xc2", "q8xc2", "d4xc3",
    "s4xc2", "a5xc2", "sl2_3xc2", "a4xa5", "a5xa5",
]


def standard_names() -> list[str]:
    """The built-in verification catalog, in a fixed order."""
    names = [f"c{n}" for n in range(1, 31)]
    names += [f"d{n}" for n in range(1, 21)]
    names += ["q8", "s3", "s4", "s5", "s6", "a4", "a5", "sl2_3"]
    names += [f"ut{n}_{p}" for n in (2, 3, 4) for p in (2, 3)]
    names += PRODUCTS
    return names


def standard_catalog(max_order: int = DEFAULT_MAX_ORDER) -> list[tuple[str, FiniteGroup]]:
    out = []
    for name in standard_names():
        g = parse_catalog_name(name, max_order=max_order)
        g.name = name
        out.append((name, g))
    return out
