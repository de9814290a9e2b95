"""Fully enumerated finite groups with dense index tables.

Every group is stored as a canonical list of elements ``0 .. order-1`` with the
identity at index 0 and a dense Cayley table ``table[a, b] = a*b``.  Three
backends produce the element list:

* permutations of ``{0, .., d-1}``, multiplied left to right:
  ``(a*b)(i) = b(a(i))``, the usual convention of computer algebra systems;
* invertible ``n x n`` matrices over the prime field ``F_p``;
* a user supplied Cayley table.

Commutators follow ``[a, b] = a^-1 b^-1 a b`` throughout the package.  Nil and
Engel sets do not depend on this choice, intermediate commutator values do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 20000
# Dense n x n tables above this order would not fit comfortably in memory.
DENSE_LIMIT = 8192


class GroupError(Exception):
    pass


class OrderCapExceeded(GroupError):
    pass


class InvalidGenerator(GroupError, ValueError):
    pass


class MalformedTable(GroupError, ValueError):
    pass


class NotNormalError(GroupError, ValueError):
    pass


class CrossGroupError(GroupError, TypeError):
    pass


def _index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def format_cycles(perm: Sequence[int]) -> str:
    """Cycle notation with 1-based points, ``()`` for the identity."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            seen.add(j)
            cycle.append(j)
            j = perm[j]
        out.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(out) or "()"


def cycles_to_perm(cycles: Iterable[Sequence[int]], degree: int) -> tuple[int, ...]:
    """Build a 0-based image tuple from 1-based cycles."""
    img = list(range(degree))
    seen = set()
    for cycle in cycles:
        for p in cycle:
            if p < 1 or p > degree:
                raise InvalidGenerator(f"point {p} outside 1..{degree}")
            if p in seen:
                raise InvalidGenerator(f"point {p} repeated in cycle notation")
            seen.add(p)
        for i, p in enumerate(cycle):
            img[p - 1] = cycle[(i + 1) % len(cycle)] - 1
    return tuple(img)


def _det_mod_p(m: np.ndarray, p: int) -> int:
    a = [[int(v) % p for v in row] for row in m]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


class FiniteGroup:
    """A finite group enumerated into a dense, deterministic index space.

    Use :func:`from_permutations`, :func:`from_matrices` or :func:`from_table`
    rather than the constructor.
    """

    def __init__(self, table: np.ndarray, *, backend: str, labels=None,
                 generators: Sequence[int] | None = None, name: str = "",
                 params: dict | None = None):
        self.table = table
        self.order = int(table.shape[0])
        self.backend = backend
        self.name = name
        self.params = params or {}
        self._labels = labels
        self._generators = None if generators is None else tuple(int(g) for g in generators)

    def __repr__(self):
        return f"FiniteGroup({self.name or self.backend!r}, order={self.order})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return (GroupElement(self, i) for i in range(self.order))

    def __getitem__(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise IndexError(i)
        return GroupElement(self, int(i))

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def label(self, i: int) -> str:
        """Canonical text form of element ``i``."""
        if self._labels is None:
            return f"e{i}"
        lab = self._labels[i]
        if self.backend == "permutation":
            return format_cycles(lab)
        if self.backend == "matrix":
            n = self.params["n"]
            rows = [list(lab[r * n:(r + 1) * n]) for r in range(n)]
            return str(rows).replace(" ", "")
        return str(lab)

    @cached_property
    def _label_index(self) -> dict:
        return {} if self._labels is None else {lab: i for i, lab in enumerate(self._labels)}

    def index_of(self, label) -> int:
        """Index of the element with this label.  Permutation groups also take
        cycle text such as ``"(1 2 3)"``."""
        if isinstance(label, str) and self.backend == "permutation":
            from .io import parse_cycles
            label = cycles_to_perm(parse_cycles(label), self.params["degree"])
        elif not isinstance(label, str):
            label = tuple(int(v) for v in np.asarray(label).ravel())
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r}") from None

    def element(self, label) -> GroupElement:
        return GroupElement(self, self.index_of(label))

    @cached_property
    def inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == 0)
        inv = np.empty(self.order, dtype=self.table.dtype)
        inv[rows] = cols
        return inv

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """``C[x, y] = [x, y] = x^-1 y^-1 x y`` for all pairs."""
        t, inv = self.table, self.inverse
        return t[t[np.ix_(inv, inv)], t]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        if self._generators is not None:
            return self._generators
        return _greedy_generators(self)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def comm(self, a: int, b: int) -> int:
        return int(self.commutator_table[a, b])

    def conj(self, a: int, b: int) -> int:
        """``a^b = b^-1 a b``."""
        t = self.table
        return int(t[t[self.inverse[b], a], b])

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result, base = 0, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        idx = np.arange(self.order)
        for k in range(1, self.order + 1):
            cur_is_id = (cur == 0) & (orders == 0)
            orders[cur_is_id] = k
            if orders.all():
                break
            cur = self.table[cur, idx]
        return orders

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        t, inv = self.table, self.inverse
        assigned = np.zeros(self.order, dtype=bool)
        classes = []
        xs = np.arange(self.order)
        for g in range(self.order):
            if assigned[g]:
                continue
            cls = np.unique(t[t[inv, g], xs])
            assigned[cls] = True
            classes.append(cls)
        return classes

    def whole(self) -> Subgroup:
        return Subgroup(self, np.ones(self.order, dtype=bool))

    def trivial(self) -> Subgroup:
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        return Subgroup(self, mask)

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> Subgroup:
        t = self.table
        gens = list(self.generators)
        mask = np.ones(self.order, dtype=bool)
        for s in gens:
            mask &= t[:, s] == t[s, :]
        return Subgroup(self, mask)


class GroupElement:
    """An element of a :class:`FiniteGroup`, identified by its dense index."""

    __slots__ = ("group", "index")

    def __init__(self, group: FiniteGroup, index: int):
        self.group = group
        self.index = index

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.group is not self.group:
            raise CrossGroupError("elements belong to different groups")

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and other.group is self.group
                and other.index == self.index)

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __repr__(self):
        return f"<{self.group.label(self.index)}>"

    def __str__(self):
        return self.group.label(self.index)

    def __mul__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def __pow__(self, n: int) -> GroupElement:
        return GroupElement(self.group, self.group.power(self.index, n))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, self.group.inv(self.index))

    def conjugate(self, by: GroupElement) -> GroupElement:
        """``self^by = by^-1 * self * by``."""
        self._check(by)
        return GroupElement(self.group, self.group.conj(self.index, by.index))

    @property
    def is_identity(self) -> bool:
        return self.index == 0

    @property
    def order(self) -> int:
        return int(self.group.element_orders[self.index])


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """``[a, b] = a^-1 b^-1 a b``."""
    a._check(b)
    return GroupElement(a.group, a.group.comm(a.index, b.index))


# -- construction -----------------------------------------------------------

def _enumerate(identity: np.ndarray, gens: list[np.ndarray], multiply, max_order: int):
    """Layered BFS closure; each new layer is sorted by canonical bytes."""
    def key(x):
        return x.astype(np.uint16).tobytes()

    elems = [identity]
    index = {key(identity): 0}
    parent = [-1]
    via = [-1]
    right = []  # right[i][s] = index of elems[i] * gens[s]
    frontier = [0]
    while frontier:
        found: dict[bytes, tuple[np.ndarray, int, int]] = {}
        pending = []
        for i in frontier:
            row = []
            for s, g in enumerate(gens):
                prod = multiply(elems[i], g)
                k = key(prod)
                j = index.get(k)
                if j is None:
                    if k not in found:
                        found[k] = (prod, i, s)
                    row.append(k)
                else:
                    row.append(j)
            pending.append((i, row))
        layer = sorted(found)
        if len(elems) + len(layer) > max_order:
            raise OrderCapExceeded(f"group order exceeds the cap {max_order}")
        for k in layer:
            prod, i, s = found[k]
            index[k] = len(elems)
            elems.append(prod)
            parent.append(i)
            via.append(s)
        for i, row in pending:
            while len(right) <= i:
                right.append(None)
            right[i] = [index[x] if isinstance(x, bytes) else x for x in row]
        frontier = [index[k] for k in layer]
    n = len(elems)
    dt = _index_dtype(n)
    right_arr = np.array(right, dtype=dt).reshape(n, len(gens))
    return elems, right_arr, parent, via


def _dense_table(right: np.ndarray, parent: list[int], via: list[int]) -> np.ndarray:
    n = right.shape[0]
    if n > DENSE_LIMIT:
        raise OrderCapExceeded(f"order {n} exceeds the dense table limit {DENSE_LIMIT}")
    dt = _index_dtype(n)
    cols = np.empty((n, n), dtype=dt)
    cols[0] = np.arange(n, dtype=dt)
    # column b = b_parent * s, so a*b = (a*b_parent)*s
    for b in range(1, n):
        cols[b] = right[cols[parent[b]], via[b]]
    return np.ascontiguousarray(cols.T)


def from_permutations(generators: Sequence[Sequence[int]], degree: int | None = None, *,
                      max_order: int = DEFAULT_MAX_ORDER, name: str = "") -> FiniteGroup:
    """Close 0-based permutation image tuples under multiplication."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if degree is None:
        degree = max((len(g) for g in gens), default=1)
    for g in gens:
        if len(g) != degree or sorted(g.tolist()) != list(range(degree)):
            raise InvalidGenerator(f"not a permutation of degree {degree}: {g.tolist()}")
    identity = np.arange(degree)
    elems, right, parent, via = _enumerate(identity, gens, lambda a, s: s[a], max_order)
    labels = [tuple(int(v) for v in e) for e in elems]
    gen_idx = [int(right[0, s]) for s in range(len(gens))]
    return FiniteGroup(_dense_table(right, parent, via), backend="permutation",
                       labels=labels, generators=gen_idx, name=name,
                       params={"degree": degree})


def from_matrices(generators: Sequence, p: int, n: int, *,
                  max_order: int = DEFAULT_MAX_ORDER, name: str = "") -> FiniteGroup:
    """Close invertible ``n x n`` matrices over ``F_p`` under multiplication."""
    if not _is_prime(p):
        raise InvalidGenerator(f"modulus {p} is not prime")
    gens = []
    for g in generators:
        m = np.asarray(g, dtype=np.int64).reshape(n, n) % p
        if _det_mod_p(m, p) == 0:
            raise InvalidGenerator(f"matrix is not invertible mod {p}: {m.tolist()}")
        gens.append(m)
    identity = np.eye(n, dtype=np.int64)
    elems, right, parent, via = _enumerate(identity, gens, lambda a, s: (a @ s) % p, max_order)
    labels = [tuple(int(v) for v in e.ravel()) for e in elems]
    gen_idx = [int(right[0, s]) for s in range(len(gens))]
    return FiniteGroup(_dense_table(right, parent, via), backend="matrix", labels=labels,
                       generators=gen_idx, name=name, params={"p": p, "n": n})


def from_table(table, *, labels=None, name: str = "", validate: bool = True,
               max_order: int = DEFAULT_MAX_ORDER, seed: int = 0) -> FiniteGroup:
    """Wrap a Cayley table whose row and column 0 belong to the identity.

    Associativity is checked exhaustively up to order 64 and on 1000 seeded
    random triples above that; larger user tables are trusted beyond the sample.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MalformedTable("table must be a non-empty square array")
    n = t.shape[0]
    if n > max_order:
        raise OrderCapExceeded(f"group order {n} exceeds the cap {max_order}")
    if n > DENSE_LIMIT:
        raise OrderCapExceeded(f"order {n} exceeds the dense table limit {DENSE_LIMIT}")
    t = t.astype(_index_dtype(n))
    if validate:
        if t.min() < 0 or t.max() >= n:
            raise MalformedTable("entries must be indices in 0..n-1")
        ar = np.arange(n)
        if not (t[0] == ar).all() or not (t[:, 0] == ar).all():
            raise MalformedTable("row 0 and column 0 must be the identity row/column")
        srt_rows = np.sort(t, axis=1)
        srt_cols = np.sort(t, axis=0)
        if not (srt_rows == ar).all():
            bad = int(np.nonzero(~(srt_rows == ar).all(axis=1))[0][0])
            raise MalformedTable(f"row {bad} is not a permutation (Latin square violation)")
        if not (srt_cols == ar[:, None]).all():
            bad = int(np.nonzero(~(srt_cols == ar[:, None]).all(axis=0))[0][0])
            raise MalformedTable(f"column {bad} is not a permutation (Latin square violation)")
        if n <= 64:
            a, b, c = np.meshgrid(ar, ar, ar, indexing="ij")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, 1000))
        lhs = t[t[a, b], c]
        rhs = t[a, t[b, c]]
        if not (lhs == rhs).all():
            i = np.argwhere(lhs != rhs)[0]
            trip = (int(a[tuple(i)]), int(b[tuple(i)]), int(c[tuple(i)]))
            raise MalformedTable(f"associativity fails on triple {trip}")
    return FiniteGroup(np.ascontiguousarray(t), backend="cayley-table", labels=labels,
                       name=name)


def build_group(spec: dict, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from a backend description.

    ``{"backend": "permutation", "generators": [...], "degree": d}`` with
    0-based image tuples, ``{"backend": "matrix", "p": p, "n": n,
    "generators": [...]}`` or ``{"backend": "cayley-table", "table": [[...]]}``.
    """
    kind = spec.get("backend")
    name = spec.get("name", "")
    if kind == "permutation":
        return from_permutations(spec.get("generators", []), spec.get("degree"),
                                 max_order=max_order, name=name)
    if kind == "matrix":
        return from_matrices(spec.get("generators", []), spec["p"], spec["n"],
                             max_order=max_order, name=name)
    if kind == "cayley-table":
        return from_table(spec["table"], labels=spec.get("labels"), name=name,
                          max_order=max_order)
    raise GroupError(f"unknown backend {kind!r}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup, *, name: str = "",
                   max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Direct product; permutation factors give a permutation group on the
    disjoint union of points, anything else a labelled Cayley table."""
    name = name or f"{g1.name}x{g2.name}"
    if g1.backend == "permutation" and g2.backend == "permutation":
        d1, d2 = g1.params["degree"], g2.params["degree"]
        gens = []
        for s in g1.generators:
            gens.append(tuple(g1._labels[s]) + tuple(range(d1, d1 + d2)))
        for s in g2.generators:
            gens.append(tuple(range(d1)) + tuple(d1 + v for v in g2._labels[s]))
        return from_permutations(gens, d1 + d2, max_order=max_order, name=name)
    n1, n2 = g1.order, g2.order
    if n1 * n2 > max_order:
        raise OrderCapExceeded(f"group order exceeds the cap {max_order}")
    t = (g1.table.astype(np.int64)[:, None, :, None] * n2
         + g2.table.astype(np.int64)[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"({g1.label(i)}, {g2.label(j)})" for i in range(n1) for j in range(n2)]
    return from_table(t, labels=labels, name=name, validate=False, max_order=max_order)


# -- subgroups --------------------------------------------------------------

class Subgroup:
    """A subgroup stored as a boolean membership mask over the parent."""

    def __init__(self, parent: FiniteGroup, mask: np.ndarray):
        if mask.shape != (parent.order,) or mask.dtype != bool:
            raise ValueError("subgroup mask must be a boolean vector over the parent")
        self.parent = parent
        self.mask = mask
        self.mask.flags.writeable = False

    @classmethod
    def from_indices(cls, parent: FiniteGroup, indices: Iterable[int]) -> Subgroup:
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.fromiter(indices, dtype=np.int64)] = True
        return cls(parent, mask)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements.tolist())

    def __contains__(self, x) -> bool:
        if isinstance(x, GroupElement):
            if x.group is not self.parent:
                raise CrossGroupError("element of a different group")
            x = x.index
        return bool(self.mask[x])

    def __eq__(self, other):
        if isinstance(other, Subgroup):
            return other.parent is self.parent and bool((other.mask == self.mask).all())
        return NotImplemented

    def __hash__(self):
        return hash((id(self.parent), self.mask.tobytes()))

    def __le__(self, other: Subgroup) -> bool:
        return bool((~self.mask | other.mask).all())

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.elements.tolist())

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens, _ = _closure_incremental(self.parent, self.elements)
        return tuple(gens)

    @cached_property
    def is_normal(self) -> bool:
        g = self.parent
        t, inv = g.table, g.inverse
        h = self.elements
        for s in g.generators:
            if not self.mask[t[t[inv[s], h], s]].all():
                return False
        return True

    def is_closed(self) -> bool:
        h = self.elements
        t = self.parent.table
        return bool(self.mask[0] and self.mask[t[np.ix_(h, h)]].all()
                    and self.mask[self.parent.inverse[h]].all())

    @cached_property
    def nilpotency_class(self) -> int | None:
        return nilpotency_class(self)

    @cached_property
    def derived_length(self) -> int | None:
        return derived_length(self)

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """Standalone copy plus the local-to-parent index map."""
        h = self.elements
        local = np.full(self.parent.order, -1, dtype=np.int64)
        local[h] = np.arange(h.size)
        t = local[self.parent.table[np.ix_(h, h)]]
        labels = [self.parent.label(i) for i in h.tolist()]
        grp = from_table(t, labels=labels, validate=False,
                         name=f"sub({self.parent.name})")
        return grp, h


def _as_subgroup(h) -> Subgroup:
    return h.whole() if isinstance(h, FiniteGroup) else h


def _closure_incremental(g: FiniteGroup, candidates) -> tuple[list[int], np.ndarray]:
    """Subgroup generated by ``candidates``; also returns the generators kept."""
    t = g.table
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for c in np.asarray(candidates, dtype=np.int64).ravel().tolist():
        if mask[c]:
            continue
        gens.append(c)
        garr = np.array(gens, dtype=np.int64)
        frontier = t[np.flatnonzero(mask), c]
        frontier = np.unique(frontier[~mask[frontier]])
        mask[frontier] = True
        while frontier.size:
            prods = t[np.ix_(frontier, garr)].ravel()
            new = np.unique(prods[~mask[prods]])
            mask[new] = True
            frontier = new
    return gens, mask


def subgroup_generated(g: FiniteGroup, elements) -> Subgroup:
    """Smallest subgroup containing ``elements`` (indices or GroupElements)."""
    idx = []
    for e in elements:
        if isinstance(e, GroupElement):
            if e.group is not g:
                raise CrossGroupError("element of a different group")
            e = e.index
        idx.append(int(e))
    _, mask = _closure_incremental(g, idx)
    return Subgroup(g, mask)


def normal_closure(g: FiniteGroup, elements) -> Subgroup:
    """Smallest normal subgroup containing ``elements``."""
    t, inv = g.table, g.inverse
    xs = np.arange(g.order)
    idx = [e.index if isinstance(e, GroupElement) else int(e) for e in elements]
    cands = [np.unique(t[t[inv, s], xs]) for s in idx]
    cands = np.unique(np.concatenate(cands)) if cands else np.array([], dtype=np.int64)
    _, mask = _closure_incremental(g, cands)
    sub = Subgroup(g, mask)
    sub.__dict__["is_normal"] = True
    return sub


def commutator_subgroup(a: Subgroup, b: Subgroup) -> Subgroup:
    """Subgroup generated by all ``[x, y]`` with ``x`` in ``a``, ``y`` in ``b``."""
    a, b = _as_subgroup(a), _as_subgroup(b)
    if a.parent is not b.parent:
        raise CrossGroupError("subgroups of different groups")
    g = a.parent
    vals = np.unique(g.commutator_table[np.ix_(a.elements, b.elements)])
    _, mask = _closure_incremental(g, vals)
    return Subgroup(g, mask)


def lower_central_series(h) -> list[Subgroup]:
    """``h = g_1 >= g_2 >= ...`` with ``g_{i+1} = [g_i, h]``, ending at the
    first repeated term."""
    h = _as_subgroup(h)
    series = [h]
    while True:
        nxt = commutator_subgroup(series[-1], h)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(h) -> list[Subgroup]:
    h = _as_subgroup(h)
    series = [h]
    while True:
        nxt = commutator_subgroup(series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilpotency_class(h) -> int | None:
    """Class of a nilpotent subgroup (0 for the trivial group), else ``None``."""
    series = lower_central_series(h)
    if not series[-1].is_trivial:
        return None
    return len(series) - 1


def derived_length(h) -> int | None:
    series = derived_series(h)
    if not series[-1].is_trivial:
        return None
    return len(series) - 1


# optional-valued predicates under their conventional names
is_nilpotent = nilpotency_class
is_solvable = derived_length


# -- quotients --------------------------------------------------------------

@dataclass
class QuotientGroup:
    parent: FiniteGroup
    normal: Subgroup
    group: FiniteGroup
    projection: np.ndarray
    representatives: np.ndarray

    def project(self, x):
        if isinstance(x, GroupElement):
            return self.group[int(self.projection[x.index])]
        return int(self.projection[x])

    def preimage(self, sub) -> Subgroup:
        """Pull a subgroup (or index set) of the quotient back to the parent."""
        if isinstance(sub, Subgroup):
            qmask = sub.mask
        else:
            qmask = np.zeros(self.group.order, dtype=bool)
            qmask[list(sub)] = True
        return Subgroup(self.parent, qmask[self.projection].copy())


def quotient(g: FiniteGroup, n: Subgroup) -> QuotientGroup:
    """Coset group ``g/n``; cosets are numbered by their first element."""
    if n.parent is not g:
        raise CrossGroupError("subgroup of a different group")
    if not n.is_normal:
        raise NotNormalError("quotient requires a normal subgroup")
    t = g.table
    nel = n.elements
    label = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for a in range(g.order):
        if label[a] < 0:
            label[t[a, nel]] = len(reps)
            reps.append(a)
    reps_arr = np.array(reps, dtype=np.int64)
    qt = label[t[np.ix_(reps_arr, reps_arr)]]
    labels = [f"{g.label(r)}N" for r in reps]
    qg = from_table(qt, labels=labels, validate=False, name=f"{g.name}/N")
    return QuotientGroup(g, n, qg, label, reps_arr)


def _greedy_generators(g: FiniteGroup) -> tuple[int, ...]:
    # prefer high-order elements so the kept set stays small
    order = np.argsort(-g.element_orders, kind="stable")
    gens, _ = _closure_incremental(g, order)
    return tuple(gens)
