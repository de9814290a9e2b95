"""Nil-elements, Engel bounds and the Baer chain of a nil-element.

Whether ``e_n(a, g) = 1`` for some ``n`` is decided by walking the orbit of
``c -> [c, g]`` from ``[a, g]``: the map is deterministic on a finite set, so
the walk either meets the identity (a fixed point) or revisits a value and
cycles forever.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import (CrossGroupError, FiniteGroup, GroupElement, Subgroup,
                    _closure_incremental, nilpotency_class)


@dataclass
class CommutationOrbit:
    base: GroupElement
    start: GroupElement
    values: list[int]
    reaches_identity: bool
    step: int | None = None        # n with e_n(a, g) = 1, first such
    preperiod: int | None = None
    period: int | None = None

    @property
    def verdict(self) -> str:
        return "reaches-identity" if self.reaches_identity else "cycles"


def commutation_orbit(a: GroupElement, g: GroupElement) -> CommutationOrbit:
    """Distinct values ``[a,g], [[a,g],g], ...`` up to the identity or the
    first repetition."""
    if a.group is not g.group:
        raise CrossGroupError("elements belong to different groups")
    grp = a.group
    col = grp.commutator_table[:, g.index]
    seen: dict[int, int] = {}
    values: list[int] = []
    c = int(col[a.index])
    while c not in seen:
        seen[c] = len(values)
        values.append(c)
        if c == 0:
            return CommutationOrbit(g, a, values, True, step=len(values))
        c = int(col[c])
    pre = seen[c]
    return CommutationOrbit(g, a, values, False, preperiod=pre, period=len(values) - pre)


def _power_map(f: np.ndarray, steps: int) -> np.ndarray:
    """``f`` composed with itself at least ``steps`` times (by squaring)."""
    p = f
    reach = 1
    while reach < steps:
        p = p[p]
        reach *= 2
    return p


def nil_mask(grp: FiniteGroup) -> np.ndarray:
    """Boolean mask of nil-elements.

    Since the identity is fixed by ``c -> [c, g]``, an orbit reaches it iff
    it sits there after ``|G|`` steps.
    """
    ct = grp.commutator_table
    out = np.zeros(grp.order, dtype=bool)
    for g in range(grp.order):
        out[g] = not _power_map(ct[:, g], grp.order).any()
    return out


def is_nil_element(g: GroupElement) -> tuple[bool, GroupElement | None]:
    """``(True, None)`` for a nil-element, else ``(False, a)`` where the orbit
    of ``a`` cycles without meeting the identity."""
    grp = g.group
    final = _power_map(grp.commutator_table[:, g.index], grp.order)
    bad = np.flatnonzero(final)
    if bad.size == 0:
        return True, None
    return False, grp[int(bad[0])]


def engel_bound(g: GroupElement) -> int | None:
    """Least ``n`` with ``e_n(a, g) = 1`` for every ``a``, if any."""
    grp = g.group
    col = grp.commutator_table[:, g.index]
    c = col.copy()
    for n in range(1, grp.order + 1):
        if not c.any():
            return n
        c = col[c]
    return None


def nil_element_set(grp: FiniteGroup) -> frozenset[int]:
    return frozenset(np.flatnonzero(nil_mask(grp)).tolist())


@dataclass
class BaerChain:
    element: GroupElement
    subgroups: list[Subgroup] = field(default_factory=list)
    conjugators: list[GroupElement] = field(default_factory=list)
    classes: list[int | None] = field(default_factory=list)
    terminal_normal: bool = False

    @property
    def all_nilpotent(self) -> bool:
        return all(c is not None for c in self.classes)

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]


def baer_chain(g: GroupElement) -> BaerChain:
    """``H_1 = <g>``, ``H_n = <H_{n-1}, h g h^-1>`` with ``h`` the first
    element (canonical order) whose conjugate of ``g`` escapes ``H_{n-1}``.

    Stops once ``H_n`` is normal, or at the first non-nilpotent link (only
    possible when ``g`` is not a nil-element).
    """
    grp = g.group
    t, inv = grp.table, grp.inverse
    chain = BaerChain(g)
    gens, mask = _closure_incremental(grp, [g.index])
    hs = np.arange(grp.order)
    conj = t[t[hs, g.index], inv]  # h g h^-1 for every h
    while True:
        sub = Subgroup(grp, mask.copy())
        cls = nilpotency_class(sub)
        chain.subgroups.append(sub)
        chain.classes.append(cls)
        outside = np.flatnonzero(~mask[conj])
        if outside.size == 0:
            chain.terminal_normal = True
            return chain
        if cls is None:
            return chain
        h = int(outside[0])
        chain.conjugators.append(grp[h])
        gens, mask = _closure_incremental(grp, list(gens) + [int(conj[h])])
