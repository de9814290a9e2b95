"""Fitting subgroup, upper radical series and solvable radical.

The Fitting subgroup is computed as the set of nil-elements; an independent
oracle rebuilds it from normal closures (``g`` lies in the Fitting subgroup
iff its normal closure is nilpotent).  The solvable radical likewise has a
series-based computation and a normal-closure oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engel import nil_mask
from .group import (FiniteGroup, Subgroup, _closure_incremental, derived_length,
                    nilpotency_class, normal_closure, quotient)


class ConsistencyError(RuntimeError):
    """A computed radical failed a property guaranteed by theory."""


def _checked(sub: Subgroup, what: str, *, nilpotent=False, solvable=False) -> Subgroup:
    if not sub.is_closed():
        raise ConsistencyError(f"{what} is not closed under the group operations")
    if not sub.is_normal:
        raise ConsistencyError(f"{what} is not normal")
    if nilpotent and nilpotency_class(sub) is None:
        raise ConsistencyError(f"{what} is not nilpotent")
    if solvable and derived_length(sub) is None:
        raise ConsistencyError(f"{what} is not solvable")
    return sub


def fitting_subgroup(g: FiniteGroup) -> Subgroup:
    return _checked(Subgroup(g, nil_mask(g)), "nil-element set", nilpotent=True)


def _closure_oracle(g: FiniteGroup, test) -> np.ndarray:
    # normal closures are constant on conjugacy classes
    mask = np.zeros(g.order, dtype=bool)
    for cls in g.conjugacy_classes:
        if test(normal_closure(g, [int(cls[0])])):
            mask[cls] = True
    return mask


def fitting_oracle(g: FiniteGroup) -> Subgroup:
    mask = _closure_oracle(g, lambda n: nilpotency_class(n) is not None)
    return _checked(Subgroup(g, mask), "normal-closure Fitting oracle", nilpotent=True)


def solvable_radical_oracle(g: FiniteGroup) -> Subgroup:
    mask = _closure_oracle(g, lambda n: derived_length(n) is not None)
    return _checked(Subgroup(g, mask), "normal-closure solvable oracle", solvable=True)


@dataclass
class RadicalSeries:
    group: FiniteGroup
    terms: list[Subgroup]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def top(self) -> Subgroup:
        return self.terms[-1]

    def level(self, x: int) -> int | None:
        """Least ``k`` with ``x`` in ``R_k``, or ``None`` outside the top."""
        for k, term in enumerate(self.terms):
            if term.mask[x]:
                return k
        return None

    def levels(self) -> np.ndarray:
        """Per-element level, ``-1`` outside the series top."""
        out = np.full(self.group.order, -1, dtype=np.int64)
        for k in range(len(self.terms) - 1, -1, -1):
            out[self.terms[k].mask] = k
        return out


def upper_radical_series(g: FiniteGroup) -> RadicalSeries:
    """``R_0 = 1``, ``R_{i+1}`` = preimage of the Fitting subgroup of ``G/R_i``,
    until that Fitting subgroup is trivial."""
    terms = [g.trivial()]
    while True:
        q = quotient(g, terms[-1])
        fit = fitting_subgroup(q.group)
        if fit.is_trivial:
            return RadicalSeries(g, terms)
        nxt = q.preimage(fit)
        nxt.__dict__["is_normal"] = True
        terms.append(nxt)


def solvable_radical(g: FiniteGroup, series: RadicalSeries | None = None) -> Subgroup:
    series = series or upper_radical_series(g)
    return _checked(series.top, "upper radical series top", solvable=True)


def is_semisimple(g: FiniteGroup) -> bool:
    """True iff ``g`` has no nontrivial nilpotent normal subgroup."""
    return fitting_subgroup(g).is_trivial


def pairwise_solvable(g: FiniteGroup, *, exhaustive: bool = False,
                      max_pairs: int | None = None, seed: int = 0):
    """Whether every two elements generate a solvable subgroup.

    Returns ``(True, None)`` or ``(False, (a, b))``.  A solvable group is
    answered directly unless ``exhaustive`` is set.  The first element of a
    pair ranges over conjugacy-class representatives, which loses nothing
    since conjugate pairs generate conjugate subgroups.  With ``max_pairs``
    set and exceeded, that many seeded random pairs are scanned instead.
    """
    if not exhaustive and derived_length(g) is not None:
        return True, None
    reps = [int(c[0]) for c in g.conjugacy_classes]
    pairs_total = len(reps) * g.order
    if max_pairs is not None and pairs_total > max_pairs:
        rng = np.random.default_rng(seed)
        pairs = zip(rng.integers(0, g.order, max_pairs).tolist(),
                    rng.integers(0, g.order, max_pairs).tolist())
    else:
        pairs = ((a, b) for a in reps for b in range(g.order))
    memo: dict[bytes, bool] = {}
    for a, b in pairs:
        if a == b or b == 0 or a == 0:
            continue
        _, mask = _closure_incremental(g, [a, b])
        key = mask.tobytes()
        ok = memo.get(key)
        if ok is None:
            ok = memo[key] = derived_length(Subgroup(g, mask)) is not None
        if not ok:
            return False, (g[a], g[b])
    return True, None
