"""Engel and tower identities, variety products and the bounded-class survey.

Tower identities are checked exhaustively by propagating the set of values
a tower can take, level by level: the values of the depth-``i`` tower over
all tuples are exactly ``{u_{n_i}(x, v) : x in G, v in V_{i-1}}``.  This
covers every ``(x_1..x_k, y)`` tuple at a cost of at most ``|G|^2`` per
level instead of ``|G|^{k+1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .group import FiniteGroup, Subgroup, _closure_incremental, nilpotency_class, quotient
from .words import (ENGEL, CorrectSequence, Word, check_tower_index, evaluate_indices,
                    tower_value)

EXHAUSTIVE_PAIRS = 10**6
SAMPLES = 10**5


@dataclass
class IdentityVerdict:
    group: str
    identity: dict
    holds: bool
    mode: str                      # "exhaustive" or "sampled"
    samples: int | None = None
    seed: int | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"group": self.group, "identity": self.identity,
               "verdict": "holds" if self.holds else "fails", "mode": self.mode}
        if self.mode == "sampled":
            out["samples"] = self.samples
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _engel_grid(g: FiniteGroup, n: int) -> np.ndarray:
    """``E[x, y] = e_n(x, y)`` for all pairs."""
    ct = g.commutator_table
    ys = np.arange(g.order)[None, :]
    e = ct
    for _ in range(n - 1):
        e = ct[e, ys]
    return e


def satisfies_engel_identity(g: FiniteGroup, n: int, *, seed: int = 0,
                             samples: int = SAMPLES,
                             exhaustive_limit: int = EXHAUSTIVE_PAIRS) -> IdentityVerdict:
    if n < 1:
        raise ValueError("n must be >= 1")
    ident = {"kind": "engel", "n": n}
    if g.order ** 2 <= exhaustive_limit:
        e = _engel_grid(g, n)
        bad = np.argwhere(e != 0)
        if bad.size == 0:
            return IdentityVerdict(g.name, ident, True, "exhaustive")
        x, y = (int(v) for v in bad[0])
        return IdentityVerdict(g.name, ident, False, "exhaustive", witness={
            "x1": g.label(x), "y": g.label(y), "value": g.label(int(e[x, y])),
            "indices": {"x1": x, "y": y}})
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, g.order, samples)
    ys = rng.integers(0, g.order, samples)
    c = g.commutator_table[xs, ys]
    for _ in range(n - 1):
        c = g.commutator_table[c, ys]
    bad = np.flatnonzero(c != 0)
    if bad.size == 0:
        return IdentityVerdict(g.name, ident, True, "sampled", samples, seed)
    i = int(bad[0])
    return IdentityVerdict(g.name, ident, False, "sampled", samples, seed, witness={
        "x1": g.label(int(xs[i])), "y": g.label(int(ys[i])), "value": g.label(int(c[i])),
        "indices": {"x1": int(xs[i]), "y": int(ys[i])}})


def min_engel_n(g: FiniteGroup, n_max: int) -> int | None:
    """Least ``n <= n_max`` with ``e_n`` vanishing on all pairs."""
    ct = g.commutator_table
    ys = np.arange(g.order)[None, :]
    e = ct
    for n in range(1, n_max + 1):
        if not e.any():
            return n
        e = ct[e, ys]
    return None


def _tower_step(g: FiniteGroup, seq: CorrectSequence, n: int, xs, vs):
    if seq is ENGEL:
        from .words import engel_index
        return engel_index(g, xs, vs, n)
    return evaluate_indices(g, seq[n], {"x1": xs, "y": vs})


def satisfies_tower_identity(g: FiniteGroup, idx: Sequence[int], seq: CorrectSequence = ENGEL,
                             *, seed: int = 0, samples: int = SAMPLES,
                             exhaustive_limit: int = EXHAUSTIVE_PAIRS) -> IdentityVerdict:
    """Check ``u_(n1..nk)(x_1..x_k; y) = 1`` on ``g``."""
    idx = check_tower_index(idx)
    ident = {"kind": "tower", "index": list(idx), "sequence": seq.name}
    k = len(idx)
    names = [f"x{i}" for i in range(1, k + 1)]
    if g.order ** 2 > exhaustive_limit:
        rng = np.random.default_rng(seed)
        tup = rng.integers(0, g.order, (k + 1, samples))
        val = tower_value(g, seq, idx, list(tup[:k]), tup[k])
        bad = np.flatnonzero(val != 0)
        if bad.size == 0:
            return IdentityVerdict(g.name, ident, True, "sampled", samples, seed)
        i = int(bad[0])
        wit = {nm: g.label(int(tup[j, i])) for j, nm in enumerate(names)}
        wit["y"] = g.label(int(tup[k, i]))
        wit["value"] = g.label(int(val[i]))
        return IdentityVerdict(g.name, ident, False, "sampled", samples, seed, witness=wit)

    allg = np.arange(g.order)
    # level 1 over all (x1, y); keep one preimage per value
    grid = _tower_step(g, seq, idx[0], allg[:, None], allg[None, :])
    vals, first = np.unique(grid.ravel(), return_index=True)
    parents = [(first // g.order, first % g.order)]   # (x1, y)
    levels = [vals]
    for n in idx[1:]:
        grid = _tower_step(g, seq, n, allg[:, None], vals[None, :])
        vals, first = np.unique(grid.ravel(), return_index=True)
        parents.append((first // len(levels[-1]), first % len(levels[-1])))  # (x_i, slot)
        levels.append(vals)
    bad = np.flatnonzero(levels[-1] != 0)
    if bad.size == 0:
        return IdentityVerdict(g.name, ident, True, "exhaustive")
    # walk the preimage pointers back to a full tuple
    slot = int(bad[0])
    value = int(levels[-1][slot])
    xs = [0] * k
    for lvl in range(k - 1, 0, -1):
        xi, prev = parents[lvl]
        xs[lvl] = int(xi[slot])
        slot = int(prev[slot])
    x1, y = parents[0]
    xs[0] = int(x1[slot])
    yv = int(y[slot])
    wit = {nm: g.label(v) for nm, v in zip(names, xs)}
    wit["y"] = g.label(yv)
    wit["value"] = g.label(value)
    wit["indices"] = dict(zip(names, xs)) | {"y": yv}
    return IdentityVerdict(g.name, ident, False, "exhaustive", witness=wit)


def satisfies_word_identity(g: FiniteGroup, w: Word, *, seed: int = 0,
                            samples: int = SAMPLES,
                            exhaustive_limit: int = EXHAUSTIVE_PAIRS) -> IdentityVerdict:
    """Check an arbitrary word ``w = 1`` over all assignments of its variables."""
    names = sorted(w.variables, key=lambda v: (v != "y", v))
    ident = {"kind": "word", "word": str(w)}
    total = g.order ** len(names)
    if total <= exhaustive_limit:
        grids = np.meshgrid(*([np.arange(g.order)] * len(names)), indexing="ij")
        tup = [a.ravel() for a in grids] if names else []
        mode, count = "exhaustive", None
    else:
        rng = np.random.default_rng(seed)
        tup = list(rng.integers(0, g.order, (len(names), samples)))
        mode, count = "sampled", samples
    if not names:
        return IdentityVerdict(g.name, ident, True, "exhaustive")
    val = evaluate_indices(g, w, dict(zip(names, tup)))
    bad = np.flatnonzero(val != 0)
    sampled_seed = seed if mode == "sampled" else None
    if bad.size == 0:
        return IdentityVerdict(g.name, ident, True, mode, count, sampled_seed)
    i = int(bad[0])
    wit = {nm: g.label(int(t[i])) for nm, t in zip(names, tup)}
    wit["value"] = g.label(int(val[i]))
    return IdentityVerdict(g.name, ident, False, mode, count, sampled_seed, witness=wit)


@dataclass
class ContainmentReport:
    chain_orders: list[int]
    engel_indices: list[int]
    conclusion_index: list[int]
    hypothesis_ok: bool
    hypothesis_notes: list[str] = field(default_factory=list)
    conclusion: IdentityVerdict | None = None

    @property
    def passed(self) -> bool:
        return self.hypothesis_ok and self.conclusion is not None and self.conclusion.holds


def containment_index(ns: Sequence[int]) -> tuple[int, ...]:
    """``(n_k, n_{k-1} + 1, ..., n_1 + 1)`` for a chain with factor indices
    ``n_1`` (bottom) .. ``n_k`` (top)."""
    ns = list(ns)
    return (ns[-1],) + tuple(n + 1 for n in reversed(ns[:-1]))


def check_product_containment(g: FiniteGroup, chain: Sequence[Subgroup],
                              ns: Sequence[int]) -> ContainmentReport:
    """Given ``1 = N_0 <= ... <= N_k = G`` with ``N_i / N_{i-1}`` satisfying
    ``e_{n_i} = 1``, check the tower identity ``(n_k, n_{k-1}+1, .., n_1+1)``.
    Hypothesis failures are reported, not raised."""
    ns = list(ns)
    rep = ContainmentReport([s.order for s in chain], ns, list(containment_index(ns)) if ns else [],
                            True)
    notes = rep.hypothesis_notes
    if len(chain) != len(ns) + 1 or not ns:
        rep.hypothesis_ok = False
        notes.append("chain must have exactly one more term than the index list")
        return rep
    if not chain[0].is_trivial or not chain[-1].is_whole:
        rep.hypothesis_ok = False
        notes.append("chain must start at 1 and end at G")
    for i, sub in enumerate(chain):
        if sub.parent is not g or not sub.is_normal:
            rep.hypothesis_ok = False
            notes.append(f"term {i} is not a normal subgroup of G")
        if i and not chain[i - 1] <= sub:
            rep.hypothesis_ok = False
            notes.append(f"term {i - 1} is not contained in term {i}")
    if not rep.hypothesis_ok:
        return rep
    for i in range(1, len(chain)):
        upper, umap = chain[i].as_group()
        lower = Subgroup(upper, chain[i - 1].mask[umap].copy())
        factor = quotient(upper, lower).group
        factor.name = f"N{i}/N{i - 1}"
        v = satisfies_engel_identity(factor, ns[i - 1])
        if not v.holds:
            rep.hypothesis_ok = False
            notes.append(f"factor N{i}/N{i - 1} fails e_{ns[i - 1]}")
    if rep.hypothesis_ok:
        rep.conclusion = satisfies_tower_identity(g, containment_index(ns))
    return rep


# -- bounded-class survey ------------------------------------------------------

def min_generators(g: FiniteGroup, cap: int = 4) -> tuple[int, bool]:
    """Smallest generating-set size found by trying singles, pairs, triples.

    Returns ``(d, exact)``; when nothing below ``cap`` generates, ``(cap,
    False)`` stands for "at least ``cap``".
    """
    if g.order == 1:
        return 0, True
    if int(g.element_orders.max()) == g.order:
        return 1, True
    # one element per cyclic subgroup; conjugating a generating tuple gives
    # another, so the first element may be a class representative
    seen: set[bytes] = set()
    cyc: list[int] = []
    for x in range(1, g.order):
        _, mask = _closure_incremental(g, [x])
        key = mask.tobytes()
        if key not in seen:
            seen.add(key)
            cyc.append(x)
    class_of = np.empty(g.order, dtype=np.int64)
    for i, cls in enumerate(g.conjugacy_classes):
        class_of[cls] = i
    firsts, used = [], set()
    for x in cyc:
        if class_of[x] not in used:
            used.add(int(class_of[x]))
            firsts.append(x)
    for size in range(2, cap):
        for a in firsts:
            for rest in itertools.combinations(cyc, size - 1):
                _, mask = _closure_incremental(g, (a,) + rest)
                if mask.all():
                    return size, True
    return cap, False


@dataclass
class SurveyRow:
    name: str
    order: int
    nilpotency_class: int | None
    generators: int
    generators_exact: bool


@dataclass
class SurveyTable:
    n: int
    rows: list[SurveyRow]
    excluded: list[str]

    def cells(self) -> dict[tuple[int, int], int | None]:
        """Max class per ``(n, generator count)`` cell."""
        out: dict[tuple[int, int], int | None] = {}
        for r in self.rows:
            key = (self.n, r.generators)
            cur = out.get(key, -1)
            if r.nilpotency_class is None or cur is None:
                out[key] = None
            else:
                out[key] = max(cur, r.nilpotency_class)
        return out

    @property
    def max_class(self) -> int | None:
        classes = [r.nilpotency_class for r in self.rows]
        if any(c is None for c in classes):
            return None
        return max(classes, default=0)


def theorem1_survey(groups: Sequence[tuple[str, FiniteGroup]], n: int) -> SurveyTable:
    """Nilpotency class and generator count of every group satisfying
    ``e_n = 1`` exhaustively; the rest are listed as excluded."""
    rows, excluded = [], []
    for name, g in groups:
        v = satisfies_engel_identity(g, n)
        if v.mode != "exhaustive" or not v.holds:
            excluded.append(name)
            continue
        d, exact = min_generators(g)
        rows.append(SurveyRow(name, g.order, nilpotency_class(g), d, exact))
    return SurveyTable(n, rows, excluded)
