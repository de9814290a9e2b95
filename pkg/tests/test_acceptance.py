"""Acceptance criteria 1 to 11, each exact and under its time budget.

Each test records one ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary (see conftest) and when this file is run as a script.
"""

from __future__ import annotations

import itertools
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from engelgroups.engel import nil_mask
from engelgroups.group import nilpotency_class
from engelgroups.quasinil import (QuasiNilSolver, default_kmax, quasi_nil_set,
                                  skolem_quasi_nil_k2)
from engelgroups.radicals import (fitting_oracle, pairwise_solvable, solvable_radical,
                                  upper_radical_series)
from engelgroups.varieties import min_engel_n, satisfies_engel_identity, satisfies_tower_identity
from engelgroups.words import (ENGEL, engel_word, evaluate, evaluate_indices, iterated_engel,
                               tower_word)

from conftest import catalog_groups, group

RESULTS: dict[int, str] = {}
_ELAPSED: dict[int, float] = {}


@contextmanager
def criterion(num: int, title: str, budget: float | None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        _ELAPSED[num] = dt
        if ok and budget is not None and dt > budget:
            ok = False
            title += f" (over budget {budget:g}s)"
        limit = f" / {budget:g}s" if budget is not None else ""
        RESULTS[num] = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}  [{dt:.2f}s{limit}]"
    assert ok, RESULTS[num]


def upto(cap):
    return [(n, g) for n, g in catalog_groups() if g.order <= cap]


def test_01_baer_equivalence():
    with criterion(1, "nil elements = Fitting subgroup, product-closed (order <= 200)", 60):
        for name, g in upto(200):
            nil = nil_mask(g)
            assert (nil == fitting_oracle(g).mask).all(), name
            els = np.flatnonzero(nil)
            assert nil[g.table[np.ix_(els, els)]].all(), name


def test_02_quasi_nil_is_radical():
    with criterion(2, "quasi-nil set = solvable radical (order <= 120)", 120):
        for name, g in upto(120):
            qn = quasi_nil_set(g, default_kmax(g.order))
            rad = set(solvable_radical(g).elements.tolist())
            assert qn == rad, name


def test_03_nil_order_is_level():
    # shares the budget of criterion 2
    budget = round(120 - _ELAPSED.get(2, 0.0), 1)
    with criterion(3, "nil-order = radical-series level; S4 spot values", budget):
        for name, g in upto(120):
            levels = upper_radical_series(g).levels()
            orders = QuasiNilSolver(g).nil_orders(max(default_kmax(g.order),
                                                      int(levels.max()) + 1))
            inside = levels >= 0
            assert (orders[inside] == levels[inside]).all(), name
        s4 = group("s4")
        orders = QuasiNilSolver(s4).nil_orders()
        for i in range(1, 24):
            cycle_type = sorted(len(c.split()) for c in s4.label(i).strip("()").split(")("))
            expect = {(2, 2): 1, (3,): 2}.get(tuple(cycle_type), 3)
            assert orders[i] == expect, (s4.label(i), int(orders[i]))


def test_04_semisimple_quasi_nil_trivial():
    with criterion(4, "quasi-nil set trivial for A5, S5, A5xA5", 30):
        for name in ("a5", "s5", "a5xa5"):
            assert quasi_nil_set(group(name)) == frozenset({0}), name


def test_05_kaluzhnin():
    with criterion(5, "UT_n(F_p) has class n-1", 30):
        for n, p in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]:
            assert nilpotency_class(group(f"ut{n}_{p}")) == n - 1


def test_06_metabelian_tower():
    with criterion(6, "metabelian groups satisfy tower (1,2); S4 satisfies (1,2,2)", 60):
        from engelgroups.group import derived_length
        seen = 0
        for name, g in catalog_groups():
            dl = derived_length(g)
            if dl is None or dl > 2:
                continue
            v = satisfies_tower_identity(g, (1, 2))
            assert v.holds and v.mode == "exhaustive", name
            seen += 1
        assert seen > 40
        v = satisfies_tower_identity(group("s4"), (1, 2, 2))
        assert v.holds and v.mode == "exhaustive"


def test_07_engel_class_bounds():
    with criterion(7, "2-Engel groups have class <= 3; min Engel n <= class", 60):
        two_engel = 0
        for name, g in catalog_groups():
            v = satisfies_engel_identity(g, 2)
            if v.holds and v.mode == "exhaustive":
                two_engel += 1
                cls = nilpotency_class(g)
                assert cls is not None and cls <= 3, name
            cls = nilpotency_class(g)
            if cls is not None and cls > 0:
                m = min_engel_n(g, cls)
                assert m is not None and m <= cls, name
        assert two_engel > 30


def test_08_pairwise_solvable():
    with criterion(8, "pairwise solvable iff radical is whole (order <= 200); A5 witness", 120):
        for name, g in upto(200):
            ok, witness = pairwise_solvable(g, exhaustive=True)
            assert ok == solvable_radical(g).is_whole, name
        ok, (a, b) = pairwise_solvable(group("a5"), exhaustive=True)
        assert not ok
        from engelgroups.group import derived_length, subgroup_generated
        h = subgroup_generated(group("a5"), [a.index, b.index])
        assert derived_length(h) is None


def test_09_cross_evaluator():
    with criterion(9, "engel word evaluation = iterated commutators; tower associativity", 60):
        words = {n: engel_word(n) for n in range(1, 9)}
        rng = np.random.default_rng(9)
        for name, g in catalog_groups():
            if g.order <= 24:
                for n, w in words.items():
                    for a, y in itertools.product(g, repeat=2):
                        assert evaluate(w, {"x1": a, "y": y}) == iterated_engel(a, y, n), name
            else:
                a, y = rng.integers(0, g.order, (2, 10**4))
                ns = rng.integers(1, 9, 10**4)
                for n, w in words.items():
                    sel = ns == n
                    sym = evaluate_indices(g, w, {"x1": a[sel], "y": y[sel]})
                    ref = [iterated_engel(g[i], g[j], n).index
                           for i, j in zip(a[sel].tolist(), y[sel].tolist())]
                    assert np.asarray(sym).tolist() == ref, name
        for k in range(2, 5):
            for idx in itertools.product(range(1, 4), repeat=k):
                whole = tower_word(ENGEL, idx)
                for split in range(1, k):
                    inner = tower_word(ENGEL, idx[:split])
                    outer = tower_word(ENGEL, idx[split:]).rename(split)
                    assert outer.substitute({"y": inner}) == whole, (idx, split)


def test_10_skolem_k2():
    with criterion(10, "recursive decision at k=2 = literal search (order <= 24)", 120):
        for name, g in upto(24):
            lv = QuasiNilSolver(g).level(2)
            assert [skolem_quasi_nil_k2(g, x) for x in range(g.order)] == lv.tolist(), name


def test_11_determinism():
    with criterion(11, "verify --suite catalog JSON identical for 1 and 4 threads", None):
        outs = []
        for threads in ("1", "4"):
            p = subprocess.run([sys.executable, "-m", "engelgroups", "verify", "--suite", "catalog",
                                "--seed", "7", "--no-timing", "--threads", threads],
                               capture_output=True)
            assert p.returncode == 0, p.stderr.decode()
            outs.append(p.stdout)
        assert outs[0] == outs[1] and len(outs[0]) > 1000


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    print("\n".join(RESULTS[k] for k in sorted(RESULTS)))
    sys.exit(code)
