from __future__ import annotations

import itertools

import pytest

from engelgroups.group import derived_length, nilpotency_class, normal_closure
from engelgroups.radicals import upper_radical_series
from engelgroups.varieties import (check_product_containment, containment_index,
                                   min_engel_n, min_generators, satisfies_engel_identity,
                                   satisfies_tower_identity, satisfies_word_identity,
                                   theorem1_survey)
from engelgroups.words import ENGEL, parse_word, read_sequence, tower_value

from conftest import catalog_groups, group


def brute_tower(g, idx):
    """First failing tuple over all assignments, by plain enumeration."""
    k = len(idx)
    for tup in itertools.product(range(g.order), repeat=k + 1):
        if tower_value(g, ENGEL, idx, list(tup[:k]), tup[k]) != 0:
            return tup
    return None


class TestEngelIdentity:
    def test_abelian(self):
        v = satisfies_engel_identity(group("c12"), 1)
        assert v.holds and v.mode == "exhaustive"

    def test_q8(self):
        v = satisfies_engel_identity(group("q8"), 2)
        assert v.holds and v.mode == "exhaustive"
        assert not satisfies_engel_identity(group("q8"), 1).holds

    @pytest.mark.parametrize("n", range(1, 11))
    def test_s3_fails(self, n):
        g = group("s3")
        v = satisfies_engel_identity(g, n)
        assert not v.holds
        w = v.witness["indices"]
        from engelgroups.words import engel_index
        assert engel_index(g, w["x1"], w["y"], n) != 0

    def test_sampled_mode(self):
        v = satisfies_engel_identity(group("a5xa5"), 3, seed=4, samples=2000)
        assert v.mode == "sampled" and v.seed == 4 and v.samples == 2000
        assert not v.holds

    def test_persistence(self):
        for name, g in catalog_groups():
            if g.order > 60:
                continue
            holds = [satisfies_engel_identity(g, n).holds for n in range(1, 6)]
            assert holds == sorted(holds), name

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            satisfies_engel_identity(group("c2"), 0)


class TestMinEngel:
    @pytest.mark.parametrize("name, n", [("c5", 1), ("ut3_2", 2), ("q8", 2), ("ut4_2", 3),
                                         ("c1", 1)])
    def test_values(self, name, n):
        assert min_engel_n(group(name), 6) == n

    def test_a5_absent(self):
        assert min_engel_n(group("a5"), 12) is None

    def test_class_bound_and_nilpotence(self):
        for name, g in catalog_groups():
            if g.order > 1000:
                continue
            cls = nilpotency_class(g)
            m = min_engel_n(g, 6)
            if cls is not None:
                assert m is not None and m <= max(cls, 1), name
            if m is not None:
                assert cls is not None, name


class TestTower:
    def test_base_case_matches_engel(self):
        for name in ["s3", "q8", "d5"]:
            g = group(name)
            for n in (1, 2, 3):
                assert satisfies_tower_identity(g, (n,)).holds == \
                    satisfies_engel_identity(g, n).holds

    def test_s3_12(self):
        v = satisfies_tower_identity(group("s3"), (1, 2))
        assert v.holds and v.mode == "exhaustive"

    def test_s4_122(self):
        v = satisfies_tower_identity(group("s4"), (1, 2, 2))
        assert v.holds and v.mode == "exhaustive"

    @pytest.mark.parametrize("name, idx", [("s3", (1, 1)), ("s4", (1, 2)), ("d4", (1, 1)),
                                           ("a4", (2, 1)), ("s3", (2, 1))])
    def test_against_brute_force(self, name, idx):
        g = group(name)
        v = satisfies_tower_identity(g, idx)
        bad = brute_tower(g, idx)
        assert v.holds == (bad is None)
        if not v.holds:
            w = v.witness["indices"]
            xs = [w[f"x{i}"] for i in range(1, len(idx) + 1)]
            assert tower_value(g, ENGEL, idx, xs, w["y"]) != 0

    def test_s4_112_fails(self):
        v = satisfies_tower_identity(group("s4"), (1, 1, 2))
        assert not v.holds and v.witness is not None

    def test_user_sequence(self):
        seq = read_sequence("[x1,y]\n[[x1,y],y]\n")
        v = satisfies_tower_identity(group("s3"), (1, 2), seq)
        assert v.holds and v.identity["sequence"] == seq.name

    def test_metabelian_catalog(self):
        for name, g in catalog_groups():
            dl = derived_length(g)
            if dl is not None and dl <= 2 and g.order <= 1000:
                v = satisfies_tower_identity(g, (1, 2))
                assert v.holds and v.mode == "exhaustive", name


class TestWordIdentity:
    def test_commutator_word(self):
        assert satisfies_word_identity(group("c6"), parse_word("[x1,y]")).holds
        v = satisfies_word_identity(group("s3"), parse_word("[x1,y]"))
        assert not v.holds and v.witness

    def test_exponent_law(self):
        assert satisfies_word_identity(group("ut3_3"), parse_word("x1^3")).holds
        assert not satisfies_word_identity(group("c6"), parse_word("x1^3")).holds


class TestContainment:
    def test_index(self):
        assert containment_index([1]) == (1,)
        assert containment_index([1, 1]) == (1, 2)
        assert containment_index([1, 1, 1]) == (1, 2, 2)
        assert containment_index([2, 3, 1]) == (1, 4, 3)

    def test_abelian(self):
        g = group("c6")
        rep = check_product_containment(g, [g.trivial(), g.whole()], [1])
        assert rep.passed and rep.conclusion_index == [1]

    def test_s3(self):
        g = group("s3")
        a3 = normal_closure(g, [g.index_of("(1 2 3)")])
        rep = check_product_containment(g, [g.trivial(), a3, g.whole()], [1, 1])
        assert rep.passed and rep.conclusion_index == [1, 2]

    def test_s4(self):
        g = group("s4")
        chain = upper_radical_series(g).terms
        rep = check_product_containment(g, chain, [1, 1, 1])
        assert rep.passed and rep.conclusion_index == [1, 2, 2]
        assert rep.conclusion.mode == "exhaustive"

    def test_failed_hypothesis(self):
        g = group("s3")
        rep = check_product_containment(g, [g.trivial(), g.whole()], [1])
        assert not rep.hypothesis_ok and not rep.passed
        rep = check_product_containment(g, [g.trivial(), g.whole()], [1, 2])
        assert not rep.hypothesis_ok


class TestSurvey:
    def test_min_generators(self):
        assert min_generators(group("c1")) == (0, True)
        assert min_generators(group("c12")) == (1, True)
        assert min_generators(group("s4")) == (2, True)
        assert min_generators(group("ut3_2")) == (2, True)
        assert min_generators(group("d2")) == (2, True)

    def test_classes(self):
        groups = [(n, g) for n, g in catalog_groups() if g.order <= 200]
        assert theorem1_survey(groups, 1).max_class == 1
        t2 = theorem1_survey(groups, 2)
        assert t2.max_class <= 3
        assert "s3" in t2.excluded
        assert all(c <= 3 for c in t2.cells().values())
