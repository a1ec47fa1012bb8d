import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fillgraph.census import (
    Bounds, canonical_code, enumerate_fat_graphs,
    enumerate_parallel_family_labelings, enumerate_ribbon_graphs,
    naive_fat_graphs,
)
from fillgraph.campaigns import CampaignSpec, ResourceLimit, run_campaign
from fillgraph.surface import FatGraph, vertex_flip


def relabel(g: FatGraph, seed: int) -> FatGraph:
    rng = random.Random(seed)
    vperm = list(range(g.n_vertices))
    rng.shuffle(vperm)
    eids = list(g.edge_ids)
    eperm = {e: i for i, e in enumerate(rng.sample(eids, len(eids)))}
    swap = {e: rng.choice([0, 1]) for e in eids}
    slots = [None] * g.n_vertices
    labels = [None] * g.n_vertices
    for v in range(g.n_vertices):
        rot = rng.randrange(max(1, g.degree(v)))
        ring = list(g.slots[v])[rot:] + list(g.slots[v])[:rot]
        lab = list(g.labels[v])[rot:] + list(g.labels[v])[:rot]
        slots[vperm[v]] = [2 * eperm[d >> 1] + ((d & 1) ^ swap[d >> 1]) for d in ring]
        labels[vperm[v]] = lab
    return FatGraph(slots, labels,
                    signs={eperm[e]: g.sign(e) for e in eids},
                    twists={eperm[e]: g.twist(e) for e in eids},
                    n_partner=g.n_partner, delta=g.delta)


class TestCanonicalCode:
    def test_invariant_under_relabelling(self):
        graphs = list(itertools.islice(enumerate_ribbon_graphs(3, min_edges=2), 40))
        for g in graphs:
            code = canonical_code(g, labelled=False, signed=False)
            for seed in range(4):
                h = relabel(g, seed)
                assert canonical_code(h, labelled=False, signed=False) == code

    def test_invariant_under_vertex_flip(self):
        for g in itertools.islice(enumerate_ribbon_graphs(3, min_edges=3), 30):
            code = canonical_code(g, labelled=False, signed=False)
            for v in range(g.n_vertices):
                assert canonical_code(vertex_flip(g, v),
                                      labelled=False, signed=False) == code

    def test_separates_small_classes(self):
        codes = [canonical_code(g, labelled=False, signed=False)
                 for g in enumerate_ribbon_graphs(3)]
        assert len(codes) == len(set(codes))

    def test_label_rotation_invariance(self):
        g = FatGraph([[0, 2], [1, 3]], [[1, 2], [2, 1]], n_partner=2)
        h = FatGraph([[0, 2], [1, 3]], [[2, 1], [1, 2]], n_partner=2)
        assert canonical_code(g) == canonical_code(h)

    def test_sign_marks_distinct(self):
        g = FatGraph([[0, 2], [1, 3]], [[1, 2], [2, 1]], n_partner=2)
        h = FatGraph(g.slots, g.labels, signs={0: -1, 1: 1}, n_partner=2)
        assert canonical_code(g) != canonical_code(h)


class TestRibbonEnumeration:
    # class counts per edge count, frozen from the first verified run and
    # cross-checked against the naive oracle below at tiny sizes
    COUNTS = {0: 1, 1: 3, 2: 11, 3: 63, 4: 514}

    @pytest.mark.parametrize("e,count", sorted(COUNTS.items()))
    def test_class_counts(self, e, count):
        assert sum(1 for _ in enumerate_ribbon_graphs(e, min_edges=e)) == count

    def test_no_duplicates_e4(self):
        codes = [canonical_code(g, labelled=False, signed=False)
                 for g in enumerate_ribbon_graphs(4, min_edges=4)]
        assert len(codes) == len(set(codes))

    def test_monotone_under_bounds(self):
        small = {canonical_code(g, labelled=False, signed=False)
                 for g in enumerate_ribbon_graphs(2)}
        big = {canonical_code(g, labelled=False, signed=False)
               for g in enumerate_ribbon_graphs(3)}
        assert small <= big


class TestLabelledEnumeration:
    def test_tiny_bounds_against_naive_oracle(self):
        for nv, n_partner, delta in [(1, 1, 2), (1, 2, 1), (2, 1, 1),
                                     (2, 2, 1), (1, 2, 2)]:
            mine = {canonical_code(g) for g in enumerate_fat_graphs(
                Bounds(max_vertices=nv, max_edges=6,
                       n_partner=(n_partner, n_partner), delta=(delta, delta)))
                if g.n_vertices == nv}
            naive = naive_fat_graphs(nv, n_partner, delta)
            assert mine == naive, (nv, n_partner, delta, len(mine), len(naive))

    def test_emitted_graphs_are_admissible(self):
        from fillgraph.pairing import no_trivial_loops, validate_labels
        for g in enumerate_fat_graphs(Bounds(2, 4, (2, 2), (1, 1))):
            assert validate_labels(g) and no_trivial_loops(g)
            assert len(g.components()) == 1

    def test_no_duplicate_classes(self):
        codes = [canonical_code(g) for g in
                 enumerate_fat_graphs(Bounds(2, 4, (1, 3), (1, 2)))]
        assert len(codes) == len(set(codes))


class TestFamilyLabelings:
    def test_assignment_count(self):
        # n^2 start pairs times two direction pairings
        asg = list(enumerate_parallel_family_labelings(4, 3, sign=1))
        assert len(asg) == 4 * 4 * 2

    @given(st.integers(2, 10), st.integers(2, 5))
    @settings(max_examples=40, deadline=None)
    def test_tags_recompute(self, n, size):
        for asg in itertools.islice(
                enumerate_parallel_family_labelings(n, size, sign=1), 8):
            for i in asg["s_cycle_positions"]:
                pair = frozenset(asg["labels"][i])
                assert pair == frozenset(asg["labels"][i + 1]) and len(pair) == 2
            for i in asg["level_positions"]:
                a, b = asg["labels"][i]
                assert a == b

    def test_negative_families_have_no_levels(self):
        for asg in enumerate_parallel_family_labelings(5, 4, sign=-1):
            assert not asg["level_positions"] and not asg["s_cycle_positions"]


class TestCampaignDriver:
    def test_reports_identical_across_worker_counts(self):
        spec1 = CampaignSpec.make("sec8-euler", workers=1, max_count=15)
        spec2 = CampaignSpec.make("sec8-euler", workers=2, max_count=15)
        assert (run_campaign(spec1).canonical_bytes()
                == run_campaign(spec2).canonical_bytes())

    def test_resource_limit_and_resume(self):
        spec = CampaignSpec.make("sec8-euler", max_count=15, max_instances=300)
        with pytest.raises(ResourceLimit) as exc:
            run_campaign(spec)
        partial = exc.value.report
        assert partial.partial and partial.resume_token
        full = run_campaign(CampaignSpec.make("sec8-euler", max_count=15))
        resumed = run_campaign(CampaignSpec.make("sec8-euler", max_count=15),
                               resume_token=partial.resume_token)
        total = partial.instances_generated + resumed.instances_generated
        assert total == full.instances_generated

    def test_unknown_campaign_rejected(self):
        with pytest.raises(ValueError):
            CampaignSpec.make("nonsense")


class TestFamilyProgressionInvariant:
    def test_enumerated_families_are_arithmetic(self):
        from fillgraph.detect import parallel_families
        checked = 0
        for g in enumerate_fat_graphs(Bounds(2, 4, (2, 4), (1, 2))):
            for fam in parallel_families(g):
                assert fam.arithmetic, (g.data(), fam)
                checked += 1
        assert checked > 100
