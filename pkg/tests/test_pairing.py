import pytest

from fillgraph.pairing import (
    GraphPair, check_vertex_count_bounds, no_trivial_loops, validate_labels,
    validate_pair,
)
from fillgraph.surface import SURFACE_KINDS, FatGraph

from util import build_pair


def one_vertex(labels, n_partner, delta=1, **kw):
    k = len(labels)
    assert k % 2 == 0
    return FatGraph([list(range(k))], [labels], n_partner=n_partner, delta=delta, **kw)


class TestValidateLabels:
    def test_ascending(self):
        assert validate_labels(one_vertex([1, 2, 3, 4], 4))

    def test_descending(self):
        assert validate_labels(one_vertex([3, 2, 1, 4], 4))

    def test_delta_two(self):
        assert validate_labels(one_vertex([1, 2, 3, 4, 1, 2, 3, 4], 4, delta=2))

    def test_non_consecutive(self):
        v = validate_labels(one_vertex([1, 3, 2, 4], 4))
        assert not v and v.code == "NonConsecutiveLabels" and v.detail == (0, 1)

    def test_wrap_break(self):
        v = validate_labels(one_vertex([1, 2, 3, 1], 4))
        assert not v and v.detail == (0, 3)

    def test_wrong_degree(self):
        v = validate_labels(one_vertex([1, 2, 3, 4], 4, delta=2))
        assert not v and v.code == "WrongDegree"

    def test_out_of_range_label(self):
        v = validate_labels(one_vertex([1, 2, 3, 9], 4))
        assert not v

    def test_n_partner_one(self):
        assert validate_labels(one_vertex([1, 1], 1, delta=2))

    def test_direction_free_per_vertex(self):
        g = FatGraph([[0, 2, 4], [1, 5, 3]], [[1, 2, 3], [1, 3, 2]], n_partner=3)
        assert validate_labels(g)


class TestNoTrivialLoops:
    def test_theta_holds(self):
        assert no_trivial_loops(FatGraph([[0, 2, 4], [1, 5, 3]]))

    def test_monogon_violated(self):
        v = no_trivial_loops(FatGraph([[0, 2, 1, 3, 4, 5]]))
        assert not v and v.detail == (2,)

    def test_loop_with_hole_on_monogon_side_is_not_trivial(self):
        g = FatGraph([[0, 2, 1, 3, 4, 5]], holes=[5])
        assert no_trivial_loops(g)


class TestVertexCountBounds:
    @pytest.mark.parametrize("tag,n,ok", [
        ("S", 3, True), ("S", 2, False), ("P", 2, True), ("P", 1, False),
        ("A", 1, True), ("T", 1, True),
    ])
    def test_bounds(self, tag, n, ok):
        g = FatGraph([[2 * i, 2 * i + 1] for i in range(n)]) if n else None
        # loops keep each vertex non-empty; bound depends only on n
        v = check_vertex_count_bounds(g, SURFACE_KINDS[tag])
        assert bool(v) == ok


class TestValidatePair:
    @pytest.mark.parametrize("seed,n1,n2,delta", [
        (0, 2, 3, 1), (1, 2, 2, 2), (2, 3, 4, 1), (3, 1, 2, 1), (7, 4, 3, 2),
    ])
    def test_generated_pairs_valid(self, seed, n1, n2, delta):
        p = build_pair(seed, n1, n2, delta)
        assert validate_labels(p.g1) and validate_labels(p.g2)
        assert validate_pair(p)

    def test_single_sign_flip_breaks_parity(self):
        p = build_pair(0, 2, 3, 1)
        signs = dict(p.g1.signs)
        signs[2] = -signs[2]
        g1 = FatGraph(p.g1.slots, p.g1.labels, signs=signs, twists=p.g1.twists,
                      n_partner=p.g1.n_partner, delta=p.g1.delta)
        v = validate_pair(GraphPair(g1, p.g2, p.delta, p.edge_bijection))
        assert not v and v.code == "ParityViolation" and v.detail == (2,)

    def test_edge_count_mismatch(self):
        p = build_pair(0, 2, 3, 1)
        # delta=1, n1=2, n2=3 forces exactly three edges; drop one endpoint pair
        g1 = FatGraph([[0, 2], [1, 3]], [[1, 2], [2, 1]], n_partner=3, delta=1)
        v = validate_pair(GraphPair(g1, p.g2, 1, ((0, 0), (1, 1))))
        assert not v and v.code == "EdgeCountMismatch"

    def test_swapping_bijection_breaks_duality(self):
        p = build_pair(2, 3, 4, 1)
        m = dict(p.edge_bijection)
        # swap two images whose endpoint data differ
        keys = list(m)
        for a in keys:
            for b in keys:
                if a < b:
                    ma = sorted((v, p.g2.labels[v][i]) for v, i in p.g2.endpoints(m[a]))
                    mb = sorted((v, p.g2.labels[v][i]) for v, i in p.g2.endpoints(m[b]))
                    if ma != mb:
                        m[a], m[b] = m[b], m[a]
                        q = GraphPair(p.g1, p.g2, p.delta, tuple(sorted(m.items())))
                        vd = validate_pair(q)
                        assert not vd and vd.code == "DualityViolation"
                        return
        pytest.skip("no distinguishable edge pair in this instance")

    def test_degree_identity(self):
        p = build_pair(5, 3, 4, 2)
        total = sum(p.g1.degree(v) for v in range(p.g1.n_vertices))
        assert total == 2 * p.g1.n_edges == p.delta * 3 * 4

    def test_multiset_duality(self):
        p = build_pair(6, 3, 2, 2)
        m = p.map12
        lhs = sorted(tuple(sorted(p.g1.label_pair(e))) for e in p.g1.edge_ids)
        rhs = sorted(tuple(sorted(w + 1 for w, _ in p.g2.endpoints(m[e])))
                     for e in p.g1.edge_ids)
        assert lhs == rhs
