import pytest

from fillgraph.blocks import (
    CHORD_FRESH, CHORD_REAL, CHORD_RELABELED, Cluster, CutFace, LevelEdgeMissing,
    ModeLabelClash, NoBlock, PartnerArrangement, Run, SupportNotFound,
    block_x_faces, build_cluster, components_with_disk_support, cut_x_face,
    extract_extremal_block, find_level1_pair, find_seemly_pair,
    positive_components, positive_subgraph, split_xface_along_diagonals,
    xface_in_block,
)
from fillgraph.detect import find_scharlemann_cycles, find_x_faces, NoScharlemann
from fillgraph.surface import SURFACE_KINDS, FatGraph, classify_surface, trace_faces


def make_cut(n, x, mode, runs, chords, signs=None):
    """runs: list of (orig_vertex, labels, chord_refs); chords named by ints."""
    chord_ids = sorted({c for _, _, refs in runs for c in refs if c is not None})
    m = len(runs)
    sign = {c: (signs or {}).get(c, 1) for c in chord_ids}
    state = {c: CHORD_REAL for c in chord_ids}
    return CutFace(n, x, mode,
                   tuple(Run(v, tuple(labs), tuple(refs)) for v, labs, refs in runs),
                   tuple(range(m)),
                   tuple(sorted(sign.items())), tuple(sorted(state.items())),
                   (), max(chord_ids, default=-1) + 1)


def minimal_pb_cut():
    # two runs [3,1,2] joined by x-edges (x=2), one level 1-chord inside
    return make_cut(3, 2, "PB", [
        (0, (3, 1, 2), (None, 10, None)),
        (1, (3, 1, 2), (None, 10, None)),
    ], chords=[10])


def two_diagonal_pb_cut():
    # nested (3,1)- and (1,3)-chords; contains a {3,1}-Scharlemann cycle so it
    # is PB-inadmissible, but exercises the splitting mechanics
    return make_cut(3, 2, "PB", [
        (0, (2, 3, 1, 2), (None, 10, 11, None)),
        (1, (2, 3, 1, 2), (None, 11, 10, None)),
    ], chords=[10, 11])


def minimal_sa_cut():
    # S-cycle {1,2} of nested chords plus its two adjacent two-cornered faces
    return make_cut(4, 3, "SA", [
        (0, (4, 1, 2, 3), (None, 10, 11, None)),
        (1, (4, 1, 2, 3), (None, 11, 10, None)),
    ], chords=[10, 11])


def pb_theta_graph():
    # full graph: planar theta with a level 1-edge and two positive 2-edges
    return FatGraph([[0, 2, 4], [1, 5, 3]], [[1, 2, 3], [1, 2, 3]], n_partner=3)


class TestCutFace:
    def test_validate_and_materialize(self):
        cut = minimal_pb_cut()
        cut.validate()
        g = cut.to_fatgraph()
        assert g.n_vertices == 2 and g.n_edges == 3
        rep = classify_surface(g)
        assert (rep.euler, rep.boundary_count) == (1, 1)  # a disk

    def test_interior_x_rejected(self):
        with pytest.raises(Exception):
            make_cut(3, 2, "PB", [
                (0, (1, 2, 3), (None, 10, None)),
                (1, (3, 1, 2), (None, 10, None)),
            ], chords=[10]).validate()

    def test_crossing_chords_rejected(self):
        with pytest.raises(Exception):
            make_cut(4, 3, "SA", [
                (0, (4, 1, 2, 3), (None, 10, 11, None)),
                (1, (4, 1, 2, 3), (None, 10, 11, None)),
            ], chords=[10, 11]).validate()

    def test_cut_from_full_graph(self):
        g = pb_theta_graph()
        certs = find_x_faces(g, 2)
        with_interior = [c for c in certs if len(c.edges) == 2 and 0 not in c.edges]
        assert with_interior
        cut = cut_x_face(g, with_interior[0], "PB")
        assert len(cut.runs) == 2
        assert all(run.labels == (3, 1, 2) for run in cut.runs)
        assert cut.chord_ids() == (2,)
        assert cut.backs[2] == 0  # the interior chord is the level edge


class TestSplitting:
    def test_fixed_point_without_diagonals(self):
        cut = minimal_pb_cut()
        out = split_xface_along_diagonals(cut)
        assert out == cut

    def test_mode_gates(self):
        cut = minimal_pb_cut()
        with pytest.raises(ModeLabelClash):
            split_xface_along_diagonals(
                CutFace(cut.n_partner, 1, "PB", cut.runs, cut.bedges,
                        cut.chord_sign, cut.chord_state, cut.back_edges,
                        cut.next_id))
        sa = minimal_sa_cut()
        with pytest.raises(ModeLabelClash):
            split_xface_along_diagonals(
                CutFace(sa.n_partner, 2, "SA", sa.runs, sa.bedges,
                        sa.chord_sign, sa.chord_state, sa.back_edges,
                        sa.next_id))

    def test_split_mechanics(self):
        cut = two_diagonal_pb_cut()
        out = split_xface_along_diagonals(cut)
        states = out.states
        assert states[10] == CHORD_RELABELED and states[11] == CHORD_RELABELED
        # every run still ascends and ends at x-edges
        out.validate()
        # no real diagonals left
        assert all(states[c] != CHORD_REAL for c in out.chord_ids())

    def test_split_inserts_family_reaching_x(self):
        # nested loop chords (5,1) and (4,2) at one vertex, x=3, n=5: splitting
        # the inner (5,1)-chord inserts one fresh interior chord (labels 4,2)
        # and a level-x boundary edge, discarding the outer chord's side
        cut = make_cut(5, 3, "PB", [
            (0, (3, 4, 5, 1, 2, 3), (None, 11, 10, 10, 11, None)),
            (1, (2, 3), (None, None)),
        ], chords=[10, 11])
        out = split_xface_along_diagonals(cut)
        out.validate()
        fresh = sorted(out.synthetic_ids(fresh_only=True))
        assert out.states[10] == CHORD_RELABELED
        assert 11 not in out.states  # dropped with the discarded side
        assert len(fresh) == 1 and out.chord_labels(fresh[0]) in ((4, 2), (2, 4))
        gm = out.to_fatgraph()
        # the new boundary edge is a level x-edge (x reached at both ends)
        assert any(gm.label_pair(b) == (3, 3) for b in out.bedges)
        assert all(out.states[c] != CHORD_REAL for c in out.chord_ids())


class TestLevelOnePair:
    def test_minimal_pair(self):
        cut = split_xface_along_diagonals(minimal_pb_cut())
        pair = find_level1_pair(cut)
        assert pair.ok, pair.conditions
        assert {c.kind for c in pair.faces} == {"TwoCorneredPB"}

    def test_full_pipeline_from_graph(self):
        g = pb_theta_graph()
        certs = [c for c in find_x_faces(g, 2) if 0 not in c.edges]
        cut = cut_x_face(g, certs[0], "PB")
        pair = find_level1_pair(split_xface_along_diagonals(cut))
        assert pair.ok
        # the shared level edge maps back to the original level 1-edge
        assert cut.backs[pair.level_edge] == 0

    def test_missing_level_edge_escalates(self):
        cut = split_xface_along_diagonals(two_diagonal_pb_cut())
        with pytest.raises(LevelEdgeMissing):
            find_level1_pair(cut)

    def test_pb_inadmissible_fixture_has_scharlemann(self):
        # the escalating fixture violates the no-Scharlemann admissibility gate
        g = two_diagonal_pb_cut().to_fatgraph()
        assert find_scharlemann_cycles(g)


class TestClusterAndSeemly:
    def test_minimal_cluster(self):
        cut = split_xface_along_diagonals(minimal_sa_cut())
        cluster = build_cluster(cut)
        assert cluster.ok, cluster.conditions
        assert len(cluster.scharlemann) == 1
        assert len(cluster.two_cornered) == 2
        assert cluster.twelve_edges == (10, 11)

    def test_no_scharlemann_escalates(self):
        cut = make_cut(4, 3, "SA", [
            (0, (4, 1, 2, 3), (None, 10, 11, None)),
            (1, (2, 3), (None, None)),
            (2, (4, 1, 2, 3), (None, 11, 10, None)),
        ], chords=[10, 11], signs={10: -1, 11: -1})
        out = split_xface_along_diagonals(cut)
        with pytest.raises(NoScharlemann):
            build_cluster(out)

    def test_seemly_pair_counting_n1(self):
        cut = split_xface_along_diagonals(minimal_sa_cut())
        cluster = build_cluster(cut)
        arr = PartnerArrangement(order=(10, 11), gap03=0)
        pair = find_seemly_pair(cut, cluster, arr)
        assert pair.ok, pair.conditions
        counting = dict(pair.counting)
        assert counting["scharlemann_cycles"] == 1
        assert counting["two_cornered_cycles"] == 2
        assert counting["good_edges"] == 2
        assert counting["goods_outside_d_g"] == 0

    def test_seemly_requires_context(self):
        from fillgraph.blocks import PairRequired
        cut = split_xface_along_diagonals(minimal_sa_cut())
        cluster = build_cluster(cut)
        with pytest.raises(PairRequired):
            find_seemly_pair(cut, cluster, None)


def bowtie():
    # two triangles sharing vertex 2
    return FatGraph([[0, 5], [2, 1], [4, 3, 6, 11], [8, 7], [10, 9]])


class TestPositiveSubgraph:
    def test_all_negative(self):
        g = FatGraph([[0, 2], [1, 3]], signs={0: -1, 1: -1})
        assert positive_subgraph(g).n_edges == 0

    def test_components_with_singletons(self):
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]], signs={3: -1})
        comps = positive_components(g)
        sizes = sorted(len(vs) for vs, _ in comps)
        assert sizes == [1, 3]


class TestDiskSupports:
    def test_sphere_components_supported(self):
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]], signs={3: -1})
        out = components_with_disk_support(g, SURFACE_KINDS["S"])
        assert all(ok for _, _, ok in out)

    def test_modelling_error_flagged(self):
        g = FatGraph([[0, 1]], twists={0: 1})  # positive core of a Moebius band
        assert classify_surface(g).kind.tag == "P"
        with pytest.raises(SupportNotFound):
            components_with_disk_support(g, SURFACE_KINDS["P"])


class TestExtremalBlock:
    def test_triangle_block(self):
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]], signs={3: -1})
        blk = extract_extremal_block(g)
        assert blk.vertices == (0, 1, 2)
        assert blk.ghost is None
        assert set(blk.boundary_vertices) == {0, 1, 2}

    def test_bowtie_cut_vertex_ghost(self):
        g = bowtie()
        assert classify_surface(g).kind.tag == "S"
        blk = extract_extremal_block(g)
        assert blk.vertices == (0, 1, 2)
        assert blk.ghost == 2 and blk.ghost_reason == "cut"

    def test_sl_reselection(self):
        g = bowtie()
        blk = extract_extremal_block(g, sl_vertices=frozenset({0}))
        assert blk.vertices == (2, 3, 4)
        assert blk.ghost == 2

    def test_no_block(self):
        g = FatGraph([[0, 2], [1, 3]], signs={0: -1, 1: -1})
        with pytest.raises(NoBlock):
            extract_extremal_block(g)


class TestXFaceInBlock:
    def test_xface_found(self):
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]], signs={3: -1})
        blk = extract_extremal_block(g)
        cert, transcript = xface_in_block(g, blk, frozenset())
        assert cert is not None and transcript["label"] == 1

    def test_forbidden_labels_respected(self):
        from fillgraph.blocks import NoEligibleLabel
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]], signs={3: -1})
        blk = extract_extremal_block(g)
        with pytest.raises(NoEligibleLabel):
            xface_in_block(g, blk, frozenset({1}))
