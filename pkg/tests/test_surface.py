"""Surface core: face tracing, classification, sub-embeddings, regions.

Expected face counts below were derived by hand-tracing dart orbits before
the implementation existed; the permutation-composition oracle in
test_census.py re-checks tracing independently on enumerated graphs.
"""

import pytest

from fillgraph.surface import (
    FatGraph, SURFACE_KINDS, HoleCollision, StructuralError, DisconnectedSubgraph,
    classify_surface, lies_in_disk, orientation_flips, regions_of_subgraph,
    subgraph_embedding, trace_faces, vertex_flip,
)


def untwisted_loop(**kw):
    return FatGraph([[0, 1]], **kw)


def twisted_loop(**kw):
    return FatGraph([[0, 1]], twists={0: 1}, **kw)


def theta_planar():
    # two vertices, three parallel untwisted edges, mirrored rotations
    return FatGraph([[0, 2, 4], [1, 5, 3]])


def theta_torus():
    # same graph, aligned rotations: traces to a torus
    return FatGraph([[0, 2, 4], [1, 3, 5]])


def two_interleaved_loops():
    return FatGraph([[0, 2, 1, 3]])


def torus_with_small_loop():
    # interleaved essential loops plus a contractible loop bounding a monogon
    return FatGraph([[0, 2, 1, 3, 4, 5]])


class TestTraceFaces:
    def test_untwisted_loop_sphere(self):
        faces = trace_faces(untwisted_loop())
        assert len(faces) == 2
        assert sorted(f.darts for f in faces) == [(0,), (1,)]

    def test_twisted_loop_projective_plane(self):
        faces = trace_faces(twisted_loop())
        assert len(faces) == 1
        assert sorted(faces[0].darts) == [0, 1]

    def test_theta_three_faces(self):
        faces = trace_faces(theta_planar())
        assert [f.darts for f in faces] == [(0, 5), (1, 2), (3, 4)]

    def test_theta_torus_one_face(self):
        faces = trace_faces(theta_torus())
        assert len(faces) == 1
        assert len(faces[0]) == 6

    def test_interleaved_loops_torus(self):
        faces = trace_faces(two_interleaved_loops())
        assert len(faces) == 1
        assert sorted(faces[0].darts) == [0, 1, 2, 3]

    def test_every_dart_on_exactly_one_face(self):
        for g in [untwisted_loop(), twisted_loop(), theta_planar(),
                  theta_torus(), two_interleaved_loops(), torus_with_small_loop()]:
            seen = [d for f in trace_faces(g) for d in f.darts]
            assert sorted(seen) == sorted(d for ring in g.slots for d in ring)

    def test_full_graph_corners_have_empty_span(self):
        for f in trace_faces(theta_planar()):
            assert all(c.span == () for c in f.corners)

    def test_isolated_vertex_traces_one_face(self):
        g = FatGraph([[0, 1], []])
        faces = trace_faces(g)
        assert len(faces) == 3
        assert sum(1 for f in faces if not f.darts) == 1

    def test_dart_occurring_twice_rejected(self):
        with pytest.raises(StructuralError):
            FatGraph([[0, 0, 1]])

    def test_missing_partner_dart_rejected(self):
        with pytest.raises(StructuralError):
            FatGraph([[0, 2, 3]])


class TestClassifySurface:
    def test_sphere(self):
        rep = classify_surface(untwisted_loop())
        assert (rep.orientable, rep.euler, rep.boundary_count) == (True, 2, 0)
        assert rep.kind.tag == "S"

    def test_projective_plane(self):
        rep = classify_surface(twisted_loop())
        assert (rep.orientable, rep.euler, rep.boundary_count) == (False, 1, 0)
        assert rep.kind.tag == "P"

    def test_annulus_via_holes(self):
        g = untwisted_loop(holes=[0, 1])
        rep = classify_surface(g)
        assert (rep.orientable, rep.euler, rep.boundary_count) == (True, 0, 2)
        assert rep.kind.tag == "A"

    def test_torus(self):
        rep = classify_surface(two_interleaved_loops())
        assert rep.kind.tag == "T"

    def test_klein_bottle(self):
        g = FatGraph([[0, 2, 1, 3]], twists={0: 1})
        rep = classify_surface(g)
        assert (rep.orientable, rep.euler, rep.boundary_count) == (False, 0, 0)
        assert rep.kind.tag == "K"

    def test_mobius_band(self):
        g = twisted_loop(holes=[0])
        rep = classify_surface(g)
        assert rep.kind.tag == "B"

    def test_declared_match_and_mismatch(self):
        ok = twisted_loop(declared=SURFACE_KINDS["P"])
        assert classify_surface(ok).matches_declared
        bad = twisted_loop(declared=SURFACE_KINDS["S"])
        rep = classify_surface(bad)
        assert not rep.matches_declared and "declared S" in rep.mismatch

    def test_hole_collision(self):
        g = FatGraph([[0, 2, 4], [1, 5, 3]], holes=[0, 5])  # same face of theta
        with pytest.raises(HoleCollision):
            classify_surface(g)

    def test_all_untwisted_is_orientable(self):
        assert orientation_flips(theta_torus()) is not None

    def test_one_twist_on_cycle_breaks_orientability(self):
        g = FatGraph([[0, 2, 4], [1, 5, 3]], twists={1: 1})
        assert orientation_flips(g) is None

    def test_twist_on_bridge_is_orientable(self):
        g = FatGraph([[0], [1]], twists={0: 1})  # single bridge edge
        assert orientation_flips(g) is not None


class TestVertexFlip:
    def test_flip_preserves_face_count_and_orientability(self):
        for g in [theta_planar(), theta_torus(), two_interleaved_loops(),
                  FatGraph([[0, 2, 4], [1, 5, 3]], twists={1: 1})]:
            for v in range(g.n_vertices):
                h = vertex_flip(g, v)
                assert len(trace_faces(h)) == len(trace_faces(g))
                assert (orientation_flips(h) is None) == (orientation_flips(g) is None)

    def test_flip_is_involution(self):
        g = theta_planar()
        assert vertex_flip(vertex_flip(g, 0), 0) == g


class TestSubgraph:
    def test_keep_all_is_identity(self):
        g = theta_planar()
        assert subgraph_embedding(g, g.edge_ids) == g

    def test_keep_all_identity_on_face_multisets(self):
        g = torus_with_small_loop()
        a = sorted(tuple(sorted(f.darts)) for f in trace_faces(g))
        b = sorted(tuple(sorted(f.darts)) for f in
                   trace_faces(subgraph_embedding(g, g.edge_ids)))
        assert a == b

    def test_keep_none_gives_isolated_vertices(self):
        g = theta_planar()
        sub = subgraph_embedding(g, [])
        assert sub.n_edges == 0 and sub.n_vertices == 2
        assert len(trace_faces(sub)) == 2  # one face per isolated vertex

    def test_theta_keep_two_edges(self):
        sub = subgraph_embedding(theta_planar(), [0, 1])
        faces = trace_faces(sub)
        assert len(faces) == 2  # bigon plus outer face
        assert sub.n_vertices - sub.n_edges + len(faces) == 2

    def test_labels_and_attributes_retained(self):
        g = FatGraph([[0, 2, 4], [1, 5, 3]],
                     labels=[[1, 2, 3], [1, 3, 2]],
                     signs={0: -1, 1: 1, 2: -1}, twists={2: 1},
                     n_partner=3, delta=1)
        sub = subgraph_embedding(g, [0, 2])
        assert sub.labels == ((1, 3), (1, 3))
        assert sub.signs == {0: -1, 2: -1}
        assert sub.twists == {0: 0, 2: 1}


class TestRegions:
    def test_empty_subgraph_one_region(self):
        g = theta_planar()
        dec = regions_of_subgraph(g, [], [])
        assert len(dec.regions) == 1
        r = dec.regions[0]
        assert r.interior_vertices == (0, 1) and r.euler == 2

    def test_scycle_pair_on_annulus_gives_two_annuli(self):
        # two vertices joined by two parallel edges; ambient annulus with one
        # puncture in each complementary disk
        g = FatGraph([[0, 2], [1, 3]], holes=[0, 1])
        assert classify_surface(g).kind.tag == "A"
        dec = regions_of_subgraph(g, [0, 1])
        kinds = sorted(r.kind for r in dec.regions)
        assert kinds == ["annulus", "annulus"]

    def test_cycle_in_disk_region_contains_other_vertices(self):
        # triangle plus an extra vertex hanging inside one face
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]])
        # edges: 0=(v0,v1) 1=(v1,v2) 2=(v2,v0) 3=(v0,v3)
        assert classify_surface(g).kind.tag == "S"
        dec = regions_of_subgraph(g, [0, 1, 2])
        inner = [r for r in dec.regions if r.interior_vertices]
        assert len(inner) == 1 and inner[0].interior_vertices == (3,)
        assert inner[0].kind == "disk"

    def test_floating_cut_vertex_counts_as_boundary(self):
        g = FatGraph([[0, 6, 5], [2, 1], [4, 3], [7]])
        dec = regions_of_subgraph(g, [0, 1, 2], [0, 1, 2, 3])
        inner = [r for r in dec.regions if r.floating_cut_vertices]
        assert len(inner) == 1
        assert inner[0].boundary_circles == 2 and inner[0].euler == 0


class TestLiesInDisk:
    def test_connected_subgraph_on_sphere(self):
        g = theta_planar()
        assert lies_in_disk(g, [0])
        assert lies_in_disk(g, [0, 1])
        assert lies_in_disk(g, [0, 1, 2])

    def test_single_vertex_lies_in_disk(self):
        g = theta_planar()
        assert lies_in_disk(g, [], [0])

    def test_core_loop_of_annulus_does_not(self):
        g = untwisted_loop(holes=[0, 1])
        assert not lies_in_disk(g, [0])

    def test_essential_and_contractible_loops_on_torus(self):
        g = torus_with_small_loop()
        assert not lies_in_disk(g, [0])
        assert not lies_in_disk(g, [1])
        assert lies_in_disk(g, [2])

    def test_mobius_core_not_in_disk(self):
        g = twisted_loop()
        assert not lies_in_disk(g, [0])

    def test_disconnected_rejected(self):
        g = theta_planar()
        with pytest.raises(DisconnectedSubgraph):
            lies_in_disk(g, [], [0, 1])


class TestEulerInvariant:
    def test_chi_additive_over_components(self):
        g = FatGraph([[0, 1], [2, 3], []], twists={1: 1})
        faces = trace_faces(g)
        chi = g.n_vertices - g.n_edges + len(faces)
        assert chi == 2 + 1 + 2  # sphere + projective plane + lone-vertex sphere
