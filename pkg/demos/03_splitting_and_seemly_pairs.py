"""The constructive pipeline: cut an x-face open, split its diagonals, and
extract the distinguished structures.

With a non-orientable partner (PB mode) splitting leaves only level 1-edges
as diagonals and an outermost one has two-cornered faces on both sides.
With an orientable partner (SA mode) the diagonals that survive belong to
{1,2}-Scharlemann cycles; they aggregate into a cluster whose dual forest
yields a seemly pair with the counting identity n / n+1 / 2n / n-1.
"""

from fillgraph import (
    FatGraph, PartnerArrangement, build_cluster, cut_x_face,
    extract_extremal_block, find_level1_pair, find_seemly_pair, find_x_faces,
    split_xface_along_diagonals, xface_in_block,
)

print("== PB mode: a level-one pair inside an x-face ==")
theta = FatGraph([[0, 2, 4], [1, 5, 3]], [[1, 2, 3], [1, 2, 3]], n_partner=3)
xfaces = [c for c in find_x_faces(theta, 2) if 0 not in c.edges]
print(f"x-faces for label 2 with interior content: {len(xfaces)}")
cut = cut_x_face(theta, xfaces[0], "PB")
print(f"cut face: {len(cut.runs)} boundary visits, "
      f"runs {[r.labels for r in cut.runs]}")
split = split_xface_along_diagonals(cut)
pair = find_level1_pair(split)
print(f"shared level 1-edge maps back to edge {cut.backs[pair.level_edge]}")
for cert in pair.faces:
    print(f"  adjacent face {cert.edges}: {cert.kind}, conditions all hold: "
          f"{cert.ok}")

print("\n== SA mode: a cluster and its seemly pair ==")
from fillgraph.blocks import CHORD_REAL, CutFace, Run

runs = (Run(0, (4, 1, 2, 3), (None, 10, 11, None)),
        Run(1, (4, 1, 2, 3), (None, 11, 10, None)))
cut = CutFace(4, 3, "SA", runs, (0, 1), ((10, 1), (11, 1)),
              ((10, CHORD_REAL), (11, CHORD_REAL)), (), 12)
split = split_xface_along_diagonals(cut)
cluster = build_cluster(split)
print(f"cluster: {len(cluster.scharlemann)} Scharlemann cycle(s), "
      f"{len(cluster.two_cornered)} two-cornered, "
      f"twelve-edges {cluster.twelve_edges}")
arr = PartnerArrangement(order=cluster.twelve_edges, gap03=0)
pair = find_seemly_pair(split, cluster, arr)
print(f"seemly pair counting: {dict(pair.counting)}")
print(f"all conditions hold: {pair.ok}")

print("\n== extremal blocks of the positive subgraph ==")
# two triangles sharing a cut vertex
bowtie = FatGraph([[0, 5], [2, 1], [4, 3, 6, 11], [8, 7], [10, 9]])
block = extract_extremal_block(bowtie)
print(f"block vertices {block.vertices}, ghost {block.ghost} "
      f"({block.ghost_reason})")
cert, transcript = xface_in_block(bowtie, block, frozenset())
print(f"x-face found inside the block support for label "
      f"{transcript['label']}: {cert is not None}")
