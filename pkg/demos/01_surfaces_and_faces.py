"""Twisted ribbon graphs: faces, surfaces, sub-embeddings, disk tests.

A graph embedded in a surface is a rotation system: each vertex carries a
cyclic sequence of darts (half-edges), each edge a twist bit.  Face tracing
recovers the surface.
"""

from fillgraph import (
    FatGraph, classify_surface, lies_in_disk, regions_of_subgraph,
    subgraph_embedding, trace_faces,
)

print("== one vertex, one untwisted loop ==")
g = FatGraph([[0, 1]])
faces = trace_faces(g)
rep = classify_surface(g)
print(f"faces: {len(faces)}, euler: {rep.euler}, kind: {rep.kind.tag}  (a sphere)")

print("\n== the same loop with a twist ==")
g = FatGraph([[0, 1]], twists={0: 1})
rep = classify_surface(g)
print(f"faces: {len(trace_faces(g))}, orientable: {rep.orientable}, "
      f"kind: {rep.kind.tag}  (a projective plane)")

print("\n== two interleaved loops make a torus ==")
g = FatGraph([[0, 2, 1, 3]])
rep = classify_surface(g)
print(f"V-E+F = 1-2+{len(trace_faces(g))} = {rep.euler}, kind: {rep.kind.tag}")

print("\n== the planar theta graph ==")
theta = FatGraph([[0, 2, 4], [1, 5, 3]])
for f in trace_faces(theta):
    print(f"  face through darts {f.darts}")
print(f"kind: {classify_surface(theta).kind.tag}")

print("\n== sub-embeddings keep the rotation ==")
sub = subgraph_embedding(theta, [0, 1])
print(f"keeping two of three edges: {len(trace_faces(sub))} faces "
      f"(a bigon and the outside)")

print("\n== complementary regions ==")
# an annulus: two parallel edges, one puncture in each complementary disk
ann = FatGraph([[0, 2], [1, 3]], holes=[0, 1])
print(f"ambient surface: {classify_surface(ann).kind.tag}")
for r in regions_of_subgraph(ann, [0, 1]).regions:
    print(f"  region: euler={r.euler}, boundary circles={r.boundary_circles},"
          f" kind={r.kind}")

print("\n== which subgraphs lie inside a disk? ==")
torus = FatGraph([[0, 2, 1, 3, 4, 5]])  # two essential loops plus a small one
for e, expected in [(0, "essential"), (2, "contractible")]:
    print(f"  loop {e}: lies in a disk: {lies_in_disk(torus, [e])}  ({expected})")
