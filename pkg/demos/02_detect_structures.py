"""Structure detection on labelled intersection graphs.

Every slot of a vertex carries the label of the partner-surface curve it
meets, so labels read 1..n_partner around each vertex, repeated once per
intersection of the two filling slopes.  The detectors find level edges,
parallel families, Scharlemann cycles of every flavor, x-faces and
two-cornered cycles, each as a re-verifiable certificate.
"""

from fillgraph import (
    FatGraph, SURFACE_KINDS, classify_edges, find_generalized_s_cycles,
    find_scharlemann_cycles, find_two_cornered_pb, find_two_cornered_sa,
    find_x_cycles, find_x_faces, parallel_families, reduced_graph, sl_labels,
    verify_certificate,
)

print("== an S-cycle: two parallel positive edges with label pair {1,2} ==")
g = FatGraph([[0, 2], [1, 3]], [[1, 2], [2, 1]], n_partner=2, holes=[1])
for cert in find_scharlemann_cycles(g):
    print(f"  {cert.kind} with labels {set(cert.labels)} on edges {cert.edges}")
    print(f"  re-verifies from raw data: {verify_certificate(g, cert)}")
print(f"  sl-labels against a sphere partner: "
      f"{sorted(sl_labels(g, SURFACE_KINDS['S']))}")

print("\n== a generalized S-cycle: a level edge mid-family ==")
h = FatGraph([[0, 2, 4], [5, 3, 1]], [[1, 2, 3], [1, 2, 3]], n_partner=3)
levels = [c for c in classify_edges(h) if c.is_level]
print(f"  level edges: {[(c.edge_id, c.level_label) for c in levels]}")
for cert in find_generalized_s_cycles(h):
    print(f"  triple {cert.edges}, middle level label {cert.labels[0]}")

print("\n== parallel families and the reduced graph ==")
fams = parallel_families(h)
for fam in fams:
    print(f"  family {fam.edges}: labels {fam.labels_a} / {fam.labels_b}")
red, mult = reduced_graph(h)
print(f"  reduced graph edges with multiplicities: {mult}")

print("\n== x-cycles and x-faces ==")
for x in (1, 2):
    cycles = find_x_cycles(g, x)
    faces = find_x_faces(g, x)
    print(f"  label {x}: {len(cycles)} x-cycles, {len(faces)} x-faces")

print("\n== two-cornered cycles ==")
pb = FatGraph([[0, 2], [1, 3]], [[1, 2], [1, 3]], n_partner=3)
for cert in find_two_cornered_pb(pb):
    print(f"  non-orientable-partner face on edges {cert.edges}: "
          f"corner labels {sorted(cert.labels)}")
sa = FatGraph([[4, 0, 2], [3, 1, 5]], [[1, 2, 3], [4, 1, 2]], n_partner=4)
for cert in find_two_cornered_sa(sa):
    print(f"  orientable-partner face on edges {cert.edges}, "
          f"shares a {{1,2}}-Scharlemann edge: "
          f"{cert.condition('contains_scharlemann_12_edge')}")
