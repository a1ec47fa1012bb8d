"""Shared test fixtures: a transverse-curve pair generator.

Arcs of the intersection of two surfaces meet the boundary torus in points;
each point lies on one curve of each family, so it occupies one labelled slot
in each graph.  Building both graphs from one random point matching therefore
satisfies label validity, duality and the parity rule by construction.
"""

import random

from fillgraph.pairing import GraphPair
from fillgraph.surface import FatGraph


def build_pair(seed: int, n1: int, n2: int, delta: int) -> GraphPair:
    rng = random.Random(seed)
    total = delta * n1 * n2
    assert total % 2 == 0, "delta * n1 * n2 must be even"

    def label_rings(n_vertices, n_partner):
        rings = []
        for _ in range(n_vertices):
            start = rng.randrange(n_partner)
            step = rng.choice([1, -1])
            rings.append([(start + step * k) % n_partner + 1
                          for k in range(delta * n_partner)])
        return rings

    labels1 = label_rings(n1, n2)
    labels2 = label_rings(n2, n1)

    # match the slot sets of the two graphs point by point: a slot of vertex i
    # labelled j on side 1 is the same intersection point as a slot of vertex
    # j labelled i on side 2
    side2_slots = {}
    for j in range(n2):
        for k, lab in enumerate(labels2[j]):
            side2_slots.setdefault((j, lab), []).append(k)
    for slots in side2_slots.values():
        rng.shuffle(slots)
    points = []  # (g1 vertex, g1 slot, g2 vertex, g2 slot)
    for i in range(n1):
        for k, lab in enumerate(labels1[i]):
            k2 = side2_slots[(lab - 1, i + 1)].pop()
            points.append((i, k, lab - 1, k2))

    rng.shuffle(points)
    slots1 = [[None] * (delta * n2) for _ in range(n1)]
    slots2 = [[None] * (delta * n1) for _ in range(n2)]
    signs1, signs2, twists1, twists2 = {}, {}, {}, {}
    for e in range(total // 2):
        p, q = points[2 * e], points[2 * e + 1]
        slots1[p[0]][p[1]] = 2 * e
        slots1[q[0]][q[1]] = 2 * e + 1
        slots2[p[2]][p[3]] = 2 * e
        slots2[q[2]][q[3]] = 2 * e + 1
        s = rng.choice([1, -1])
        signs1[e], signs2[e] = s, -s
        twists1[e] = rng.choice([0, 1])
        twists2[e] = rng.choice([0, 1])

    g1 = FatGraph(slots1, labels1, signs=signs1, twists=twists1,
                  n_partner=n2, delta=delta)
    g2 = FatGraph(slots2, labels2, signs=signs2, twists=twists2,
                  n_partner=n1, delta=delta)
    bij = tuple((e, e) for e in range(total // 2))
    return GraphPair(g1, g2, delta, bij)
