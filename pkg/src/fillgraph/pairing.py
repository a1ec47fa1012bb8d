"""Label validity of a single graph and cross-consistency of a graph pair.

Vertices of the partner graph are numbered ``1..n_partner`` in the cyclic
order in which their curves meet the common boundary torus, which is why each
vertex must read the full label cycle ``delta`` times in one direction.
``0`` is accepted as an alias for ``n_partner`` at the I/O layer; internally
labels always live in ``1..n_partner``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .surface import FatGraph, SurfaceKind, trace_faces


def succ_label(x: int, n: int) -> int:
    return x % n + 1


def pred_label(x: int, n: int) -> int:
    return (x - 2) % n + 1


def labels_adjacent(a: int, b: int, n: int) -> bool:
    """|a - b| = 1 mod n, i.e. {a, b} is a corner pair of the full graph."""
    return b in (succ_label(a, n), pred_label(a, n))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    code: str = ""
    detail: tuple = ()

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def holds() -> "Verdict":
        return Verdict(True)

    @staticmethod
    def violated(code: str, *detail) -> "Verdict":
        return Verdict(False, code, tuple(detail))


def validate_labels(g: FatGraph) -> Verdict:
    """Each vertex must carry labels 1..n_partner repeated delta times, in
    ascending or descending cyclic order (direction free per vertex), and have
    degree delta * n_partner.  Reports the first offence in (vertex, slot)
    scan order."""
    n = g.n_partner
    want = g.delta * n
    for v in range(g.n_vertices):
        ring = g.labels[v]
        if len(ring) != want:
            return Verdict.violated("WrongDegree", v)
        if any(not 1 <= x <= n for x in ring):
            bad = next(i for i, x in enumerate(ring) if not 1 <= x <= n)
            return Verdict.violated("NonConsecutiveLabels", v, bad)
        if n == 1:
            continue
        asc = desc = True
        for i in range(len(ring)):
            nxt = ring[(i + 1) % len(ring)]
            if nxt != succ_label(ring[i], n):
                asc = False
            if nxt != pred_label(ring[i], n):
                desc = False
            if not asc and not desc:
                return Verdict.violated("NonConsecutiveLabels", v, (i + 1) % len(ring))
    return Verdict.holds()


def no_trivial_loops(g: FatGraph) -> Verdict:
    """No loop may bound a monogon disk face."""
    for f in trace_faces(g):
        if len(f.darts) == 1 and f.is_disk:
            return Verdict.violated("TrivialLoop", f.darts[0] >> 1)
    return Verdict.holds()


def check_vertex_count_bounds(g: FatGraph, own_type: SurfaceKind) -> Verdict:
    """Minimum vertex counts: n >= 3 on a sphere, n >= 2 on a projective
    plane; no constraint for the other types."""
    if own_type.tag == "S" and g.n_vertices < 3:
        return Verdict.violated("VertexCountBound", "S", g.n_vertices, 3)
    if own_type.tag == "P" and g.n_vertices < 2:
        return Verdict.violated("VertexCountBound", "P", g.n_vertices, 2)
    return Verdict.holds()


@dataclass(frozen=True)
class GraphPair:
    """Two labelled graphs linked by an edge bijection.

    Every edge is an intersection arc of the two surfaces, so it appears in
    both graphs: with an endpoint at vertex v of one graph labelled w, and at
    vertex w of the other graph labelled v.  Signs of corresponding edges are
    always opposite (the parity rule)."""

    g1: FatGraph
    g2: FatGraph
    delta: int
    edge_bijection: tuple[tuple[int, int], ...]  # (edge of g1, edge of g2)

    @property
    def map12(self) -> dict[int, int]:
        return dict(self.edge_bijection)

    def partner_edge(self, e1: int) -> int:
        return self.map12[e1]


def validate_pair(p: GraphPair) -> Verdict:
    """Check all pair invariants; returns the first violated one."""
    g1, g2 = p.g1, p.g2
    n1, n2 = g1.n_vertices, g2.n_vertices
    if g1.n_partner != n2 or g2.n_partner != n1 or g1.delta != p.delta or g2.delta != p.delta:
        return Verdict.violated("ParameterMismatch", g1.n_partner, n2, g2.n_partner, n1)
    expected = p.delta * n1 * n2
    if expected % 2 or g1.n_edges != expected // 2 or g2.n_edges != expected // 2:
        return Verdict.violated("EdgeCountMismatch", g1.n_edges, g2.n_edges, expected / 2)
    m = p.map12
    if (sorted(m) != list(g1.edge_ids)
            or sorted(set(m.values())) != list(g2.edge_ids)
            or len(set(m.values())) != len(m)):
        return Verdict.violated("EdgeCountMismatch", "bijection does not cover both edge sets")
    for e1 in g1.edge_ids:
        e2 = m[e1]
        ends1 = [(v, g1.labels[v][i]) for v, i in g1.endpoints(e1)]
        ends2 = [(v, g2.labels[v][i]) for v, i in g2.endpoints(e2)]
        # vertex ids are 0-based internally, labels 1-based: an endpoint at
        # vertex v labelled w maps to an endpoint at vertex w labelled v
        want = sorted((lab - 1, v + 1) for v, lab in ends1)
        got = sorted((v, lab) for v, lab in ends2)
        if want != got:
            return Verdict.violated("DualityViolation", e1)
    for e1 in g1.edge_ids:
        if g1.sign(e1) == g2.sign(m[e1]):
            return Verdict.violated("ParityViolation", e1)
    return Verdict.holds()
