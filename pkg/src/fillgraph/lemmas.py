"""Executable predicates for the lemma-level constraints.

Each check returns a :class:`LemmaVerdict`; a violated verdict carries a
witness re-verifiable from raw graph data.  Lemma ids follow the numbering
used throughout this package's reports ("2.3", "2.4.1", ..., "8.arith").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .blocks import ExtremalBlock, ShapeMismatch, block_x_faces
from .detect import (
    EdgeFamily, StructureCertificate, classify_edges, find_extended_s_cycles,
    find_generalized_s_cycles, find_scharlemann_cycles, level_labels,
    parallel_families, scharlemann_label_pairs,
)
from .pairing import GraphPair, pred_label, succ_label
from .surface import FatGraph, SurfaceKind, lies_in_disk


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: str
    holds: bool
    witness: tuple = ()
    context: tuple[tuple[str, object], ...] = ()
    notes: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def ctx(self, key: str):
        for k, v in self.context:
            if k == key:
                return v
        raise KeyError(key)


def _ctx(**kw) -> tuple:
    return tuple(sorted(kw.items()))


ORIENTABLE_TAGS = ("S", "A", "T")
NONORIENTABLE_TAGS = ("P", "B", "K")


def check_scharlemann_separating(g: FatGraph, partner_type: SurfaceKind,
                                 pair: Optional[GraphPair] = None) -> LemmaVerdict:
    """A Scharlemann cycle forces the partner surface to be separating, so
    the partner vertex count must be even; for annulus and torus partners the
    corresponding edges must not lie in a disk of the partner surface."""
    if partner_type.tag not in ORIENTABLE_TAGS:
        raise ValueError("separation applies to orientable partner types")
    certs = find_scharlemann_cycles(g)
    ctx = _ctx(partner=partner_type.tag, n_partner=g.n_partner)
    if not certs:
        return LemmaVerdict("2.3", True, (), ctx, "no Scharlemann cycle")
    if g.n_partner % 2:
        return LemmaVerdict("2.3", False, (certs[0],), ctx,
                            "Scharlemann cycle with odd partner vertex count")
    if pair is not None and partner_type.tag in ("A", "T"):
        m = pair.map12
        for c in certs:
            partner_edges = [m[e] for e in c.edges]
            pair_labels = frozenset(c.labels)
            verts = frozenset(lab - 1 for lab in pair_labels)
            if lies_in_disk(pair.g2, partner_edges, verts):
                return LemmaVerdict("2.3", False, (c,), ctx,
                                    "Scharlemann edges lie in a disk of the partner surface")
    return LemmaVerdict("2.3", True, (), ctx)


def check_sl_budget(g: FatGraph, partner_type: SurfaceKind) -> LemmaVerdict:
    """Per-partner-type budget: orientable partners forbid level edges (and
    sphere/annulus partners force a single Scharlemann label pair);
    non-orientable partners forbid Scharlemann cycles and allow at most one
    (projective plane, Moebius band) or two (Klein bottle) level labels."""
    tag = partner_type.tag
    ctx = _ctx(partner=tag, n_partner=g.n_partner)
    levels = sorted(level_labels(g))
    if tag in ORIENTABLE_TAGS:
        if levels:
            witness = tuple(c for c in classify_edges(g) if c.is_level)
            return LemmaVerdict("2.4.1", False, witness, ctx,
                                f"level edges with labels {levels}")
        if tag in ("S", "A"):
            pairs = scharlemann_label_pairs(g)
            if len(pairs) > 1:
                return LemmaVerdict("2.4.2", False, tuple(map(sorted, pairs)), ctx,
                                    "Scharlemann cycles with distinct label pairs")
        return LemmaVerdict("2.4.1", True, (), ctx)
    certs = find_scharlemann_cycles(g)
    if certs:
        return LemmaVerdict("2.4.2", False, (certs[0],), ctx,
                            "Scharlemann cycle with non-orientable partner")
    budget = 2 if tag == "K" else 1
    if len(levels) > budget:
        witness = tuple(c for c in classify_edges(g) if c.is_level)
        return LemmaVerdict("2.4.1", False, witness, ctx,
                            f"{len(levels)} level labels exceed budget {budget}")
    return LemmaVerdict("2.4.1", True, (), ctx)


def check_forbidden_cycles(g: FatGraph, partner_type: SurfaceKind) -> LemmaVerdict:
    """Orientable partners forbid extended S-cycles; non-orientable partners
    forbid generalized S-cycles."""
    tag = partner_type.tag
    ctx = _ctx(partner=tag, n_partner=g.n_partner)
    if tag in ORIENTABLE_TAGS:
        certs = find_extended_s_cycles(g)
        if certs:
            return LemmaVerdict("2.4.4", False, (certs[0],), ctx)
        return LemmaVerdict("2.4.4", True, (), ctx)
    certs = find_generalized_s_cycles(g)
    if certs:
        return LemmaVerdict("2.4.5", False, (certs[0],), ctx)
    return LemmaVerdict("2.4.5", True, (), ctx)


def s_cycle_projective_flag(g: FatGraph, partner_type: SurfaceKind) -> LemmaVerdict:
    """Informational: with a sphere partner, an S-cycle implies the partner
    filling contains a projective plane.  Used by case drivers to close
    branches, never a violation by itself."""
    if partner_type.tag != "S":
        return LemmaVerdict("2.4.3", True, (), _ctx(partner=partner_type.tag),
                            "not applicable")
    scycles = tuple(c for c in find_scharlemann_cycles(g) if c.kind == "SCycle")
    return LemmaVerdict("2.4.3", True, scycles,
                        _ctx(partner="S", flagged=bool(scycles)),
                        "partner filling contains a projective plane" if scycles else "")


def positive_family_bound(tag: str, n: int) -> Optional[int]:
    if tag in ("S", "A"):
        return n // 2 + 1
    if tag in ("P", "B"):
        return (n + 1) // 2
    if tag == "T":
        return n // 2 + 2 if n >= 3 else None
    if tag == "K":
        return n // 2 + 1 if n >= 2 else None
    raise ValueError(tag)


def negative_family_bound(tag: str, n: int) -> int:
    return n - 1 if tag in ("S", "P") else n


def _family_end_s_cycle(fam: EdgeFamily, n: int) -> bool:
    def is_scycle(i: int) -> bool:
        a = frozenset((fam.labels_a[i], fam.labels_b[i]))
        b = frozenset((fam.labels_a[i + 1], fam.labels_b[i + 1]))
        if a != b or len(a) != 2:
            return False
        x, y = sorted(a)
        return succ_label(x, n) == y or succ_label(y, n) == x

    return is_scycle(0) or is_scycle(len(fam) - 2)


def _family_end_level(fam: EdgeFamily) -> bool:
    return (fam.labels_a[0] == fam.labels_b[0]
            or fam.labels_a[-1] == fam.labels_b[-1])


def check_family_bounds(g: FatGraph, partner_type: SurfaceKind) -> LemmaVerdict:
    """Parallel-family size limits per partner type, plus the extremal
    boundary conditions: a maximal positive family ends in an S-cycle
    (sphere/annulus partner) or in a level edge (projective plane/Moebius
    partner)."""
    tag = partner_type.tag
    n = g.n_partner
    ctx = _ctx(partner=tag, n_partner=n)
    pos_bound = positive_family_bound(tag, n)
    neg_bound = negative_family_bound(tag, n)
    for fam in parallel_families(g):
        if fam.sign == 1:
            if pos_bound is not None and len(fam) > pos_bound:
                return LemmaVerdict("2.6", False, (fam,), ctx,
                                    f"positive family of size {len(fam)} exceeds {pos_bound}")
            if pos_bound is not None and len(fam) == pos_bound and len(fam) >= 2:
                if tag in ("S", "A") and not _family_end_s_cycle(fam, n):
                    return LemmaVerdict("2.6", False, (fam,), ctx,
                                        "extremal positive family without an end S-cycle")
                if tag in ("P", "B") and not _family_end_level(fam):
                    return LemmaVerdict("2.6", False, (fam,), ctx,
                                        "extremal positive family without an end level edge")
        else:
            if len(fam) > neg_bound:
                return LemmaVerdict("2.7", False, (fam,), ctx,
                                    f"negative family of size {len(fam)} exceeds {neg_bound}")
    return LemmaVerdict("2.6", True, (), ctx)


def check_prop_5_1(g1: FatGraph, g2_type: SurfaceKind, delta: int,
                   sl_vertices: frozenset[int] = frozenset()) -> LemmaVerdict:
    """Each non-sl-vertex needs at least (delta - 1) * n2 + chi(partner)
    positive edge endpoints; a vertex with more than n2 - chi(partner)
    negative endpoints forces an x-face in the partner graph."""
    n2 = g1.n_partner
    chi = g2_type.euler
    bound = (delta - 1) * n2 + chi
    violations = []
    forcing = []
    for v in range(g1.n_vertices):
        if v in sl_vertices:
            continue
        pos = sum(1 for d in g1.slots[v] if g1.sign(d >> 1) == 1)
        neg = len(g1.slots[v]) - pos
        if pos < bound:
            violations.append((v, pos))
        if neg > n2 - chi:
            forcing.append((v, neg))
    ctx = _ctx(partner=g2_type.tag, n2=n2, delta=delta, bound=bound,
               x_face_forcing=tuple(forcing))
    if violations:
        return LemmaVerdict("5.1", False, tuple(violations), ctx,
                            f"positive endpoint count below {bound}")
    return LemmaVerdict("5.1", True, (), ctx)


def _max_consecutive_block_run(g: FatGraph, v: int, block_edges: frozenset[int]) -> int:
    ring = g.slots[v]
    flags = [(d >> 1) in block_edges for d in ring]
    if all(flags):
        return len(flags)
    best = cur = 0
    for f in flags + flags:  # cyclic wrap
        cur = cur + 1 if f else 0
        best = max(best, cur)
    return min(best, len(flags))


def check_theorem_5_2(g: FatGraph, block: ExtremalBlock, g2_type: SurfaceKind,
                      n2: int, delta: int) -> LemmaVerdict:
    """Every boundary vertex of the extremal block except the ghost carries a
    contiguous cyclic slot run of block edges of length n2 + chi(partner)
    (sphere/projective/annulus/Moebius partner, distance two) or 2 * n2
    (torus/Klein partner, distance three)."""
    tag = g2_type.tag
    if tag in ("S", "P", "A", "B"):
        if delta < 2:
            raise ValueError("clause one needs distance at least two")
        req = n2 + g2_type.euler
        lemma = "5.2.1"
    elif tag in ("T", "K"):
        if delta < 3 or (tag == "T" and n2 < 3) or (tag == "K" and n2 < 2):
            raise ValueError("clause two needs distance three and enough partner vertices")
        req = 2 * n2
        lemma = "5.2.2"
    else:
        raise ValueError(tag)
    edges = frozenset(block.edges)
    bad = []
    for v in block.boundary_vertices:
        if v == block.ghost:
            continue
        run = _max_consecutive_block_run(g, v, edges)
        if run < req:
            bad.append((v, run))
    ctx = _ctx(partner=tag, n2=n2, delta=delta, required=req)
    if bad:
        return LemmaVerdict(lemma, False, tuple(bad), ctx)
    return LemmaVerdict(lemma, True, (), ctx)


@dataclass(frozen=True)
class EulerTranscript:
    delta: int
    v_i: int
    v_b: int
    v_g: int
    e_low: int
    e_high: int
    feasible: bool
    reduced: str


def block_euler_contradiction(delta: int, v_i: int, v_b: int, v_g: int) -> EulerTranscript:
    """Edge-count window for an all-triangle-or-larger disk block: at least
    2(v_b - v_g) + delta * v_i edges from the labelled-endpoint count, at most
    3 v_i + 2 v_b - 3 from the Euler count.  For delta >= 3 the window is
    empty: (delta - 3) v_i + 3 <= 2 v_g cannot hold with at most one ghost."""
    if v_g not in (0, 1) or v_i < 0 or v_b < 0 or v_i + v_b < 1:
        raise ValueError("need v_g in {0,1}, nonnegative counts, a vertex")
    e_low = 2 * (v_b - v_g) + delta * v_i
    e_high = 3 * v_i + 2 * v_b - 3
    return EulerTranscript(
        delta, v_i, v_b, v_g, e_low, e_high, e_low <= e_high,
        f"feasible iff ({delta}-3)*{v_i} + 3 <= 2*{v_g}")


# -- reduced-graph shapes -------------------------------------------------------

@dataclass(frozen=True)
class ValencyReport:
    surface: str
    cap: int
    max_valency: int
    min_required: Optional[int]
    form: str
    families: tuple[tuple[str, int, int], ...]  # (kind, edge id, multiplicity)
    sign_ok: bool
    notes: str


_FORMS = {"A": (2, 1, 2, 4), "B": (1, 2, 0, 4), "T": (2, 1, 4, 6), "K": (1, 3, 0, 6)}


def reduced_valency_analysis(gbar: FatGraph, surface: SurfaceKind,
                             multiplicities: Optional[dict[int, int]] = None,
                             partner_type: Optional[SurfaceKind] = None,
                             delta: Optional[int] = None) -> ValencyReport:
    """Euler-characteristic valency cap for a reduced graph on a small
    surface and shape matching against the catalogued one- and two-vertex
    forms (a loop family per vertex plus connecting families).

    Also reports the minimal valency forced by the family-size bounds when
    the partner type and distance are supplied, and checks the sign pattern:
    a reduced graph with only positive edges forces an x-face.
    """
    tag = surface.tag
    if tag not in _FORMS:
        raise ShapeMismatch(f"no catalogued form for surface type {tag}")
    want_v, want_loops, want_conn, cap = _FORMS[tag]
    if gbar.n_vertices != want_v:
        raise ShapeMismatch(f"form {tag} has {want_v} vertices, got {gbar.n_vertices}")
    mult = multiplicities or {e: 1 for e in gbar.edge_ids}

    loops = [e for e in gbar.edge_ids if gbar.is_loop(e)]
    conns = [e for e in gbar.edge_ids if not gbar.is_loop(e)]
    loops_per_vertex: dict[int, int] = {}
    for e in loops:
        v = gbar.endpoints(e)[0][0]
        loops_per_vertex[v] = loops_per_vertex.get(v, 0) + 1
    if any(c > want_loops for c in loops_per_vertex.values()) or len(conns) > want_conn:
        raise ShapeMismatch(
            f"form {tag} allows {want_loops} loop families per vertex and "
            f"{want_conn} connecting families")

    max_val = max((gbar.degree(v) for v in range(gbar.n_vertices)), default=0)
    if max_val > cap:
        raise ShapeMismatch(f"valency {max_val} exceeds the Euler cap {cap}")

    min_required = None
    if partner_type is not None and delta is not None:
        n1 = gbar.n_partner
        fam_max = max(positive_family_bound(partner_type.tag, n1) or 0,
                      negative_family_bound(partner_type.tag, n1))
        if fam_max:
            min_required = -(-delta * n1 // fam_max)

    families = tuple(("loop" if gbar.is_loop(e) else "conn", e, mult.get(e, 1))
                     for e in gbar.edge_ids)
    all_positive = all(gbar.sign(e) == 1 for e in gbar.edge_ids) and gbar.n_edges > 0
    sign_ok = not all_positive
    notes = ""
    if all_positive:
        notes = "all edges positive: an x-face is forced for any non-sl label"
    return ValencyReport(tag, cap, max_val, min_required,
                         {"A": "fig-annulus", "B": "fig-moebius",
                          "T": "fig-torus", "K": "fig-klein"}[tag],
                         families, sign_ok, notes)


# -- the distance-four torus arithmetic -----------------------------------------

@dataclass(frozen=True)
class FamilyArithmetic:
    n1: int
    delta: int
    p: tuple[int, int, int, int, int]
    bound_ok: bool
    delta_bound: int
    r: Optional[int]
    repeated_label: Optional[int]
    structure: Optional[str]  # "s-cycle" or "generalized"
    structure_edges: tuple[int, ...]
    holds: bool
    notes: str


def _loop_family_labels(n1: int, p1: int, shift: int) -> list[tuple[int, int]]:
    """Zero-based label pairs of a nested positive loop family whose slot
    offset between the two slot ranges encodes the remainder arithmetic."""
    out = []
    s_tot = 2 * p1 + shift - 1
    for k in range(p1):
        out.append((k % n1, (s_tot - k) % n1))
    return out


def sec8_family_arithmetic(n1: int, p: Sequence[int], delta: int) -> FamilyArithmetic:
    """The valency-six counting: family bounds cap delta * n1 by 5 n1 - 2, and
    at distance four a loop family overshooting half the labels repeats label
    r = p1+p2+p3+1-2*n1 at two non-level edges, forcing an S-cycle or a
    generalized S-cycle inside the family."""
    if n1 < 2 or len(p) != 5:
        raise ValueError("need n1 >= 2 and a five-component family vector")
    p1, p2, p3, p4, p5 = p
    bound_ok = p1 <= n1 // 2 + 1 and all(q <= n1 - 1 for q in (p2, p3, p4, p5))
    delta_bound = 5 * n1 - 2
    if not bound_ok:
        return FamilyArithmetic(n1, delta, tuple(p), False, delta_bound,
                                None, None, None, (), False,
                                "family bound violated before arithmetic")
    holds = delta * n1 <= delta_bound
    r = repeated = structure = None
    edges: tuple[int, ...] = ()
    notes = ""
    if delta == 4 and p1 + p2 + p3 >= 2 * n1:
        r = p1 + p2 + p3 + 1 - 2 * n1
        if not (0 < r < n1 and r + 1 <= p1):
            return FamilyArithmetic(n1, delta, tuple(p), True, delta_bound, r,
                                    None, None, (), False,
                                    "remainder out of range")
        labels = _loop_family_labels(n1, p1, p2 + p3)
        # label r occurs at edge r (first range) and edge p1-2 (second range)
        occurs = [k for k, (a, b) in enumerate(labels) if r in (a, b)]
        repeated = r
        c = r + p1 - 2
        if c % 2 == 0:
            k = c // 2
            structure = "generalized"
            edges = (k - 1, k, k + 1)
            ok = (0 <= k - 1 and k + 1 < p1
                  and labels[k][0] == labels[k][1])
        else:
            k = (c - 1) // 2
            structure = "s-cycle"
            edges = (k, k + 1)
            ok = (0 <= k < k + 1 < p1
                  and frozenset(labels[k]) == frozenset(labels[k + 1])
                  and len(frozenset(labels[k])) == 2)
        holds = holds and ok and len(occurs) >= (1 if r == p1 - 2 else 2)
        notes = f"repeated label {r} at edges {sorted(set([r % n1, p1 - 2]))}"
    return FamilyArithmetic(n1, delta, tuple(p), True, delta_bound, r,
                            repeated, structure, edges, holds, notes)


def s_cycle_disjoint_pairs(g: FatGraph) -> LemmaVerdict:
    """With at least four distinct S-cycle labels, two S-cycles with disjoint
    label pairs exist (consecutive pairs that pairwise meet span at most
    three labels)."""
    scycles = [c for c in find_scharlemann_cycles(g) if c.kind == "SCycle"]
    ctx = _ctx(n_partner=g.n_partner,
               pairs=tuple(sorted(tuple(sorted(c.labels)) for c in scycles)))
    labels = set()
    for c in scycles:
        labels.update(c.labels)
    if g.n_partner < 4:
        return LemmaVerdict("8.1", True, (), ctx,
                            "gated: fewer than four partner vertices")
    if len(labels) < 4:
        return LemmaVerdict("8.1", True, (), ctx, "fewer than four S-cycle labels")
    for i, a in enumerate(scycles):
        for b in scycles[i + 1:]:
            if not frozenset(a.labels) & frozenset(b.labels):
                return LemmaVerdict("8.1", True, (a, b), ctx,
                                    "disjoint label pairs found")
    return LemmaVerdict("8.1", False, tuple(scycles), ctx,
                        "four labels but no disjoint pair")


def claim_7_3_34_edge(g: FatGraph, block: ExtremalBlock) -> LemmaVerdict:
    """In the exceptional four-label shape (ghost carrying a {1,4}- and a
    {2,3}-edge), the block must contain a {3,4}-edge; when absent, the walk
    replay splits the block at the 3-edge before the ghost's {1,4}-edge and
    exhibits a 3-face as the violation witness."""
    n = g.n_partner
    if n != 4 or block.ghost is None:
        raise ShapeMismatch("needs four partner vertices and a ghost vertex")
    block_edges = frozenset(block.edges)
    ghost_edges = sorted(e for e in block_edges
                         if block.ghost in {v for v, _ in g.endpoints(e)})
    pairs = sorted((frozenset(g.label_pair(e)) for e in ghost_edges), key=sorted)
    want = sorted([frozenset((1, 4)), frozenset((2, 3))], key=sorted)
    if len(ghost_edges) != 2 or pairs != want:
        raise ShapeMismatch(
            f"ghost edges {ghost_edges} are not a {{1,4}}- and a {{2,3}}-edge")
    ctx = _ctx(ghost=block.ghost, ghost_edges=tuple(ghost_edges))

    for e in block.edges:
        if frozenset(g.label_pair(e)) == frozenset((3, 4)):
            return LemmaVerdict("7.3", True, (e,), ctx, "{3,4}-edge present")

    # replay: e0 = the {1,4}-edge at the ghost, y1 its far end, e1 the 3-edge
    # at y1 in the slot next to e0
    e0 = next(e for e in ghost_edges if frozenset(g.label_pair(e)) == frozenset((1, 4)))
    d0 = 2 * e0 if g.vertex_of(2 * e0) != block.ghost else 2 * e0 + 1
    y1, slot0 = g.position(d0)
    ring = g.slots[y1]
    e1 = None
    for j in (slot0 - 1, slot0 + 1):
        d = ring[j % len(ring)]
        if g.labels[y1][j % len(ring)] == 3 and (d >> 1) in block_edges:
            e1 = d >> 1
            break
    if e1 is None:
        return LemmaVerdict("7.3", False, (), ctx,
                            "no 3-edge of the block next to the ghost edge")
    (u, _), (w, _) = g.endpoints(e1)
    y_i = w if u == y1 else u
    if len(block.vertices) <= 2:
        return LemmaVerdict("7.3", False, (e1,), ctx,
                            "two-vertex block: replay degenerates (k must exceed one)")
    # split at e1: the side containing y1; search a 3-face there
    side_vertices = _split_side(g, block, e1, y1)
    sub_edges = frozenset(e for e in block.edges
                          if {v for v, _ in g.endpoints(e)} <= side_vertices)
    three_edges = frozenset(e for e in sub_edges if 3 in g.label_pair(e))
    from .surface import regions_of_subgraph
    dec = regions_of_subgraph(g, three_edges, side_vertices)
    witness = tuple(i for i, r in enumerate(dec.regions) if r.is_disk)
    return LemmaVerdict("7.3", False, (e1, y_i, witness), ctx,
                        "no {3,4}-edge; replay exhibits a 3-face candidate")


def _split_side(g: FatGraph, block: ExtremalBlock, e1: int, y1: int) -> frozenset[int]:
    """Vertices on y1's side of the block after cutting the edge e1."""
    adj: dict[int, set[int]] = {v: set() for v in block.vertices}
    for e in block.edges:
        if e == e1:
            continue
        (u, _), (w, _) = g.endpoints(e)
        adj[u].add(w)
        adj[w].add(u)
    seen = {y1}
    stack = [y1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)
