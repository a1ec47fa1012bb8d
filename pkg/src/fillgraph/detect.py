"""Detectors for the structures of labelled intersection graphs.

Everything here is a pure function of a :class:`FatGraph`; each detector
returns :class:`StructureCertificate` values whose conditions re-verify from
raw graph data, independently of the search that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .pairing import pred_label, succ_label
from .surface import (
    Face, FatGraph, Region, RegionDecomposition, SurfaceKind,
    regions_of_subgraph, trace_faces,
)


class NoDiskSide(ValueError):
    """The given cycle does not bound a disk region."""


class PreconditionFailed(ValueError):
    """A stated hypothesis of the operation does not hold for the input."""


class CounterexampleEscalation(RuntimeError):
    """A structure whose existence is guaranteed on admissible inputs was not
    found; campaign drivers surface these as counterexample candidates."""


class NoScharlemann(CounterexampleEscalation):
    pass


@dataclass(frozen=True)
class EdgeClass:
    edge_id: int
    sign: int
    label_pair: tuple[int, int]  # ordered by dart (2e, 2e+1)
    is_loop: bool
    is_level: bool
    level_label: Optional[int] = None

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.label_pair)


def classify_edges(g: FatGraph) -> tuple[EdgeClass, ...]:
    """Classify every edge; a positive edge with equal endpoint labels is a
    level edge.  Deterministic order by edge id."""
    out = []
    for e in g.edge_ids:
        pair = g.label_pair(e)
        level = g.sign(e) == 1 and pair[0] == pair[1]
        out.append(EdgeClass(e, g.sign(e), pair, g.is_loop(e), level,
                             pair[0] if level else None))
    return tuple(out)


def level_labels(g: FatGraph) -> frozenset[int]:
    return frozenset(c.level_label for c in classify_edges(g) if c.is_level)


@dataclass(frozen=True)
class EdgeFamily:
    """A maximal chain of same-sign edges in which consecutive edges cobound
    a bigon disk face.  A family can close into a cycle (every consecutive
    pair cobounds a bigon, wrapping around); successiveness then wraps."""

    edges: tuple[int, ...]
    sign: int
    end_a: tuple[int, ...]  # darts, aligned with edges
    end_b: tuple[int, ...]
    labels_a: tuple[int, ...]
    labels_b: tuple[int, ...]
    arithmetic: bool  # both label sequences step by +-1 mod n_partner
    cyclic: bool = False

    def __len__(self) -> int:
        return len(self.edges)

    def windows(self, width: int):
        """Index windows of successive family members, wrapping when the
        family is cyclic."""
        k = len(self.edges)
        if self.cyclic and k >= width:
            for i in range(k):
                yield tuple((i + j) % k for j in range(width))
        else:
            for i in range(k - width + 1):
                yield tuple(range(i, i + width))


def _is_progression(seq: Sequence[int], n: int) -> bool:
    if len(seq) <= 1 or n == 1:
        return True
    for step in (1, -1):
        if all(seq[i + 1] == (seq[i] - 1 + step) % n + 1 for i in range(len(seq) - 1)):
            return True
    return False


def parallel_families(g: FatGraph, faces: Optional[Sequence[Face]] = None) -> tuple[EdgeFamily, ...]:
    """Partition the edges into maximal families of mutually parallel
    same-sign edges (singleton families allowed)."""
    if faces is None:
        faces = trace_faces(g)
    neighbors: dict[int, list[tuple[int, Face]]] = {e: [] for e in g.edge_ids}
    for f in faces:
        if len(f.darts) != 2 or not f.is_disk:
            continue
        e1, e2 = f.darts[0] >> 1, f.darts[1] >> 1
        if e1 == e2 or g.sign(e1) != g.sign(e2):
            continue
        neighbors[e1].append((e2, f))
        neighbors[e2].append((e1, f))

    def bigon_between(a: int, b: int) -> Face:
        for e, f in neighbors[a]:
            if e == b:
                return f
        raise KeyError((a, b))

    def distinct_nbrs(e: int) -> set[int]:
        return {f for f, _ in neighbors[e]}

    seen: set[int] = set()
    families = []
    for start in g.edge_ids:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for f in distinct_nbrs(stack.pop()):
                if f not in comp:
                    comp.add(f)
                    stack.append(f)
        seen |= comp
        # each edge has at most two bigon sides, so the component is a path
        # (start at an end) or a cycle (start at the smallest id)
        ends = sorted(e for e in comp if len(distinct_nbrs(e)) <= 1)
        cyclic = not ends and len(comp) > 1
        chain = [ends[0] if ends else min(comp)]
        used = {chain[0]}
        while True:
            nxt = sorted(f for f in distinct_nbrs(chain[-1]) if f not in used)
            if not nxt:
                break
            chain.append(nxt[0])
            used.add(nxt[0])
        assert len(chain) == len(comp)
        if len(chain) > 1 and chain[0] > chain[-1]:
            chain.reverse()
        if len(comp) == 2 and len(neighbors[chain[0]]) >= 2:
            cyclic = True  # two edges cobounding two bigons

        if len(chain) == 1:
            e = chain[0]
            end_a, end_b = (2 * e,), (2 * e + 1,)
        else:
            f0 = bigon_between(chain[0], chain[1])
            c0 = f0.corners[0]
            arr = g.slots[c0.vertex][c0.slot_pair[0]]
            dep = g.slots[c0.vertex][c0.slot_pair[1]]
            d_prev = arr if (arr >> 1) == chain[0] else dep
            d_next = dep if d_prev == arr else arr
            end_a = [d_prev, d_next]
            for i in range(1, len(chain) - 1):
                f = bigon_between(chain[i], chain[i + 1])
                nxt = None
                for c in f.corners:
                    sa = g.slots[c.vertex][c.slot_pair[0]]
                    sb = g.slots[c.vertex][c.slot_pair[1]]
                    if end_a[-1] in (sa, sb):
                        nxt = sb if end_a[-1] == sa else sa
                if nxt is None:
                    raise AssertionError("bigon chain lost alignment")
                end_a.append(nxt)
            end_a = tuple(end_a)
            end_b = tuple(d ^ 1 for d in end_a)
        labels_a = tuple(g.label(d) for d in end_a)
        labels_b = tuple(g.label(d) for d in end_b)
        arith = (_is_progression(labels_a, g.n_partner)
                 and _is_progression(labels_b, g.n_partner))
        families.append(EdgeFamily(tuple(chain), g.sign(chain[0]),
                                   end_a, end_b, labels_a, labels_b, arith,
                                   cyclic))
    families.sort(key=lambda fam: fam.edges[0])
    return tuple(families)


def reduced_graph(g: FatGraph) -> tuple[FatGraph, dict[int, int]]:
    """Amalgamate each parallel family into its lowest-id edge.  Vertices and
    face structure up to bigon collapse are preserved, so the Euler
    characteristic is unchanged."""
    from .surface import subgraph_embedding

    fams = parallel_families(g)
    reps = {min(f.edges): len(f.edges) for f in fams}
    return subgraph_embedding(g, reps.keys()), reps


# -- certificates ---------------------------------------------------------

@dataclass(frozen=True)
class StructureCertificate:
    """A re-verifiable witness of a detected structure.

    ``conditions`` is the transcript of the defining checks; a certificate is
    only emitted when every condition holds, and :func:`verify_certificate`
    recomputes all of them from raw graph data.
    """

    kind: str
    edges: tuple[int, ...]
    darts: tuple[int, ...] = ()
    labels: tuple[int, ...] = ()
    conditions: tuple[tuple[str, bool], ...] = ()
    notes: str = ""

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.conditions)

    def condition(self, name: str) -> bool:
        for k, v in self.conditions:
            if k == name:
                return v
        raise KeyError(name)


def _find_face(g: FatGraph, darts: Iterable[int], faces: Optional[Sequence[Face]] = None) -> Optional[Face]:
    want = frozenset(darts)
    for f in faces if faces is not None else trace_faces(g):
        if frozenset(f.darts) == want and len(f.darts) == len(want):
            return f
    return None


# -- x-cycles and Scharlemann cycles ----------------------------------------

def find_x_cycles(g: FatGraph, x: int) -> tuple[StructureCertificate, ...]:
    """Simple cycles of positive x-edges orientable so every head is labelled
    x.  A level x-edge loop yields a cycle of length one."""
    arcs = []  # (tail vertex, head vertex, edge, head dart)
    for e in g.edge_ids:
        if g.sign(e) != 1:
            continue
        for d in (2 * e, 2 * e + 1):
            if g.label(d) == x:
                arcs.append((g.vertex_of(d ^ 1), g.vertex_of(d), e, d))

    by_tail: dict[int, list[tuple[int, int, int]]] = {}
    for t, h, e, d in arcs:
        by_tail.setdefault(t, []).append((h, e, d))

    certs = []
    seen_cycles = set()

    def emit(path_arcs):
        edges = tuple(e for _, e, _ in path_arcs)
        if len(set(edges)) != len(edges):
            return
        key = frozenset(edges)
        if key in seen_cycles:
            return
        seen_cycles.add(key)
        darts = tuple(d for _, _, d in path_arcs)
        conds = (
            ("edges_positive", all(g.sign(e) == 1 for e in edges)),
            ("heads_labelled_x", all(g.label(d) == x for d in darts)),
            ("closed_simple_cycle", True),
        )
        certs.append(StructureCertificate("XCycle", edges, darts, (x,), conds))

    def dfs(v0, v, path, used_vertices):
        for h, e, d in by_tail.get(v, ()):
            if e in {pe for _, pe, _ in path}:
                continue
            if h == v0:
                emit(path + [(h, e, d)])
            elif h not in used_vertices and h > v0:
                dfs(v0, h, path + [(h, e, d)], used_vertices | {h})

    for v0 in range(g.n_vertices):
        dfs(v0, v0, [], {v0})
    certs.sort(key=lambda c: c.edges)
    return tuple(certs)


def _scharlemann_face_check(g: FatGraph, f: Face) -> Optional[StructureCertificate]:
    if not f.darts or not f.is_disk:
        return None
    edges = tuple(d >> 1 for d in f.darts)
    if len(set(edges)) != len(edges):
        return None
    if any(g.sign(e) != 1 for e in edges):
        return None
    pairs = {frozenset(g.label_pair(e)) for e in edges}
    if len(pairs) != 1:
        return None
    pair = next(iter(pairs))
    if len(pair) != 2:
        return None
    a, b = sorted(pair)
    n = g.n_partner
    if succ_label(a, n) == b:
        x = a
    elif succ_label(b, n) == a:
        x = b
    else:
        return None
    heads_fwd = all(c.label_pair[0] == x for c in f.corners)
    heads_rev = all(c.label_pair[1] == x for c in f.corners)
    if not (heads_fwd or heads_rev):
        return None
    conds = (
        ("n_partner_ge_2", n >= 2),
        ("bounds_hole_free_disk_face", True),
        ("edges_positive", True),
        ("common_label_pair", True),
        ("head_orientation_exists", True),
    )
    kind = "SCycle" if len(edges) == 2 else "Scharlemann"
    cert = StructureCertificate(kind, edges, f.darts, (x, succ_label(x, n)), conds,
                                notes=f"length {len(edges)}")
    return cert if cert.ok else None


def find_scharlemann_cycles(g: FatGraph, faces: Optional[Sequence[Face]] = None) -> tuple[StructureCertificate, ...]:
    """All Scharlemann cycles: hole-free disk faces whose edges are positive
    with one common label pair {x, x+1}, orientable head-to-x.  Gated to
    n_partner >= 2; length-two cycles are flagged as S-cycles."""
    if g.n_partner < 2:
        return ()
    out = []
    for f in faces if faces is not None else trace_faces(g):
        cert = _scharlemann_face_check(g, f)
        if cert is not None:
            out.append(cert)
    out.sort(key=lambda c: c.edges)
    return tuple(out)


def scharlemann_label_pairs(g: FatGraph) -> tuple[frozenset[int], ...]:
    return tuple(sorted({frozenset(c.labels) for c in find_scharlemann_cycles(g)},
                        key=sorted))


def find_extended_s_cycles(g: FatGraph) -> tuple[StructureCertificate, ...]:
    """S-cycles immediately surrounded by a parallel cycle: inside one
    positive family, edges (i, i+1) forming an S-cycle flanked by edges
    (i-1, i+2).  Gated to n_partner >= 4."""
    n = g.n_partner
    if n < 4:
        return ()
    faces = trace_faces(g)
    out = []
    seen = set()
    for fam in parallel_families(g, faces):
        if fam.sign != 1 or len(fam) < 4:
            continue
        for i0, i1, i2, i3 in fam.windows(4):
            sig = fam.edges[i1], fam.edges[i2]
            if frozenset(sig) in seen:
                continue
            scert = None
            for f in faces:
                if frozenset(f.edges) == frozenset(sig) and len(f.darts) == 2:
                    scert = _scharlemann_face_check(g, f)
                    if scert:
                        break
            if scert is None:
                continue
            x = scert.labels[0]
            kap = fam.edges[i0], fam.edges[i3]
            if len({*kap, *sig}) != 4:
                continue
            want = frozenset((pred_label(x, n), succ_label(succ_label(x, n), n)))
            conds = (
                ("n_partner_ge_4", n >= 4),
                ("inner_pair_is_s_cycle", True),
                ("kappa_immediately_parallel", True),
                ("kappa_label_pair",
                 all(frozenset(g.label_pair(e)) == want for e in kap)),
            )
            cert = StructureCertificate(
                "ExtendedSCycle", (kap[0],) + sig + (kap[1],),
                (fam.end_a[i0], fam.end_a[i1], fam.end_a[i2], fam.end_a[i3]),
                scert.labels, conds,
                notes=f"s-cycle {sig} surrounded by {kap}")
            if cert.ok:
                out.append(cert)
                seen.add(frozenset(sig))
    out.sort(key=lambda c: c.edges)
    return tuple(out)


def find_generalized_s_cycles(g: FatGraph) -> tuple[StructureCertificate, ...]:
    """Triples of successively parallel positive edges whose middle edge is
    level.  Gated to n_partner >= 3."""
    n = g.n_partner
    if n < 3:
        return ()
    out = []
    seen = set()
    for fam in parallel_families(g):
        if fam.sign != 1 or len(fam) < 3:
            continue
        for i0, i1, i2 in fam.windows(3):
            mid = fam.edges[i1]
            pair = g.label_pair(mid)
            if pair[0] != pair[1] or mid in seen:
                continue
            k = pair[0]
            outer = fam.edges[i0], fam.edges[i2]
            if len({*outer, mid}) != 3:
                continue
            want = frozenset((pred_label(k, n), succ_label(k, n)))
            conds = (
                ("n_partner_ge_3", n >= 3),
                ("middle_edge_level", True),
                ("triple_in_succession", True),
                ("outer_label_pair",
                 all(frozenset(g.label_pair(e)) == want for e in outer)),
            )
            cert = StructureCertificate(
                "GeneralizedSCycle", (outer[0], mid, outer[1]),
                (fam.end_a[i0], fam.end_a[i1], fam.end_a[i2]),
                (k,), conds)
            if cert.ok:
                out.append(cert)
                seen.add(mid)
    out.sort(key=lambda c: c.edges)
    return tuple(out)


def sl_labels(g: FatGraph, partner_type: SurfaceKind) -> frozenset[int]:
    """Labels of Scharlemann cycles when the partner surface is orientable,
    labels of level edges when it is not."""
    if partner_type.orientable:
        out: set[int] = set()
        for c in find_scharlemann_cycles(g):
            out.update(c.labels)
        return frozenset(out)
    return level_labels(g)


# -- x-faces and two-cornered cycles -----------------------------------------

def positive_x_edges(g: FatGraph, x: int) -> frozenset[int]:
    return frozenset(e for e in g.edge_ids
                     if g.sign(e) == 1 and x in g.label_pair(e))


def x_face_regions(g: FatGraph, x: int) -> tuple[RegionDecomposition, tuple[int, ...]]:
    """Region decomposition of the all-vertex positive-x sub-embedding and the
    indices of its disk regions (the x-faces)."""
    dec = regions_of_subgraph(g, positive_x_edges(g, x), range(g.n_vertices))
    disks = tuple(i for i, r in enumerate(dec.regions) if r.is_disk)
    return dec, disks


def find_x_faces(g: FatGraph, x: int) -> tuple[StructureCertificate, ...]:
    """Disk faces of the sub-embedding of all vertices and positive x-edges.

    The boundary walk may repeat vertices or edges (a non-circular boundary);
    this is recorded, not rejected.
    """
    dec, disks = x_face_regions(g, x)
    out = []
    for ri in disks:
        region = dec.regions[ri]
        walk = dec.walks[region.walks[0]] if region.walks else ()
        darts = tuple(sd for sd, _ in walk)
        edges = tuple(d >> 1 for d in darts)
        verts = [c.vertex for _, c in walk]
        circular = len(set(edges)) == len(edges) and len(set(verts)) == len(verts)
        conds = (
            ("region_is_disk", True),
            ("hole_free", region.holes_inside == 0),
            ("boundary_edges_positive_x",
             all(g.sign(e) == 1 and x in g.label_pair(e) for e in edges)),
            ("no_interior_vertices", not region.interior_vertices
             and not region.floating_cut_vertices),
        )
        cert = StructureCertificate(
            "XFace", edges, darts, (x,), conds,
            notes=("circular boundary" if circular else "non-circular boundary"))
        if cert.ok:
            out.append(cert)
    out.sort(key=lambda c: (c.edges, c.darts))
    return tuple(out)


def _two_cornered_scan(g: FatGraph, corner_kinds: tuple[frozenset, frozenset],
                       required_edge_pair: frozenset,
                       faces: Optional[Sequence[Face]],
                       membership: Optional[frozenset[int]],
                       kind: str, gate_name: str, gate: bool,
                       exclude_edges: frozenset[int] = frozenset()) -> tuple[StructureCertificate, ...]:
    if not gate:
        return ()
    out = []
    kind_a, kind_b = corner_kinds
    for f in faces if faces is not None else trace_faces(g):
        if not f.darts or not f.is_disk:
            continue
        edges = tuple(d >> 1 for d in f.darts)
        if exclude_edges.intersection(edges):
            continue
        sets = [c.label_set for c in f.corners]
        if not all(s in (kind_a, kind_b) for s in sets):
            continue
        both = kind_a in sets and kind_b in sets
        conds = [
            (gate_name, True),
            ("edges_positive", all(g.sign(e) == 1 for e in edges)),
            ("corners_restricted", True),
            ("both_corner_kinds", both),
            ("required_edge_present",
             any(frozenset(g.label_pair(e)) == required_edge_pair for e in edges)),
        ]
        if membership is not None:
            conds.append(("contains_scharlemann_12_edge",
                          bool(membership.intersection(edges))))
        labels = tuple(sorted(set().union(*sets))) if sets else ()
        cert = StructureCertificate(kind, edges, f.darts, labels, tuple(conds))
        if cert.ok:
            out.append(cert)
    out.sort(key=lambda c: c.edges)
    return tuple(out)


def find_two_cornered_pb(g: FatGraph, faces: Optional[Sequence[Face]] = None,
                         exclude_edges: frozenset[int] = frozenset()) -> tuple[StructureCertificate, ...]:
    """Two-cornered cycles for a non-orientable partner: disk faces with only
    {0,1}- and {1,2}-corners and positive edges.  Both corner kinds and a
    02-edge must be present.  Gated to n_partner >= 3."""
    n = g.n_partner
    return _two_cornered_scan(
        g, (frozenset((n, 1)), frozenset((1, 2))), frozenset((n, 2)),
        faces, None, "TwoCorneredPB", "n_partner_ge_3", n >= 3, exclude_edges)


def find_two_cornered_sa(g: FatGraph, faces: Optional[Sequence[Face]] = None,
                         scharlemann_12: Optional[frozenset[int]] = None,
                         exclude_edges: frozenset[int] = frozenset()) -> tuple[StructureCertificate, ...]:
    """Two-cornered cycles for an orientable partner: disk faces with only
    {0,1}- and {2,3}-corners and positive edges, containing an edge of some
    {1,2}-Scharlemann cycle and a 03-edge.  Gated to n_partner >= 3."""
    n = g.n_partner
    if scharlemann_12 is None:
        scharlemann_12 = frozenset(
            e for c in find_scharlemann_cycles(g, faces)
            if frozenset(c.labels) == frozenset((1, 2)) for e in c.edges)
    return _two_cornered_scan(
        g, (frozenset((n, 1)), frozenset((2, 3))), frozenset((n, 3)),
        faces, scharlemann_12, "TwoCorneredSA", "n_partner_ge_3", n >= 3, exclude_edges)


def scharlemann_from_great_x_cycle(g: FatGraph, cycle: StructureCertificate,
                                   region_index: Optional[int] = None) -> StructureCertificate:
    """A Scharlemann cycle inside the disk bounded by a great x-cycle.

    The cycle must bound a disk region with no level edges in its interior;
    under that hypothesis a hole-free disk face with a common label pair
    exists inside, and the innermost one found is returned.
    """
    edges = frozenset(cycle.edges)
    dec = regions_of_subgraph(g, edges)
    disks = [i for i, r in enumerate(dec.regions) if r.is_disk]
    if region_index is not None:
        if region_index not in disks:
            raise NoDiskSide(f"region {region_index} is not a disk side")
        disks = [region_index]
    if not disks:
        raise NoDiskSide("the cycle bounds no disk region")
    levels = level_labels(g)
    viable = []
    for ri in disks:
        interior = dec.regions[ri].interior_edges
        if not any(frozenset(g.label_pair(e)) == frozenset((k,))
                   for e in interior for k in levels):
            viable.append(ri)
    if not viable:
        raise PreconditionFailed("every disk side contains an interior level edge")
    faces = dec.faces
    all_scharlemann = find_scharlemann_cycles(g, faces)
    face_index = {frozenset(f.darts): i for i, f in enumerate(faces)}
    for ri in viable:
        region_faces = set(dec.regions[ri].faces)
        inside = [c for c in all_scharlemann
                  if face_index[frozenset(c.darts)] in region_faces]
        if inside:
            # innermost descent: prefer faces not touching the bounding cycle
            return min(inside, key=lambda c: (sum(e in edges for e in c.edges), c.edges))
    raise NoScharlemann(
        "no Scharlemann cycle inside the disk side of a great x-cycle")


# -- certificate audit -------------------------------------------------------

def verify_certificate(g: FatGraph, cert: StructureCertificate) -> bool:
    """Re-verify a certificate against raw graph data, independently of the
    detector that produced it."""
    try:
        if cert.kind in ("Scharlemann", "SCycle"):
            f = _find_face(g, cert.darts)
            if f is None or set(f.edges) != set(cert.edges):
                return False
            re = _scharlemann_face_check(g, f)
            return (re is not None and set(re.edges) == set(cert.edges)
                    and re.labels == cert.labels and re.kind == cert.kind)
        if cert.kind == "XCycle":
            x = cert.labels[0]
            if len(cert.edges) != len(cert.darts):
                return False
            for c in find_x_cycles(g, x):
                if (frozenset(c.edges) == frozenset(cert.edges)
                        and frozenset(c.darts) == frozenset(cert.darts)
                        and len(cert.darts) == len(c.darts)):
                    return True
            return False
        if cert.kind == "XFace":
            x = cert.labels[0]
            for c in find_x_faces(g, x):
                if c.darts == cert.darts:
                    return set(c.edges) == set(cert.edges)
            return False
        if cert.kind == "ExtendedSCycle":
            return cert in find_extended_s_cycles(g)
        if cert.kind == "GeneralizedSCycle":
            return cert in find_generalized_s_cycles(g)
        if cert.kind == "TwoCorneredPB":
            return any(c.darts == cert.darts and c.edges == cert.edges
                       for c in find_two_cornered_pb(g))
        if cert.kind == "TwoCorneredSA":
            return any(c.darts == cert.darts and c.edges == cert.edges
                       for c in find_two_cornered_sa(g))
        if cert.kind == "LevelEdge":
            e = cert.edges[0]
            return (g.sign(e) == 1 and g.label_pair(e)[0] == g.label_pair(e)[1]
                    and g.label_pair(e)[0] == cert.labels[0])
    except (KeyError, IndexError, ValueError):
        return False
    raise ValueError(f"unknown certificate kind {cert.kind!r}")
