"""Twisted ribbon graphs and their surface topology.

A graph embedded in a (possibly non-orientable) closed or punctured surface
is stored as a signed rotation system: every vertex carries a cyclic sequence
of darts, every edge carries a twist bit, and punctures are designated by
darts lying on the punctured face.  Face tracing, surface classification,
sub-embeddings and complementary-region analysis all live here.

Darts are integers: edge ``e`` owns the two darts ``2*e`` and ``2*e + 1``;
``d ^ 1`` is the opposite end of the same edge.  Edge ids may be sparse (a
sub-embedding keeps the ids of its parent), so darts are sparse too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence


class StructuralError(ValueError):
    """The slot/dart data does not describe a ribbon graph."""


class HoleCollision(ValueError):
    """Two hole darts designate the same traced face."""


class DisconnectedSubgraph(ValueError):
    """An operation requiring a connected sub-embedding got a disconnected one."""


def dart(edge_id: int, end: int) -> int:
    return 2 * edge_id + end


def edge_of(d: int) -> int:
    return d >> 1


def partner(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class SurfaceKind:
    """A small-surface type: tag, orientability, compact Euler characteristic,
    number of boundary circles."""

    tag: str
    orientable: bool
    euler: int
    boundary_count: int

    @property
    def closed_euler(self) -> int:
        """Euler characteristic after capping each boundary circle with a disk."""
        return self.euler + self.boundary_count


SURFACE_KINDS: dict[str, SurfaceKind] = {
    "S": SurfaceKind("S", True, 2, 0),
    "P": SurfaceKind("P", False, 1, 0),
    "A": SurfaceKind("A", True, 0, 2),
    "B": SurfaceKind("B", False, 0, 1),
    "T": SurfaceKind("T", True, 0, 0),
    "K": SurfaceKind("K", False, 0, 0),
}


def surface_kind_from(orientable: bool, euler: int, boundary_count: int) -> Optional[SurfaceKind]:
    for kind in SURFACE_KINDS.values():
        if (kind.orientable, kind.euler, kind.boundary_count) == (orientable, euler, boundary_count):
            return kind
    return None


class FatGraph:
    """An embedded labelled graph: rotation system + twists + slot labels.

    Structural invariants (checked on construction): every dart occurs in
    exactly one slot of exactly one vertex, every edge contributes both of its
    darts, hole darts exist in the graph.  Label-pattern invariants (each
    vertex reads ``1..n_partner`` repeated ``delta`` times) are *not* checked
    here; see :func:`fillgraph.pairing.validate_labels` — sub-embeddings
    legitimately violate them.
    """

    __slots__ = ("slots", "labels", "signs", "twists", "holes", "n_partner",
                 "delta", "declared", "_pos", "_edge_ids", "_faces")

    def __init__(
        self,
        slots: Sequence[Sequence[int]],
        labels: Optional[Sequence[Sequence[int]]] = None,
        signs: Optional[Mapping[int, int]] = None,
        twists: Optional[Mapping[int, int]] = None,
        holes: Iterable[int] = (),
        n_partner: int = 1,
        delta: int = 1,
        declared: Optional[SurfaceKind] = None,
    ):
        self.slots = tuple(tuple(ring) for ring in slots)
        if labels is None:
            labels = [[1] * len(ring) for ring in self.slots]
        self.labels = tuple(tuple(ring) for ring in labels)
        if len(self.labels) != len(self.slots) or any(
            len(a) != len(b) for a, b in zip(self.labels, self.slots)
        ):
            raise StructuralError("labels do not align with slots")

        pos: dict[int, tuple[int, int]] = {}
        for v, ring in enumerate(self.slots):
            for i, d in enumerate(ring):
                if d in pos:
                    raise StructuralError(f"dart {d} occurs twice")
                pos[d] = (v, i)
        for d in pos:
            if d ^ 1 not in pos:
                raise StructuralError(f"dart {d} has no partner dart")
        self._pos = pos
        self._edge_ids = tuple(sorted({d >> 1 for d in pos}))

        self.signs = {e: (signs[e] if signs and e in signs else 1) for e in self._edge_ids}
        if any(s not in (1, -1) for s in self.signs.values()):
            raise StructuralError("edge signs must be +1 or -1")
        self.twists = {e: (twists[e] if twists and e in twists else 0) for e in self._edge_ids}
        if any(t not in (0, 1) for t in self.twists.values()):
            raise StructuralError("edge twists must be 0 or 1")

        self.holes = frozenset(holes)
        for d in self.holes:
            if d not in pos:
                raise StructuralError(f"hole dart {d} is not in the graph")

        if n_partner < 1 or delta < 1:
            raise StructuralError("n_partner and delta must be positive")
        self.n_partner = n_partner
        self.delta = delta
        self.declared = declared
        self._faces = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.slots)

    @property
    def n_edges(self) -> int:
        return len(self._edge_ids)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return self._edge_ids

    def degree(self, v: int) -> int:
        return len(self.slots[v])

    def position(self, d: int) -> tuple[int, int]:
        return self._pos[d]

    def has_dart(self, d: int) -> bool:
        return d in self._pos

    def label(self, d: int) -> int:
        v, i = self._pos[d]
        return self.labels[v][i]

    def vertex_of(self, d: int) -> int:
        return self._pos[d][0]

    def endpoints(self, e: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """((vertex, slot), (vertex, slot)) for darts 2e and 2e+1 in that order."""
        return self._pos[2 * e], self._pos[2 * e + 1]

    def label_pair(self, e: int) -> tuple[int, int]:
        return self.label(2 * e), self.label(2 * e + 1)

    def is_loop(self, e: int) -> bool:
        return self._pos[2 * e][0] == self._pos[2 * e + 1][0]

    def sign(self, e: int) -> int:
        return self.signs[e]

    def twist(self, e: int) -> int:
        return self.twists[e]

    def vertices_of_edges(self, edges: Iterable[int]) -> frozenset[int]:
        out = set()
        for e in edges:
            out.add(self._pos[2 * e][0])
            out.add(self._pos[2 * e + 1][0])
        return frozenset(out)

    def components(self) -> list[frozenset[int]]:
        """Connected components of the underlying graph (vertex sets)."""
        seen = [False] * self.n_vertices
        comps = []
        for v0 in range(self.n_vertices):
            if seen[v0]:
                continue
            stack, comp = [v0], set()
            seen[v0] = True
            while stack:
                v = stack.pop()
                comp.add(v)
                for d in self.slots[v]:
                    w = self._pos[d ^ 1][0]
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def data(self) -> tuple:
        return (
            self.slots,
            self.labels,
            tuple(sorted(self.signs.items())),
            tuple(sorted(self.twists.items())),
            tuple(sorted(self.holes)),
            self.n_partner,
            self.delta,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, FatGraph) and self.data() == other.data()

    def __hash__(self) -> int:
        return hash(self.data())

    def __repr__(self) -> str:
        return (f"FatGraph(V={self.n_vertices}, E={self.n_edges}, "
                f"n_partner={self.n_partner}, delta={self.delta})")


# -- face tracing -----------------------------------------------------------

class Corner(NamedTuple):
    """A passage of a face walk through a vertex.

    ``slot_pair`` holds the arriving and departing slot indices; ``span``
    lists the slot indices strictly between them, in walk order (empty for
    faces of the full graph).  ``label_pair`` is (label at arriving slot,
    label at departing slot).
    """

    vertex: int
    span: tuple[int, ...]
    label_pair: tuple[int, int]
    slot_pair: tuple[int, int] = (-1, -1)

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.label_pair)


class Face(NamedTuple):
    """One traced face: side darts in walk order, corners[k] follows darts[k]."""

    darts: tuple[int, ...]
    corners: tuple[Corner, ...]
    contains_hole: bool

    @property
    def is_disk(self) -> bool:
        return not self.contains_hole

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(c.vertex for c in self.corners)

    def __len__(self) -> int:
        return len(self.darts)


def _side_dart(d: int, s: int, twist: int) -> int:
    # Each edge side is traversed by exactly two (dart, sense) states; this
    # picks one canonical dart per side so sides biject with darts.
    if twist == 0:
        return d if s == 0 else d ^ 1
    return (d & ~1) | s


def _trace(g: FatGraph, sub_edges: Optional[frozenset[int]], sub_vertices: Optional[frozenset[int]]):
    """Shared walk machinery for full faces and sub-embedding boundary walks.

    Returns (walks, side_to_walk) where each walk is a list of
    (side_dart, Corner) steps.  With ``sub_edges=None`` this traces the faces
    of the full graph.  Otherwise it traces the boundary circles of the
    sub-embedding (sub_vertices with only sub_edges slots retained); corners
    then record the skipped slot spans.
    """
    full = sub_edges is None and sub_vertices is None
    if sub_edges is None:
        sub_edges = frozenset(g.edge_ids)
    if sub_vertices is None:
        sub_vertices = frozenset(range(g.n_vertices))

    slots = g.slots
    labels = g.labels
    twists = g.twists
    pos = g._pos

    if full:
        def step(d: int, s: int) -> tuple[int, int, Corner]:
            d2 = d ^ 1
            s2 = s ^ twists[d >> 1]
            v, i = pos[d2]
            ring = slots[v]
            j = (i + 1) % len(ring) if s2 == 0 else (i - 1) % len(ring)
            lab = labels[v]
            return ring[j], s2, Corner(v, (), (lab[i], lab[j]), (i, j))

        states = sorted((d, s) for ring in slots for d in ring for s in (0, 1))
    else:
        # per-vertex list of retained slot indices
        kept: dict[int, list[int]] = {}
        kept_pos: dict[int, int] = {}  # dart -> index into kept[v]
        for v in sub_vertices:
            ring = slots[v]
            ks = [i for i, d in enumerate(ring) if (d >> 1) in sub_edges]
            kept[v] = ks
            for j, i in enumerate(ks):
                kept_pos[ring[i]] = j

        def step(d: int, s: int) -> tuple[int, int, Corner]:
            d2 = d ^ 1
            s2 = s ^ twists[d >> 1]
            v, i = pos[d2]
            ring = slots[v]
            ks = kept[v]
            j2 = (kept_pos[d2] + (1 if s2 == 0 else -1)) % len(ks)
            i_out = ks[j2]
            # slots skipped between i and i_out, in walk direction
            span = []
            n = len(ring)
            t = i
            while True:
                t = (t + 1) % n if s2 == 0 else (t - 1) % n
                if t == i_out:
                    break
                span.append(t)
            out = ring[i_out]
            corner = Corner(v, tuple(span), (labels[v][i], labels[v][i_out]), (i, i_out))
            return out, s2, corner

        states = []
        for v in sub_vertices:
            for i in kept[v]:
                d = slots[v][i]
                states.append((d, 0))
                states.append((d, 1))
        states.sort()

    # Each face is traced by two mutually reverse state orbits; walk only the
    # forward one (containing the smallest unvisited state) and mark its
    # reverse's states visited directly, since the reverse of (d, s) is
    # (d^1, (s ^ twist)^1).
    visited: set[int] = set()
    walks = []
    side_to_walk: dict[int, int] = {}
    for st in states:
        if 2 * st[0] + st[1] in visited:
            continue
        steps = []
        cur = st
        key = 2 * cur[0] + cur[1]
        while key not in visited:
            visited.add(key)
            d, s = cur
            tw = twists[d >> 1]
            visited.add(2 * (d ^ 1) + ((s ^ tw) ^ 1))
            nxt_d, nxt_s, corner = step(d, s)
            sd = d if tw == 0 and s == 0 else (d ^ 1 if tw == 0 else (d & ~1) | s)
            steps.append((sd, corner))
            cur = (nxt_d, nxt_s)
            key = 2 * nxt_d + nxt_s
        widx = len(walks)
        for sd, _ in steps:
            side_to_walk[sd] = widx
        walks.append(steps)
    return walks, side_to_walk


def trace_faces(g: FatGraph) -> tuple[Face, ...]:
    """Faces of the embedded graph, ordered by lowest side dart.

    Every dart lies on exactly one face boundary (as an edge side), so dart
    counts over all faces sum to 2E.  Isolated vertices trace as one empty
    face each, keeping Euler characteristic additive over components.
    Memoized: the graph is immutable.
    """
    if g._faces is not None:
        return g._faces
    walks, _ = _trace(g, None, None)
    faces = []
    for steps in walks:
        darts = tuple(sd for sd, _ in steps)
        corners = tuple(c for _, c in steps)
        faces.append(Face(darts, corners, bool(g.holes.intersection(darts))))
    for v in range(g.n_vertices):
        if not g.slots[v]:
            faces.append(Face((), (Corner(v, (), (0, 0)),), False))
    faces.sort(key=lambda f: min(f.darts) if f.darts else (2 * 10 ** 9 + f.corners[0].vertex))
    g._faces = tuple(faces)
    return g._faces


def face_of_side(faces: Sequence[Face]) -> dict[int, int]:
    out = {}
    for i, f in enumerate(faces):
        for d in f.darts:
            out[d] = i
    return out


# -- orientability ------------------------------------------------------------

def orientation_flips(g: FatGraph, edges: Optional[frozenset[int]] = None,
                      vertices: Optional[frozenset[int]] = None) -> Optional[dict[int, int]]:
    """Vertex flip assignment making all twists zero, or None if impossible.

    A sub-embedding is orientable iff every cycle has even twist sum, iff the
    flip system ``flip[u] ^ flip[v] = twist(e)`` is solvable (loops force
    twist 0).  Solved by spanning-tree propagation per component.
    """
    if edges is None:
        edges = frozenset(g.edge_ids)
    if vertices is None:
        vertices = frozenset(range(g.n_vertices))
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    for e in edges:
        (u, _), (w, _) = g.endpoints(e)
        if u == w:
            if g.twists[e]:
                return None
            continue
        adj[u].append((w, g.twists[e]))
        adj[w].append((u, g.twists[e]))
    flip: dict[int, int] = {}
    for v0 in sorted(vertices):
        if v0 in flip:
            continue
        flip[v0] = 0
        stack = [v0]
        while stack:
            v = stack.pop()
            for w, t in adj[v]:
                want = flip[v] ^ t
                if w in flip:
                    if flip[w] != want:
                        return None
                else:
                    flip[w] = want
                    stack.append(w)
    return flip


@dataclass(frozen=True)
class SurfaceReport:
    orientable: bool
    euler: int
    boundary_count: int
    kind: Optional[SurfaceKind]
    n_components: int
    mismatch: Optional[str]

    @property
    def matches_declared(self) -> bool:
        return self.mismatch is None


def classify_surface(g: FatGraph) -> SurfaceReport:
    """Classify the traced surface and compare against the declared type.

    Orientability comes from spanning-tree twist propagation; the compact
    Euler characteristic is V - E + F minus the hole count.  Raises
    :class:`HoleCollision` if two hole darts land in one traced face.
    """
    faces = trace_faces(g)
    by_face = face_of_side(faces)
    seen_faces = set()
    for d in sorted(g.holes):
        f = by_face[d]
        if f in seen_faces:
            raise HoleCollision(f"two hole darts designate face {f}")
        seen_faces.add(f)

    chi_closed = g.n_vertices - g.n_edges + len(faces)
    boundary = len(g.holes)
    orientable = orientation_flips(g) is not None
    euler = chi_closed - boundary
    kind = surface_kind_from(orientable, euler, boundary)
    ncomp = len(g.components())

    mismatch = None
    if g.declared is not None:
        want = g.declared
        if ncomp != 1:
            mismatch = f"graph has {ncomp} components, not a single surface"
        elif (orientable, euler, boundary) != (want.orientable, want.euler, want.boundary_count):
            mismatch = (f"declared {want.tag}=(orientable={want.orientable}, euler={want.euler}, "
                        f"boundary={want.boundary_count}) but traced (orientable={orientable}, "
                        f"euler={euler}, boundary={boundary})")
    return SurfaceReport(orientable, euler, boundary, kind, ncomp, mismatch)


# -- sub-embeddings -----------------------------------------------------------

def subgraph_embedding(g: FatGraph, keep_edges: Iterable[int]) -> FatGraph:
    """Induced embedded subgraph: all vertices, slots of removed edges deleted,
    cyclic order and labels preserved.  Hole darts on removed edges are
    dropped; the result carries no declared type."""
    keep = frozenset(keep_edges)
    unknown = keep.difference(g.edge_ids)
    if unknown:
        raise StructuralError(f"unknown edges {sorted(unknown)}")
    slots, labels = [], []
    for v in range(g.n_vertices):
        ring, lab = [], []
        for i, d in enumerate(g.slots[v]):
            if (d >> 1) in keep:
                ring.append(d)
                lab.append(g.labels[v][i])
        slots.append(ring)
        labels.append(lab)
    return FatGraph(
        slots, labels,
        signs={e: g.signs[e] for e in keep},
        twists={e: g.twists[e] for e in keep},
        holes=[d for d in g.holes if (d >> 1) in keep],
        n_partner=g.n_partner, delta=g.delta, declared=None,
    )


@dataclass(frozen=True)
class Region:
    """A complementary region of a sub-embedding.

    ``euler`` counts the region as a compact surface whose boundary includes
    the circles along the cut *and* the holes of the ambient surface inside
    it; vertex disks floating inside the region belong to the region.
    """

    faces: tuple[int, ...]
    interior_vertices: tuple[int, ...]
    floating_cut_vertices: tuple[int, ...]
    interior_edges: tuple[int, ...]
    walks: tuple[int, ...]
    holes_inside: int
    euler: int
    boundary_circles: int

    @property
    def is_disk(self) -> bool:
        return self.euler == 1 and self.boundary_circles == 1

    @property
    def kind(self) -> str:
        if self.is_disk:
            return "disk"
        if self.euler == 0 and self.boundary_circles == 2:
            return "annulus"
        return "other"


@dataclass(frozen=True)
class RegionDecomposition:
    regions: tuple[Region, ...]
    walks: tuple[tuple[tuple[int, Corner], ...], ...]
    faces: tuple[Face, ...]  # faces of the full graph

    def region_of_face(self, face_index: int) -> int:
        for i, r in enumerate(self.regions):
            if face_index in r.faces:
                return i
        raise KeyError(face_index)

    def region_of_walk(self, walk_index: int) -> int:
        for i, r in enumerate(self.regions):
            if walk_index in r.walks:
                return i
        raise KeyError(walk_index)


def regions_of_subgraph(g: FatGraph, sub_edges: Iterable[int],
                        sub_vertices: Optional[Iterable[int]] = None) -> RegionDecomposition:
    """Complementary regions of a sub-embedding in the ambient surface of g.

    The sub-embedding consists of ``sub_edges`` plus ``sub_vertices`` (default:
    the vertices incident to the edges).  Full-graph vertices outside the
    sub-embedding, and all full-graph edges not in it, lie inside regions and
    are reported.  Sub-vertices without sub-edges float inside a region and
    contribute one boundary circle to it.
    """
    sub_e = frozenset(sub_edges)
    if sub_vertices is None:
        sub_v = g.vertices_of_edges(sub_e)
    else:
        sub_v = frozenset(sub_vertices)
        if not g.vertices_of_edges(sub_e).issubset(sub_v):
            raise StructuralError("sub_vertices must cover the endpoints of sub_edges")

    full_faces = trace_faces(g)
    by_side = face_of_side(full_faces)

    # union-find over full faces; merge across edges not in the sub-embedding
    parent = list(range(len(full_faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    isolated_face: dict[int, int] = {}
    for i, f in enumerate(full_faces):
        if not f.darts:
            isolated_face[f.corners[0].vertex] = i
    for e in g.edge_ids:
        if e not in sub_e:
            union(by_side[2 * e], by_side[2 * e + 1])

    walks, _ = _trace(g, sub_e, sub_v) if sub_v else ([], {})

    groups: dict[int, dict] = {}

    def group(root: int) -> dict:
        return groups.setdefault(root, {
            "faces": set(), "walks": set(), "iv": set(), "fv": set(), "ie": set(), "holes": 0,
        })

    for i in range(len(full_faces)):
        group(find(i))["faces"].add(i)
    for d in g.holes:
        group(find(by_side[d]))["holes"] += 1
    for e in g.edge_ids:
        if e not in sub_e:
            group(find(by_side[2 * e]))["ie"].add(e)
    for v in range(g.n_vertices):
        if v in sub_v:
            continue
        if g.slots[v]:
            f = by_side[g.slots[v][0]]
        else:
            f = isolated_face[v]
        group(find(f))["iv"].add(v)
    for v in sorted(sub_v):
        if g.slots[v] and not any((d >> 1) in sub_e for d in g.slots[v]):
            f = by_side[g.slots[v][0]]
            group(find(f))["fv"].add(v)
        elif not g.slots[v]:
            f = isolated_face[v]
            group(find(f))["fv"].add(v)
    for wi, steps in enumerate(walks):
        if not steps:
            continue
        sd = steps[0][0]
        group(find(by_side[sd]))["walks"].add(wi)
        for sd2, _ in steps:
            assert find(by_side[sd2]) == find(by_side[sd])

    regions = []
    for root in sorted(groups):
        gr = groups[root]
        euler = len(gr["iv"]) - len(gr["ie"]) + len(gr["faces"]) - gr["holes"]
        circles = len(gr["walks"]) + len(gr["fv"]) + gr["holes"]
        regions.append(Region(
            faces=tuple(sorted(gr["faces"])),
            interior_vertices=tuple(sorted(gr["iv"])),
            floating_cut_vertices=tuple(sorted(gr["fv"])),
            interior_edges=tuple(sorted(gr["ie"])),
            walks=tuple(sorted(gr["walks"])),
            holes_inside=gr["holes"],
            euler=euler,
            boundary_circles=circles,
        ))
    return RegionDecomposition(tuple(regions), tuple(tuple(w) for w in walks), full_faces)


def vertex_flip(g: FatGraph, v: int) -> FatGraph:
    """Reverse one vertex's rotation and toggle the twist of each incident
    non-loop edge end.  This changes the stored data but not the embedded
    surface (faces, Euler characteristic, orientability)."""
    slots = [list(ring) for ring in g.slots]
    labels = [list(ring) for ring in g.labels]
    slots[v] = slots[v][::-1]
    labels[v] = labels[v][::-1]
    twists = dict(g.twists)
    for d in g.slots[v]:
        e = d >> 1
        if not g.is_loop(e):
            twists[e] ^= 1
    return FatGraph(slots, labels, signs=g.signs, twists=twists, holes=g.holes,
                    n_partner=g.n_partner, delta=g.delta, declared=g.declared)


def lies_in_disk(g: FatGraph, sub_edges: Iterable[int],
                 sub_vertices: Optional[Iterable[int]] = None) -> bool:
    """Whether the connected sub-embedding lies inside an embedded disk of the
    ambient surface.

    Absorb complementary disk regions (regions with one boundary circle, Euler
    characteristic one and no ambient holes inside) into the ribbon
    neighborhood; the sub-embedding lies in a disk iff this terminates in a
    disk.  Equivalently: the ribbon is orientable and planar and all but at
    most one region is absorbable.
    """
    sub_e = frozenset(sub_edges)
    sub_v = frozenset(sub_vertices) if sub_vertices is not None else g.vertices_of_edges(sub_e)
    if not sub_v:
        raise DisconnectedSubgraph("empty sub-embedding")

    # connectivity of the sub-embedding
    adj: dict[int, set[int]] = {v: set() for v in sub_v}
    for e in sub_e:
        (u, _), (w, _) = g.endpoints(e)
        adj[u].add(w)
        adj[w].add(u)
    start = min(sub_v)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != sub_v:
        raise DisconnectedSubgraph("sub-embedding is not connected")

    if orientation_flips(g, sub_e, sub_v) is None:
        return False

    decomp = regions_of_subgraph(g, sub_e, sub_v)
    # a sub-vertex with no sub-edges (the singleton case) still bounds a circle
    n_floating = sum(len(r.floating_cut_vertices) for r in decomp.regions)
    n_walks = len(decomp.walks) + n_floating
    chi_ribbon = len(sub_v) - len(sub_e)
    if chi_ribbon + n_walks != 2:  # ribbon must close up to a sphere
        return False
    absorbable = sum(1 for r in decomp.regions if r.is_disk)
    return absorbable >= n_walks - 1
