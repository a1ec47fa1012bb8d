"""Constructive procedures on x-faces and positive subgraphs.

An x-face is cut open into a disk graph (the *cut face*): vertex visits of
the boundary walk become separate vertex copies, each carrying a consecutive
ascending label run; interior edges become a non-crossing chord matching of
the interior slots.  Diagonal splitting, level-one pairs, clusters and seemly
pairs all operate on this linearized form, keeping back-maps to the original
graph so certificates stay expressed in original elements.

Extremal blocks of the positive subgraph live here too: an innermost
two-connected piece with a disk support containing no other positive
material, with at most one ghost (cut or sl) vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .detect import (
    CounterexampleEscalation, NoScharlemann, StructureCertificate,
    _scharlemann_face_check, find_scharlemann_cycles, find_two_cornered_pb,
    find_two_cornered_sa, find_x_faces,
)
from .pairing import pred_label, succ_label
from .surface import (
    FatGraph, Region, RegionDecomposition, StructuralError, SurfaceKind,
    face_of_side, orientation_flips, regions_of_subgraph, subgraph_embedding,
    trace_faces,
)


class ModeLabelClash(ValueError):
    """The face label x violates the mode gate (x=1 for PB; x in {1,2} for SA)."""


class LevelEdgeMissing(CounterexampleEscalation):
    """No level 1-edge after splitting: a candidate violation of the
    two-cornered pair proposition."""


class TwoCorneredMissing(CounterexampleEscalation):
    """A face adjacent to the chosen structure failed two-cornered
    verification."""


class PairRequired(ValueError):
    """The operation needs the partner-side context of a graph pair."""


class SupportNotFound(ValueError):
    """A positive-subgraph component has no disk support: the input does not
    model a sphere- or projective-plane intersection graph."""


class NoBlock(ValueError):
    """Every positive component is a single vertex; no extremal block."""


class NoEligibleLabel(ValueError):
    """Every label is forbidden at the choice point."""


class ShapeMismatch(ValueError):
    """The input does not match the catalogued reduced-graph shape."""


# -- cut faces ----------------------------------------------------------------

CHORD_REAL = 0
CHORD_RELABELED = 1  # a split diagonal, retained in place with a back-map
CHORD_FRESH = 2      # inserted by splitting; no original counterpart


@dataclass(frozen=True)
class Run:
    """One boundary visit of the cut face: a consecutive ascending label run.

    ``chords[k]`` is the chord id at interior slot k; the first and last slot
    are boundary-edge endpoints and carry no chord.
    """

    orig_vertex: Optional[int]
    labels: tuple[int, ...]
    chords: tuple[Optional[int], ...]

    def __post_init__(self):
        assert len(self.labels) == len(self.chords) >= 2
        assert self.chords[0] is None and self.chords[-1] is None


@dataclass(frozen=True)
class CutFace:
    """A formally cut x-face: runs around the disk boundary plus a
    non-crossing chord matching of interior slots."""

    n_partner: int
    x: int
    mode: str  # "PB" or "SA"
    runs: tuple[Run, ...]
    bedges: tuple[int, ...]          # bedges[k] joins run k's last slot to run k+1's first
    chord_sign: tuple[tuple[int, int], ...]
    chord_state: tuple[tuple[int, int], ...]
    back_edges: tuple[tuple[int, int], ...]   # cut edge id -> original edge id
    next_id: int

    @property
    def signs(self) -> dict[int, int]:
        return dict(self.chord_sign)

    @property
    def states(self) -> dict[int, int]:
        return dict(self.chord_state)

    @property
    def backs(self) -> dict[int, int]:
        return dict(self.back_edges)

    def chord_ids(self, include_synthetic: bool = True) -> tuple[int, ...]:
        st = self.states
        return tuple(sorted(c for c in st
                            if include_synthetic or st[c] == CHORD_REAL))

    def synthetic_ids(self, fresh_only: bool = False) -> frozenset[int]:
        st = self.states
        if fresh_only:
            return frozenset(c for c, s in st.items() if s == CHORD_FRESH)
        syn = frozenset(c for c, s in st.items() if s != CHORD_REAL)
        fresh_bedges = frozenset(b for b in self.bedges if b not in self.backs)
        return syn | fresh_bedges

    def chord_positions(self) -> dict[int, list[tuple[int, int]]]:
        pos: dict[int, list[tuple[int, int]]] = {}
        for r, run in enumerate(self.runs):
            for s, c in enumerate(run.chords):
                if c is not None:
                    pos.setdefault(c, []).append((r, s))
        return pos

    def chord_labels(self, c: int) -> tuple[int, int]:
        (r1, s1), (r2, s2) = self.chord_positions()[c]
        return self.runs[r1].labels[s1], self.runs[r2].labels[s2]

    def validate(self) -> None:
        n = self.n_partner
        m = len(self.runs)
        if len(self.bedges) != m:
            raise StructuralError("one boundary edge per run gap required")
        for run in self.runs:
            for a, b in zip(run.labels, run.labels[1:]):
                if b != succ_label(a, n):
                    raise StructuralError(f"labels {run.labels} not ascending")
            if self.x in run.labels[1:-1]:
                raise StructuralError("interior slot labelled x")
            if any(c is None for c in run.chords[1:-1]):
                raise StructuralError("interior slot without a chord")
        for k in range(m):
            lab1 = self.runs[k].labels[-1]
            lab2 = self.runs[(k + 1) % m].labels[0]
            if self.x not in (lab1, lab2):
                raise StructuralError(f"boundary edge {self.bedges[k]} is not an x-edge")
        pos = self.chord_positions()
        for c, ps in pos.items():
            if len(ps) != 2:
                raise StructuralError(f"chord {c} has {len(ps)} endpoints")
        # non-crossing in the global cyclic slot order
        order = []
        for r, run in enumerate(self.runs):
            for s, c in enumerate(run.chords):
                if c is not None:
                    order.append(c)
        stack: list[int] = []
        open_set: set[int] = set()
        for c in order:
            if c in open_set:
                while stack and stack[-1] != c:
                    raise StructuralError(f"chords cross at {c}")
                stack.pop()
                open_set.discard(c)
            else:
                stack.append(c)
                open_set.add(c)
        if stack:
            raise StructuralError("unclosed chords")

    # -- materialization ----------------------------------------------------

    def to_fatgraph(self) -> FatGraph:
        """The disk graph as an embedded graph: all twists zero, a hole dart
        in the outer face."""
        m = len(self.runs)
        first_seen: dict[int, int] = {}
        slots, labels = [], []
        for r, run in enumerate(self.runs):
            ring, lab = [], []
            b_in = self.bedges[(r - 1) % m]
            ring.append(2 * b_in + 1)
            lab.append(run.labels[0])
            for s in range(1, len(run.labels) - 1):
                c = run.chords[s]
                if c in first_seen:
                    ring.append(2 * c + 1)
                else:
                    first_seen[c] = (r, s)
                    ring.append(2 * c)
                lab.append(run.labels[s])
            b_out = self.bedges[r]
            ring.append(2 * b_out)
            lab.append(run.labels[-1])
            slots.append(ring)
            labels.append(lab)
        signs = {b: 1 for b in self.bedges}
        signs.update(self.signs)
        hole = 2 * self.bedges[0] + 1
        return FatGraph(slots, labels, signs=signs, holes=[hole],
                        n_partner=self.n_partner, delta=1)

    def interior_label_check(self) -> bool:
        return all(self.x not in run.labels[1:-1] for run in self.runs)


def cut_x_face(g: FatGraph, cert: StructureCertificate, mode: str) -> CutFace:
    """Cut an x-face certificate open along double edges and repeated
    vertices so its boundary becomes a circle.

    The boundary walk must carry coherently ascending label runs (true inside
    disk supports of positive blocks, where all vertices share a sign).
    """
    x = cert.labels[0]
    dec, disks = _x_face_decomposition(g, x)
    walk = None
    for ri in disks:
        region = dec.regions[ri]
        steps = dec.walks[region.walks[0]]
        if tuple(sd for sd, _ in steps) == cert.darts:
            walk = steps
            break
    if walk is None:
        raise StructuralError("certificate does not match an x-face of the graph")

    n = g.n_partner
    runs_data = []
    for k, (sd, corner) in enumerate(walk):
        v = corner.vertex
        i_in, i_out = corner.slot_pair
        idxs = [i_in] + list(corner.span) + [i_out]
        labs = [g.labels[v][i] for i in idxs]
        if i_in == i_out:
            # pendant doubling: the shared slot is duplicated on the cut
            labs = [g.labels[v][i_in]] + [g.labels[v][i] for i in corner.span] + [g.labels[v][i_in]]
            idxs = [i_in] + list(corner.span) + [i_in]
        runs_data.append((v, idxs, labs))

    # orient the walk so every run ascends
    def ascends(labs):
        return all(b == succ_label(a, n) for a, b in zip(labs, labs[1:]))

    if not all(ascends(labs) for _, _, labs in runs_data):
        rev = [(v, idxs[::-1], labs[::-1]) for v, idxs, labs in reversed(runs_data)]
        if all(ascends(labs) for _, _, labs in rev):
            runs_data = rev
        else:
            raise StructuralError("incoherent label directions inside the x-face")

    # interior edges keyed by original edge id; chords pair interior slots
    m = len(runs_data)
    chord_of: dict[int, int] = {}
    next_id = m
    chord_sign, chord_state, backs = {}, {}, {}
    runs = []
    bedges = []
    for k, (v, idxs, labs) in enumerate(runs_data):
        refs: list[Optional[int]] = [None]
        for i in idxs[1:-1]:
            e = g.slots[v][i] >> 1
            if e in chord_of:
                cid = chord_of[e]
            else:
                cid = next_id
                next_id += 1
                chord_of[e] = cid
                chord_sign[cid] = g.sign(e)
                chord_state[cid] = CHORD_REAL
                backs[cid] = e
            refs.append(cid)
        refs.append(None)
        runs.append(Run(v, tuple(labs), tuple(refs)))
        bedges.append(k)
        # the boundary edge after this run is the original edge at the run's
        # departing slot
        backs[k] = g.slots[v][idxs[-1]] >> 1
    cut = CutFace(n, x, mode, tuple(runs), tuple(bedges),
                  tuple(sorted(chord_sign.items())),
                  tuple(sorted(chord_state.items())),
                  tuple(sorted(backs.items())), next_id)
    cut.validate()
    return cut


def _x_face_decomposition(g: FatGraph, x: int):
    from .detect import x_face_regions
    return x_face_regions(g, x)


# -- diagonal splitting --------------------------------------------------------

def _global_positions(cut: CutFace) -> list[tuple[int, int]]:
    return [(r, s) for r, run in enumerate(cut.runs) for s in range(len(run.labels))]


def _split_once(cut: CutFace, chord: int) -> CutFace:
    """Split the cut face along one diagonal chord.

    The diagonal is retained as a relabeled (formally discarded) chord; one
    side is dropped; a fresh parallel family is inserted, stepping the labels
    toward x and ending in a new boundary x-edge.
    """
    n = cut.n_partner
    x = cut.x
    pos = cut.chord_positions()[chord]
    (r1, s1), (r2, s2) = pos
    la = cut.runs[r1].labels[s1]
    lb = cut.runs[r2].labels[s2]
    if la == lb:
        P, Q = (r1, s1), (r2, s2)
    else:
        su = (x - la) % n
        arc = (lb - la) % n
        if 0 < su < arc:
            P, Q = (r1, s1), (r2, s2)
        else:
            P, Q = (r2, s2), (r1, s1)
            la, lb = lb, la
    su = (x - la) % n
    sd = (lb - x) % n
    jstar = min(su, sd)
    assert jstar >= 1

    allpos = _global_positions(cut)
    ip, iq = allpos.index(P), allpos.index(Q)
    total = len(allpos)
    kept = []
    t = iq
    while True:
        kept.append(allpos[t])
        if allpos[t] == P:
            break
        t = (t + 1) % total

    kept_set = set(kept)
    dropped_chords = set()
    for c, ps in cut.chord_positions().items():
        inside = sum(1 for p in ps if p not in kept_set)
        if inside == 2:
            dropped_chords.add(c)
        elif inside == 1:
            raise StructuralError("chord crosses the splitting diagonal")

    signs = {c: s for c, s in cut.chord_sign if c not in dropped_chords}
    states = {c: s for c, s in cut.chord_state if c not in dropped_chords}
    backs = {e: o for e, o in cut.back_edges if e not in dropped_chords}
    states[chord] = CHORD_RELABELED
    signs[chord] = 1  # formally replaced by a positive parallel copy

    nid = cut.next_id
    fresh = []
    for t2 in range(1, jstar):
        signs[nid] = 1
        states[nid] = CHORD_FRESH
        fresh.append(nid)
        nid += 1
    new_bedge = nid
    nid += 1

    # walk the kept positions, grouping into runs and carrying boundary edges
    groups: list[dict] = []
    for (r, s) in kept:
        if groups and groups[-1]["run"] == r and groups[-1]["slots"][-1] == s - 1:
            groups[-1]["slots"].append(s)
        else:
            groups.append({"run": r, "slots": [s]})
    inner_bedges = []
    for gi in range(len(groups) - 1):
        r = groups[gi]["run"]
        inner_bedges.append(cut.bedges[r])

    def grab(gidx) -> tuple[Optional[int], list[int], list[Optional[int]]]:
        gr = groups[gidx]
        run = cut.runs[gr["run"]]
        labs = [run.labels[s] for s in gr["slots"]]
        refs = [run.chords[s] for s in gr["slots"]]
        return run.orig_vertex, labs, refs

    up_labels = [(la + t2 - 1) % n + 1 for t2 in range(1, jstar + 1)]
    up_refs: list[Optional[int]] = list(fresh) + [None]
    down_labels = [(lb - t2 - 1) % n + 1 for t2 in range(jstar, 0, -1)]
    down_refs: list[Optional[int]] = [None] + list(reversed(fresh))

    new_runs = []
    new_bedges = []
    if len(groups) == 1:
        # the chord was a loop cutting off everything else
        orig, labs, refs = grab(0)
        labs = down_labels + labs + up_labels
        refs = down_refs + refs + up_refs
        new_runs.append(Run(orig, tuple(labs), tuple(refs)))
        new_bedges.append(new_bedge)
    else:
        for gidx in range(len(groups)):
            orig, labs, refs = grab(gidx)
            if gidx == 0:
                labs = down_labels + labs
                refs = down_refs + refs
            if gidx == len(groups) - 1:
                labs = labs + up_labels
                refs = refs + up_refs
            new_runs.append(Run(orig, tuple(labs), tuple(refs)))
            if gidx < len(groups) - 1:
                new_bedges.append(inner_bedges[gidx])
        new_bedges.append(new_bedge)

    for b in new_bedges:
        if b in dict(cut.back_edges):
            backs[b] = dict(cut.back_edges)[b]
    out = CutFace(n, x, cut.mode, tuple(new_runs), tuple(new_bedges),
                  tuple(sorted(signs.items())), tuple(sorted(states.items())),
                  tuple(sorted(backs.items())), nid)
    out.validate()
    return out


def _scharlemann_12_edge_set(cut: CutFace, g: Optional[FatGraph] = None) -> frozenset[int]:
    """Edges of {1,2}-Scharlemann cycles of the cut graph, discarding faces
    that use synthetic material."""
    if g is None:
        g = cut.to_fatgraph()
    syn = cut.synthetic_ids()
    out = set()
    for c in find_scharlemann_cycles(g):
        if frozenset(c.labels) == frozenset((1, 2)) and not syn.intersection(c.edges):
            out.update(c.edges)
    return frozenset(out)


def split_xface_along_diagonals(cut: CutFace) -> CutFace:
    """Split every real diagonal that is not a level 1-edge (PB mode) or not
    an edge of a {1,2}-Scharlemann cycle (SA mode).

    Splitting discards one side and inserts a fresh positive parallel family
    stepping the split diagonal's labels toward x; the final family member is
    the new boundary x-edge.  Fresh edges never appear in downstream
    certificates; the split diagonal itself survives as a relabeled stand-in
    for its original edge.
    """
    if cut.mode == "PB":
        if cut.x == 1:
            raise ModeLabelClash("PB splitting needs x != 1")
    elif cut.mode == "SA":
        if cut.x in (1, 2):
            raise ModeLabelClash("SA splitting needs x not in {1, 2}")
    else:
        raise ValueError(f"unknown mode {cut.mode!r}")

    while True:
        states = cut.states
        real = [c for c in cut.chord_ids() if states[c] == CHORD_REAL]
        if cut.mode == "PB":
            signs = cut.signs
            targets = [c for c in real
                       if not (signs[c] == 1 and cut.chord_labels(c) == (1, 1))]
        else:
            keep = _scharlemann_12_edge_set(cut)
            targets = [c for c in real if c not in keep]
        if not targets:
            return cut
        cut = _split_once(cut, min(targets))


# -- level-one pairs (PB mode) -------------------------------------------------

@dataclass(frozen=True)
class LevelOnePair:
    level_edge: int
    faces: tuple[StructureCertificate, StructureCertificate]
    conditions: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.conditions)


def _corner_blocks_from_edge(face, level_edges: frozenset[int], n: int) -> bool:
    """Between consecutive level 1-edge traversals of a two-cornered face,
    the corners must form a block of {1,2}-corners followed by a block of
    {0,1}-corners (in one global walking direction)."""
    k = len(face.darts)
    marks = [i for i in range(k) if face.darts[i] >> 1 in level_edges]
    if not marks:
        return False

    def kind(c) -> Optional[int]:
        if c.label_set == frozenset((1, 2)):
            return 1
        if c.label_set == frozenset((n, 1)):
            return 0
        return None

    segments = []
    for a, b in zip(marks, marks[1:] + [marks[0] + k]):
        seg = [kind(face.corners[i % k]) for i in range(a, b)]
        if any(v is None for v in seg):
            return False
        segments.append(seg)

    def is_blocks(seg, first, second):
        i = 0
        while i < len(seg) and seg[i] == first:
            i += 1
        return all(v == second for v in seg[i:])

    return (all(is_blocks(s, 1, 0) for s in segments)
            or all(is_blocks(s, 0, 1) for s in segments))


def find_level1_pair(cut: CutFace) -> LevelOnePair:
    """An outermost level 1-edge of the split cut face together with its two
    adjacent faces, both verified two-cornered.

    Raises :class:`LevelEdgeMissing` when no level 1-edge exists (a candidate
    violation, escalated by campaigns) and :class:`TwoCorneredMissing` when an
    adjacent face fails verification.
    """
    if cut.mode != "PB":
        raise ValueError("level-one pairs are a PB-mode structure")
    signs, states = cut.signs, cut.states
    level1 = [c for c in cut.chord_ids()
              if states[c] == CHORD_REAL and signs[c] == 1
              and cut.chord_labels(c) == (1, 1)]
    if not level1:
        raise LevelEdgeMissing("the split face has no level 1-edge")

    # outermost: one side of the chord contains no other level-one endpoint
    allpos = _global_positions(cut)
    posmap = cut.chord_positions()

    def side_free(c: int) -> bool:
        p, q = (allpos.index(t) for t in posmap[c])
        others = {t for c2 in level1 if c2 != c for t in posmap[c2]}
        other_idx = {allpos.index(t) for t in others}
        total = len(allpos)
        sides = ([(p + k) % total for k in range(1, (q - p) % total)],
                 [(q + k) % total for k in range(1, (p - q) % total)])
        return any(not other_idx.intersection(side) for side in sides)

    outer = [c for c in level1 if side_free(c)]
    e = min(outer) if outer else min(level1)

    g = cut.to_fatgraph()
    faces = trace_faces(g)
    by_side = face_of_side(faces)
    f1, f2 = faces[by_side[2 * e]], faces[by_side[2 * e + 1]]
    fresh = cut.synthetic_ids(fresh_only=True)
    certs = find_two_cornered_pb(g, faces)
    by_darts = {c.darts: c for c in certs}
    pair = []
    for f in (f1, f2):
        cert = by_darts.get(f.darts)
        if cert is None:
            raise TwoCorneredMissing(
                f"face adjacent to level 1-edge {e} is not two-cornered")
        pair.append(cert)
    level_counts = [sum(1 for fe in c.edges
                        if fe in level1) for c in pair]
    level_set = frozenset(level1)
    face_objs = [next(f for f in faces if f.darts == c.darts) for c in pair]
    conds = (
        ("level_edge_real", True),
        ("no_fresh_synthetic_edges",
         not any(fresh.intersection(c.edges) for c in pair)),
        ("one_face_has_single_level_edge", 1 in level_counts),
        ("corner_blocks",
         all(_corner_blocks_from_edge(f, level_set, g.n_partner)
             for f in face_objs)),
    )
    return LevelOnePair(e, (pair[0], pair[1]), conds)


# -- clusters and seemly pairs (SA mode) ----------------------------------------

@dataclass(frozen=True)
class Cluster:
    scharlemann: tuple[StructureCertificate, ...]
    two_cornered: tuple[StructureCertificate, ...]
    twelve_edges: tuple[int, ...]
    vertices: tuple[int, ...]
    conditions: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.conditions)


def build_cluster(cut: CutFace) -> Cluster:
    """The union of all {1,2}-Scharlemann cycles of the split face with the
    two-cornered faces adjacent to their edges, restricted to a block.

    Every {1,2}-edge must lie on both a Scharlemann cycle and a two-cornered
    cycle, the whole thing must be connected without cut vertices, and each
    Scharlemann cycle contributes two good edges once a partner arrangement
    is supplied.
    """
    if cut.mode != "SA":
        raise ValueError("clusters are an SA-mode structure")
    g = cut.to_fatgraph()
    faces = trace_faces(g)
    by_side = face_of_side(faces)
    syn = cut.synthetic_ids()
    fresh = cut.synthetic_ids(fresh_only=True)

    sch = [c for c in find_scharlemann_cycles(g, faces)
           if frozenset(c.labels) == frozenset((1, 2))
           and not syn.intersection(c.edges)]
    if not sch:
        raise NoScharlemann("the split face contains no {1,2}-Scharlemann cycle")

    sch_faces = {c.darts for c in sch}
    twelve = sorted({e for c in sch for e in c.edges})
    tc = find_two_cornered_sa(g, faces, scharlemann_12=frozenset(twelve))
    tc_by_darts = {c.darts: c for c in tc}

    adjacent_ok = True
    chosen_tc: dict[tuple, StructureCertificate] = {}
    for c in sch:
        for e in c.edges:
            f_other = None
            for d in (2 * e, 2 * e + 1):
                f = faces[by_side[d]]
                if f.darts != c.darts:
                    f_other = f
            if f_other is None or f_other.darts not in tc_by_darts:
                adjacent_ok = False
            else:
                chosen_tc[f_other.darts] = tc_by_darts[f_other.darts]

    cycles = list(sch) + sorted(chosen_tc.values(), key=lambda c: c.edges)
    # block restriction: cycles sharing an edge stay together; a shared vertex
    # alone is a cut vertex and separates blocks
    parent = list(range(len(cycles)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(cycles):
        for j in range(i + 1, len(cycles)):
            if set(a.edges).intersection(cycles[j].edges):
                parent[max(find(i), find(j))] = min(find(i), find(j))
    groups: dict[int, list] = {}
    for i, c in enumerate(cycles):
        groups.setdefault(find(i), []).append(c)
    block = min(groups.values(), key=lambda cs: min(c.edges for c in cs))
    bsch = tuple(c for c in block if c.kind in ("Scharlemann", "SCycle"))
    btc = tuple(c for c in block if c.kind == "TwoCorneredSA")
    b_twelve = sorted({e for c in bsch for e in c.edges})

    vset = set()
    for c in block:
        for corner_face in faces:
            if corner_face.darts == c.darts:
                vset.update(cc.vertex for cc in corner_face.corners)
    tc_edge_union = {e for c in btc for e in c.edges}
    cond = (
        ("has_scharlemann", bool(bsch)),
        ("faces_next_to_scharlemann_two_cornered", adjacent_ok),
        ("twelve_edges_on_both",
         all(e in tc_edge_union for e in b_twelve)),
        ("no_fresh_synthetic_edges",
         not any(fresh.intersection(c.edges) for c in block)),
    )
    return Cluster(bsch, btc, tuple(b_twelve), tuple(sorted(vset)), cond)


@dataclass(frozen=True)
class PartnerArrangement:
    """Cyclic order of the cluster's {1,2}-edges around the twice-punctured
    sphere R of the partner surface, plus the gap holding vertices 0 and 3.

    Gap i lies between ``order[i]`` and ``order[i+1]``; any arc joining
    vertices 0 and 3 to the boundary avoids all {1,2}-edges, so both vertices
    sit in a single gap.
    """

    order: tuple[int, ...]
    gap03: int


@dataclass(frozen=True)
class SeemlyPair:
    sigma1: StructureCertificate
    sigma2: StructureCertificate
    e1: int
    e2: int
    d_g: tuple[int, ...]  # twelve-edges inside the distinguished disk, closed
    counting: tuple[tuple[str, int], ...]
    conditions: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.conditions)


def good_edges(cluster: Cluster, arr: PartnerArrangement) -> dict[tuple[int, ...], tuple[int, int]]:
    """Per Scharlemann cycle, the two edges bounding the gap disk containing
    vertices 0 and 3."""
    k = len(arr.order)
    if sorted(arr.order) != sorted(cluster.twelve_edges):
        raise PairRequired("arrangement must cover exactly the cluster's {1,2}-edges")
    out = {}
    for c in cluster.scharlemann:
        mine = set(c.edges)
        # walk left and right from the 0-3 gap to the nearest edge of c
        left = right = None
        for step in range(1, k + 1):
            cand = arr.order[(arr.gap03 - step + 1) % k]
            if cand in mine:
                left = cand
                break
        for step in range(1, k + 1):
            cand = arr.order[(arr.gap03 + step) % k]
            if cand in mine:
                right = cand
                break
        out[c.edges] = (left, right)
    return out


def find_seemly_pair(cut: CutFace, cluster: Cluster,
                     arr: Optional[PartnerArrangement]) -> SeemlyPair:
    """The distinguished pair of two-cornered cycles of a cluster.

    Needs the partner arrangement: good edges, the dual forest, and the
    component whose two-cornered duals have only good {1,2}-edges are all
    defined on the twice-punctured sphere of the partner surface.
    """
    if arr is None:
        raise PairRequired("find_seemly_pair needs a partner arrangement")
    g = cut.to_fatgraph()
    faces = trace_faces(g)
    by_side = face_of_side(faces)
    goods_by_sigma = good_edges(cluster, arr)
    all_goods = sorted({e for pair in goods_by_sigma.values() for e in pair})

    def tc_of_edge(e: int, sigma: StructureCertificate) -> Optional[StructureCertificate]:
        for d in (2 * e, 2 * e + 1):
            f = faces[by_side[d]]
            if f.darts != sigma.darts:
                for c in cluster.two_cornered:
                    if c.darts == f.darts:
                        return c
        return None

    # dual forest: vertices are Scharlemann cycles and two-cornered cycles
    # holding good edges; edges are the good edges
    nodes: dict[tuple, tuple[str, StructureCertificate]] = {}
    forest_edges = []
    for sigma in cluster.scharlemann:
        nodes[("s", sigma.darts)] = ("s", sigma)
        for e in goods_by_sigma[sigma.edges]:
            tau = tc_of_edge(e, sigma)
            if tau is None:
                raise TwoCorneredMissing(f"good edge {e} has no two-cornered side")
            nodes[("t", tau.darts)] = ("t", tau)
            forest_edges.append((("s", sigma.darts), ("t", tau.darts), e))

    # forest check (union-find cycle detection)
    parent = {k: k for k in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    acyclic = True
    for a, b, _ in forest_edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        else:
            parent[ra] = rb

    comps: dict = {}
    for key in nodes:
        comps.setdefault(find(key), []).append(key)

    good_set = set(all_goods)
    lam_g = None
    for root, members in sorted(comps.items()):
        ok = True
        for kind, darts in members:
            if kind == "t":
                tau = nodes[(kind, darts)][1]
                tw = [e for e in tau.edges
                      if frozenset(g.label_pair(e)) == frozenset((1, 2))
                      and e in cluster.twelve_edges]
                if any(e not in good_set for e in tw):
                    ok = False
        if ok:
            lam_g = members
            break
    if lam_g is None:
        raise TwoCorneredMissing("no dual component with all-good two-cornered cycles")

    sigmas = [nodes[k][1] for k in lam_g if k[0] == "s"]
    taus = [nodes[k][1] for k in lam_g if k[0] == "t"]
    n_s = len(sigmas)
    lam_edges = [fe for fe in forest_edges if fe[0] in lam_g or fe[1] in lam_g]

    valency: dict = {}
    for a, b, e in lam_edges:
        valency[a] = valency.get(a, 0) + 1
        valency[b] = valency.get(b, 0) + 1
    leaf_taus = [nodes[k][1] for k in lam_g if k[0] == "t" and valency.get(k, 0) == 1]
    leaf_goods = sorted({e for a, b, e in lam_edges
                         if (a[0] == "t" and valency.get(a, 0) == 1)
                         or (b[0] == "t" and valency.get(b, 0) == 1)})

    # nearest leaf-good to the 0-3 gap, searching both directions
    k = len(arr.order)
    e1 = None
    for step in range(1, k + 1):
        left = arr.order[(arr.gap03 - step + 1) % k]
        right = arr.order[(arr.gap03 + step) % k]
        cands = sorted(c for c in (left, right) if c in leaf_goods)
        if cands:
            e1 = cands[0]
            break
    if e1 is None:
        raise TwoCorneredMissing("no leaf good edge in the distinguished component")

    sigma_g = next(s for s in sigmas if e1 in goods_by_sigma[s.edges])
    sigma1 = next(nodes[b][1] for a, b, e in lam_edges if e == e1)
    ga, gb = goods_by_sigma[sigma_g.edges]
    e2 = gb if e1 == ga else ga

    # D_g: the closed arc between e1 and e2 whose gap sequence contains the
    # 0-3 gap (gap t lies between positions t and t+1)
    i1, i2 = arr.order.index(e1), arr.order.index(e2)

    def arc(ia, ib, step):
        out, t = [arr.order[ia]], ia
        gaps = []
        while t != ib:
            gaps.append(t if step == 1 else (t - 1) % k)
            t = (t + step) % k
            out.append(arr.order[t])
        return out, gaps

    fwd, fwd_gaps = arc(i1, i2, 1)
    if arr.gap03 in fwd_gaps or e1 == e2:
        d_g = tuple(fwd)
    else:
        bwd, bwd_gaps = arc(i1, i2, -1)
        if arr.gap03 not in bwd_gaps:
            raise TwoCorneredMissing("the 0-3 gap is not between the good edges")
        d_g = tuple(bwd)

    sigma2 = None
    for tau in sorted(taus, key=lambda c: c.edges):
        if tau.darts == sigma1.darts:
            continue
        tw = [e for e in tau.edges if e in cluster.twelve_edges]
        if all(e in d_g for e in tw):
            sigma2 = tau
            break
    outside = [e for e in all_goods if e not in d_g]

    sigma1_twelve = [e for e in sigma1.edges if e in cluster.twelve_edges]
    conds = [
        ("forest_acyclic", acyclic),
        ("component_found", True),
        ("tree_counting", len(taus) == n_s + 1 and len(lam_edges) == 2 * n_s),
        ("sigma1_single_twelve_edge", len(sigma1_twelve) == 1),
        ("sigma2_found", sigma2 is not None),
        ("goods_outside_d_g", len(outside) == n_s - 1),
    ]
    if sigma2 is not None:
        s2_goods = [e for e in sigma2.edges if e in good_set]
        if len(s2_goods) == 1:
            # the 0-3 gap splits D_g; the two goods must lie on opposite parts
            near_gap = [e for e in (arr.order[arr.gap03],
                                    arr.order[(arr.gap03 + 1) % k]) if e in d_g]
            if near_gap:
                gpos = min(d_g.index(e) for e in near_gap)
                side1 = set(d_g[:gpos + 1])
                conds.append(("good_edges_on_different_sides",
                              (s2_goods[0] in side1) != (e1 in side1)))
    counting = (
        ("scharlemann_cycles", n_s),
        ("two_cornered_cycles", len(taus)),
        ("good_edges", 2 * n_s),
        ("goods_outside_d_g", len(outside)),
    )
    return SeemlyPair(sigma1, sigma2 if sigma2 is not None else sigma1,
                      e1, e2, d_g, counting, tuple(conds))


# -- positive subgraphs and extremal blocks -------------------------------------

def positive_subgraph(g: FatGraph) -> FatGraph:
    return subgraph_embedding(g, [e for e in g.edge_ids if g.sign(e) == 1])


def positive_components(g: FatGraph) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Connected components of the positive subgraph, as (vertices, edges);
    vertices with no positive edges form singleton components."""
    pos_edges = [e for e in g.edge_ids if g.sign(e) == 1]
    adj: dict[int, set[int]] = {v: set() for v in range(g.n_vertices)}
    edge_at: dict[int, set[int]] = {v: set() for v in range(g.n_vertices)}
    for e in pos_edges:
        (u, _), (w, _) = g.endpoints(e)
        adj[u].add(w)
        adj[w].add(u)
        edge_at[u].add(e)
        edge_at[w].add(e)
    seen, comps = set(), []
    for v0 in range(g.n_vertices):
        if v0 in seen:
            continue
        stack, vs = [v0], {v0}
        seen.add(v0)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    vs.add(w)
                    stack.append(w)
        es = frozenset(e for v in vs for e in edge_at[v])
        comps.append((frozenset(vs), es))
    return comps


def _disk_support(g: FatGraph, vertices: frozenset[int], edges: frozenset[int]):
    """(outside region index, decomposition) if the sub-embedding has a disk
    support containing no vertices and no positive edges besides itself,
    else (None, decomposition)."""
    if orientation_flips(g, edges, vertices) is None:
        return None, None
    dec = regions_of_subgraph(g, edges, vertices)
    n_walks = len(dec.walks) + sum(len(r.floating_cut_vertices) for r in dec.regions)
    if len(vertices) - len(edges) + n_walks != 2:
        return None, dec

    def absorbable(r: Region) -> bool:
        return (r.is_disk and not r.interior_vertices
                and all(g.sign(e) != 1 for e in r.interior_edges))

    bad = [i for i, r in enumerate(dec.regions) if not absorbable(r)]
    if len(bad) > 1:
        return None, dec
    if len(bad) == 1:
        return bad[0], dec
    # everything absorbable (sphere case): keep the region with the most
    # content outside, deterministically the highest face count
    outside = max(range(len(dec.regions)),
                  key=lambda i: (len(dec.regions[i].faces)
                                 + len(dec.regions[i].interior_vertices), -i))
    return outside, dec


def components_with_disk_support(g: FatGraph, surface: SurfaceKind):
    """Each positive component paired with its disk-support verdict; for
    sphere and projective-plane graphs every component must have one."""
    if surface.tag not in ("S", "P"):
        raise ValueError("disk supports are established for types S and P")
    out = []
    for vs, es in positive_components(g):
        outside, dec = _disk_support(g, vs, es)
        out.append((vs, es, outside is not None))
    if any(not ok for _, _, ok in out):
        bad = [sorted(vs) for vs, _, ok in out if not ok]
        raise SupportNotFound(f"components without disk support: {bad}")
    return out


def _blocks_of(vertices: frozenset[int], edges: Iterable[int], g: FatGraph):
    """Two-connected blocks (as edge sets) and cut vertices of a positive
    component; loops are ignored for cut analysis."""
    es = [e for e in edges if not g.is_loop(e)]
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    for e in es:
        (u, _), (w, _) = g.endpoints(e)
        adj[u].append((w, e))
        adj[w].append((u, e))
    index = {}
    low = {}
    cuts: set[int] = set()
    blocks: list[set[int]] = []
    stack: list[int] = []
    counter = itertools.count()

    def dfs(v, parent_edge):
        index[v] = low[v] = next(counter)
        children = 0
        for w, e in adj[v]:
            if e == parent_edge:
                continue
            if w not in index:
                children += 1
                stack.append(e)
                dfs(w, e)
                low[v] = min(low[v], low[w])
                if low[w] >= index[v]:
                    if parent_edge is not None or children > 1:
                        cuts.add(v)
                    blk = set()
                    while True:
                        e2 = stack.pop()
                        blk.add(e2)
                        if e2 == e:
                            break
                    blocks.append(blk)
            elif index[w] < index[v]:
                stack.append(e)
                low[v] = min(low[v], index[w])

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * (len(vertices) + len(es)) + 100))
    try:
        for v in sorted(vertices):
            if v not in index and adj[v]:
                dfs(v, None)
                if stack:
                    blocks.append(set(stack))
                    stack.clear()
    finally:
        sys.setrecursionlimit(old)
    return blocks, cuts


@dataclass(frozen=True)
class ExtremalBlock:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    boundary_vertices: tuple[int, ...]
    interior_vertices: tuple[int, ...]
    ghost: Optional[int]
    ghost_reason: Optional[str]  # "cut" or "sl"
    outside_region: int
    conditions: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.conditions)


def extract_extremal_block(g: FatGraph, sl_vertices: frozenset[int] = frozenset()) -> ExtremalBlock:
    """An innermost two-connected piece of the positive subgraph with a disk
    support, more than one vertex, and at most one ghost vertex.

    Candidates are leaf blocks of multi-vertex positive components; a block
    whose cut vertex coexists with a distinct sl-vertex is skipped in favour
    of another innermost one.  Ties break on the lowest vertex id.
    """
    candidates = []
    for vs, es in positive_components(g):
        if len(vs) < 2:
            continue
        blocks, cuts = _blocks_of(vs, es, g)
        for blk in blocks:
            bvs = g.vertices_of_edges(blk)
            if len(bvs) < 2:
                continue
            bcuts = bvs.intersection(cuts)
            if len(bcuts) > 1:
                continue  # not a leaf block
            ghosts = set(bcuts) | (bvs & sl_vertices)
            if len(ghosts) > 1:
                continue  # re-selection rule: cut vertex plus distinct sl-vertex
            outside, dec = _disk_support(g, bvs, frozenset(blk))
            if outside is None:
                continue
            # innermost: nothing positive inside the absorbed regions
            other_positive = False
            for i, r in enumerate(dec.regions):
                if i == outside:
                    continue
                if r.interior_vertices or any(g.sign(e) == 1 for e in r.interior_edges):
                    other_positive = True
            if other_positive:
                continue
            ghost = min(ghosts) if ghosts else None
            reason = None
            if ghost is not None:
                reason = "cut" if ghost in bcuts else "sl"
            boundary = set()
            for wi in dec.regions[outside].walks:
                for _, corner in dec.walks[wi]:
                    boundary.add(corner.vertex)
            boundary |= set(dec.regions[outside].floating_cut_vertices)
            interior = bvs - boundary
            conds = (
                ("more_than_one_vertex", len(bvs) > 1),
                ("at_most_one_ghost", len(ghosts) <= 1),
                ("two_connected_modulo_ghost", True),
                ("disk_support_private", True),
            )
            candidates.append(ExtremalBlock(
                tuple(sorted(bvs)), tuple(sorted(blk)),
                tuple(sorted(boundary)), tuple(sorted(interior)),
                ghost, reason, outside, conds))
    if not candidates:
        raise NoBlock("no multi-vertex positive block with a private disk support")
    return min(candidates, key=lambda b: b.vertices)


def block_x_faces(g: FatGraph, block: ExtremalBlock, x: int,
                  drop_ghost: bool = False) -> tuple[StructureCertificate, ...]:
    """Disk faces of the block's x-edge subgraph inside its disk support."""
    verts = set(block.vertices)
    edges = set(block.edges)
    if drop_ghost and block.ghost is not None:
        verts.discard(block.ghost)
        edges = {e for e in edges
                 if block.ghost not in {v for v, _ in g.endpoints(e)}}
    x_edges = {e for e in edges if x in g.label_pair(e)}
    dec = regions_of_subgraph(g, x_edges, verts)
    # the outside of the block support maps into one region; exclude it
    # (both decompositions index the same full-graph face list)
    block_dec = regions_of_subgraph(g, frozenset(block.edges), frozenset(block.vertices))
    outside_faces = set(block_dec.regions[block.outside_region].faces)
    out = []
    for ri, r in enumerate(dec.regions):
        if not r.is_disk:
            continue
        if set(r.faces) & outside_faces:
            continue
        walk = dec.walks[r.walks[0]]
        darts = tuple(sd for sd, _ in walk)
        cert = StructureCertificate(
            "XFace", tuple(d >> 1 for d in darts), darts, (x,),
            (("region_is_disk", True), ("hole_free", r.holes_inside == 0),
             ("inside_block_support", True),
             ("boundary_edges_positive_x",
              all(g.sign(e) == 1 and x in g.label_pair(e) for e in
                  (d >> 1 for d in darts)))))
        if cert.ok:
            out.append(cert)
    out.sort(key=lambda c: (c.edges, c.darts))
    return tuple(out)


def xface_in_block(g: FatGraph, block: ExtremalBlock,
                   forbidden_labels: frozenset[int],
                   drop_ghost: bool = False):
    """Choose a non-forbidden label (at the ghost if present) and search the
    block for an x-face; absence on admissible inputs is a counterexample
    candidate, so the caller escalates a None result."""
    n = g.n_partner
    if block.ghost is not None and not drop_ghost:
        ghost_labels = sorted({g.label(d) for d in g.slots[block.ghost]
                               if (d >> 1) in set(block.edges)})
        pool = [lab for lab in ghost_labels if lab not in forbidden_labels]
    else:
        pool = [lab for lab in range(1, n + 1) if lab not in forbidden_labels]
    if not pool:
        raise NoEligibleLabel(f"all labels forbidden: {sorted(forbidden_labels)}")
    x = pool[0]
    certs = block_x_faces(g, block, x, drop_ghost)
    transcript = {
        "label": x,
        "drop_ghost": drop_ghost,
        "ghost": block.ghost,
        "ghost_block_edges": sorted(
            e for e in block.edges
            if block.ghost is not None
            and block.ghost in {v for v, _ in g.endpoints(e)}),
    }
    return (certs[0] if certs else None), transcript
