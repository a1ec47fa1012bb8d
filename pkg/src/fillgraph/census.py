"""Canonical-form enumeration of embedded graphs.

Canonical form: a rooted traversal code minimized over all root darts, the
two root orientations and (for labelled graphs) the cyclic label shift.
Twists are normalized to zero along the discovery tree by vertex flips, so
embeddings differing by flips share a code.

Generation emits slot streams directly in code form: edges are numbered by
first appearance, every new vertex is entered through the open edge with the
smallest id, tree twists are zero.  A stream is therefore its own self-code,
and a graph is kept exactly when no re-rooting yields a smaller code, so each
isomorphism class surfaces once.  The low-level ribbon census is written on
flat arrays; the labelled enumerator reuses it at small bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .pairing import succ_label
from .surface import FatGraph


# -- raw streams ----------------------------------------------------------------

@dataclass
class RawGraph:
    """A ribbon graph in generation form: slots[v] lists darts, twists and
    signs by edge id, labels by (vertex, slot)."""

    slots: list[list[int]]
    twists: list[int]
    signs: list[int]
    labels: Optional[list[list[int]]] = None

    def to_fatgraph(self, n_partner: int = 1, delta: int = 1) -> FatGraph:
        return FatGraph(
            [list(r) for r in self.slots],
            None if self.labels is None else [list(r) for r in self.labels],
            signs={e: s for e, s in enumerate(self.signs)},
            twists={e: t for e, t in enumerate(self.twists)},
            n_partner=n_partner, delta=delta)


def _ribbon_streams(n_edges: int, emit: Callable[..., None],
                    twisted: bool = True, signed: bool = False,
                    degree_cap: Optional[int] = None,
                    max_vertices: Optional[int] = None,
                    fixed_degree: Optional[int] = None,
                    first_degree: Optional[int] = None) -> int:
    """Depth-first generation of connected slot streams in code form.

    Every vertex after the first opens by closing the smallest open edge;
    tree edges carry twist zero; the first vertex has the minimal degree
    (necessary for canonical form).  Returns the number of streams emitted.
    """
    total_all = 2 * n_edges
    slots: list[list[int]] = []
    twists = [0] * n_edges
    signs = [1] * n_edges
    posv = [0] * (2 * n_edges)
    posi = [0] * (2 * n_edges)
    open_edges: list[int] = []
    tree: set[int] = set()
    code: list[int] = []  # the stream's own packed traversal code, kept in sync
    count = 0

    def fill(vidx: int, degree: int, slot_idx: int, remaining: int, next_edge: int):
        nonlocal count
        ring = slots[vidx]
        if slot_idx == degree:
            if remaining == 0:
                if not open_edges:
                    count += 1
                    emit(slots, twists, signs, next_edge, code, posv, posi)
                return
            if open_edges:
                new_vertex(remaining, next_edge)
            return
        left_total = (degree - slot_idx) + remaining
        # close an open edge
        for e in list(open_edges):
            d_close = 2 * e + 1
            posv[d_close] = vidx
            posi[d_close] = len(ring)
            ring.append(d_close)
            open_edges.remove(e)
            if twisted and e not in tree:
                for tw in (0, 1):
                    twists[e] = tw
                    code.append(e * 4 + 2 + tw)
                    fill(vidx, degree, slot_idx + 1, remaining, next_edge)
                    code.pop()
                twists[e] = 0
            else:
                code.append(e * 4 + 2)
                fill(vidx, degree, slot_idx + 1, remaining, next_edge)
                code.pop()
            open_edges.append(e)
            open_edges.sort()
            ring.pop()
        # open a new edge
        if next_edge < n_edges and len(open_edges) + 1 <= left_total - 1:
            e = next_edge
            posv[2 * e] = vidx
            posi[2 * e] = len(ring)
            ring.append(2 * e)
            open_edges.append(e)
            code.append(e * 4)
            if signed:
                for sg in (1, -1):
                    signs[e] = sg
                    fill(vidx, degree, slot_idx + 1, remaining, next_edge + 1)
                signs[e] = 1
            else:
                fill(vidx, degree, slot_idx + 1, remaining, next_edge + 1)
            code.pop()
            open_edges.pop()
            ring.pop()

    def v0_beaten() -> bool:
        # the emitted code starts with vertex 0's sweep; if re-rooting within
        # vertex 0 gives a smaller sweep, no descendant stream is canonical
        ring = slots[0]
        deg = len(ring)
        self_prefix = code[1:deg + 1]
        for r in range(deg):
            for step in (1, -1):
                if r == 0 and step == 1:
                    continue
                eid = {}
                for k in range(deg):
                    d = ring[(r + step * k) % deg]
                    e = d >> 1
                    got = eid.get(e)
                    if got is None:
                        eid[e] = len(eid)
                        val = (len(eid) - 1) * 4
                    else:
                        val = got * 4 + 2 + twists[e]  # loops: flips cancel
                    ref = self_prefix[k]
                    if val != ref:
                        break
                else:
                    continue
                if val < ref:
                    return True
        return False

    def new_vertex(remaining: int, next_edge: int):
        if max_vertices is not None and len(slots) >= max_vertices:
            return
        vidx = len(slots)
        if vidx == 1 and v0_beaten():
            return
        close = min(open_edges) if open_edges else None
        if fixed_degree is not None:
            degrees: Iterable[int] = (fixed_degree,) if fixed_degree <= remaining else ()
        else:
            degrees = range(1, remaining + 1)
        for degree in degrees:
            if vidx and slots[0] and degree < len_first[0]:
                continue  # canonical root has minimal degree
            if degree_cap is not None and degree > degree_cap:
                continue
            slots.append([])
            code.append(degree)
            if close is not None:
                d_close = 2 * close + 1
                posv[d_close] = vidx
                posi[d_close] = 0
                slots[-1].append(d_close)
                open_edges.remove(close)
                tree.add(close)
                code.append(close * 4 + 2)
                fill(vidx, degree, 1, remaining - degree, next_edge)
                code.pop()
                tree.discard(close)
                open_edges.append(close)
                open_edges.sort()
                slots[-1].pop()
            else:
                fill(vidx, degree, 0, remaining - degree, next_edge)
            code.pop()
            slots.pop()

    len_first = [0]

    def first_vertex():
        if fixed_degree is not None:
            degrees: Iterable[int] = (fixed_degree,) if fixed_degree <= total_all else ()
        else:
            degrees = range(1, total_all + 1)
        for degree in degrees:
            if first_degree is not None and degree != first_degree:
                continue
            if degree_cap is not None and degree > degree_cap:
                continue
            len_first[0] = degree
            slots.append([])
            code.append(degree)
            fill(0, degree, 0, total_all - degree, 0)
            code.pop()
            slots.pop()

    if n_edges == 0:
        emit([[]], [], [], 0, [0], [], [])
        return 1
    first_vertex()
    return count


# -- canonical codes -------------------------------------------------------------

def _code_of(slots: Sequence[Sequence[int]], pos: dict[int, tuple[int, int]],
             twists: Sequence[int], signs: Sequence[int],
             labels: Optional[Sequence[Sequence[int]]], n_partner: int,
             root: int, flip0: int, shift: int,
             best: Optional[tuple], signed: bool) -> Optional[tuple]:
    """Traversal code rooted at ``root``; None as soon as it exceeds best."""
    code: list[int] = []
    cmp = best

    def push(val: int) -> bool:
        nonlocal cmp
        code.append(val)
        if cmp is not None:
            ref = cmp[len(code) - 1]
            if val > ref:
                return False
            if val < ref:
                cmp = None
        return True

    rv = pos[root][0]
    flips = {rv: flip0}
    entry = {rv: root}
    order = [rv]
    edge_ids: dict[int, int] = {}
    open_partner: dict[int, int] = {}
    i = 0
    while i < len(order):
        v = order[i]
        ring = slots[v]
        deg = len(ring)
        start = pos[entry[v]][1]
        step = 1 if flips[v] == 0 else -1
        if not push(deg):
            return None
        for k in range(deg):
            idx = (start + step * k) % deg
            d = ring[idx]
            e = d >> 1
            eid = edge_ids.get(e)
            if eid is None:
                eid = edge_ids[e] = len(edge_ids)
                occ = 0
                tw = 0
                open_partner[e] = d ^ 1
            else:
                occ = 1
                open_partner.pop(e, None)
                u2 = pos[d ^ 1][0]
                tw = twists[e] ^ flips[v] ^ flips.get(u2, flips[v])
            if not push(eid) or not push(occ) or not push(tw):
                return None
            if signed and not push(0 if signs[e] == 1 else 1):
                return None
            if labels is not None:
                lab = labels[v][idx]
                if not push((lab - 1 + shift) % n_partner + 1):
                    return None
        # discover the next vertex through the smallest open edge
        for e in sorted(open_partner, key=lambda e2: edge_ids[e2]):
            d2 = open_partner[e]
            w = pos[d2][0]
            if w not in flips:
                flips[w] = flips[pos[d2 ^ 1][0]] ^ twists[e]
                entry[w] = d2
                order.append(w)
                break
        i += 1
    return tuple(code)


def _raw_is_canonical(raw: RawGraph, n_partner: int = 1) -> bool:
    """Whether the stream (already in code form) is its own canonical code."""
    slots = raw.slots
    pos = {d: (v, i) for v, ring in enumerate(slots) for i, d in enumerate(ring)}
    signed = raw.labels is not None
    labelled = raw.labels
    self_code = _code_of(slots, pos, raw.twists, raw.signs, labelled, n_partner,
                         slots[0][0], 0, 0, None, signed)
    mind = min(len(r) for r in slots)
    shifts = range(n_partner) if labelled is not None else (0,)
    for v, ring in enumerate(slots):
        if len(ring) != mind:
            continue
        for root in ring:
            for flip0 in (0, 1):
                for shift in shifts:
                    if v == 0 and root == slots[0][0] and flip0 == 0 and shift == 0:
                        continue
                    code = _code_of(slots, pos, raw.twists, raw.signs, labelled,
                                    n_partner, root, flip0, shift,
                                    self_code, signed)
                    if code is not None and code < self_code:
                        return False
    return True


def _ribbon_code_fast(slots, posv, posi, twists, root, flip0, best):
    """Packed traversal code for unlabelled unsigned ribbon graphs: per slot
    one integer eid*4 + occ*2 + eff_twist (ordered like the triple), vertex
    degrees interleaved.  Aborts with None as soon as the code exceeds best."""
    nv = len(slots)
    flips = [-1] * nv
    starts = [0] * nv
    rv = posv[root]
    flips[rv] = flip0
    starts[rv] = posi[root]
    order = [rv]
    code = []
    bi = 0
    alive = best is not None
    edge_id = {}
    open_list = []  # (partner dart), appended in edge-id order
    open_ptr = 0
    closed = set()
    i = 0
    while i < len(order):
        v = order[i]
        ring = slots[v]
        deg = len(ring)
        start = starts[v]
        step = 1 if flips[v] == 0 else -1
        val = deg
        if alive:
            ref = best[bi]
            if val > ref:
                return None
            if val < ref:
                alive = False
            bi += 1
        code.append(val)
        fv = flips[v]
        for k in range(deg):
            d = ring[(start + step * k) % deg]
            e = d >> 1
            eid = edge_id.get(e, -1)
            if eid < 0:
                eid = edge_id[e] = len(edge_id)
                open_list.append(d ^ 1)
                val = eid * 4
            else:
                closed.add(e)
                u2 = posv[d ^ 1]
                f2 = flips[u2]
                if f2 < 0:
                    f2 = fv
                val = eid * 4 + 2 + (twists[e] ^ fv ^ f2)
            if alive:
                ref = best[bi]
                if val > ref:
                    return None
                if val < ref:
                    alive = False
                bi += 1
            code.append(val)
        while open_ptr < len(open_list):
            d2 = open_list[open_ptr]
            e2 = d2 >> 1
            w = posv[d2]
            if e2 in closed or flips[w] >= 0:
                open_ptr += 1
                continue
            flips[w] = flips[posv[d2 ^ 1]] ^ twists[e2]
            starts[w] = posi[d2]
            order.append(w)
            open_ptr += 1
            break
        i += 1
    return tuple(code)


def _ribbon_candidate_smaller(slots, posv, posi, twists, root, flip0, best) -> bool:
    """Whether the traversal rooted at ``root`` yields a strictly smaller
    packed code than ``best``.  Walks without materializing the code."""
    nv = len(slots)
    flips = [-1] * nv
    starts = [0] * nv
    rv = posv[root]
    flips[rv] = flip0
    starts[rv] = posi[root]
    order = [rv]
    bi = 0
    n_edges = len(twists)
    edge_id = [-1] * n_edges
    n_seen = 0
    open_list = []
    open_ptr = 0
    closed = bytearray(n_edges)
    i = 0
    while i < len(order):
        v = order[i]
        ring = slots[v]
        deg = len(ring)
        ref = best[bi]
        if deg != ref:
            return deg < ref
        bi += 1
        start = starts[v]
        step = 1 if flips[v] == 0 else -1
        fv = flips[v]
        for k in range(deg):
            d = ring[(start + step * k) % deg]
            e = d >> 1
            eid = edge_id[e]
            if eid < 0:
                edge_id[e] = n_seen
                val = n_seen * 4
                n_seen += 1
                open_list.append(d ^ 1)
            else:
                closed[e] = 1
                f2 = flips[posv[d ^ 1]]
                if f2 < 0:
                    f2 = fv
                val = eid * 4 + 2 + (twists[e] ^ fv ^ f2)
            ref = best[bi]
            if val != ref:
                return val < ref
            bi += 1
        while open_ptr < len(open_list):
            d2 = open_list[open_ptr]
            e2 = d2 >> 1
            w = posv[d2]
            if closed[e2] or flips[w] >= 0:
                open_ptr += 1
                continue
            flips[w] = flips[posv[d2 ^ 1]] ^ twists[e2]
            starts[w] = posi[d2]
            order.append(w)
            open_ptr += 1
            break
        i += 1
    return False  # equal: an automorphism, not smaller


def _ribbon_is_canonical(raw: RawGraph, self_code: Optional[Sequence[int]] = None) -> bool:
    return _live_is_canonical(raw.slots, raw.twists, self_code)


def _live_is_canonical(slots, twists, self_code: Optional[Sequence[int]] = None,
                       posv=None, posi=None) -> bool:
    """Fast canonicity test for unlabelled unsigned streams.  The generator
    supplies the stream's own code and dart positions; they are recomputed
    only when absent."""
    if posv is None:
        n_darts = 2 * sum(len(r) for r in slots) // 2
        posv = [0] * n_darts
        posi = [0] * n_darts
        for v, ring in enumerate(slots):
            for i, d in enumerate(ring):
                posv[d] = v
                posi[d] = i
    self_root = slots[0][0]
    if self_code is None:
        self_code = _ribbon_code_fast(slots, posv, posi, twists, self_root, 0, None)

    # pre-screen on the third and fourth code entries: for a root of degree
    # >= 2 entry three is 2+tw when the rotation neighbor closes the root
    # edge and 4 otherwise, and entry four is determined by the next slot;
    # for a pendant root entry three is the neighbor vertex degree
    mind = len(slots[0])
    self_third = self_code[2] if len(self_code) > 2 else 0
    self_fourth = self_code[3] if len(self_code) > 3 else 0
    for v, ring in enumerate(slots):
        deg = len(ring)
        if deg != mind:
            continue
        for i, root in enumerate(ring):
            rpartner = root ^ 1
            if mind == 1:
                t = len(slots[posv[rpartner]])
                if t != self_third:
                    if t < self_third:
                        return False
                    continue
                if (v != 0 or root != self_root) and _ribbon_candidate_smaller(
                        slots, posv, posi, twists, root, 0, self_code):
                    return False
                if _ribbon_candidate_smaller(slots, posv, posi, twists,
                                             root, 1, self_code):
                    return False
                continue
            for flip0 in (0, 1):
                if v == 0 and root == self_root and flip0 == 0:
                    continue
                step = 1 if flip0 == 0 else -1
                d2 = ring[(i + step) % deg]
                t = 2 + twists[root >> 1] if d2 == rpartner else 4
                if t != self_third:
                    if t < self_third:
                        return False
                    continue
                if mind >= 3:
                    d3 = ring[(i + 2 * step) % deg]
                    if d2 == rpartner:
                        t4 = 4  # root edge closed; this slot opens edge 1
                    elif d3 == rpartner:
                        t4 = 2 + twists[root >> 1]  # closes edge 0, a loop here
                    elif d3 == (d2 ^ 1):
                        t4 = 4 + 2 + twists[d3 >> 1]  # closes edge 1, a loop
                    else:
                        t4 = 8  # opens edge 2
                    if t4 != self_fourth:
                        if t4 < self_fourth:
                            return False
                        continue
                if _ribbon_candidate_smaller(slots, posv, posi, twists,
                                             root, flip0, self_code):
                    return False
    return True


def canonical_code(g: FatGraph, labelled: bool = True, signed: bool = True) -> tuple:
    """Complete isomorphism invariant: minimal rooted traversal code, per
    component, components sorted.  Isomorphisms cover vertex and edge
    relabelling, rotation starting points, vertex flips and (for labelled
    graphs) cyclic label rotation."""
    comp_codes = []
    twists = {e: g.twist(e) for e in g.edge_ids}
    signs = {e: g.sign(e) for e in g.edge_ids}
    labels = g.labels if labelled else None
    pos = {d: g.position(d) for v in range(g.n_vertices) for d in g.slots[v]}
    for comp in g.components():
        vertices = sorted(comp)
        if all(not g.slots[v] for v in vertices):
            comp_codes.append((0,) * len(vertices))
            continue
        occupied = [v for v in vertices if g.slots[v]]
        mind = min(len(g.slots[v]) for v in occupied)
        shifts = range(g.n_partner) if labelled else (0,)
        best: Optional[tuple] = None
        for v in occupied:
            if len(g.slots[v]) != mind:
                continue
            for root in g.slots[v]:
                for flip0 in (0, 1):
                    for shift in shifts:
                        code = _code_of(g.slots, pos, twists, signs, labels,
                                        g.n_partner, root, flip0, shift, best, signed)
                        if code is not None and (best is None or code < best):
                            best = code
        if any(not g.slots[v] for v in vertices):
            best = best + (0,) * sum(1 for v in vertices if not g.slots[v])
        comp_codes.append(best)
    return (g.n_vertices, g.n_edges, tuple(sorted(comp_codes)))


# -- public enumerators -----------------------------------------------------------

def enumerate_ribbon_graphs(max_edges: int, max_vertices: Optional[int] = None,
                            min_edges: int = 0) -> Iterator[FatGraph]:
    """Every isomorphism class of connected twisted ribbon graphs with the
    given number of edges, exactly once, deterministically ordered."""
    for n_edges in range(min_edges, max_edges + 1):
        if n_edges == 0:
            yield FatGraph([[]])
            continue
        out: list[RawGraph] = []

        def sieve(slots, twists, signs, n_used, code, posv, posi):
            if _live_is_canonical(slots, twists, code, posv, posi):
                out.append(RawGraph([list(r) for r in slots],
                                    twists[:n_used], signs[:n_used]))

        _ribbon_streams(n_edges, sieve, twisted=True, signed=False,
                        max_vertices=max_vertices)
        for raw in out:
            yield raw.to_fatgraph()


def count_ribbon_streams(n_edges: int) -> int:
    n = [0]

    def emit(*args):
        n[0] += 1

    _ribbon_streams(n_edges, emit)
    return n[0]


@dataclass(frozen=True)
class Bounds:
    max_vertices: int = 2
    max_edges: int = 4
    n_partner: tuple[int, int] = (1, 2)
    delta: tuple[int, int] = (1, 1)

    def as_dict(self) -> dict:
        return {"max_vertices": self.max_vertices, "max_edges": self.max_edges,
                "n_partner": list(self.n_partner), "delta": list(self.delta)}


def enumerate_fat_graphs(bounds: Bounds) -> Iterator[FatGraph]:
    """Every isomorphism class of admissible labelled fat graphs within
    bounds, exactly once: connected, labels valid, no trivial loops.
    Canonical over vertex orderings, rotation direction choices (vertex
    flips) and label rotations."""
    from .pairing import no_trivial_loops, validate_labels

    for n_partner in range(bounds.n_partner[0], bounds.n_partner[1] + 1):
        for delta in range(bounds.delta[0], bounds.delta[1] + 1):
            degree = n_partner * delta
            for n_vertices in range(1, bounds.max_vertices + 1):
                slots_total = n_vertices * degree
                if slots_total % 2 or slots_total // 2 > bounds.max_edges:
                    continue
                found: list[RawGraph] = []
                _ribbon_streams(
                    slots_total // 2,
                    lambda slots, twists, signs, n_used, code, posv, posi:
                        found.append(RawGraph([list(r) for r in slots],
                                              twists[:n_used], signs[:n_used])),
                    twisted=True, signed=True, fixed_degree=degree,
                    max_vertices=n_vertices)
                for raw in found:
                    if len(raw.slots) != n_vertices:
                        continue
                    yield from _labelled_variants(raw, n_partner, delta)


def _labelled_variants(raw: RawGraph, n_partner: int, delta: int) -> Iterator[FatGraph]:
    from .pairing import no_trivial_loops, validate_labels

    degree = n_partner * delta
    nv = len(raw.slots)
    # vertex 0 starts at label 1 (canonical shift); directions are free, but
    # for n <= 2 ascending and descending coincide
    dirs = (1, -1) if n_partner > 2 else (1,)
    plans = [[(0, d) for d in dirs]]
    for _ in range(1, nv):
        plans.append([(s, d) for s in range(n_partner) for d in dirs])
    for assignment in itertools.product(*plans):
        labels = [[(s + d * k) % n_partner + 1 for k in range(degree)]
                  for s, d in assignment]
        raw2 = RawGraph(raw.slots, raw.twists, raw.signs, labels)
        if not _raw_is_canonical(raw2, n_partner):
            continue
        g = raw2.to_fatgraph(n_partner, delta)
        if not validate_labels(g) or not no_trivial_loops(g):
            continue
        yield g


def naive_fat_graphs(n_vertices: int, n_partner: int, delta: int) -> set:
    """Generate-and-filter oracle at tiny bounds: all slot pairings, twists,
    signs and label patterns, deduplicated by canonical code."""
    from .pairing import no_trivial_loops, validate_labels

    degree = n_partner * delta
    total = n_vertices * degree
    if total % 2:
        return set()
    n_edges = total // 2
    positions = [(v, i) for v in range(n_vertices) for i in range(degree)]
    out = set()

    def matchings(free):
        if not free:
            yield []
            return
        a = free[0]
        for j in range(1, len(free)):
            rest = free[1:j] + free[j + 1:]
            for m in matchings(rest):
                yield [(a, free[j])] + m

    for pairing in matchings(positions):
        slots = [[None] * degree for _ in range(n_vertices)]
        for e, ((v1, i1), (v2, i2)) in enumerate(pairing):
            slots[v1][i1] = 2 * e
            slots[v2][i2] = 2 * e + 1
        for twists in itertools.product((0, 1), repeat=n_edges):
            for signs in itertools.product((1, -1), repeat=n_edges):
                for starts in itertools.product(range(n_partner), repeat=n_vertices):
                    for dirs in itertools.product((1, -1), repeat=n_vertices):
                        labels = [[(starts[v] + dirs[v] * k) % n_partner + 1
                                   for k in range(degree)]
                                  for v in range(n_vertices)]
                        g = FatGraph(slots, labels,
                                     signs=dict(enumerate(signs)),
                                     twists=dict(enumerate(twists)),
                                     n_partner=n_partner, delta=delta)
                        if len(g.components()) != 1:
                            continue
                        if not validate_labels(g) or not no_trivial_loops(g):
                            continue
                        out.add(canonical_code(g))
    return out


# -- parallel-family label assignments --------------------------------------------

def enumerate_parallel_family_labelings(n_partner: int, size: int,
                                        sign: int = 1) -> Iterator[dict]:
    """All arithmetic-progression label assignments of a parallel family
    (start labels at both ends, two direction pairings), tagged with the
    structures the family contains.  Positive families have anti-correlated
    progressions, negative families co-correlated ones."""
    n = n_partner
    dirpairs = [(1, -1), (-1, 1)] if sign == 1 else [(1, 1), (-1, -1)]
    for a in range(n):
        for b in range(n):
            for da, db in dirpairs:
                labels = [((a + da * i) % n + 1, (b + db * i) % n + 1)
                          for i in range(size)]
                yield {"start_a": a + 1, "start_b": b + 1, "dirs": (da, db),
                       "labels": labels, **family_tags(labels, n, sign)}


def family_tags(labels: Sequence[tuple[int, int]], n: int, sign: int) -> dict:
    size = len(labels)
    level_positions = ([i for i, (p, q) in enumerate(labels) if p == q]
                       if sign == 1 else [])
    level_labels = sorted({labels[i][0] for i in level_positions})
    s_cycles = []
    if sign == 1:
        for i in range(size - 1):
            a, b = frozenset(labels[i]), frozenset(labels[i + 1])
            if a == b and len(a) == 2:
                x, y = sorted(a)
                if succ_label(x, n) == y or succ_label(y, n) == x:
                    s_cycles.append(i)
    generalized = [i for i in level_positions if 1 <= i <= size - 2]
    extended = [i for i in s_cycles if 1 <= i <= size - 3]
    return {
        "level_positions": level_positions,
        "level_labels": level_labels,
        "s_cycle_positions": s_cycles,
        "generalized_positions": generalized,
        "extended_positions": extended,
        "end_s_cycle": bool(s_cycles) and (0 in s_cycles or size - 2 in s_cycles),
        "end_level": bool(level_positions) and (0 in level_positions
                                                or size - 1 in level_positions),
        "distinct_level_count": len(level_labels),
    }
