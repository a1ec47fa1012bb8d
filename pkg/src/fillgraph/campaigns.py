"""Exhaustive verification campaigns with deterministic parallel reports.

Each campaign defines a deterministic list of tasks; workers process whole
tasks and the driver merges partial results in task order, so the report is
identical for any worker count.  Timing and per-worker statistics live
outside the canonical serialization, keeping file outputs byte-deterministic.
"""

from __future__ import annotations

import base64
import itertools
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .blocks import (
    CHORD_REAL, CutFace, LevelEdgeMissing, PartnerArrangement, Run,
    TwoCorneredMissing, build_cluster, find_level1_pair, find_seemly_pair,
    split_xface_along_diagonals,
)
from .census import (
    Bounds, enumerate_parallel_family_labelings, family_tags,
    _live_is_canonical, _ribbon_streams, RawGraph,
)
from .detect import NoScharlemann, find_generalized_s_cycles, find_scharlemann_cycles
from .lemmas import block_euler_contradiction, sec8_family_arithmetic
from .pairing import no_trivial_loops, succ_label
from .surface import FatGraph, orientation_flips, regions_of_subgraph, trace_faces


class ResourceLimit(RuntimeError):
    """Raised when a campaign exceeds its instance budget; carries the
    partial report and a resumption token."""

    def __init__(self, report: "CampaignReport"):
        super().__init__("campaign instance budget exceeded")
        self.report = report


CAMPAIGNS = ("face-trace-oracle", "parallel-family", "prop51", "prop31",
             "prop41", "sec6-ss", "sec8-euler", "sec8-arith")


@dataclass(frozen=True)
class CampaignSpec:
    campaign: str
    bounds: tuple[tuple[str, int], ...] = ()
    workers: int = 1
    max_instances: Optional[int] = None

    @staticmethod
    def make(campaign: str, workers: int = 1, max_instances: Optional[int] = None,
             **bounds: int) -> "CampaignSpec":
        if campaign not in CAMPAIGNS:
            raise ValueError(f"unknown campaign {campaign!r}; choose from {CAMPAIGNS}")
        merged = dict(_DEFAULT_BOUNDS[campaign])
        merged.update(bounds)
        return CampaignSpec(campaign, tuple(sorted(merged.items())), workers,
                            max_instances)

    def bound(self, key: str) -> int:
        return dict(self.bounds)[key]


@dataclass
class CampaignReport:
    campaign: str
    bounds: dict
    instances_generated: int = 0
    instances_canonical: int = 0
    structures: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    partial: bool = False
    resume_token: str = ""
    elapsed: float = 0.0
    worker_stats: dict = field(default_factory=dict)

    def canonical_dict(self) -> dict:
        return {
            "format": "fillgraph.campaign-report/1",
            "campaign": self.campaign,
            "bounds": {k: self.bounds[k] for k in sorted(self.bounds)},
            "instances_generated": self.instances_generated,
            "instances_after_canonical_rejection": self.instances_canonical,
            "structures": {k: self.structures[k] for k in sorted(self.structures)},
            "violations": self.violations,
            "partial": self.partial,
            "resume_token": self.resume_token,
        }

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.canonical_dict(), sort_keys=True,
                          separators=(",", ":")).encode()


_DEFAULT_BOUNDS = {
    "face-trace-oracle": {"max_edges": 6},
    "parallel-family": {"max_n": 12},
    "prop51": {"max_vertices": 5, "max_edges": 6},
    "prop31": {"max_vertices": 4, "n_low": 3, "n_high": 4},
    "prop41": {"max_vertices": 4, "n_low": 4, "n_high": 4},
    "sec6-ss": {"max_vertices": 3, "max_edges": 4, "n_high": 3, "delta_high": 2},
    "sec8-euler": {"delta_low": 3, "delta_high": 5, "max_count": 100},
    "sec8-arith": {"max_n1": 50},
}


def _graph_payload(g: FatGraph) -> dict:
    return {
        "slots": [list(r) for r in g.slots],
        "labels": [list(r) for r in g.labels],
        "signs": {str(e): g.sign(e) for e in g.edge_ids},
        "twists": {str(e): g.twist(e) for e in g.edge_ids},
        "n_partner": g.n_partner,
        "delta": g.delta,
    }


# -- face-trace oracle -------------------------------------------------------

def _oracle_face_count(slots: Sequence[Sequence[int]], twists: Sequence[int]) -> int:
    """Independent face count: explicit next-state permutation on the 4E
    (dart, sense) states (state id 2*dart + sense, darts dense), orbits
    counted by permutation composition, halved because each face is traced
    in both directions."""
    n_darts = sum(len(r) for r in slots)
    posv = [0] * n_darts
    posi = [0] * n_darts
    for v, ring in enumerate(slots):
        for i, d in enumerate(ring):
            posv[d] = v
            posi[d] = i
    nxt = [0] * (2 * n_darts)
    for d in range(n_darts):
        for s in (0, 1):
            d2 = d ^ 1
            s2 = s ^ twists[d2 >> 1]
            ring = slots[posv[d2]]
            j = posi[d2]
            j2 = (j + 1) % len(ring) if s2 == 0 else (j - 1) % len(ring)
            nxt[2 * d + s] = 2 * ring[j2] + s2
    seen = bytearray(2 * n_darts)
    orbits = 0
    for i in range(2 * n_darts):
        if not seen[i]:
            orbits += 1
            j = i
            while not seen[j]:
                seen[j] = 1
                j = nxt[j]
    assert orbits % 2 == 0
    return orbits // 2


def _oracle_orientable(slots: Sequence[Sequence[int]], twists: Sequence[int]) -> bool:
    """Independent orientability: the twisted double cover of the vertex set
    has twice as many components as the graph iff every cycle is
    twist-even."""
    nv = len(slots)
    parent = list(range(2 * nv))
    base = list(range(nv))
    pos = [0] * (2 * sum(len(r) for r in slots) // 2 or 1)
    for v, ring in enumerate(slots):
        for d in ring:
            pos[d] = v
    for e in range(len(twists)):
        u, w = pos[2 * e], pos[2 * e + 1]
        t = twists[e]
        for a, b in ((2 * u, 2 * w + t), (2 * u + 1, 2 * w + (t ^ 1))):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[max(a, b)] = min(a, b)
        a, b = u, w
        while base[a] != a:
            base[a] = base[base[a]]
            a = base[a]
        while base[b] != b:
            base[b] = base[base[b]]
            b = base[b]
        if a != b:
            base[max(a, b)] = min(a, b)
    cover = set()
    for i in range(2 * nv):
        a = i
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        cover.add(a)
    comps = set()
    for v in range(nv):
        a = v
        while base[a] != a:
            base[a] = base[base[a]]
            a = base[a]
        comps.add(a)
    return len(cover) == 2 * len(comps)


def _face_trace_task(spec_bounds: dict, task: tuple) -> dict:
    n_edges, first_degree = task
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}

    def sieve(slots, twists, signs, n_used, code, posv=None, posi=None):
        out["generated"] += 1
        if not _live_is_canonical(slots, twists, code, posv, posi):
            return
        out["canonical"] += 1
        raw_slots = [list(r) for r in slots]
        raw_twists = list(twists[:n_used])
        g = FatGraph(raw_slots, twists={e: t for e, t in enumerate(raw_twists)})
        faces = trace_faces(g)
        traced_f = len(faces)
        traced_or = orientation_flips(g) is not None
        oracle_f = _oracle_face_count(raw_slots, raw_twists)
        oracle_or = _oracle_orientable(raw_slots, raw_twists)
        chi = g.n_vertices - g.n_edges + traced_f
        ok = traced_f == oracle_f and traced_or == oracle_or
        if not ok:
            out["violations"].append({
                "kind": "face-trace-mismatch",
                "traced": [traced_f, traced_or],
                "oracle": [oracle_f, oracle_or],
                "graph": {"slots": raw_slots, "twists": raw_twists},
            })
        key = f"chi={chi},orientable={'yes' if traced_or else 'no'}"
        out["structures"][key] += 1

    if n_edges == 0:
        g = FatGraph([[]])
        out["generated"] += 1
        out["canonical"] += 1
        out["structures"]["chi=2,orientable=yes"] += 1
        return out
    _ribbon_streams(n_edges, sieve, twisted=True, signed=False,
                    first_degree=first_degree)
    return out


def _face_trace_tasks(spec: CampaignSpec) -> list[tuple]:
    # split the generation tree by the root degree: tasks partition the
    # stream space with no duplicated generation work
    tasks = [(0, None)]
    for e in range(1, spec.bound("max_edges") + 1):
        if e <= 4:
            tasks.append((e, None))
        else:
            for d0 in range(1, 2 * e + 1):
                tasks.append((e, d0))
    # largest subtrees first for better load balance
    tasks.sort(key=lambda t: (-(t[0]), t[1] if t[1] is not None else 0))
    return tasks


# -- parallel families --------------------------------------------------------

def _family_task(spec_bounds: dict, task: tuple) -> dict:
    (n,) = task
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}

    def violations_for(size, check, description):
        for asg in enumerate_parallel_family_labelings(n, size, sign=1):
            out["generated"] += 1
            out["canonical"] += 1
            if not check(asg):
                out["violations"].append({
                    "kind": description, "n": n, "size": size,
                    "labels": [list(p) for p in asg["labels"]],
                })

    # one past the sphere/annulus bound: something from the forbidden list
    size = n // 2 + 2
    violations_for(size, lambda a: (a["s_cycle_positions"] or a["generalized_positions"]
                                    or a["distinct_level_count"] >= 2),
                   "oversize-family-without-forced-structure")
    out["structures"][f"n={n}:oversize-checked"] += 1

    # at the sphere/annulus bound: families free of the structures forbidden
    # for those partners (level edges, extended S-cycles) end in an S-cycle
    size = n // 2 + 1
    if size >= 2:
        violations_for(size, lambda a: (a["level_positions"] or a["extended_positions"]
                                        or a["end_s_cycle"]),
                       "extremal-family-without-end-s-cycle")
        out["structures"][f"n={n}:extremal-sa-checked"] += 1

    # at the projective/Moebius bound (odd n): admissible families end level
    if n % 2 == 1:
        size = (n + 1) // 2
        if size >= 1:
            violations_for(size,
                           lambda a: (a["s_cycle_positions"] or a["generalized_positions"]
                                      or a["distinct_level_count"] >= 2
                                      or a["end_level"]),
                           "extremal-family-without-end-level-edge")
            out["structures"][f"n={n}:extremal-pb-checked"] += 1

    # tightness: the bound itself admits a family free of forbidden structures
    size = n // 2 + 1
    tight = any(not a["level_positions"] and not a["extended_positions"]
                and len({frozenset(a["labels"][i]) | frozenset(a["labels"][i + 1])
                         for i in a["s_cycle_positions"]}) <= 1
                for a in enumerate_parallel_family_labelings(n, size, sign=1))
    if size >= 2 and not tight:
        out["violations"].append({"kind": "sa-bound-not-tight", "n": n, "size": size})
    return out


def _family_tasks(spec: CampaignSpec) -> list[tuple]:
    return [(n,) for n in range(2, spec.bound("max_n") + 1)]


# -- the Euler disk-face engine -------------------------------------------------

def _prop51_task(spec_bounds: dict, task: tuple) -> dict:
    n_edges, target, residue, stride = task  # target: "sphere" or "chi0"
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    max_v = spec_bounds["max_vertices"]
    counter = [0]

    def sieve(slots, twists, signs, n_used, code, posv=None, posi=None):
        out["generated"] += 1
        if len(slots) > max_v:
            return
        k = counter[0]
        counter[0] += 1
        if k % stride != residue:
            return
        if not _live_is_canonical(slots, twists, code, posv, posi):
            return
        raw_slots = [list(r) for r in slots]
        raw_twists = list(twists[:n_used])
        g = FatGraph(raw_slots, twists={e: t for e, t in enumerate(raw_twists)})
        faces = trace_faces(g)
        chi = g.n_vertices - g.n_edges + len(faces)
        orient = orientation_flips(g) is not None
        if target == "sphere" and not (chi == 2 and orient):
            return
        if target == "chi0" and chi != 0:
            return
        out["canonical"] += 1
        v = g.n_vertices
        floor = v - 2 if target == "sphere" else v
        from .surface import face_of_side
        by_side = face_of_side(faces)
        nf = len(faces)
        edge_sides = [(by_side[2 * e], by_side[2 * e + 1]) for e in g.edge_ids]
        for r in range(1, g.n_edges + 1):
            if r <= floor:
                continue
            for subset in itertools.combinations(range(g.n_edges), r):
                out["structures"]["subsets-checked"] += 1
                # a compact bounded surface of Euler characteristic one is a
                # disk, and the ambient has no holes, so a disk region exists
                # iff some merged-face component has one more face than
                # interior edges
                parent = list(range(nf))
                inset = set(subset)
                for e in range(g.n_edges):
                    if e in inset:
                        continue
                    a, b = edge_sides[e]
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                chi = Counter()
                for i in range(nf):
                    a = i
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    chi[a] += 1
                for e in range(g.n_edges):
                    if e in inset:
                        continue
                    a = edge_sides[e][0]
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    chi[a] -= 1
                has_disk = any(c == 1 for c in chi.values())
                # spot-validate the fast arithmetic against the full region
                # machinery on a deterministic subsample
                if out["structures"]["subsets-checked"] % 37 == 0:
                    dec = regions_of_subgraph(g, subset, range(v))
                    full = any(reg.is_disk for reg in dec.regions)
                    if full != has_disk:
                        out["violations"].append({
                            "kind": "region-machinery-disagrees",
                            "graph": {"slots": raw_slots, "twists": raw_twists},
                            "subset": list(subset),
                        })
                if not has_disk:
                    out["violations"].append({
                        "kind": "no-disk-face",
                        "graph": {"slots": raw_slots, "twists": raw_twists},
                        "subset": list(subset),
                    })

    _ribbon_streams(n_edges, sieve, twisted=True, signed=False, max_vertices=max_v)
    return out


def _prop51_tasks(spec: CampaignSpec) -> list[tuple]:
    tasks = []
    for e in range(1, spec.bound("max_edges") + 1):
        stride = 1 if e <= 5 else 3
        for target in ("sphere", "chi0"):
            for r in range(stride):
                tasks.append((e, target, r, stride))
    return tasks


# -- cut-face instance spaces (PB and SA modes) -----------------------------------

def _run_options(n: int, x: int) -> list[tuple[int, ...]]:
    opts = []
    for c in range(1, n + 1):
        for k in range(2, n + 2):
            labs = tuple((c - 1 + t) % n + 1 for t in range(k))
            if x in labs[1:-1]:
                continue
            opts.append(labs)
    return opts


def _boundary_configs(n: int, x: int, m: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    opts = _run_options(n, x)
    for combo in itertools.product(opts, repeat=m):
        if any(x not in (combo[i][-1], combo[(i + 1) % m][0]) for i in range(m)):
            continue
        if sum(len(r) - 2 for r in combo) % 2:
            continue
        rotations = [combo[i:] + combo[:i] for i in range(m)]
        if combo != min(rotations):
            continue
        yield combo


def _noncrossing_matchings(k: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if k == 0:
        yield ()
        return
    if k % 2:
        return
    for j in range(1, k, 2):
        inner = list(_noncrossing_matchings(j - 1))
        outer = list(_noncrossing_matchings(k - j - 1))
        for a in inner:
            a2 = tuple((p + 1, q + 1) for p, q in a)
            for b in outer:
                b2 = tuple((p + j + 1, q + j + 1) for p, q in b)
                yield ((0, j),) + a2 + b2


def _build_cut_instance(n: int, x: int, mode: str,
                        combo: Sequence[tuple[int, ...]],
                        matching: Sequence[tuple[int, int]],
                        signs: Sequence[int]) -> Optional[CutFace]:
    m = len(combo)
    positions = []  # interior (run, slot) in global order
    for r, labs in enumerate(combo):
        for s in range(1, len(labs) - 1):
            positions.append((r, s))
    chord_at = {}
    chord_sign = {}
    chord_state = {}
    for ci, (p, q) in enumerate(matching):
        cid = m + ci
        rp, sp = positions[p]
        rq, sq = positions[q]
        # chords joining adjacent slots of one run bound a monogon
        if rp == rq and abs(sp - sq) == 1:
            return None
        chord_at[(rp, sp)] = cid
        chord_at[(rq, sq)] = cid
        chord_sign[cid] = signs[ci]
        chord_state[cid] = CHORD_REAL
    runs = []
    for r, labs in enumerate(combo):
        refs = [None] + [chord_at[(r, s)] for s in range(1, len(labs) - 1)] + [None]
        runs.append(Run(None, labs, tuple(refs)))
    cut = CutFace(n, x, mode, tuple(runs), tuple(range(m)),
                  tuple(sorted(chord_sign.items())),
                  tuple(sorted(chord_state.items())), (), m + len(matching))
    try:
        cut.validate()
    except Exception:
        return None
    return cut


def _admissible_pb(cut: CutFace, g: FatGraph) -> bool:
    # partner of type P or B: no Scharlemann cycles, no generalized S-cycles,
    # level edges carry label one only, no trivial loops
    for cid in cut.chord_ids():
        a, b = cut.chord_labels(cid)
        if a == b and cut.signs[cid] == 1 and a != 1:
            return False
    if not no_trivial_loops(g):
        return False
    if find_scharlemann_cycles(g):
        return False
    if find_generalized_s_cycles(g):
        return False
    return True


def _admissible_sa(cut: CutFace, g: FatGraph) -> bool:
    # partner of type S or A: opposite-parity endpoint labels on every edge
    # (the partner surface separates), no level edges, Scharlemann cycles
    # only with pair {1,2}, no extended S-cycles, no trivial loops; the face
    # must contain a {1,2}-Scharlemann cycle to feed the cluster
    from .detect import find_extended_s_cycles
    for e in g.edge_ids:
        a, b = g.label_pair(e)
        if (a - b) % 2 == 0:
            return False
    if not no_trivial_loops(g):
        return False
    sch = find_scharlemann_cycles(g)
    if any(frozenset(c.labels) != frozenset((1, 2)) for c in sch):
        return False
    if not any(frozenset(c.labels) == frozenset((1, 2)) for c in sch):
        return False
    if find_extended_s_cycles(g):
        return False
    return True


def _cut_instances(n: int, x: int, mode: str, m: int,
                   combo_filter=None) -> Iterator[tuple[CutFace, int]]:
    """Admissible cut-face instances for one boundary shape; yields
    (instance, raw_count) pairs where raw_count counts pre-rejection
    candidates.

    All interior edges are positive: the boundary vertices of an x-face are
    joined by positive edges through an orientable disk, so they share a
    local sign, and an edge joining same-sign vertices is positive.
    """
    admissible = _admissible_pb if mode == "PB" else _admissible_sa
    for combo in _boundary_configs(n, x, m):
        if combo_filter is not None and not combo_filter(combo):
            continue
        interiors = sum(len(r) - 2 for r in combo)
        for matching in _noncrossing_matchings(interiors):
            cut = _build_cut_instance(n, x, mode, combo, matching,
                                      [1] * len(matching))
            if cut is None:
                yield None, 1
                continue
            g = cut.to_fatgraph()
            if not admissible(cut, g):
                yield None, 1
                continue
            yield cut, 1


def _prop31_task(spec_bounds: dict, task: tuple) -> dict:
    n, x, m = task
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    for cut, raw in _cut_instances(n, x, "PB", m):
        out["generated"] += raw
        if cut is None:
            continue
        out["canonical"] += 1
        try:
            split = split_xface_along_diagonals(cut)
            pair = find_level1_pair(split)
        except LevelEdgeMissing:
            out["violations"].append(_cut_violation("level-edge-missing", cut))
            continue
        except TwoCorneredMissing as exc:
            out["violations"].append(_cut_violation("two-cornered-missing", cut, str(exc)))
            continue
        out["structures"]["pairs-found"] += 1
        for name, value in pair.conditions:
            if not value:
                out["violations"].append(_cut_violation(f"pair-condition:{name}", cut))
    return out


def _prop31_tasks(spec: CampaignSpec) -> list[tuple]:
    tasks = []
    for n in range(spec.bound("n_low"), spec.bound("n_high") + 1):
        for x in range(2, n + 1):
            for m in range(1, spec.bound("max_vertices") + 1):
                tasks.append((n, x, m))
    return tasks


def _cut_violation(kind: str, cut: CutFace, detail: str = "") -> dict:
    return {
        "kind": kind,
        "detail": detail,
        "instance": {
            "n": cut.n_partner, "x": cut.x, "mode": cut.mode,
            "runs": [list(r.labels) for r in cut.runs],
            "chords": {str(c): list(cut.chord_labels(c)) for c in cut.chord_ids()},
            "signs": {str(c): s for c, s in cut.chord_sign},
        },
    }


def _arrangements(twelve: Sequence[int],
                  cycles: Sequence[Sequence[int]]) -> Iterator[PartnerArrangement]:
    """Arrangements of the cluster's {1,2}-edges realizable by disjoint
    parallel Scharlemann-boundary curves.

    Every edge and corner arc crosses the handle annulus in the same
    direction, so walking around it the curves appear in a fixed repeating
    cyclic sequence: same lengths, round-robin membership.
    """
    edges = sorted(twelve)
    if not edges:
        return
    owner = {}
    for ci, cyc in enumerate(cycles):
        for e in cyc:
            owner[e] = ci
    k = len(cycles)
    lengths = {len(cyc) for cyc in cycles}
    if len(lengths) != 1:
        return  # parallel curves meet the annulus equally often
    first, rest = edges[0], edges[1:]
    n_e = len(edges)
    for perm in itertools.permutations(rest):
        order = (first,) + perm
        members = [owner[e] for e in order]
        if len(set(members[:k])) != k:
            continue
        if any(members[(i + k) % n_e] != members[i] for i in range(n_e)):
            continue
        for gap in range(len(order)):
            yield PartnerArrangement(order, gap)


def _prop41_task(spec_bounds: dict, task: tuple) -> dict:
    n, x, m = task
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    for cut, raw in _cut_instances(n, x, "SA", m):
        out["generated"] += raw
        if cut is None:
            continue
        out["canonical"] += 1
        try:
            split = split_xface_along_diagonals(cut)
            cluster = build_cluster(split)
        except NoScharlemann:
            out["violations"].append(_cut_violation("no-scharlemann", cut))
            continue
        except TwoCorneredMissing as exc:
            out["violations"].append(_cut_violation("cluster-two-cornered", cut, str(exc)))
            continue
        for name, value in cluster.conditions:
            if not value:
                out["violations"].append(_cut_violation(f"cluster-condition:{name}", cut))
        out["structures"]["clusters-built"] += 1
        n_sigma = len(cluster.scharlemann)
        sigma_edge_lists = [c.edges for c in cluster.scharlemann]
        for arr in _arrangements(cluster.twelve_edges, sigma_edge_lists):
            out["structures"]["arrangements-checked"] += 1
            try:
                pair = find_seemly_pair(split, cluster, arr)
            except TwoCorneredMissing as exc:
                out["violations"].append(_cut_violation("seemly-missing", cut, str(exc)))
                continue
            counting = dict(pair.counting)
            ok = (counting["scharlemann_cycles"] == n_sigma
                  and counting["two_cornered_cycles"] == n_sigma + 1
                  and counting["good_edges"] == 2 * n_sigma
                  and counting["goods_outside_d_g"] == n_sigma - 1)
            if not ok or not pair.ok:
                bad = [nm for nm, v in pair.conditions if not v]
                out["violations"].append(_cut_violation(
                    "seemly-counting", cut,
                    f"counting={counting}, failed={bad}, order={arr.order}, gap={arr.gap03}"))
            else:
                out["structures"]["seemly-pairs-verified"] += 1
    return out


def _prop41_tasks(spec: CampaignSpec) -> list[tuple]:
    tasks = []
    for n in range(spec.bound("n_low"), spec.bound("n_high") + 1):
        for x in range(3, n + 1):
            for m in range(1, spec.bound("max_vertices") + 1):
                tasks.append((n, x, m))
    return tasks


# -- the (sphere, sphere) block search --------------------------------------------

def _sec6_task(spec_bounds: dict, task: tuple) -> dict:
    from .blocks import NoBlock, NoEligibleLabel, extract_extremal_block, xface_in_block
    from .census import enumerate_fat_graphs
    from .detect import sl_labels
    from .surface import SURFACE_KINDS, classify_surface

    n_partner, delta = task
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    bounds = Bounds(max_vertices=spec_bounds["max_vertices"],
                    max_edges=spec_bounds["max_edges"],
                    n_partner=(n_partner, n_partner), delta=(delta, delta))
    from .lemmas import check_forbidden_cycles, check_sl_budget

    for g in enumerate_fat_graphs(bounds):
        out["generated"] += 1
        rep = classify_surface(g)
        if rep.kind is None or rep.kind.tag != "S":
            continue
        # admissible for a sphere partner: no level edges, one Scharlemann
        # label pair, no extended S-cycles
        if not check_sl_budget(g, SURFACE_KINDS["S"]):
            continue
        if not check_forbidden_cycles(g, SURFACE_KINDS["S"]):
            continue
        out["canonical"] += 1
        sl = frozenset(lab - 1 for lab in sl_labels(g, SURFACE_KINDS["S"]))
        try:
            block = extract_extremal_block(g, sl)
        except NoBlock:
            out["structures"]["no-block"] += 1
            continue
        out["structures"]["blocks"] += 1
        # the forcing hypothesis: every non-ghost boundary vertex carries all
        # partner labels on block edges
        hypothesis = True
        block_edges = frozenset(block.edges)
        for v in block.boundary_vertices:
            if v == block.ghost:
                continue
            labs = {g.labels[v][i] for i, d in enumerate(g.slots[v])
                    if (d >> 1) in block_edges}
            if len(labs) < g.n_partner:
                hypothesis = False
        if not hypothesis:
            out["structures"]["hypothesis-unmet"] += 1
            continue
        try:
            cert, transcript = xface_in_block(
                g, block, frozenset(lab + 1 for lab in sl))
        except NoEligibleLabel:
            out["structures"]["no-eligible-label"] += 1
            continue
        if cert is None:
            out["violations"].append({
                "kind": "x-face-missing-in-block",
                "graph": _graph_payload(g),
                "transcript": {k: (list(v) if isinstance(v, (list, tuple)) else v)
                               for k, v in transcript.items()},
            })
        else:
            out["structures"]["x-faces-found"] += 1
    return out


def _sec6_tasks(spec: CampaignSpec) -> list[tuple]:
    tasks = []
    for n_partner in range(1, spec.bound("n_high") + 1):
        for delta in range(1, spec.bound("delta_high") + 1):
            tasks.append((n_partner, delta))
    return tasks


# -- the distance-three Euler window and distance-four arithmetic ------------------

def _sec8_euler_task(spec_bounds: dict, task: tuple) -> dict:
    delta = task[0]
    cap = spec_bounds["max_count"]
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    feasible = 0
    for v_i in range(cap + 1):
        for v_b in range(cap + 1):
            if v_i + v_b == 0:
                continue
            for v_g in (0, 1):
                out["generated"] += 1
                out["canonical"] += 1
                t = block_euler_contradiction(delta, v_i, v_b, v_g)
                if t.feasible:
                    feasible += 1
                    if delta >= 3:
                        out["violations"].append({
                            "kind": "euler-window-nonempty",
                            "delta": delta, "v_i": v_i, "v_b": v_b, "v_g": v_g,
                            "e_low": t.e_low, "e_high": t.e_high,
                        })
    out["structures"][f"delta={delta}:feasible"] = feasible
    if delta == 2 and feasible == 0:
        out["violations"].append({"kind": "control-infeasible", "delta": 2})
    return out


def _sec8_euler_tasks(spec: CampaignSpec) -> list[tuple]:
    lo, hi = spec.bound("delta_low"), spec.bound("delta_high")
    return [(d,) for d in [2] + list(range(lo, hi + 1))]


def _sec8_arith_task(spec_bounds: dict, task: tuple) -> dict:
    import numpy as np

    n1 = task[0]
    out = {"generated": 0, "canonical": 0, "structures": Counter(), "violations": []}
    p1_max = n1 // 2 + 1
    pn_max = n1 - 1

    # delta bound over all admissible family vectors, vectorized
    p1 = np.arange(1, p1_max + 1)
    rest_max = 4 * pn_max
    degree_max = int(2 * p1.max() + rest_max)
    if degree_max > 5 * n1 - 2:
        out["violations"].append({"kind": "delta-bound-exceeded", "n1": n1,
                                  "degree_max": degree_max})
    out["structures"][f"n1={n1}:degree-max"] = degree_max
    out["generated"] += int(p1_max * pn_max ** 4)
    out["canonical"] += int(p1_max * pn_max ** 4)

    # distance four: vectorized scan of (p1, p2, p3) with a consistent
    # (p4, p5) completion, then the repeated-label structure per triple
    P1, P2, P3 = np.meshgrid(np.arange(1, p1_max + 1),
                             np.arange(1, pn_max + 1),
                             np.arange(1, pn_max + 1), indexing="ij")
    s = P1 + P2 + P3
    rest = 4 * n1 - 2 * P1 - P2 - P3
    feasible = (s >= 2 * n1) & (rest >= 2) & (rest <= 2 * pn_max)
    r = s + 1 - 2 * n1
    bad_r = feasible & ~((r >= 1) & (r <= n1 - 1) & (r + 1 <= P1))
    if bad_r.any():
        idx = np.argwhere(bad_r)[0]
        out["violations"].append({
            "kind": "remainder-out-of-range", "n1": n1,
            "p": [int(P1[tuple(idx)]), int(P2[tuple(idx)]), int(P3[tuple(idx)])],
        })
    triples = np.argwhere(feasible)
    out["structures"][f"n1={n1}:delta4-triples"] = int(len(triples))
    for idx in triples:
        p1v, p2v, p3v = int(P1[tuple(idx)]), int(P2[tuple(idx)]), int(P3[tuple(idx)])
        restv = 4 * n1 - 2 * p1v - p2v - p3v
        p4v = min(pn_max, restv - 1)
        p5v = restv - p4v
        t = sec8_family_arithmetic(n1, (p1v, p2v, p3v, p4v, p5v), 4)
        if not t.holds or t.structure is None:
            out["violations"].append({
                "kind": "arith-structure-missing", "n1": n1,
                "p": [p1v, p2v, p3v, p4v, p5v], "r": t.r,
            })
    return out


def _sec8_arith_tasks(spec: CampaignSpec) -> list[tuple]:
    return [(n1,) for n1 in range(2, spec.bound("max_n1") + 1, 2)]


# -- driver -----------------------------------------------------------------------

_TASKS = {
    "face-trace-oracle": (_face_trace_tasks, _face_trace_task),
    "parallel-family": (_family_tasks, _family_task),
    "prop51": (_prop51_tasks, _prop51_task),
    "prop31": (_prop31_tasks, _prop31_task),
    "prop41": (_prop41_tasks, _prop41_task),
    "sec6-ss": (_sec6_tasks, _sec6_task),
    "sec8-euler": (_sec8_euler_tasks, _sec8_euler_task),
    "sec8-arith": (_sec8_arith_tasks, _sec8_arith_task),
}


def _worker_entry(payload):
    campaign, bounds, task = payload
    return _TASKS[campaign][1](bounds, task)


def _decode_token(token: str) -> int:
    data = json.loads(base64.urlsafe_b64decode(token.encode()).decode())
    return data["next_task"]


def _encode_token(campaign: str, next_task: int) -> str:
    return base64.urlsafe_b64encode(
        json.dumps({"campaign": campaign, "next_task": next_task}).encode()).decode()


def run_campaign(spec: CampaignSpec, resume_token: str = "") -> CampaignReport:
    """Run a campaign; the report is deterministic for a given spec,
    independent of the worker count.  Raises :class:`ResourceLimit` with a
    partial report when the instance budget runs out."""
    bounds = dict(spec.bounds)
    make_tasks, _ = _TASKS[spec.campaign]
    tasks = make_tasks(spec)
    start_at = _decode_token(resume_token) if resume_token else 0
    report = CampaignReport(spec.campaign, bounds)
    t0 = time.monotonic()

    payloads = [(spec.campaign, bounds, t) for t in tasks[start_at:]]
    results: list[Optional[dict]] = [None] * len(payloads)
    if spec.workers <= 1 or len(payloads) <= 1:
        iterator = ((i, _worker_entry(p)) for i, p in enumerate(payloads))
        completed = iterator
        report.worker_stats = {"workers": 1, "tasks": len(payloads)}
        for i, res in completed:
            results[i] = res
            if _over_budget(spec, results):
                return _finalize(report, results, tasks, start_at, i + 1, t0, spec)
    else:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            futures = [pool.submit(_worker_entry, p) for p in payloads]
            report.worker_stats = {"workers": spec.workers, "tasks": len(payloads)}
            for i, fut in enumerate(futures):
                results[i] = fut.result()
                if _over_budget(spec, results):
                    for f in futures[i + 1:]:
                        f.cancel()
                    return _finalize(report, results, tasks, start_at, i + 1, t0, spec)
    return _finalize(report, results, tasks, start_at, len(payloads), t0, spec)


def _over_budget(spec: CampaignSpec, results: list) -> bool:
    if spec.max_instances is None:
        return False
    done = sum(r["generated"] for r in results if r is not None)
    return done > spec.max_instances


def _finalize(report: CampaignReport, results: list, tasks: list, start_at: int,
              n_done: int, t0: float, spec: CampaignSpec) -> CampaignReport:
    for r in results[:n_done]:
        if r is None:
            continue
        report.instances_generated += r["generated"]
        report.instances_canonical += r["canonical"]
        report.structures.update(r["structures"])
        report.violations.extend(r["violations"])
    report.violations.sort(key=lambda v: json.dumps(v, sort_keys=True))
    report.elapsed = time.monotonic() - t0
    if start_at + n_done < len(tasks):
        report.partial = True
        report.resume_token = _encode_token(report.campaign, start_at + n_done)
        raise ResourceLimit(report)
    return report
