"""Command-line interface.

Exit codes: 0 ok/holds, 1 violation or required structure absent, 2 parse
error, 3 invariant error, 4 resource limit.  Records on standard output are
versioned JSON lines; campaign outputs written with --out are byte
deterministic (timing goes to stderr only).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import blocks as blocks_mod
from . import detect, lemmas
from .campaigns import CAMPAIGNS, CampaignSpec, ResourceLimit, run_campaign
from .docio import (
    InvariantError, ParseError, certificate_payload, parse_graph_document,
    record, serialize_document, verdict_payload,
)
from .pairing import GraphPair, check_vertex_count_bounds, no_trivial_loops, validate_labels
from .surface import SURFACE_KINDS, FatGraph, classify_surface, trace_faces

OK, VIOLATION, PARSE_FAIL, INVARIANT_FAIL, RESOURCE = 0, 1, 2, 3, 4

STRUCTURES = {
    "scharlemann": lambda g, x: detect.find_scharlemann_cycles(g),
    "s-cycle": lambda g, x: tuple(c for c in detect.find_scharlemann_cycles(g)
                                  if c.kind == "SCycle"),
    "extended": lambda g, x: detect.find_extended_s_cycles(g),
    "generalized": lambda g, x: detect.find_generalized_s_cycles(g),
    "level": lambda g, x: tuple(
        detect.StructureCertificate("LevelEdge", (c.edge_id,),
                                    (2 * c.edge_id, 2 * c.edge_id + 1),
                                    (c.level_label,),
                                    (("positive", True), ("equal_labels", True)))
        for c in detect.classify_edges(g) if c.is_level),
    "x-cycle": lambda g, x: detect.find_x_cycles(g, x),
    "x-face": lambda g, x: detect.find_x_faces(g, x),
    "two-cornered-pb": lambda g, x: detect.find_two_cornered_pb(g),
    "two-cornered-sa": lambda g, x: detect.find_two_cornered_sa(g),
}


def _load(path: str):
    text = Path(path).read_text()
    return parse_graph_document(text)


def _pick_graph(obj, which: int) -> FatGraph:
    if isinstance(obj, GraphPair):
        return obj.g1 if which == 1 else obj.g2
    return obj


def cmd_validate(args) -> int:
    obj = _load(args.file)
    payload = {"file": args.file, "kind": "pair" if isinstance(obj, GraphPair) else "graph"}
    if isinstance(obj, GraphPair):
        from .pairing import validate_pair
        v = validate_pair(obj)
        payload["pair_ok"] = bool(v)
        if not v:
            payload["violation"] = [v.code, list(map(str, v.detail))]
        for i, g in ((1, obj.g1), (2, obj.g2)):
            payload[f"graph{i}_surface"] = _surface_payload(g)
        print(record("validate", payload))
        return OK if v else VIOLATION
    g = obj
    payload["surface"] = _surface_payload(g)
    payload["labels_ok"] = bool(validate_labels(g))
    payload["no_trivial_loops"] = bool(no_trivial_loops(g))
    bounds = check_vertex_count_bounds(g, g.declared) if g.declared else None
    payload["vertex_count_bound"] = bool(bounds) if bounds is not None else None
    print(record("validate", payload))
    ok = payload["labels_ok"] and payload["no_trivial_loops"] \
        and payload["surface"]["matches_declared"]
    return OK if ok else VIOLATION


def _surface_payload(g: FatGraph) -> dict:
    rep = classify_surface(g)
    return {
        "orientable": rep.orientable,
        "euler": rep.euler,
        "boundary_count": rep.boundary_count,
        "kind": rep.kind.tag if rep.kind else None,
        "matches_declared": rep.matches_declared,
        "mismatch": rep.mismatch,
    }


def cmd_faces(args) -> int:
    obj = _load(args.file)
    g = _pick_graph(obj, args.graph)
    for i, f in enumerate(trace_faces(g)):
        print(record("face", {
            "index": i,
            "darts": list(f.darts),
            "edges": list(f.edges),
            "corners": [{"vertex": c.vertex + 1, "labels": list(c.label_pair)}
                        for c in f.corners],
            "is_disk": f.is_disk,
            "contains_hole": f.contains_hole,
        }))
    return OK


def cmd_detect(args) -> int:
    obj = _load(args.file)
    g = _pick_graph(obj, args.graph)
    finder = STRUCTURES[args.structure]
    if args.structure in ("x-cycle", "x-face") and args.label is None:
        print(record("error", {"message": "--label required for this structure"}),
              file=sys.stderr)
        return PARSE_FAIL
    certs = finder(g, args.label)
    for c in certs:
        print(record("certificate", certificate_payload(c)))
    return OK if certs else VIOLATION


def cmd_reduce(args) -> int:
    obj = _load(args.file)
    g = _pick_graph(obj, args.graph)
    red, mult = detect.reduced_graph(g)
    print(record("reduced", {
        "edges": {str(e): m for e, m in sorted(mult.items())},
        "document": serialize_document(red),
    }))
    return OK


def cmd_blocks(args) -> int:
    obj = _load(args.file)
    g = _pick_graph(obj, args.graph)
    try:
        blk = blocks_mod.extract_extremal_block(g, frozenset(args.sl_vertex or ()))
    except blocks_mod.NoBlock as exc:
        print(record("no-block", {"reason": str(exc)}))
        return VIOLATION
    print(record("extremal-block", {
        "vertices": [v + 1 for v in blk.vertices],
        "edges": list(blk.edges),
        "boundary_vertices": [v + 1 for v in blk.boundary_vertices],
        "interior_vertices": [v + 1 for v in blk.interior_vertices],
        "ghost": None if blk.ghost is None else blk.ghost + 1,
        "ghost_reason": blk.ghost_reason,
        "conditions": [[k, bool(v)] for k, v in blk.conditions],
    }))
    return OK


LEMMA_IDS = ("2.2", "2.3", "2.4.1", "2.4.2", "2.4.3", "2.4.4", "2.4.5",
             "2.6", "2.7", "5.1", "8.1")


def cmd_check(args) -> int:
    obj = _load(args.file)
    g = _pick_graph(obj, args.graph)
    pair = obj if isinstance(obj, GraphPair) else None
    partner = _partner_kind(obj, args.graph, args.partner_type)
    lid = args.lemma
    if lid == "2.2":
        v = check_vertex_count_bounds(g, g.declared)
        verdict = lemmas.LemmaVerdict("2.2", bool(v), v.detail)
    elif lid == "2.3":
        verdict = lemmas.check_scharlemann_separating(g, partner, pair)
    elif lid in ("2.4.1", "2.4.2"):
        verdict = lemmas.check_sl_budget(g, partner)
    elif lid == "2.4.3":
        verdict = lemmas.s_cycle_projective_flag(g, partner)
    elif lid in ("2.4.4", "2.4.5"):
        verdict = lemmas.check_forbidden_cycles(g, partner)
    elif lid in ("2.6", "2.7"):
        verdict = lemmas.check_family_bounds(g, partner)
    elif lid == "5.1":
        verdict = lemmas.check_prop_5_1(g, partner, g.delta)
    elif lid == "8.1":
        verdict = lemmas.s_cycle_disjoint_pairs(g)
    else:
        print(record("error", {"message": f"unknown lemma id {lid!r}; "
                                          f"choose from {LEMMA_IDS}"}), file=sys.stderr)
        return PARSE_FAIL
    print(record("lemma-verdict", verdict_payload(verdict)))
    return OK if verdict.holds else VIOLATION


def _partner_kind(obj, which: int, override: str = None):
    if override:
        return SURFACE_KINDS[override]
    if isinstance(obj, GraphPair):
        other = obj.g2 if which == 1 else obj.g1
        if other.declared is not None:
            return other.declared
    # a lone graph names only its own surface; default to a sphere partner
    return SURFACE_KINDS["S"]


def cmd_enumerate(args) -> int:
    workers = args.workers or int(os.environ.get("WORKERS", "1"))
    bounds = {}
    for kv in args.bound or ():
        k, v = kv.split("=", 1)
        bounds[k.replace("-", "_")] = int(v)
    spec = CampaignSpec.make(args.campaign, workers=workers,
                             max_instances=args.max_instances, **bounds)
    try:
        report = run_campaign(spec, resume_token=args.resume or "")
    except ResourceLimit as exc:
        report = exc.report
        if args.out:
            Path(args.out).write_bytes(report.canonical_bytes() + b"\n")
        print(record("campaign-partial", report.canonical_dict()))
        print(f"elapsed: {report.elapsed:.2f}s (partial)", file=sys.stderr)
        return RESOURCE
    if args.out:
        Path(args.out).write_bytes(report.canonical_bytes() + b"\n")
    print(record("campaign", report.canonical_dict()))
    print(f"elapsed: {report.elapsed:.2f}s workers={workers}", file=sys.stderr)
    return OK if not report.violations else VIOLATION


def cmd_report(args) -> int:
    data = Path(args.file).read_bytes()
    sys.stdout.write(data.decode())
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fillgraph",
        description="Intersection graphs of small surfaces in filled "
                    "3-manifolds: validation, structure detection, lemma "
                    "checks and exhaustive census campaigns.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_graph_arg(sp):
        sp.add_argument("--graph", type=int, choices=(1, 2), default=1)

    sp = sub.add_parser("validate", help="check a graph document's invariants")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("faces", help="trace and list the faces")
    sp.add_argument("file")
    add_graph_arg(sp)
    sp.set_defaults(func=cmd_faces)

    sp = sub.add_parser("detect", help="find a structure and print certificates")
    sp.add_argument("file")
    sp.add_argument("--structure", required=True, choices=sorted(STRUCTURES))
    sp.add_argument("--label", type=int)
    add_graph_arg(sp)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("reduce", help="amalgamate parallel families")
    sp.add_argument("file")
    add_graph_arg(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("blocks", help="extract an extremal block")
    sp.add_argument("file")
    sp.add_argument("--sl-vertex", type=int, action="append")
    add_graph_arg(sp)
    sp.set_defaults(func=cmd_blocks)

    sp = sub.add_parser("check", help="evaluate a lemma predicate")
    sp.add_argument("file")
    sp.add_argument("--lemma", required=True)
    sp.add_argument("--partner-type", choices=sorted(SURFACE_KINDS))
    add_graph_arg(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("enumerate", help="run an exhaustive campaign")
    sp.add_argument("--campaign", required=True, choices=CAMPAIGNS)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--bound", action="append", metavar="KEY=VALUE")
    sp.add_argument("--max-instances", type=int)
    sp.add_argument("--resume")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("report", help="print a stored campaign report")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(record("error", {"message": str(exc), "class": "parse"}),
              file=sys.stderr)
        return PARSE_FAIL
    except InvariantError as exc:
        print(record("error", {"message": str(exc), "class": "invariant"}),
              file=sys.stderr)
        return INVARIANT_FAIL
    except FileNotFoundError as exc:
        print(record("error", {"message": str(exc), "class": "io"}), file=sys.stderr)
        return PARSE_FAIL


if __name__ == "__main__":
    sys.exit(main())
