"""The graph document format and structured output records.

Line-oriented, ``#`` comments::

    pair delta=<int> n1=<int> n2=<int>
    graph <1|2> type=<S|P|A|B|T|K>
    vertex <vid> labels=<l1,l2,...>        # cyclic slot order
    edge <eid> <vid>.<slot>-<vid>.<slot> sign=<+|-> twist=<0|1>
    hole <eid>.<fwd|rev>
    map <eid1>=<eid2>                      # pair block only
    end

Vertices are numbered from 1 in documents (0-based internally); label 0 is
an alias for the partner vertex count.  Structural and label invariants are
checked on load; vertex-count bounds are lemma verdicts, not load failures.
Serialization is canonical: parse(serialize(x)) == x, and serialize(parse(d))
normalizes whitespace and ordering.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Union

from .pairing import GraphPair, no_trivial_loops, validate_labels
from .surface import SURFACE_KINDS, FatGraph, StructuralError

FORMAT_TAG = "fillgraph.records/1"


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvariantError(ValueError):
    pass


@dataclass
class _GraphBlock:
    index: int
    type_tag: str
    vertices: dict[int, list[int]]
    edges: dict[int, tuple[int, int, int, int, int, int]]  # v1,s1,v2,s2,sign,twist
    holes: list[tuple[int, int]]


def parse_graph_document(text: str) -> Union[FatGraph, GraphPair]:
    """Parse a document into a FatGraph (one graph block) or GraphPair (two
    blocks plus an edge map).  Raises ParseError for grammar problems and
    InvariantError when the data violates graph invariants."""
    header = None
    blocks: list[_GraphBlock] = []
    edge_map: dict[int, int] = {}
    current: Optional[_GraphBlock] = None
    ended = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError(line_no, "content after end")
        tokens = line.split()
        kind = tokens[0]
        if kind == "pair":
            if header is not None:
                raise ParseError(line_no, "duplicate pair header")
            header = _parse_kv(tokens[1:], {"delta", "n1", "n2"}, line_no)
        elif kind == "graph":
            if header is None:
                raise ParseError(line_no, "graph before pair header")
            if len(tokens) != 3:
                raise ParseError(line_no, "expected: graph <1|2> type=<tag>")
            idx = _int(tokens[1], line_no)
            if idx not in (1, 2):
                raise ParseError(line_no, "graph index must be 1 or 2")
            kv = _parse_kv_str(tokens[2:], {"type"}, line_no)
            if kv["type"] not in SURFACE_KINDS:
                raise ParseError(line_no, f"unknown surface type {kv['type']!r}")
            current = _GraphBlock(idx, kv["type"], {}, {}, [])
            blocks.append(current)
        elif kind == "vertex":
            if current is None:
                raise ParseError(line_no, "vertex outside a graph block")
            if len(tokens) != 3 or not tokens[2].startswith("labels="):
                raise ParseError(line_no, "expected: vertex <vid> labels=...")
            vid = _int(tokens[1], line_no)
            labs = tokens[2][len("labels="):]
            try:
                labels = [int(x) for x in labs.split(",")] if labs else []
            except ValueError:
                raise ParseError(line_no, f"bad label list {labs!r}")
            if vid in current.vertices:
                raise ParseError(line_no, f"duplicate vertex {vid}")
            current.vertices[vid] = labels
        elif kind == "edge":
            if current is None:
                raise ParseError(line_no, "edge outside a graph block")
            m = re.fullmatch(r"edge\s+(\d+)\s+(\d+)\.(\d+)-(\d+)\.(\d+)"
                             r"\s+sign=([+-])\s+twist=([01])", line)
            if not m:
                raise ParseError(line_no, "expected: edge <eid> <v>.<s>-<v>.<s> "
                                          "sign=<+|-> twist=<0|1>")
            eid, v1, s1, v2, s2 = (int(m.group(i)) for i in range(1, 6))
            if eid in current.edges:
                raise ParseError(line_no, f"duplicate edge {eid}")
            current.edges[eid] = (v1, s1, v2, s2,
                                  1 if m.group(6) == "+" else -1, int(m.group(7)))
        elif kind == "hole":
            if current is None:
                raise ParseError(line_no, "hole outside a graph block")
            m = re.fullmatch(r"hole\s+(\d+)\.(fwd|rev)", line)
            if not m:
                raise ParseError(line_no, "expected: hole <eid>.<fwd|rev>")
            current.holes.append((int(m.group(1)), 0 if m.group(2) == "fwd" else 1))
        elif kind == "map":
            m = re.fullmatch(r"map\s+(\d+)=(\d+)", line)
            if not m:
                raise ParseError(line_no, "expected: map <eid1>=<eid2>")
            e1, e2 = int(m.group(1)), int(m.group(2))
            if e1 in edge_map:
                raise ParseError(line_no, f"duplicate map for edge {e1}")
            edge_map[e1] = e2
        elif kind == "end":
            ended = True
        else:
            raise ParseError(line_no, f"unknown directive {kind!r}")

    if header is None:
        raise ParseError(0, "missing pair header")
    if not ended:
        raise ParseError(0, "missing end")
    if not blocks:
        raise ParseError(0, "no graph block")
    if len(blocks) > 2:
        raise ParseError(0, "more than two graph blocks")

    delta, n1, n2 = header["delta"], header["n1"], header["n2"]
    graphs = {}
    for blk in blocks:
        n_partner = n2 if blk.index == 1 else n1
        graphs[blk.index] = _build_graph(blk, n_partner, delta)
    if len(blocks) == 1:
        return graphs[blocks[0].index]
    if 1 not in graphs or 2 not in graphs:
        raise InvariantError("a pair needs graph 1 and graph 2")
    return GraphPair(graphs[1], graphs[2], delta, tuple(sorted(edge_map.items())))


def _build_graph(blk: _GraphBlock, n_partner: int, delta: int) -> FatGraph:
    vids = sorted(blk.vertices)
    if vids != list(range(1, len(vids) + 1)):
        raise InvariantError(f"graph {blk.index}: vertices must be numbered 1..n")
    slots = [[None] * len(blk.vertices[v]) for v in vids]
    labels = []
    for v in vids:
        labs = [n_partner if x == 0 else x for x in blk.vertices[v]]
        labels.append(labs)
    signs, twists = {}, {}
    for eid, (v1, s1, v2, s2, sign, twist) in sorted(blk.edges.items()):
        for v, s, d in ((v1, s1, 2 * eid), (v2, s2, 2 * eid + 1)):
            if not 1 <= v <= len(vids):
                raise InvariantError(f"edge {eid}: unknown vertex {v}")
            if not 0 <= s < len(slots[v - 1]):
                raise InvariantError(f"edge {eid}: slot {s} out of range at vertex {v}")
            if slots[v - 1][s] is not None:
                raise InvariantError(f"edge {eid}: slot {v}.{s} already used")
            slots[v - 1][s] = d
        signs[eid] = sign
        twists[eid] = twist
    for v, ring in zip(vids, slots):
        if any(d is None for d in ring):
            raise InvariantError(f"vertex {v}: some slots carry no edge")
    holes = []
    for eid, end in blk.holes:
        if eid not in blk.edges:
            raise InvariantError(f"hole references unknown edge {eid}")
        holes.append(2 * eid + end)
    try:
        g = FatGraph(slots, labels, signs=signs, twists=twists, holes=holes,
                     n_partner=n_partner, delta=delta,
                     declared=SURFACE_KINDS[blk.type_tag])
    except StructuralError as exc:
        raise InvariantError(str(exc)) from exc
    verdict = validate_labels(g)
    if not verdict:
        raise InvariantError(f"graph {blk.index}: {verdict.code}{verdict.detail}")
    return g


def _parse_kv(tokens, keys, line_no) -> dict[str, int]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(line_no, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k not in keys:
            raise ParseError(line_no, f"unknown key {k!r}")
        out[k] = _int(v, line_no)
    missing = keys - set(out)
    if missing:
        raise ParseError(line_no, f"missing keys {sorted(missing)}")
    return out


def _parse_kv_str(tokens, keys, line_no) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(line_no, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k not in keys:
            raise ParseError(line_no, f"unknown key {k!r}")
        out[k] = v
    missing = keys - set(out)
    if missing:
        raise ParseError(line_no, f"missing keys {sorted(missing)}")
    return out


def _int(s: str, line_no: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise ParseError(line_no, f"expected integer, got {s!r}")


def serialize_graph(g: FatGraph, index: int = 1) -> list[str]:
    lines = [f"graph {index} type={g.declared.tag if g.declared else 'S'}"]
    for v in range(g.n_vertices):
        labs = ",".join(str(x) for x in g.labels[v])
        lines.append(f"vertex {v + 1} labels={labs}")
    for e in g.edge_ids:
        (v1, s1), (v2, s2) = g.endpoints(e)
        sign = "+" if g.sign(e) == 1 else "-"
        lines.append(f"edge {e} {v1 + 1}.{s1}-{v2 + 1}.{s2} "
                     f"sign={sign} twist={g.twist(e)}")
    for d in sorted(g.holes):
        lines.append(f"hole {d >> 1}.{'fwd' if d % 2 == 0 else 'rev'}")
    return lines


def serialize_document(obj: Union[FatGraph, GraphPair]) -> str:
    """Canonical text form; parse(serialize(x)) reproduces x."""
    if isinstance(obj, GraphPair):
        n1, n2 = obj.g1.n_vertices, obj.g2.n_vertices
        lines = [f"pair delta={obj.delta} n1={n1} n2={n2}"]
        lines += serialize_graph(obj.g1, 1)
        lines += serialize_graph(obj.g2, 2)
        for e1, e2 in sorted(obj.edge_bijection):
            lines.append(f"map {e1}={e2}")
    else:
        g = obj
        n1 = g.n_vertices
        n2 = g.n_partner
        lines = [f"pair delta={g.delta} n1={n1} n2={n2}"]
        lines += serialize_graph(g, 1)
    lines.append("end")
    return "\n".join(lines) + "\n"


def record(kind: str, payload: dict) -> str:
    """One structured output record: versioned, stable field order."""
    body = {"format": FORMAT_TAG, "record": kind}
    body.update(payload)
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def certificate_payload(cert) -> dict:
    return {
        "kind": cert.kind,
        "edges": list(cert.edges),
        "darts": list(cert.darts),
        "labels": list(cert.labels),
        "conditions": [[k, bool(v)] for k, v in cert.conditions],
        "notes": cert.notes,
    }


def verdict_payload(v) -> dict:
    return {
        "lemma": v.lemma_id,
        "holds": v.holds,
        "witness": _jsonable(v.witness),
        "context": _jsonable(dict(v.context)),
        "notes": v.notes,
    }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda t: str(t[0]))}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = list(x)
        if isinstance(x, (set, frozenset)):
            items = sorted(items, key=str)
        return [_jsonable(v) for v in items]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    if hasattr(x, "conditions") and hasattr(x, "kind"):
        return certificate_payload(x)
    if hasattr(x, "_asdict"):
        return _jsonable(x._asdict())
    if hasattr(x, "__dict__"):
        return {k: _jsonable(v) for k, v in sorted(vars(x).items())}
    return repr(x)
