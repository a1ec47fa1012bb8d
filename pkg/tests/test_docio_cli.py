import json
import subprocess
import sys

import pytest

from fillgraph.cli import main
from fillgraph.docio import (
    InvariantError, ParseError, parse_graph_document, serialize_document,
)
from fillgraph.pairing import GraphPair, validate_pair
from fillgraph.surface import FatGraph

from util import build_pair

S_CYCLE_DOC = """\
# four parallel {1,2}-edges on an annulus; two faces are punctured, the
# remaining bigons are S-cycles
pair delta=2 n1=2 n2=2
graph 1 type=A
vertex 1 labels=1,2,1,2
vertex 2 labels=1,2,1,2
edge 0 1.0-2.3 sign=+ twist=0
edge 1 1.3-2.0 sign=+ twist=0
edge 2 1.1-2.2 sign=+ twist=0
edge 3 1.2-2.1 sign=+ twist=0
hole 0.fwd
hole 1.fwd
end
"""

MOEBIUS_DOC = """\
pair delta=2 n1=1 n2=1
graph 1 type=B
vertex 1 labels=1,1
edge 0 1.0-1.1 sign=+ twist=1
hole 0.fwd
end
"""


class TestParse:
    def test_minimal_document(self):
        g = parse_graph_document(MOEBIUS_DOC)
        assert isinstance(g, FatGraph)
        assert g.declared.tag == "B" and g.n_partner == 1 and g.delta == 2

    def test_round_trip(self):
        g = parse_graph_document(S_CYCLE_DOC)
        text = serialize_document(g)
        g2 = parse_graph_document(text)
        assert g == g2
        assert serialize_document(g2) == text

    def test_zero_alias(self):
        doc = S_CYCLE_DOC.replace("vertex 2 labels=1,2,1,2", "vertex 2 labels=1,0,1,0")
        g = parse_graph_document(doc)
        assert g.labels[1] == (1, 2, 1, 2)

    def test_non_consecutive_labels_rejected(self):
        doc = """\
pair delta=1 n1=1 n2=3
graph 1 type=S
vertex 1 labels=1,3,2
edge 0 1.0-1.1 sign=+ twist=0
edge 1 1.2-1.2 sign=+ twist=0
end
"""
        with pytest.raises((InvariantError, ParseError)):
            parse_graph_document(doc)

    def test_unknown_directive_rejected(self):
        with pytest.raises(ParseError):
            parse_graph_document(S_CYCLE_DOC.replace("end", "frobnicate\nend"))

    def test_slot_collision_rejected(self):
        doc = S_CYCLE_DOC.replace("edge 1 1.3-2.0", "edge 1 1.0-2.0")
        with pytest.raises(InvariantError):
            parse_graph_document(doc)

    def test_pair_round_trip(self):
        p = build_pair(3, 2, 3, 1)
        text = serialize_document(p)
        q = parse_graph_document(text)
        assert isinstance(q, GraphPair)
        assert validate_pair(q)
        assert serialize_document(q) == text


class TestCli:
    def run_cli(self, tmp_path, doc, *argv):
        f = tmp_path / "g.fgl"
        f.write_text(doc)
        import io
        from contextlib import redirect_stdout
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main([argv[0], str(f), *argv[1:]])
        lines = [json.loads(line) for line in buf.getvalue().splitlines()]
        return code, lines

    def test_validate_ok(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC, "validate")
        assert code == 0 and recs[0]["record"] == "validate"
        assert recs[0]["surface"]["kind"] == "A"

    def test_validate_mismatch(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC.replace("type=A", "type=T"),
                                  "validate")
        assert code == 1 and not recs[0]["surface"]["matches_declared"]

    def test_faces(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC, "faces")
        assert code == 0 and len(recs) == 4
        assert sum(1 for r in recs if r["contains_hole"]) == 2

    def test_detect_s_cycle(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC, "detect",
                                  "--structure", "s-cycle")
        assert code == 0
        assert len(recs) == 2 and recs[0]["kind"] == "SCycle"

    def test_detect_absent_structure_exit_one(self, tmp_path):
        code, recs = self.run_cli(tmp_path, MOEBIUS_DOC, "detect",
                                  "--structure", "s-cycle")
        assert code == 1 and not recs

    def test_check_lemma_violation(self, tmp_path):
        # a {2,3}-Scharlemann bigon with an odd partner count
        doc = """\
pair delta=1 n1=2 n2=3
graph 1 type=A
vertex 1 labels=2,3,1
vertex 2 labels=3,1,2
edge 0 1.0-2.0 sign=+ twist=0
edge 1 1.1-2.2 sign=+ twist=0
edge 2 1.2-2.1 sign=- twist=0
hole 0.fwd
hole 1.rev
end
"""
        code, recs = self.run_cli(tmp_path, doc, "check", "--lemma", "2.3",
                                  "--partner-type", "A")
        assert code == 1
        assert recs[0]["record"] == "lemma-verdict" and not recs[0]["holds"]

    def test_check_lemma_holds(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC, "check", "--lemma", "2.3",
                                  "--partner-type", "S")
        assert code == 0 and recs[0]["holds"]

    def test_reduce(self, tmp_path):
        code, recs = self.run_cli(tmp_path, S_CYCLE_DOC, "reduce")
        assert code == 0
        assert recs[0]["edges"] == {"0": 3, "1": 1}

    def test_parse_error_exit_code(self, tmp_path):
        code, _ = self.run_cli(tmp_path, "garbage\n", "validate")
        assert code == 2

    def test_invariant_error_exit_code(self, tmp_path):
        doc = S_CYCLE_DOC.replace("vertex 2 labels=1,2,1,2",
                                  "vertex 2 labels=1,2,2,1")
        code, _ = self.run_cli(tmp_path, doc, "validate")
        assert code == 3

    def test_enumerate_campaign(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["enumerate", "--campaign", "sec8-euler",
                     "--bound", "max_count=20", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["format"] == "fillgraph.campaign-report/1"
        assert data["violations"] == []

    def test_enumerate_resource_limit_and_resume(self, tmp_path):
        code = main(["enumerate", "--campaign", "sec8-euler",
                     "--bound", "max_count=20", "--max-instances", "500"])
        assert code == 4

    def test_console_entry_point(self, tmp_path):
        f = tmp_path / "g.fgl"
        f.write_text(S_CYCLE_DOC)
        proc = subprocess.run(
            [sys.executable, "-m", "fillgraph.cli", "validate", str(f)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout.splitlines()[0])["record"] == "validate"
