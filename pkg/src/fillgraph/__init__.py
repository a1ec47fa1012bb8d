"""Combinatorics of intersection graphs of small surfaces in Dehn-filled
3-manifolds: twisted ribbon graphs, structure detectors, lemma predicates
and exhaustive census campaigns."""

from .surface import (
    FatGraph, SurfaceKind, SURFACE_KINDS, Face, Corner, Region,
    classify_surface, trace_faces, subgraph_embedding, regions_of_subgraph,
    lies_in_disk, vertex_flip,
)
from .pairing import (
    GraphPair, Verdict, validate_labels, validate_pair,
    check_vertex_count_bounds, no_trivial_loops,
)
from .detect import (
    EdgeClass, EdgeFamily, StructureCertificate, classify_edges,
    parallel_families, reduced_graph, find_x_cycles, find_scharlemann_cycles,
    find_extended_s_cycles, find_generalized_s_cycles, sl_labels,
    find_x_faces, find_two_cornered_pb, find_two_cornered_sa,
    scharlemann_from_great_x_cycle, verify_certificate,
)
from .blocks import (
    CutFace, Run, Cluster, SeemlyPair, PartnerArrangement, ExtremalBlock,
    cut_x_face, split_xface_along_diagonals, find_level1_pair, build_cluster,
    find_seemly_pair, positive_subgraph, components_with_disk_support,
    extract_extremal_block, xface_in_block,
)
from .lemmas import (
    LemmaVerdict, check_scharlemann_separating, check_sl_budget,
    check_forbidden_cycles, s_cycle_projective_flag, check_family_bounds,
    check_prop_5_1, check_theorem_5_2, block_euler_contradiction,
    reduced_valency_analysis, sec8_family_arithmetic, s_cycle_disjoint_pairs,
    claim_7_3_34_edge,
)
from .census import (
    Bounds, canonical_code, enumerate_ribbon_graphs, enumerate_fat_graphs,
    enumerate_parallel_family_labelings,
)
from .campaigns import CampaignSpec, CampaignReport, ResourceLimit, run_campaign
from .docio import parse_graph_document, serialize_document

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
