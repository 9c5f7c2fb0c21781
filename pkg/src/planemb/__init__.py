"""Exact L1 embeddings of same-face vertex pairs in planar graphs, with the
flow-side tooling to check them."""

from .cuts import CutCollection, EmbeddingCoordinates, distortion_report, uncross
from .errors import PlanembError
from .exact import os_embed, seymour_embed
from .harness import Instance, generate, load_instance, max_concurrent_flow, verify
from .pipeline import embed_same_face_cuts, embed_same_face_pairs
from .planar import PlanarGraph, build_planar_graph, check_cut_condition, shortest_path_metric
from .scales import KprConfig, kpr_partition, single_source_embed

__version__ = "0.1.0"

__all__ = [
    "CutCollection", "EmbeddingCoordinates", "Instance", "KprConfig", "PlanarGraph",
    "PlanembError", "build_planar_graph", "check_cut_condition", "distortion_report",
    "embed_same_face_cuts", "embed_same_face_pairs", "generate", "kpr_partition",
    "load_instance", "max_concurrent_flow", "os_embed", "seymour_embed",
    "shortest_path_metric", "single_source_embed", "uncross", "verify",
]
