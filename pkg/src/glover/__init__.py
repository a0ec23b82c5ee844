"""Layered (GLOVER) analysis of oriented graphs and second-neighborhood checks."""

from .claims import ClaimReport, ClaimStatus, check_paper_claims
from .digraph import (
    Digraph,
    OrientedGraph,
    build_graph,
    induced_subgraph,
    out_neighbors,
    second_out_neighbors,
    square_graph,
)
from .dnsa import (
    DnsaResult,
    HaltReason,
    InteriorAssignment,
    VerificationRecord,
    dense_report,
    map_interior_degrees,
    run_dnsa,
    verify_dnsa,
)
from .generators import GenSpec, fixture, gen_cycle, gen_random_oriented, gen_tournament
from .layering import (
    ArcClass,
    RootedLayering,
    TieBreak,
    arc_class,
    build_layering,
    exterior_set_definitional,
    layer_size_sequence,
    min_out_degree_node,
    neighbor_partition,
    split_layers,
)
from .serialize import from_json, to_dot, to_json, validate_dot
from .seymour import (
    dnsp_holds,
    exterior_cover_holds,
    interior_cover_holds,
    seymour_oracle,
    square_equivalence_check,
)
from .triangles import (
    TriangleType,
    classify_triangle,
    enumerate_seymour_diamonds,
    enumerate_transitive_triangles,
    triangle_census,
)

__version__ = "0.1.0"
