"""Peel decompositions of plane graphs with certified outerface bounds."""

from .center import (
    CenterCertificate,
    GTooBigError,
    certify,
    choose_outerface,
    find_center,
    find_center_diameter,
    spanning_tree_center,
)
from .embed import (
    GraphFormatError,
    PlaneGraph,
    RadialDistance,
    build_plane_graph,
    connect_components,
    insert_edge_in_face,
    radial_bfs,
    trace_faces,
    triangulate_preserving_embedding,
)
from .gen import (
    gen_lowerbound_H,
    gen_nested_cycles,
    gen_prism_grid,
    gen_random_triangulation,
)
from .graphio import dump_plane_graph, dumps_plane_graph, load_plane_graph, loads_plane_graph
from .peels import (
    Augmentation,
    PeelContext,
    TreeOfPeels,
    augment,
    build_tree_of_peels,
    choose_root,
    compute_layers,
    peel_count_for_outerface,
)

__version__ = "0.1.0"
