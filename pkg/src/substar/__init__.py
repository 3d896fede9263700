"""Recognition of substar graphs (intersection graphs of substars of a tree) with certificates."""

from .chordal import (
    ChordlessCycle,
    NotChordalError,
    build_clique_tree,
    enumerate_clique_trees,
    is_chordal,
    is_valid_clique_tree,
    maximal_cliques,
)
from .forbidden import FamilyTag, ForbiddenWitness, find_forbidden, make_forbidden
from .graph import (
    Graph,
    GraphError,
    are_isomorphic,
    canonical_code,
    enumerate_connected_graphs,
    find_induced_embedding,
    induced_subgraph,
    parse_edge_list,
    parse_graph6,
    write_edge_list,
    write_graph6,
)
from .recognition import (
    Certificate,
    Construction,
    extract_witness,
    is_good_neighbor,
    is_substar,
    parse_certificate,
    recognize,
    run_cascade,
    substar_oracle,
    switch_nodes,
    switching_search,
)
from .representation import (
    TreeRepresentation,
    is_substar_representation,
    normalize_representation,
    subtree_diameter,
    verify_representation,
)

__version__ = "0.1.0"
