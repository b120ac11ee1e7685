from gradpush.graphs.connectivity import (
    ConnectivityReport,
    is_strongly_connected,
    verify_B_strong_connectivity,
)
from gradpush.graphs.generators import (
    alternating_one_way,
    complete,
    directed_cycle,
    from_graphs,
    generate_alternating_stars,
    generate_cycle_plus_random,
    load_edge_list,
    static,
)
from gradpush.graphs.model import DirectedGraph, GraphSequence, MixingMatrix, build_mixing_matrix
from gradpush.graphs.spectral import SpectralConstants, sigma2, spectral_constants

__all__ = [
    "ConnectivityReport",
    "DirectedGraph",
    "GraphSequence",
    "MixingMatrix",
    "SpectralConstants",
    "alternating_one_way",
    "build_mixing_matrix",
    "complete",
    "directed_cycle",
    "from_graphs",
    "generate_alternating_stars",
    "generate_cycle_plus_random",
    "is_strongly_connected",
    "load_edge_list",
    "sigma2",
    "spectral_constants",
    "static",
    "verify_B_strong_connectivity",
]
