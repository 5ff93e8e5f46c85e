"""Modularity and normalized-modularity spectra, with certificates for complete multipartite graphs."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .correlation import (
    Representation,
    optimal_representation,
    pair_bound_witness,
    placement_objective,
    symmetric_max_correlation,
)
from .definiteness import (
    Certificate,
    Verdict,
    classify,
    is_negative_semidefinite,
    principal_minor_certificate,
    witness_vector,
)
from .enumeration import GraphStream, enumerate_labeled, stream_graph6_file
from .graph import (
    DegreeData,
    GraphKind,
    WeightedGraph,
    degrees,
    encode_graph6,
    from_edge_list,
    is_connected,
    normalize_total_weight,
    parse_edge_list,
    parse_graph6,
)
from .multipartite import (
    ForbiddenTriple,
    MultipartiteStructure,
    PatternMatrix,
    build_complete_multipartite,
    closed_form_modularity_spectrum,
    find_forbidden_triple,
    null_space_basis_normalized,
    pattern_matrix,
    recover_partition,
)
from .partition import (
    Bipartition,
    MixingDecomposition,
    best_bipartition,
    mixing_identity_check,
    modularity_of_bipartition,
)
from .spectral import (
    MatrixLabel,
    SpectralDecomposition,
    SymmetricMatrix,
    eigendecompose,
    modularity_matrix,
    mu_lambda_correspondence,
    normalized_adjacency,
    normalized_laplacian,
    normalized_modularity_matrix,
)
