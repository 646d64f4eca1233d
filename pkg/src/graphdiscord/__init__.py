"""Graph-built density operators, quantum gates, and zero-discord certificates."""

from .discord import (
    BlockView,
    CertificateOutcome,
    CertificateReport,
    PsdParts,
    block_partition,
    blocks_normal_commuting,
    bnc_decompose,
    block_products_hermitian,
    commuting_product_mixture,
    entry_identity_two_qubit,
    flip_symmetry_two_qubit,
    nested_product_symmetry,
    outer_grid_identity,
    reassemble,
    singular_marginal,
    split_parts_commute,
    uniform_complete_certificate,
    uniform_magnitude_blocks,
    zero_discord_verdict,
)
from .gates import (
    GateSpec,
    PartialGateSpec,
    apply_gate,
    apply_partial_gate,
    apply_partial_gate_graph,
    conj_partial_fixed,
    gate_matrix,
    parse_gate_word,
    partial_mask,
)
from .graphs import (
    DensityOperator,
    WeightedGraph,
    connected_components,
    default_convention,
    density_operator,
    edges_same_parity,
    edges_within_blocks,
    laplacian,
    pure_by_component,
    pure_by_entries,
    resolve_convention,
    uniform_complete,
)
from .io import (
    graph_document,
    matrix_document,
    parse_graph_document,
    parse_matrix_document,
    report_document,
)
from .linalg import (
    DEFAULT_TOL,
    MinorReport,
    PsdSplitReport,
    Tolerance,
    commutator_norm,
    hermitian_eigenvalues,
    is_hermitian,
    is_normal,
    is_psd,
    kron,
    maxnorm,
    partial_trace,
    psd_necessary_minors,
    psd_sufficient_split,
    purity,
)
from .oracle import (
    DiscordEstimate,
    MeasurementSpec,
    discord_estimate,
    entropy,
    mutual_information,
    random_cq_state,
    random_state,
)

__version__ = "0.1.0"
