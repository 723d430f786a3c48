"""Connected matchings in edge-colored complete multipartite graphs."""

from .extremal import (
    bad_partition_witness,
    figure1_coloring,
    figure2_coloring,
    search_3color_lower_bound,
)
from .gallai_edmonds import GEDecomposition, ge_decompose, is_factor_critical, verify_ge
from .graph import (
    BudgetExceeded,
    ColoredMultipartiteGraph,
    ColorSubgraph,
    GraphError,
    MultipartiteSpec,
    build_complete,
    components,
    enumerate_colorings,
    from_word,
    graph_from_edges,
    load_graph,
)
from .matching import (
    CoverCertificate,
    MatchingCertificate,
    alpha_star,
    konig_cover,
    max_matching,
    maximum_matching,
    multipartite_matching_bound,
)
from .stability import (
    BadPartitionCertificate,
    SuitabilityParams,
    audit_stability,
    check_bad_partition,
    check_suitability,
    search_bad_partition,
)
from .verify import (
    VerificationReport,
    check_preconditions_thm2,
    necessity_sweep,
    verify_thm2,
    verify_thm3,
)

__version__ = "0.1.0"
