"""Connected regular factors of bipartite graphs: existence, certificates,
structure detection, and exchange-based connecting."""

from .connect import (
    Link,
    StuckReport,
    SwapMove,
    apply_swap,
    check_factor,
    connect_factor,
    connected_k_factor,
    cycle_order,
    find_links,
    hamilton_s13,
    serialize_stuck_report,
    stuck_audit,
    threshold_c,
    threshold_c_prime,
    threshold_c_raw,
    try_primary_swap,
    try_secondary_swap,
)
from .errors import (
    BifactorError,
    BudgetExceededError,
    DemandImbalanceError,
    DuplicateEdgeError,
    EmptyGraphError,
    FakeCertificateError,
    GraphFormatError,
    HypothesisViolatedError,
    IndexOutOfRangeError,
    MalformedHeaderError,
    MatchingNotDisjointError,
    NotBipartiteError,
    NotConnectedError,
    NotRegularError,
    NotStuckError,
    ParamInvalidError,
    ParamOrderError,
    RetryExhaustedError,
    SOutOfRangeError,
    StructureUnrecognizedError,
    TheoremContradictionError,
)
from .factors import (
    DegreeDemand,
    ViolatorCertificate,
    audit_certificate,
    check_demand_balance,
    find_f_factor,
    make_certificate,
    regular_decompose,
    serialize_certificate,
    shrink_violator,
)
from .generators import (
    MODELS,
    GenSpec,
    OracleVerdict,
    SplitMix64,
    brute_force_connected_k_factor,
    brute_force_f_factor,
    enumerate_bipartite_block,
    enumerate_small_bipartite,
    generate,
)
from .graph import (
    BipartiteGraph,
    Factor,
    VertexRef,
    complete_bipartite,
    complete_bipartite_minus_matching,
    cycle_graph,
    double_graph,
    parse_factor,
    parse_graph,
    path_graph,
    serialize_factor,
    serialize_graph,
    star_pair_graph,
)
from .structure import (
    AuditRecord,
    AuditReport,
    Layering,
    StarWitness,
    StructureClass,
    audit_layer_inequalities,
    build_layering,
    classify_s12_free,
    find_induced_star,
    is_skl_free,
    rebuild_classified,
    serialize_audit_report,
    serialize_star_witness,
)

__version__ = "0.1.0"
