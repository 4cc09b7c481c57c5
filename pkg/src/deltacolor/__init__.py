"""deltacolor: simulators, oracles, and statistics for distributed max-degree coloring."""

__version__ = "0.1.0"

from .brooks import CompletionResult, complete_one_uncolored, completion_radius
from .detcolor import DetParams, DetResult, color_det_netcomp, color_det_rulingforest, det_params
from .engine import Ball, NodeProgram, NodeView, RunReport, SyncResult, collect_ball, run_sync
from .errors import (
    BadPartial,
    ComponentTooLarge,
    DeltaColorError,
    GraphFormatError,
    InfeasibleFamily,
    LayerListViolation,
    ListTooSmall,
    NotNice,
    ParamUnsupported,
    RejectionBudgetExceeded,
    RoundLimitExceeded,
    SearchBudgetExceeded,
    TooLarge,
)
from .graph import (
    BfsStructure,
    BlockDecomposition,
    ComponentClass,
    ComponentTag,
    Graph,
    ball_distances,
    bfs_layers,
    block_decomposition,
    classify_block,
    find_dcc_within_radius,
    induced_subgraph,
    is_gallai_tree,
    is_nice,
)
from .oracle import (
    Verdict,
    brute_force_list_coloring,
    oracle_degree_choosable,
    oracle_delta_coloring,
    verify,
)
from .primitives import (
    LayerDecomposition,
    NetworkDecomposition,
    RulingSet,
    RulingSetParams,
    SymmetryColoring,
    layered_color,
    linial_coloring,
    list_color,
    network_decomposition,
    ruling_set,
    ruling_set_via_decomposition,
)
from .randcolor import (
    HappyLayers,
    MarkingOutcome,
    MarkingParams,
    PhaseOne,
    RandParams,
    RandResult,
    build_happy_layers,
    color_small_components,
    make_params,
    marking_process,
    remove_small_dccs,
    run_randomized,
    shattering_stats,
)
from .workbench import (
    generate,
    load_coloring,
    load_graph,
    parse_graph_text,
    save_coloring,
    save_graph,
    write_graph_text,
    write_report,
)
