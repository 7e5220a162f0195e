"""Count and uniformly sample the DAGs of a Markov equivalence class.

Typical use::

    from cliquepick import parse_graph, count_mec, MECSampler
    C = parse_graph(open("cpdag.txt").read())
    count_mec(C)
    MECSampler(seed=1).fit(C).sample(5)
"""

from .applications import (
    InterventionOutcome,
    StrategyReport,
    enumerate_intervention_results,
    evaluate_vertex,
    ida_multiplicities,
    select_target,
    simulate_active_learning,
    strategy_report,
)
from .background import (
    count_topological_orderings,
    count_with_background,
    dag_to_cpdag,
    extend_pdag,
    pdag_to_cpdag,
    phi_prime,
)
from .chordal import (
    PrefixChain,
    RootedCliqueTree,
    build_clique_tree,
    forbidden_prefix_chains,
    forbidden_prefixes,
    is_chordal,
    is_peo,
    maximal_cliques,
    mcs_order,
)
from .counting import CountMemo, count_amo, count_amo_by_separators, count_mec, phi, phi_general
from .errors import (
    CliquePickError,
    NotExtendableError,
    ParseError,
    PreconditionError,
    ResourceError,
    StructuralError,
)
from .generators import GeneratorSpec, generate_chordal
from .graph import (
    Dag,
    PartiallyDirectedGraph,
    VStructure,
    format_graph,
    is_consistent_extension,
    parse_graph,
    topological_order,
    undirected_components,
    v_structures,
)
from .oracles import brute_force_amo_count, brute_force_extensions, clique_starting_order
from .orientation import (
    LEX_BFS,
    MAXIMUM_CARDINALITY,
    CliqueComponents,
    LabelingStructure,
    components_after_clique,
    intervention_update,
    meek_closure,
    orient_at_vertex,
)
from .sampling import (
    MECSampler,
    RejectionStats,
    RngStream,
    SamplerIndex,
    build_sampler_index,
    draw_allowed_permutation,
    draw_clique_node,
    sample_amo,
    sample_dag_from_mec,
)

__version__ = "0.1.0"
