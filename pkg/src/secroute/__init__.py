"""Secrecy-outage analytics and secure routing for multihop relaying
networks under Poisson-distributed colluding eavesdroppers."""

from .netmodel import (
    Link,
    NetModelError,
    Node,
    Path,
    Scenario,
    Topology,
    build_topology,
    hop_distances,
    path_sum_sq,
)
from .analytics import (
    SecrecyResult,
    WiretapCode,
    density_bound,
    hop_sop,
    k1,
    optimal_rs,
    path_metric,
    path_sop,
    pgfl_integral,
)
from .routing import (
    HopConstrainedTable,
    RoutingError,
    RoutingSolution,
    bellman_ford_hop_constrained,
    enumerate_all_paths_oracle,
    solve_secure_route,
)
from .montecarlo import (
    EavesdropperField,
    MonteCarloError,
    SopEstimate,
    estimate_hop_sop,
    estimate_path_sop,
    power_invariance_check,
    sample_ppp,
)

__version__ = "0.1.0"
