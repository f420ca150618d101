"""Certified DoF bounds and generic-rank verification for topological
interference management with transmitter cooperation and no CSIT."""

__version__ = "0.1.0"

from .topology import (  # noqa: F401
    CONSTANT,
    Topology,
    TopologyError,
    cyclic_wyner,
    fully_connected,
    identical_neighbor_groups,
    mixed_coherence_example,
    neighbors,
    wyner,
)
from .assignment import (  # noqa: F401
    AssignmentError,
    AssignmentViolation,
    MessageAssignment,
    cooperation_order,
    mod3_assignment,
    validate,
)
from .certificates import DofCertificate, trivial_bound  # noqa: F401
from .scheduler import (  # noqa: F401
    Schedule,
    ScheduleError,
    achievable_dof,
    schedule_exact,
    schedule_greedy,
    schedule_to_scheme,
)
from .bounds import (  # noqa: F401
    Condition1Certificate,
    Condition1Failure,
    best_condition1_bound,
    check_condition1,
    identical_neighbors_bound,
    upper_bound,
)
from .verifier import (  # noqa: F401
    ChannelRealization,
    LinearScheme,
    MonteCarloVerdict,
    SchemeError,
    check_interference_rank,
    footprint,
    monte_carlo_dof,
    numerical_rank,
    random_full_rank_precoder,
    sample_channel,
    two_slot_repetition_scheme,
    zf_decodability,
)
from .analysis import AnalysisReport, analyze  # noqa: F401
