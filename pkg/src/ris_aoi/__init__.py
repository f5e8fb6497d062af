"""Average sum AoI minimization in an RIS-assisted uplink NOMA IoT network.

Per-slot pipeline: RIS phase optimization via semidefinite relaxation and
Gaussian randomization, closed-form weak-device power feasibility, and
optimal strong/weak pairing, wrapped in a Monte Carlo experiment harness.
"""

from .channel import (
    ChannelSlot,
    FadingParams,
    Topology,
    effective_gain,
    large_scale_amplitude,
    place_devices,
    sample_rayleigh,
    sample_rician,
    sample_slot,
)
from .clustering import Assignment, CostMatrix, build_cost_matrix, hungarian
from .config import ConfigError, ScenarioConfig, parse_config, serialize_config
from .engine import (
    POLICIES,
    PROPOSED,
    AoIState,
    MetricsRecord,
    Policy,
    monte_carlo,
    run_episode,
    run_slot,
    step_age,
)
from .experiments import ResultRow, run_sweep, write_results
from .phase_opt import (
    LiftedInstance,
    PhaseSolution,
    SolverFailure,
    build_lifted,
    build_q,
    exhaustive_phase_oracle,
    gaussian_randomize,
    optimize_phases,
    solve_sdr,
)
from .power import (
    LinkBudget,
    PowerDecision,
    allocate_cluster_power,
    sinr_strong,
    sinr_weak,
    weak_power_bounds,
)

__version__ = "0.1.0"
