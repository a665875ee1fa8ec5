"""Numerical laboratory for the coherent Crooks equality.

Builds driven-quantum-system setups in which a thermal machine supplies the
energy for a system Hamiltonian change, runs the forward and reverse
transition protocols under strictly energy-conserving unitaries, and checks
the coherent Crooks equality together with its companion identities
(classical limit, off-diagonal coherence transport, global invariance,
factorisability) to stated tolerances.
"""

from .errors import (
    ConfigParse,
    CrooksLabError,
    DegenerateSupport,
    DimensionMismatch,
    IndexOutOfLadder,
    InvalidParameter,
    NoConvergence,
    NoDegeneracyWarning,
    NotEigenstate,
    NotHermitian,
    PreconditionViolated,
    ProfileNotFlat,
    RegionLeak,
    ScenarioError,
    SchemaViolation,
    UnknownFactor,
    VacuousRatio,
)
from .linalg import (
    EigenDecomposition,
    HilbertSpace,
    commutator_norm,
    eig_hermitian,
    func_hermitian,
    group_degenerate,
    is_hermitian,
    is_positive_semidefinite,
    is_projector,
    is_unitary,
    max_abs,
    partial_trace,
    tensor,
)
from .model import (
    MachineState,
    Setup,
    build_ladder_setup,
    build_lattice_setup,
    gaussian_packet,
    ladder_packet,
    machine_eigenstate,
    ramp_profile,
    random_region_state,
    validate_setup,
)
from .policy import DEFAULT_POLICY, NumericPolicy
from .protocol import (
    DesignatedSwap,
    EvolutionSpec,
    MachineChannel,
    ProtocolRun,
    autonomous_unitary,
    energy_conserving_unitary,
    forward_probability,
    induced_channel,
    make_run,
    reverse_probability,
)
from .reversal import ReversalBasis, is_tr_invariant, reverse, reverse_state
from .scenario import ReportRow, Scenario, emit, run_scenario, sweep_scenario
from .thermal import (
    dephase,
    e_tilde,
    free_energy,
    gibbs_map,
    gibbs_state,
    pair_state,
    partition_function,
    thermal_quantities,
)
from .verify import (
    CrooksReport,
    GlobalInvarianceReport,
    OffDiagonalReport,
    check_classical_limit,
    check_coherent_crooks,
    check_global_invariance,
    check_off_diagonal,
    factorisability_residual,
)

__version__ = "0.1.0"
