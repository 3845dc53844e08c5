"""Nonlinear dispersive-readout toolkit.

Predicts the driven response of a microwave cavity coupled to N multilevel
superconducting qubits deep into the nonlinear regime, locates the
bistability (bifurcation) thresholds per logical state, plans
high-contrast parity-readout drives, and quantifies measurement
back-action.
"""

from .device import (
    CavitySpec,
    ConfigError,
    DeviceSpec,
    DriveSpec,
    HierarchyWarning,
    LogicalState,
    QubitSpec,
    ValidationError,
    coupling_ladder,
    dump_device,
    load_device,
    loads_device,
    logical_sigma_z,
    transition_frequencies,
)
from .spectrum import (
    DispersiveError,
    SpectralParams,
    case_formula_detunings,
    detunings_and_lambdas,
    toeplitz_inverse,
    transformed_frequencies,
)
from .steadystate import (
    SolveOptions,
    SolverError,
    SteadyStateResult,
    SweepResult,
    bare_chi,
    chi_shift,
    contrast,
    high_branch_seed,
    solve_branch,
    sweep_drive,
)
from .stability import (
    BifurcationReport,
    bifurcation,
    fluctuation_matrix,
    h_function,
    stability_params,
)
from .parity import (
    ParityPlan,
    PlanningError,
    TwoQubitParityPoint,
    all_states,
    bare_chi_table,
    classify,
    parity_plan,
    stability_border,
    two_qubit_parity_point,
)
from .decoherence import (
    ChannelCoefficients,
    DephasingReport,
    LeakageRate,
    dephasing_coefficients,
    leakage_chis,
    leakage_dephasing_rate,
    leakage_trajectories,
    relaxation_coefficients,
)
from . import lindblad

__version__ = "0.1.0"
