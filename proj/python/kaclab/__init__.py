"""Python bindings for the kaclab core library."""

from ._kaclab import (
    AdmissibilityError,
    ConfigError,
    ConfigFailure,
    DivisibilityError,
    DomainError,
    EmptyEnsembleError,
    KacError,
    NonConvergence,
    NumericalFailure,
    ParamError,
    Params,
    PeriodicSupportWarning,
    RenewalSetup,
    SizeError,
    WindowError,
    coupling,
    efp,
    energy_pbc,
    entropy,
    instanton,
    kp_diagnostic,
    metropolis,
    mf_free_energy,
    pbc_decomposition,
    phase_labels,
    polymer_partition,
    potentials,
    restricted_log_z,
    solve_m_beta,
    surface_tension,
)

__all__ = [name for name in dir() if not name.startswith("_")]
