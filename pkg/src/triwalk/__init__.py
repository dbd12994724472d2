"""One-excitation quantum dynamics on a triangular XX spin lattice.

The model couples nearest neighbors on the domain i + j <= N with
parameter-dependent strengths and has a fully explicit orthogonal
eigenbasis built from two-variable Krawtchouk polynomials.  The package
computes couplings and Hamiltonians, assembles the closed-form
eigensystem, evolves excitations in time, and verifies the
perfect-transfer phenomenon from the apex to the hypotenuse.
"""
from .dynamics import (
    AmplitudeTable,
    PstParams,
    amplitude_numeric_oracle,
    amplitude_spectral,
    amplitude_table,
    apex_amplitude_closed,
    binomial_reference,
    chain_pst_fidelity,
    fidelity_scan,
    light_cone_check,
    propagator_spectral,
    pst_condition_check,
    pst_distribution,
)
from .errors import (
    ConfigError,
    DegeneracyError,
    DomainError,
    RestrictionError,
    SizeError,
    TriwalkError,
    ValidationError,
)
from .krawtchouk import (
    EigenSystem,
    KrawtchoukParams,
    build_eigensystem,
    eigensystem_for,
    eigenvalue,
    krawtchouk_explicit,
    krawtchouk_matrix,
    recurrence_residual,
    recurrence_scale,
    sqrt_weight_signed,
    w00,
    weight_r,
)
from .lattice import SiteIndex, TriangularLattice, enumerate_sites, site_index
from .model import (
    CouplingSet,
    ModelParams,
    build_chain_hamiltonian_1d,
    build_full_hamiltonian,
    build_one_excitation_hamiltonian,
    couplings,
    one_excitation_block,
    total_sz_full,
    validate_params,
)
from .selftest import CheckResult, run_selftest

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTable",
    "CheckResult",
    "ConfigError",
    "CouplingSet",
    "DegeneracyError",
    "DomainError",
    "EigenSystem",
    "KrawtchoukParams",
    "ModelParams",
    "PstParams",
    "RestrictionError",
    "SiteIndex",
    "SizeError",
    "TriangularLattice",
    "TriwalkError",
    "ValidationError",
    "amplitude_numeric_oracle",
    "amplitude_spectral",
    "amplitude_table",
    "apex_amplitude_closed",
    "binomial_reference",
    "build_chain_hamiltonian_1d",
    "build_eigensystem",
    "build_full_hamiltonian",
    "build_one_excitation_hamiltonian",
    "chain_pst_fidelity",
    "couplings",
    "eigensystem_for",
    "eigenvalue",
    "enumerate_sites",
    "fidelity_scan",
    "krawtchouk_explicit",
    "krawtchouk_matrix",
    "light_cone_check",
    "one_excitation_block",
    "propagator_spectral",
    "pst_condition_check",
    "pst_distribution",
    "recurrence_residual",
    "recurrence_scale",
    "run_selftest",
    "site_index",
    "sqrt_weight_signed",
    "total_sz_full",
    "validate_params",
    "w00",
    "weight_r",
]
