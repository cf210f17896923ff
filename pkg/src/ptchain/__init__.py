"""Scattering toolkit for a PT-symmetric two-defect tight-binding chain."""

from .errors import BandEdge, LaserPole, NonFinite, PtChainError, SingularSystem
from .model import ModelParams, WavePoint, k_from_omega, omega_from_k, validate_params
from .oracle import DefectChain, OracleSolution, Side, oracle_s_matrix, oracle_scatter, two_site_chain
from .scattering import (
    ExceptionalPoints,
    PhaseReport,
    PtPhase,
    ScatterCoefficients,
    ScatteringMatrix,
    classify_phase,
    discriminant,
    exceptional_points,
    gamma_factor,
    pair_distance,
    s_eigenvalues_closed,
    s_eigenvalues_direct,
    s_matrix,
    scattering_coefficients,
    sort_eigenvalue_pair,
    transmission_closed_form,
)
from .transfer import (
    CpaPoint,
    PortAmplitudes,
    TransferMatrix,
    cpa_laser_point,
    m_matrix,
    output_coefficient_theta,
    s_from_m,
    scatter_outputs,
)

__version__ = "0.1.0"

__all__ = [
    "BandEdge",
    "CpaPoint",
    "DefectChain",
    "ExceptionalPoints",
    "LaserPole",
    "ModelParams",
    "NonFinite",
    "OracleSolution",
    "PhaseReport",
    "PortAmplitudes",
    "PtChainError",
    "PtPhase",
    "ScatterCoefficients",
    "ScatteringMatrix",
    "Side",
    "SingularSystem",
    "TransferMatrix",
    "WavePoint",
    "classify_phase",
    "cpa_laser_point",
    "discriminant",
    "exceptional_points",
    "gamma_factor",
    "k_from_omega",
    "m_matrix",
    "omega_from_k",
    "oracle_s_matrix",
    "oracle_scatter",
    "output_coefficient_theta",
    "pair_distance",
    "s_eigenvalues_closed",
    "s_eigenvalues_direct",
    "s_from_m",
    "s_matrix",
    "scatter_outputs",
    "scattering_coefficients",
    "sort_eigenvalue_pair",
    "transmission_closed_form",
    "two_site_chain",
    "validate_params",
]
