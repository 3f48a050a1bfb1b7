"""Integrability data, curvature identities and bitension of Riemannian submersions."""

from .core import (
    AntisymmetryViolation,
    BaseRicci,
    ConnectionCoeffs,
    DegenerateKappa,
    DimensionMismatch,
    IntegrabilityData,
    IntegrabilityJet,
    NotAdapted,
    NotSkew,
    ResidualReport,
    SubmersionError,
)

__version__ = "0.1.0"
