"""Dual-symmetric cavity fields, their canonical quantization and numerical checks."""

__version__ = "0.1.0"

from .cavity import CavityConfig, ModeSpec, UnitSystem, make_mode, mode_bank
from .classical import (FieldFrame, SpatialProfile, TimeAmplitude, combine_complex,
                        duality_rotate, fields_sol1, fields_sol2, hamiltonian_sol1,
                        hamiltonian_sol2, maxwell_residual)
from .config import ScenarioConfig, load_config, validate_config
from .quantization import QuantizationScheme, ccr_report, g_operator, hamiltonian_operator
from .local import local_commutator_check, local_ladder
from .report import VerificationReport

__all__ = [
    "__version__",
    "CavityConfig", "ModeSpec", "UnitSystem", "make_mode", "mode_bank",
    "FieldFrame", "SpatialProfile", "TimeAmplitude", "combine_complex", "duality_rotate",
    "fields_sol1", "fields_sol2", "hamiltonian_sol1", "hamiltonian_sol2", "maxwell_residual",
    "ScenarioConfig", "load_config", "validate_config",
    "QuantizationScheme", "ccr_report", "g_operator", "hamiltonian_operator",
    "local_commutator_check", "local_ladder",
    "VerificationReport",
]
