"""Cavity geometry, unit systems and per-mode constants.

A one-dimensional cavity of length ``L`` along z supports standing-wave
modes with ``k = alpha * pi / L`` and ``omega = c * k``.  Two amplitude
normalisations are carried per mode: the time-scheme amplitude
``A = sqrt(2 omega^2 m / (V eps0))`` and the space-scheme amplitude
``A_space = sqrt(2 omega^2 / T)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import scipy.constants as const

__all__ = [
    "UnitSystem",
    "CavityConfig",
    "ModeSpec",
    "make_mode",
    "mode_bank",
]

# relative tolerance on mu0 * eps0 * c**2 == 1
_UNIT_TOL = 1e-9


class UnitSystem(str, enum.Enum):
    SI = "SI"
    GAUSSIAN_NATURAL = "GaussianNatural"


@dataclass(frozen=True)
class CavityConfig:
    """Geometry and vacuum constants of the cavity.

    ``T`` is the time-normalisation window of the space scheme.  When not
    given it defaults to one fundamental round trip ``2 L / c``, which makes
    every ``omega_alpha * T`` an integer multiple of ``2 pi``.
    """

    L: float = 1.0
    V: float = 1.0
    c: float = 1.0
    eps0: float = 1.0
    mu0: float = 1.0
    unit_system: UnitSystem = UnitSystem.GAUSSIAN_NATURAL
    T: Optional[float] = None

    def __post_init__(self):
        unit_system = UnitSystem(self.unit_system)
        object.__setattr__(self, "unit_system", unit_system)
        for name in ("L", "V", "c", "eps0", "mu0"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
        if unit_system is UnitSystem.GAUSSIAN_NATURAL:
            if (self.eps0, self.mu0, self.c) != (1.0, 1.0, 1.0):
                raise ValueError("GaussianNatural units require eps0 = mu0 = c = 1")
        product = self.mu0 * self.eps0 * self.c**2
        if abs(product - 1.0) > _UNIT_TOL:
            raise ValueError(f"mu0 * eps0 * c**2 = {product!r}, expected 1")
        if self.T is None:
            object.__setattr__(self, "T", 2.0 * self.L / self.c)
        elif not (math.isfinite(self.T) and self.T > 0):
            raise ValueError(f"T must be positive and finite, got {self.T!r}")

    @classmethod
    def natural(cls, L: float = 1.0, V: float = 1.0, T: Optional[float] = None) -> "CavityConfig":
        return cls(L=L, V=V, T=T)

    @classmethod
    def si(cls, L: float, V: float, T: Optional[float] = None) -> "CavityConfig":
        """CODATA ``c`` and ``mu0`` from :mod:`scipy.constants`; ``eps0 = 1 / (mu0 c^2)``.

        The tabulated ``epsilon_0`` is rounded to 12 digits; deriving it keeps
        ``mu0 eps0 c^2 = 1`` to rounding.
        """
        return cls(L=L, V=V, c=const.c, eps0=1.0 / (const.mu_0 * const.c**2), mu0=const.mu_0,
                   unit_system=UnitSystem.SI, T=T)

    @property
    def default_T(self) -> float:
        return 2.0 * self.L / self.c

    @property
    def orthogonal_window(self) -> bool:
        """True when ``T`` is an integer multiple of ``2 L / c``."""
        ratio = self.T / self.default_T
        return abs(ratio - round(ratio)) < 1e-12 and round(ratio) >= 1


@dataclass(frozen=True)
class ModeSpec:
    alpha: int
    k: float
    omega: float
    m: float
    A: float
    A_space: float
    A_general: float = 1.0

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def make_mode(alpha: int, config: CavityConfig, m: float = 1.0,
              A_general: float = 1.0) -> ModeSpec:
    """Constants of the ``alpha``-th standing-wave mode.

    >>> mode = make_mode(1, CavityConfig.natural())
    >>> round(mode.omega / math.pi, 12), round(mode.A / math.pi, 12)
    (1.0, 1.414213562373)
    """
    if isinstance(alpha, bool) or int(alpha) != alpha or alpha < 1:
        raise ValueError(f"mode index must be a positive integer, got {alpha!r}")
    alpha = int(alpha)
    for name, value in (("m", m), ("A_general", A_general)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")
    k = alpha * math.pi / config.L
    omega = config.c * k
    A = math.sqrt(2.0 * omega**2 * m / (config.V * config.eps0))
    A_space = math.sqrt(2.0 * omega**2 / config.T)
    return ModeSpec(alpha=alpha, k=k, omega=omega, m=float(m), A=A,
                    A_space=A_space, A_general=float(A_general))


def mode_bank(n_modes: int, config: CavityConfig,
              masses: Optional[Sequence[float]] = None,
              A_general: Optional[Sequence[float]] = None) -> list[ModeSpec]:
    """Modes ``alpha = 1 .. n_modes`` with optional per-mode overrides."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise ValueError(f"n_modes must be a positive integer, got {n_modes!r}")
    masses = [1.0] * n_modes if masses is None else list(masses)
    A_general = [1.0] * n_modes if A_general is None else list(A_general)
    if len(masses) != n_modes or len(A_general) != n_modes:
        raise ValueError("per-mode overrides must have one entry per mode")
    return [make_mode(alpha, config, m=m, A_general=ag)
            for alpha, m, ag in zip(range(1, n_modes + 1), masses, A_general)]
