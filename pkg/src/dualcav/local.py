"""General-form fields, the energy density and space-time ladder operators.

The local ladder operator of one mode is a product of a space factor (an
oscillator quantized with ``lambda0``) and a time factor (quantized with
``hbar``).  :func:`local_commutator_check` measures how far its commutator
is from the two proposed closed forms; it never asserts them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .cavity import CavityConfig, ModeSpec
from .classical import FieldFrame, _check_grid
from .fock import Operator, annihilation, lower_block_indices, tensor
from .quantization import (QuantizationScheme, heisenberg_evolve, quadratures_from_ladder,
                           spatial_evolve)
from .report import VerificationReport

__all__ = [
    "GeneralFieldSpec",
    "DensityReport",
    "LocalLadderPair",
    "general_fields",
    "energy_density_W",
    "local_ladder",
    "local_commutator_check",
    "product_hamiltonian",
]

DEFAULT_LOCAL_CUTOFF = 12


@dataclass(frozen=True)
class GeneralFieldSpec:
    """Per-mode time amplitude, spatial profile and amplitude ``A''``."""

    modes: tuple
    amps: tuple
    profiles: tuple

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "amps", tuple(self.amps))
        object.__setattr__(self, "profiles", tuple(self.profiles))
        if not (len(self.modes) == len(self.amps) == len(self.profiles)):
            raise ValueError("need one amplitude and one profile per mode")

    def check_profiles(self, config: CavityConfig, samples: int = 17) -> float:
        """Worst derivative mismatch of the profile antiderivatives on ``(0, L)``."""
        z = np.linspace(0.0, config.L, samples + 2)[1:-1]
        return max(p.consistency_error(z) for p in self.profiles)


class DensityReport(NamedTuple):
    z: np.ndarray
    W: np.ndarray
    diagonal: np.ndarray
    cross: np.ndarray
    cross_electric: np.ndarray
    cross_magnetic: np.ndarray
    cross_ratio: float


@dataclass(frozen=True)
class LocalLadderPair:
    a: Operator
    a_dag: Operator
    lambda0_prime: float
    hbar: float
    prefactor: float
    space_factor: Operator = field(repr=False)
    time_factor: Operator = field(repr=False)
    quadratures: tuple = field(repr=False, default=())


def general_fields(spec: GeneralFieldSpec, z, t: float, config: CavityConfig) -> FieldFrame:
    """``E = sum A'' q(t) q(z)`` and ``H = -sum A'' dq/dt int_0^z q(z') dz'``."""
    z = _check_grid(z, config)
    modal_E, modal_H = [], []
    for mode, amp, prof in zip(spec.modes, spec.amps, spec.profiles):
        qz, Qz = np.asarray(prof.value(z)), np.asarray(prof.antiderivative(z))
        if not (np.all(np.isfinite(qz)) and np.all(np.isfinite(Qz))):
            raise ValueError(f"profile {prof.name} is undefined on the grid")
        modal_E.append(mode.A_general * amp.value(t).real * qz)
        modal_H.append(-mode.A_general * amp.derivative(t).real * Qz)
    modal_E, modal_H = np.array(modal_E), np.array(modal_H)
    return FieldFrame(z, float(t), modal_E.sum(axis=0), modal_H.sum(axis=0), "General",
                      config.unit_system, modal_E, modal_H)


def energy_density_W(frame: FieldFrame, config: CavityConfig) -> DensityReport:
    """``W = (eps0 E^2 + mu0 H^2) / 2`` with its diagonal / mode-mixing split."""
    if frame.is_complex:
        raise ValueError("energy density needs a real frame")
    W = 0.5 * (config.eps0 * frame.Ex**2 + config.mu0 * frame.Hy**2)
    if frame.modal_Ex is None or frame.modal_Hy is None:
        e, h = frame.Ex[None, :], frame.Hy[None, :]
    else:
        e, h = np.asarray(frame.modal_Ex), np.asarray(frame.modal_Hy)
    diagonal = 0.5 * (config.eps0 * np.sum(e**2, axis=0) + config.mu0 * np.sum(h**2, axis=0))
    cross_e = np.zeros_like(W)
    cross_h = np.zeros_like(W)
    for i, j in combinations(range(e.shape[0]), 2):
        cross_e += config.eps0 * e[i] * e[j]
        cross_h += config.mu0 * h[i] * h[j]
    cross = cross_e + cross_h
    dmax = float(np.max(np.abs(diagonal)))
    ratio = float(np.max(np.abs(cross))) / dmax if dmax > 0 else 0.0
    return DensityReport(frame.z, W, diagonal, cross, cross_e, cross_h, ratio)


def local_ladder(mode: ModeSpec, z: float, t: float, lambda0: float, hbar: float,
                 config: CavityConfig, d_z: int = DEFAULT_LOCAL_CUTOFF,
                 d_t: int = DEFAULT_LOCAL_CUTOFF) -> LocalLadderPair:
    """Space-time ladder operator on ``(space factor) x (time factor)``.

    ``a(z, t) = c w / sqrt(2 (l0' + hbar) w) [w c q''(z) + i c p''(z)] x [w q(t) + i p(t)]``
    with ``l0' = lambda0 / c``; both factors use unit mass.
    """
    if not (lambda0 > 0 and hbar > 0):
        raise ValueError("lambda0 and hbar must be positive")
    c, w = config.c, mode.omega
    lam_p = lambda0 / c
    space = QuantizationScheme.space(lambda0, cutoff=d_z)
    time = QuantizationScheme.time(hbar, cutoff=d_t)
    unit = replace(mode, m=1.0)
    qz, pz = quadratures_from_ladder(unit, space, spatial_evolve(annihilation(d_z), unit, z))
    qt, pt = quadratures_from_ladder(unit, time, heisenberg_evolve(annihilation(d_t), unit, t))
    S = w * c * qz + 1j * c * pz
    Tt = w * qt + 1j * pt
    S_dag = w * c * qz - 1j * c * pz
    T_dag = w * qt - 1j * pt
    pref = c * w / math.sqrt(2 * (lam_p + hbar) * w)
    return LocalLadderPair(pref * tensor(S, Tt), pref * tensor(S_dag, T_dag), lam_p, hbar,
                           pref, S, Tt, (qz, pz, qt, pt))


def product_hamiltonian(pair: LocalLadderPair, mode: ModeSpec) -> Operator:
    """Product of the two one-mode oscillator energies, scaled to unit vacuum value."""
    qz, pz, qt, pt = pair.quadratures
    w = mode.omega
    Hz = 0.5 * (pz @ pz + w**2 * (qz @ qz))
    Ht = 0.5 * (pt @ pt + w**2 * (qt @ qt))
    H = tensor(Hz, Ht)
    return H / H.matrix[0, 0].real


def _fro(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))


def local_commutator_check(pair: LocalLadderPair, mode: ModeSpec,
                           tolerance: float = 1e-12) -> VerificationReport:
    """Measure ``C = [a(z,t), a^+(z,t)]`` against the proposed closed forms.

    Distances are Frobenius norms on the block where both occupations stay
    below their cutoffs.  The density operator in the second comparison is
    :func:`product_hamiltonian`, one possible reading of the mode's
    Hamiltonian density.
    """
    C = pair.a @ pair.a_dag - pair.a_dag @ pair.a
    idx = lower_block_indices(C.dims)
    lb = C.matrix[np.ix_(idx, idx)]
    gain = 1j * (pair.lambda0_prime + pair.hbar)
    ident = np.eye(len(idx))
    Hd = product_hamiltonian(pair, mode).matrix[np.ix_(idx, idx)]
    to_identity = lb - gain * ident
    to_density = lb - gain * Hd
    # best complex multiple of the density operator
    s = np.vdot(Hd, lb) / np.vdot(Hd, Hd)
    residual_prop = _fro(lb - s * Hd) / _fro(lb)
    return VerificationReport(
        name="local-commutator",
        scheme=f"space(lambda0'={pair.lambda0_prime!r}) x time(hbar={pair.hbar!r})",
        inputs={"mode": mode.alpha, "dims": list(C.dims)},
        residuals={
            "hermiticity": C.hermiticity_error(),
            "trace": float(np.trace(C.matrix).real),
            "trace_imag": float(np.trace(C.matrix).imag),
            "lower_block_trace": float(np.trace(lb).real),
            "distance_to_constant_form": _fro(to_identity),
            "relative_distance_to_constant_form": _fro(to_identity) / _fro(gain * ident),
            "distance_to_density_form": _fro(to_density),
            "relative_distance_to_density_form": _fro(to_density) / _fro(gain * Hd),
            "best_density_multiple_re": float(s.real),
            "best_density_multiple_im": float(s.imag),
            "best_density_multiple_relative_residual": residual_prop,
            "lower_block_norm": _fro(lb),
        },
        checked=("hermiticity",),
        tolerance=tolerance,
        assertable=False,
        notes=[
            "measurement only: the commutator is compared with i*(lambda0'+hbar)*I and "
            "with i*(lambda0'+hbar) times the unit-vacuum product Hamiltonian; neither "
            "is asserted",
            "the commutator of any operator with its adjoint is Hermitian, while both "
            "closed forms are i times a Hermitian operator",
        ],
    )
