"""Classical standing-wave solutions of the free 1-D Maxwell field.

Two partial solutions are built from the same mode amplitudes ``q(t)``:

* ``Sol1``: ``Ex = sum A q sin(kz)``, ``Hy = sum (eps0 A / k) dq/dt cos(kz)``
* ``Sol2``: ``Ex = sum A dq'/dt sin(kz)``, ``Hy = -(1/mu0) sum k A q' cos(kz)``

where ``q'(t)`` is the antiderivative of ``q`` with ``q'(0) = 0``.  The
module also provides the duality rotation, oscillator Hamiltonians and a
central-difference Maxwell residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .cavity import CavityConfig, ModeSpec, UnitSystem
from .quadrature import composite_gauss

__all__ = [
    "TimeAmplitude",
    "SpatialProfile",
    "FieldFrame",
    "HamiltonianValue",
    "MaxwellResidual",
    "q_of_t",
    "verify_oscillator_ode",
    "fields_sol1",
    "fields_sol2",
    "f_alpha_integrand",
    "f_alpha",
    "duality_rotate",
    "maxwell_residual",
    "duality_rotate_polarized",
    "maxwell_residual_polarized",
    "hamiltonian_sol1",
    "hamiltonian_sol2",
    "combine_complex",
    "energy_density",
]

_GRID_SLACK = 1e-12


@dataclass(frozen=True)
class TimeAmplitude:
    """Mode amplitude ``q(t) = C1 exp(i w t) + C2 exp(-i w t)``."""

    C1: complex
    C2: complex
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        object.__setattr__(self, "C1", complex(self.C1))
        object.__setattr__(self, "C2", complex(self.C2))

    @classmethod
    def cosine(cls, amplitude: float, omega: float) -> "TimeAmplitude":
        """``q(t) = amplitude * cos(omega t)``."""
        return cls(amplitude / 2, amplitude / 2, omega)

    @classmethod
    def real(cls, C1: complex, omega: float) -> "TimeAmplitude":
        return cls(C1, np.conj(C1), omega)

    @property
    def is_real(self) -> bool:
        scale = max(abs(self.C1), abs(self.C2), 1.0)
        return abs(self.C2 - self.C1.conjugate()) <= 1e-14 * scale

    def value(self, t):
        t = np.asarray(t, dtype=float)
        w = self.omega
        return self.C1 * np.exp(1j * w * t) + self.C2 * np.exp(-1j * w * t)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        w = self.omega
        return 1j * w * (self.C1 * np.exp(1j * w * t) - self.C2 * np.exp(-1j * w * t))

    def second_derivative(self, t):
        return -self.omega**2 * self.value(t)

    def antiderivative(self, t):
        """``int_0^t q(tau) d tau`` in closed form."""
        t = np.asarray(t, dtype=float)
        w = self.omega
        # (exp(i w t) - 1) / (i w) written via expm1 for small w t
        return (self.C1 * np.expm1(1j * w * t) - self.C2 * np.expm1(-1j * w * t)) / (1j * w)

    def scaled(self, factor: complex) -> "TimeAmplitude":
        return TimeAmplitude(self.C1 * factor, self.C2 * factor, self.omega)


@dataclass(frozen=True)
class SpatialProfile:
    """Spatial mode function ``q(z)`` with its antiderivative from ``z = 0``."""

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    antiderivative: Callable[[np.ndarray], np.ndarray]
    derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None
    harmonic: bool = False

    @classmethod
    def sine(cls, k: float) -> "SpatialProfile":
        return cls(
            name=f"sin({k:.6g} z)",
            value=lambda z: np.sin(k * np.asarray(z, dtype=float)),
            # (1 - cos kz) / k without cancellation near z = 0
            antiderivative=lambda z: 2.0 * np.sin(0.5 * k * np.asarray(z, dtype=float)) ** 2 / k,
            derivative=lambda z: k * np.cos(k * np.asarray(z, dtype=float)),
            harmonic=True,
        )

    @classmethod
    def cosine(cls, k: float) -> "SpatialProfile":
        return cls(
            name=f"cos({k:.6g} z)",
            value=lambda z: np.cos(k * np.asarray(z, dtype=float)),
            antiderivative=lambda z: np.sin(k * np.asarray(z, dtype=float)) / k,
            derivative=lambda z: -k * np.sin(k * np.asarray(z, dtype=float)),
            harmonic=True,
        )

    @classmethod
    def named(cls, kind: str, k: float) -> "SpatialProfile":
        try:
            return {"sine": cls.sine, "cosine": cls.cosine}[kind](k)
        except KeyError:
            raise ValueError(f"unknown spatial profile {kind!r}") from None

    def consistency_error(self, z_samples, h: float = 1e-5) -> float:
        """Max |d/dz antiderivative - value| by central differences."""
        z = np.asarray(z_samples, dtype=float)
        fd = (self.antiderivative(z + h) - self.antiderivative(z - h)) / (2 * h)
        return float(np.max(np.abs(fd - self.value(z))))


@dataclass(frozen=True)
class FieldFrame:
    """``Ex`` and ``Hy`` sampled on a z-grid at one instant.

    ``modal_Ex``/``modal_Hy`` optionally hold per-mode contributions with
    shape ``(n_modes, n_z)``; their sum over modes is ``Ex``/``Hy``.
    """

    z: np.ndarray
    t: float
    Ex: np.ndarray
    Hy: np.ndarray
    kind: str
    units: UnitSystem = UnitSystem.GAUSSIAN_NATURAL
    modal_Ex: Optional[np.ndarray] = field(default=None, repr=False)
    modal_Hy: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        if z.ndim != 1 or z.size < 1:
            raise ValueError("z grid must be a non-empty 1-D array")
        if np.any(np.diff(z) <= 0):
            raise ValueError("z grid must be strictly increasing")
        Ex, Hy = np.asarray(self.Ex), np.asarray(self.Hy)
        if Ex.shape != z.shape or Hy.shape != z.shape:
            raise ValueError("Ex and Hy must have the same length as the z grid")
        if not (np.all(np.isfinite(Ex)) and np.all(np.isfinite(Hy))):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "Ex", Ex)
        object.__setattr__(self, "Hy", Hy)
        object.__setattr__(self, "units", UnitSystem(self.units))

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.Ex) or np.iscomplexobj(self.Hy)


class HamiltonianValue(NamedTuple):
    by_field_integral: float
    by_oscillator_sum: float
    per_mode: list  # (q-term, p-term) per mode
    canonical_sum: Optional[float] = None

    @property
    def relative_gap(self) -> float:
        scale = max(abs(self.by_oscillator_sum), np.finfo(float).tiny)
        return abs(self.by_field_integral - self.by_oscillator_sum) / scale


class MaxwellResidual(NamedTuple):
    faraday: float
    ampere: float
    # max over nodes of sqrt(faraday^2 + ampere^2); invariant under duality rotation
    combined: float


def q_of_t(amp: TimeAmplitude, t):
    return amp.value(t)


def verify_oscillator_ode(amp: TimeAmplitude, t_samples,
                          omega: Optional[float] = None) -> float:
    """Max ``|q'' + omega^2 q|`` over ``t_samples``.

    ``omega`` defaults to the amplitude's own frequency; passing a different
    value checks the amplitude against a mismatched oscillator.
    """
    t = np.atleast_1d(np.asarray(t_samples, dtype=float))
    if t.size == 0:
        raise ValueError("t_samples must be non-empty")
    w = amp.omega if omega is None else omega
    # closed-form second derivative, independent of the ODE frequency
    qdd = -amp.omega**2 * amp.value(t)
    return float(np.max(np.abs(qdd + w**2 * amp.value(t))))


def _check_grid(z, config: CavityConfig) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    slack = _GRID_SLACK * config.L
    if z.ndim != 1 or z.size == 0:
        raise ValueError("z grid must be a non-empty 1-D array")
    if z.min() < -slack or z.max() > config.L + slack:
        raise ValueError(f"z grid leaves the cavity [0, {config.L}]")
    return z


def _check_amps(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude],
                allow_complex: bool) -> None:
    if len(modes) != len(amps):
        raise ValueError("need exactly one amplitude per mode")
    for mode, amp in zip(modes, amps):
        if not math.isclose(mode.omega, amp.omega, rel_tol=1e-12):
            raise ValueError(f"amplitude frequency does not match mode {mode.alpha}")
        if not allow_complex and not amp.is_real:
            raise ValueError("real fields need C2 = conj(C1); pass allow_complex=True")


def _finish(values, allow_complex):
    return values if allow_complex else values.real


def fields_sol1(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude], z, t: float,
                config: CavityConfig, allow_complex: bool = False) -> FieldFrame:
    z = _check_grid(z, config)
    _check_amps(modes, amps, allow_complex)
    modal_E, modal_H = [], []
    for mode, amp in zip(modes, amps):
        modal_E.append(mode.A * amp.value(t) * np.sin(mode.k * z))
        modal_H.append(config.eps0 * mode.A / mode.k * amp.derivative(t) * np.cos(mode.k * z))
    modal_E = _finish(np.array(modal_E), allow_complex)
    modal_H = _finish(np.array(modal_H), allow_complex)
    return FieldFrame(z, float(t), modal_E.sum(axis=0), modal_H.sum(axis=0), "Sol1",
                      config.unit_system, modal_E, modal_H)


def fields_sol2(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude], z, t: float,
                config: CavityConfig, allow_complex: bool = False) -> FieldFrame:
    """Antiderivative-built solution.

    ``dq'/dt`` equals ``q`` identically, so ``Ex`` coincides with the first
    solution's ``Ex``.  ``q'`` starts from zero at ``t = 0``; amplitudes with
    ``C1 != C2`` therefore carry a static offset in ``Hy``.
    """
    z = _check_grid(z, config)
    _check_amps(modes, amps, allow_complex)
    modal_E, modal_H = [], []
    for mode, amp in zip(modes, amps):
        modal_E.append(mode.A * amp.value(t) * np.sin(mode.k * z))
        modal_H.append(-mode.k * mode.A / config.mu0 * amp.antiderivative(t)
                       * np.cos(mode.k * z))
    modal_E = _finish(np.array(modal_E), allow_complex)
    modal_H = _finish(np.array(modal_H), allow_complex)
    return FieldFrame(z, float(t), modal_E.sum(axis=0), modal_H.sum(axis=0), "Sol2",
                      config.unit_system, modal_E, modal_H)


def f_alpha_integrand(mode: ModeSpec, amp: TimeAmplitude, z, t, config: CavityConfig):
    """Integrand whose time integral is the free function ``f_alpha(t)`` in ``Hy``."""
    bracket = (-amp.value(t) * mode.k / config.mu0
               - amp.second_derivative(t) * config.eps0 / mode.k)
    return mode.A * np.cos(mode.k * np.asarray(z, dtype=float)) * bracket


def f_alpha(mode: ModeSpec, amp: TimeAmplitude, z: float, t: float,
            config: CavityConfig) -> complex:
    """``f_alpha(t) = int_0^t integrand d tau`` by composite Gauss-Legendre.

    Four panels per half oscillation keep the rule exact to rounding for the
    trigonometric integrand.
    """
    if t == 0:
        return 0j
    panels = max(4, 4 * math.ceil(mode.omega * abs(t) / math.pi))
    return complex(composite_gauss(lambda tau: f_alpha_integrand(mode, amp, z, tau, config),
                                   0.0, t, panels, 16))


def duality_rotate(frame: FieldFrame, theta: float) -> FieldFrame:
    """``E -> E cos(theta) + H sin(theta)``, ``H -> H cos(theta) - E sin(theta)``.

    Componentwise on the stored scalars.  Energy densities are unchanged, but
    the scalar result is not a solution of the 1-D curl equations for
    ``0 < |theta| < pi``; see :func:`duality_rotate_polarized`.
    """
    c, s = math.cos(theta), math.sin(theta)
    modal_E = modal_H = None
    if frame.modal_Ex is not None and frame.modal_Hy is not None:
        modal_E = frame.modal_Ex * c + frame.modal_Hy * s
        modal_H = frame.modal_Hy * c - frame.modal_Ex * s
    return FieldFrame(frame.z, frame.t, frame.Ex * c + frame.Hy * s,
                      frame.Hy * c - frame.Ex * s, f"DualRotated({theta!r})",
                      frame.units, modal_E, modal_H)


def _uniform_step(x: np.ndarray, what: str) -> float:
    steps = np.diff(x)
    h = steps.mean()
    if np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise ValueError(f"{what} sampling must be uniform")
    return float(h)


def _residual_fields(frames: Sequence[FieldFrame], config: CavityConfig):
    """Pointwise ``(ampere, faraday)`` central-difference arrays on interior nodes."""
    if len(frames) < 3:
        raise ValueError("need at least three time frames")
    z = frames[0].z
    if z.size < 3:
        raise ValueError("need at least three grid points")
    for fr in frames[1:]:
        if fr.z.shape != z.shape or np.any(fr.z != z):
            raise ValueError("all frames must share one z grid")
    t = np.array([fr.t for fr in frames])
    if np.any(np.diff(t) <= 0):
        raise ValueError("frames must be time-ordered")
    dt = _uniform_step(t, "time")
    dz = _uniform_step(z, "space")
    E = np.array([fr.Ex for fr in frames])
    H = np.array([fr.Hy for fr in frames])
    dE_dt = (E[2:, 1:-1] - E[:-2, 1:-1]) / (2 * dt)
    dH_dt = (H[2:, 1:-1] - H[:-2, 1:-1]) / (2 * dt)
    dE_dz = (E[1:-1, 2:] - E[1:-1, :-2]) / (2 * dz)
    dH_dz = (H[1:-1, 2:] - H[1:-1, :-2]) / (2 * dz)
    return config.eps0 * dE_dt + dH_dz, dE_dz + config.mu0 * dH_dt


def maxwell_residual(frames: Sequence[FieldFrame], config: CavityConfig) -> MaxwellResidual:
    """Central-difference residuals of the two 1-D curl equations.

    ``ampere = max |eps0 dE/dt + dH/dz|`` and
    ``faraday = max |dE/dz + mu0 dH/dt|`` over interior space-time nodes;
    ``combined`` is the largest pointwise ``sqrt(ampere^2 + faraday^2)``.
    """
    ampere, faraday = _residual_fields(frames, config)
    combined = np.sqrt(np.abs(ampere) ** 2 + np.abs(faraday) ** 2)
    return MaxwellResidual(float(np.max(np.abs(faraday))), float(np.max(np.abs(ampere))),
                           float(np.max(combined)))


def duality_rotate_polarized(frame: FieldFrame, theta: float) -> tuple[FieldFrame, FieldFrame]:
    """Duality rotation of the vector field ``(E_x, H_y)``.

    The rotation carries part of the field into the crossed polarization
    ``(E_y, H_x) = (H sin(theta), -E sin(theta))``.  The second frame stores
    that part as ``(E_y, -H_x)``, which obeys the same pair of 1-D curl
    equations as ``(E_x, H_y)``.
    """
    c, s = math.cos(theta), math.sin(theta)
    along = FieldFrame(frame.z, frame.t, frame.Ex * c, frame.Hy * c,
                       f"DualRotated({theta!r})", frame.units)
    crossed = FieldFrame(frame.z, frame.t, frame.Hy * s, frame.Ex * s,
                         f"DualRotated({theta!r}):crossed", frame.units)
    return along, crossed


def maxwell_residual_polarized(along: Sequence[FieldFrame], crossed: Sequence[FieldFrame],
                               config: CavityConfig) -> float:
    """Largest pointwise norm of the four curl-equation residuals of a two-polarization field."""
    a1, f1 = _residual_fields(along, config)
    a2, f2 = _residual_fields(crossed, config)
    total = np.abs(a1) ** 2 + np.abs(f1) ** 2 + np.abs(a2) ** 2 + np.abs(f2) ** 2
    return float(np.max(np.sqrt(total)))


def _require_real(amps):
    for amp in amps:
        if not amp.is_real:
            raise ValueError("Hamiltonians are defined for real fields (C2 = conj(C1))")
    return amps


def hamiltonian_sol1(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude], t: float,
                     config: CavityConfig) -> HamiltonianValue:
    """Field energy of the first solution, two ways.

    The volume integral uses ``int_0^L sin^2(kz) dz = L/2`` (cross terms
    vanish exactly) and a transverse area ``V / L``.
    """
    _check_amps(modes, _require_real(amps), allow_complex=False)
    e_coef, h_coef, per_mode = [], [], []
    for mode, amp in zip(modes, amps):
        q = float(amp.value(t).real)
        qdot = float(amp.derivative(t).real)
        p = mode.m * qdot
        e_coef.append(mode.A * q)
        h_coef.append(config.eps0 * mode.A / mode.k * qdot)
        per_mode.append((0.5 * mode.m * mode.omega**2 * q**2, 0.5 * p**2 / mode.m))
    field_energy = 0.25 * config.V * (config.eps0 * np.sum(np.square(e_coef))
                                      + config.mu0 * np.sum(np.square(h_coef)))
    osc = float(sum(qt + pt for qt, pt in per_mode))
    return HamiltonianValue(float(field_energy), osc, per_mode)


def hamiltonian_sol2(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude], t: float,
                     config: CavityConfig) -> HamiltonianValue:
    """Energy of the second solution.

    ``by_oscillator_sum`` is ``1/2 sum [m w^4 q'^2 + m w^2 (dq'/dt)^2]`` and
    ``canonical_sum`` the same quantity after ``q'' = w q'``,
    ``p'' = m w dq'/dt``: ``1/2 sum [m w^2 q''^2 + p''^2 / m]``.
    """
    _check_amps(modes, _require_real(amps), allow_complex=False)
    e_coef, h_coef, per_mode, canonical = [], [], [], 0.0
    for mode, amp in zip(modes, amps):
        qp = float(amp.antiderivative(t).real)
        qp_dot = float(amp.value(t).real)
        w, m = mode.omega, mode.m
        per_mode.append((0.5 * m * w**4 * qp**2, 0.5 * m * w**2 * qp_dot**2))
        q2, p2 = w * qp, m * w * qp_dot
        canonical += 0.5 * (m * w**2 * q2**2 + p2**2 / m)
        e_coef.append(mode.A * qp_dot)
        h_coef.append(-mode.k * mode.A / config.mu0 * qp)
    field_energy = 0.25 * config.V * (config.eps0 * np.sum(np.square(e_coef))
                                      + config.mu0 * np.sum(np.square(h_coef)))
    osc = float(sum(qt + pt for qt, pt in per_mode))
    return HamiltonianValue(float(field_energy), osc, per_mode, float(canonical))


def combine_complex(frame1: FieldFrame, frame2: FieldFrame) -> FieldFrame:
    """``E = E1 + i E2`` and ``H = H2 + i H1``."""
    if frame1.z.shape != frame2.z.shape or np.any(frame1.z != frame2.z):
        raise ValueError("frames must share one z grid")
    if frame1.t != frame2.t:
        raise ValueError("frames must share one time")
    modal_E = modal_H = None
    if all(a is not None for a in (frame1.modal_Ex, frame1.modal_Hy,
                                   frame2.modal_Ex, frame2.modal_Hy)):
        modal_E = frame1.modal_Ex + 1j * frame2.modal_Ex
        modal_H = frame2.modal_Hy + 1j * frame1.modal_Hy
    return FieldFrame(frame1.z, frame1.t, frame1.Ex + 1j * frame2.Ex,
                      frame2.Hy + 1j * frame1.Hy, "ComplexCombined", frame1.units,
                      modal_E, modal_H)


def energy_density(frame: FieldFrame, config: CavityConfig) -> np.ndarray:
    """Pointwise ``(eps0 |E|^2 + mu0 |H|^2) / 2``."""
    return 0.5 * (config.eps0 * np.abs(frame.Ex) ** 2 + config.mu0 * np.abs(frame.Hy) ** 2)
