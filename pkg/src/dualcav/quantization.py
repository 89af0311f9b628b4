"""Canonical quantization of the cavity modes.

Two schemes share one construction:

* time scheme: quadratures ``q, p`` per mode with constant ``hbar`` and mass ``m``;
* space scheme: quadratures ``q'', p''`` indexed by ``z`` with constant
  ``lambda0`` and unit mass.

Quadratures are built from ladder operators as

    q = sqrt(K / (2 m w)) (a^+ + a),    p = i sqrt(K m w / 2) (a^+ - a)

with ``K`` the scheme constant.  In this realisation ``[p, q] = -i K`` on the
part of the truncated space that the cutoff does not touch; reports record
that sign next to the deviation from ``+i K``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import fock
from .cavity import CavityConfig, ModeSpec
from .classical import FieldFrame, SpatialProfile, _check_grid
from .fock import Operator, annihilation, commutator, embed, identity
from .quadrature import composite_gauss
from .report import VerificationReport

__all__ = [
    "SchemeKind",
    "QuantizationScheme",
    "QuadraturePair",
    "FieldOperatorFrame",
    "CCR_SIGN",
    "quadratures_from_ladder",
    "ladder_from_quadratures",
    "heisenberg_evolve",
    "spatial_evolve",
    "mode_ladders",
    "field_ops_sol1",
    "field_ops_sol2",
    "field_ops_combined",
    "field_ops_space",
    "hamiltonian_operator",
    "number_form",
    "fields_space_scheme",
    "GValue",
    "g_of_z_classical",
    "GOperator",
    "g_operator",
    "ccr_report",
]

# sign s in [p, q] = s * i * K for the ladder realisation above
CCR_SIGN = -1


class SchemeKind(str, enum.Enum):
    TIME = "time"
    SPACE = "space"


@dataclass(frozen=True)
class QuantizationScheme:
    kind: SchemeKind = SchemeKind.TIME
    hbar: float = 1.0
    lambda0: float = 1.0
    cutoff: int = fock.DEFAULT_CUTOFF

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind(self.kind))
        for name in ("hbar", "lambda0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value!r}")
        fock.FockSpace(self.cutoff)

    @classmethod
    def time(cls, hbar: float = 1.0, cutoff: int = fock.DEFAULT_CUTOFF) -> "QuantizationScheme":
        return cls(SchemeKind.TIME, hbar=hbar, cutoff=cutoff)

    @classmethod
    def space(cls, lambda0: float = 1.0, cutoff: int = fock.DEFAULT_CUTOFF) -> "QuantizationScheme":
        return cls(SchemeKind.SPACE, lambda0=lambda0, cutoff=cutoff)

    @property
    def quantum(self) -> float:
        """``hbar`` for the time scheme, ``lambda0`` for the space scheme."""
        return self.hbar if self.kind is SchemeKind.TIME else self.lambda0

    @property
    def label(self) -> str:
        return f"{self.kind.value}(quantum={self.quantum!r}, cutoff={self.cutoff})"

    def mass(self, mode: ModeSpec) -> float:
        return mode.m if self.kind is SchemeKind.TIME else 1.0


class QuadraturePair(NamedTuple):
    q: Operator
    p: Operator


@dataclass(frozen=True)
class FieldOperatorFrame:
    """Field operators ``E(z_j)`` and ``H(z_j)`` at one time (or position label)."""

    z: np.ndarray
    t: float
    E: list
    H: list
    scheme: str
    dims: tuple
    notes: list = field(default_factory=list)

    def hermiticity_error(self) -> float:
        return max(op.hermiticity_error() for op in self.E + self.H)


def quadratures_from_ladder(mode: ModeSpec, scheme: QuantizationScheme,
                            a: Optional[Operator] = None) -> QuadraturePair:
    """Hermitian pair from a ladder operator (default: the bare one-mode ``a``)."""
    a = annihilation(scheme.cutoff) if a is None else a
    K, m, w = scheme.quantum, scheme.mass(mode), mode.omega
    ad = a.dag()
    q = math.sqrt(K / (2 * m * w)) * (ad + a)
    p = 1j * math.sqrt(K * m * w / 2) * (ad - a)
    return QuadraturePair(q, p)


def ladder_from_quadratures(pair: QuadraturePair, mode: ModeSpec,
                            scheme: QuantizationScheme) -> tuple[Operator, Operator]:
    """``a = (m w q + i p) / sqrt(2 K m w)`` and ``a^+ = (m w q - i p) / sqrt(2 K m w)``."""
    K, m, w = scheme.quantum, scheme.mass(mode), mode.omega
    norm = 1.0 / math.sqrt(2 * K * m * w)
    a = norm * (m * w * pair.q + 1j * pair.p)
    ad = norm * (m * w * pair.q - 1j * pair.p)
    return a, ad


def heisenberg_evolve(a: Operator, mode: ModeSpec, t: float) -> Operator:
    """Free evolution ``a(t) = a exp(-i w t)``; its adjoint picks up ``exp(+i w t)``."""
    return a * np.exp(-1j * mode.omega * t)


def spatial_evolve(a: Operator, mode: ModeSpec, z: float) -> Operator:
    """Space-scheme ladder operator at position ``z``: ``a exp(-i k z)``."""
    return a * np.exp(-1j * mode.k * z)


def mode_ladders(n_modes: int, cutoff: int, families: int = 1,
                 limit: int = fock.TENSOR_LIMIT) -> tuple[tuple, list[list[Operator]]]:
    """Annihilators embedded in the product space of ``n_modes * families`` factors.

    Factors are ordered mode by mode; with ``families=2`` each mode owns a
    ``d x d`` block holding the first-solution and second-solution ladders.
    Returns ``(dims, ops)`` with ``ops[alpha][family]``.
    """
    dims = (cutoff,) * (n_modes * families)
    a = annihilation(cutoff)
    ops = [[embed(a, alpha * families + f, dims, limit=limit) for f in range(families)]
           for alpha in range(n_modes)]
    return dims, ops


def _field_frame(z, t, coef_E, ops_E, coef_H, ops_H, scheme, dims, notes=()):
    E = [sum((c[j] * op for c, op in zip(coef_E, ops_E)), 0 * ops_E[0]) for j in range(len(z))]
    H = [sum((c[j] * op for c, op in zip(coef_H, ops_H)), 0 * ops_H[0]) for j in range(len(z))]
    return FieldOperatorFrame(np.asarray(z), float(t), E, H, scheme, dims, list(notes))


def _require(scheme: QuantizationScheme, kind: SchemeKind):
    if scheme.kind is not kind:
        raise ValueError(f"{kind.value} scheme required, got {scheme.kind.value}")


def field_ops_sol1(modes: Sequence[ModeSpec], scheme: QuantizationScheme, z, t: float,
                   config: CavityConfig) -> FieldOperatorFrame:
    """``E = sum sqrt(hbar w/(V eps0)) (a^+ + a) sin kz``,
    ``H = i sum sqrt(hbar w/(V mu0)) (a^+ - a) cos kz``."""
    _require(scheme, SchemeKind.TIME)
    z = _check_grid(z, config)
    dims, ladders = mode_ladders(len(modes), scheme.cutoff)
    cE, oE, cH, oH = [], [], [], []
    for mode, (a,) in zip(modes, ladders):
        a_t = heisenberg_evolve(a, mode, t)
        ad_t = a_t.dag()
        cE.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.eps0)) * np.sin(mode.k * z))
        oE.append(ad_t + a_t)
        cH.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.mu0)) * np.cos(mode.k * z))
        oH.append(1j * (ad_t - a_t))
    return _field_frame(z, t, cE, oE, cH, oH, "Sol1", dims)


def field_ops_sol2(modes: Sequence[ModeSpec], scheme: QuantizationScheme, z, t: float,
                   config: CavityConfig) -> FieldOperatorFrame:
    """``E = i sum sqrt(hbar w/(V eps0)) (a''^+ - a'') sin kz``,
    ``H = -sum sqrt(hbar w/(V mu0)) (a''^+ + a'') cos kz``."""
    _require(scheme, SchemeKind.TIME)
    z = _check_grid(z, config)
    dims, ladders = mode_ladders(len(modes), scheme.cutoff)
    cE, oE, cH, oH = [], [], [], []
    for mode, (b,) in zip(modes, ladders):
        b_t = heisenberg_evolve(b, mode, t)
        bd_t = b_t.dag()
        cE.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.eps0)) * np.sin(mode.k * z))
        oE.append(1j * (bd_t - b_t))
        cH.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.mu0)) * np.cos(mode.k * z))
        oH.append(-(bd_t + b_t))
    return _field_frame(z, t, cE, oE, cH, oH, "Sol2", dims)


def field_ops_combined(modes: Sequence[ModeSpec], scheme: QuantizationScheme, z, t: float,
                       config: CavityConfig) -> FieldOperatorFrame:
    """Complex field operators built from both ladder families.

    ``E = sum sqrt(hbar w/(V eps0)) {(a^+ + a) + (a'' - a''^+)} sin kz`` and
    ``H = sum sqrt(hbar w/(V mu0)) {(a^+ - a) - (a'' + a''^+)} cos kz``, with
    ``a`` and ``a''`` on separate tensor factors.  These operators are normal
    but not Hermitian: ``E = E1 + i E2`` and ``H = H2 - i H1`` in terms of the
    single-family field operators.
    """
    _require(scheme, SchemeKind.TIME)
    z = _check_grid(z, config)
    dims, ladders = mode_ladders(len(modes), scheme.cutoff, families=2)
    cE, oE, cH, oH = [], [], [], []
    for mode, (a, b) in zip(modes, ladders):
        a_t, b_t = heisenberg_evolve(a, mode, t), heisenberg_evolve(b, mode, t)
        ad_t, bd_t = a_t.dag(), b_t.dag()
        cE.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.eps0)) * np.sin(mode.k * z))
        oE.append((ad_t + a_t) + (b_t - bd_t))
        cH.append(math.sqrt(scheme.hbar * mode.omega / (config.V * config.mu0)) * np.cos(mode.k * z))
        oH.append((ad_t - a_t) - (b_t + bd_t))
    return _field_frame(z, t, cE, oE, cH, oH, "Combined", dims,
                        notes=["complex combination: operators are normal, not Hermitian"])


def field_ops_space(modes: Sequence[ModeSpec], scheme: QuantizationScheme, z, t: float,
                    config: CavityConfig) -> FieldOperatorFrame:
    """Space-scheme field operators.

    ``E = i sum A' sqrt(l0/(2w)) sin(wt) (a''^+(z) - a''(z))`` and
    ``H = sum A' sqrt(l0/(2w)) cos(wt) (a''(z) + a''^+(z))``.
    """
    _require(scheme, SchemeKind.SPACE)
    z = _check_grid(z, config)
    dims, ladders = mode_ladders(len(modes), scheme.cutoff)
    E, H = [], []
    for zj in z:
        Ej = Hj = 0 * ladders[0][0]
        for mode, (b,) in zip(modes, ladders):
            b_z = spatial_evolve(b, mode, zj)
            bd_z = b_z.dag()
            scale = mode.A_space * math.sqrt(scheme.lambda0 / (2 * mode.omega))
            Ej = Ej + (1j * scale * math.sin(mode.omega * t)) * (bd_z - b_z)
            Hj = Hj + (scale * math.cos(mode.omega * t)) * (b_z + bd_z)
        E.append(Ej)
        H.append(Hj)
    return FieldOperatorFrame(z, float(t), E, H, "SpaceScheme", dims)


def hamiltonian_operator(modes: Sequence[ModeSpec], scheme: QuantizationScheme,
                         cutoff: Optional[int] = None) -> Operator:
    """``sum (p^2 / m + m w^2 q^2) / 2`` on the product of one factor per mode."""
    d = scheme.cutoff if cutoff is None else cutoff
    sch = QuantizationScheme(scheme.kind, scheme.hbar, scheme.lambda0, d)
    dims, ladders = mode_ladders(len(modes), d)
    total = 0 * identity(dims)
    for mode, (a,) in zip(modes, ladders):
        q, p = quadratures_from_ladder(mode, sch, a)
        m = sch.mass(mode)
        total = total + 0.5 * (p @ p / m + m * mode.omega**2 * (q @ q))
    return total


def number_form(modes: Sequence[ModeSpec], scheme: QuantizationScheme,
                cutoff: Optional[int] = None) -> Operator:
    """``sum K w (n + 1/2)`` on the same product space."""
    d = scheme.cutoff if cutoff is None else cutoff
    dims, ladders = mode_ladders(len(modes), d)
    total = 0 * identity(dims)
    for mode, (a,) in zip(modes, ladders):
        total = total + scheme.quantum * mode.omega * (a.dag() @ a + 0.5)
    return total


def fields_space_scheme(modes: Sequence[ModeSpec], profiles: Sequence[SpatialProfile], z,
                        t: float, config: CavityConfig) -> FieldFrame:
    """Classical fields ``E = sum A' q(z) sin(wt)``, ``H = -sum A' w q'(z) cos(wt)``.

    ``q'(z)`` is the antiderivative of the profile from ``z = 0``.
    """
    z = _check_grid(z, config)
    if len(profiles) != len(modes):
        raise ValueError("need one spatial profile per mode")
    modal_E = np.array([m.A_space * p.value(z) * math.sin(m.omega * t)
                        for m, p in zip(modes, profiles)])
    modal_H = np.array([-m.A_space * m.omega * p.antiderivative(z) * math.cos(m.omega * t)
                        for m, p in zip(modes, profiles)])
    return FieldFrame(z, float(t), modal_E.sum(axis=0), modal_H.sum(axis=0), "SpaceScheme",
                      config.unit_system, modal_E, modal_H)


class GValue(NamedTuple):
    by_time_quadrature: float
    closed_form: float
    cross_terms: float
    orthogonal_window: bool


def g_of_z_classical(modes: Sequence[ModeSpec], profiles: Sequence[SpatialProfile], z: float,
                     config: CavityConfig, panels: int = 64, order: int = 16) -> GValue:
    """``G(z) = 1/2 int_0^T (E^2 + H^2) d tau`` two ways.

    The closed form ``1/2 sum w^2 [q(z)^2 + w^2 q'(z)^2]`` is exact when every
    ``w T`` is a multiple of ``2 pi``; ``orthogonal_window`` is False otherwise.
    ``cross_terms`` is the time integral of the mode-mixing products.
    """
    if len(profiles) != len(modes):
        raise ValueError("need one spatial profile per mode")
    T = config.T
    qz = np.array([float(p.value(z)) for p in profiles])
    Qz = np.array([float(p.antiderivative(z)) for p in profiles])
    A = np.array([m.A_space for m in modes])
    w = np.array([m.omega for m in modes])

    def modal(tau):
        e = (A * qz)[:, None] * np.sin(w[:, None] * tau[None, :])
        h = -(A * w * Qz)[:, None] * np.cos(w[:, None] * tau[None, :])
        return e, h

    def integrand(tau):
        e, h = modal(tau)
        return 0.5 * (e.sum(axis=0) ** 2 + h.sum(axis=0) ** 2)

    def cross(tau):
        e, h = modal(tau)
        total = np.zeros_like(tau)
        for i, j in combinations(range(len(modes)), 2):
            total += e[i] * e[j] + h[i] * h[j]
        return total

    quad = float(composite_gauss(integrand, 0.0, T, panels, order))
    cross_val = float(composite_gauss(cross, 0.0, T, panels, order)) if len(modes) > 1 else 0.0
    closed = float(0.5 * np.sum(w**2 * (qz**2 + w**2 * Qz**2)))
    return GValue(quad, closed, cross_val, config.orthogonal_window)


class GOperator(NamedTuple):
    operator: Operator
    number_form: Operator
    lower_block_distance: float


def g_operator(modes: Sequence[ModeSpec], scheme: QuantizationScheme, z: float = 0.0,
               cutoff: Optional[int] = None) -> GOperator:
    """``G = 1/2 sum (p''^2 + w^2 q''^2)`` and its distance from ``sum l0 w (n + 1/2)``.

    The quadratures at ``z`` differ from those at ``z = 0`` by a phase on the
    ladder operators, which leaves ``G`` unchanged.
    """
    _require(scheme, SchemeKind.SPACE)
    d = scheme.cutoff if cutoff is None else cutoff
    sch = QuantizationScheme(scheme.kind, scheme.hbar, scheme.lambda0, d)
    dims, ladders = mode_ladders(len(modes), d)
    G = 0 * identity(dims)
    for mode, (b,) in zip(modes, ladders):
        q, p = quadratures_from_ladder(mode, sch, spatial_evolve(b, mode, z))
        G = G + 0.5 * (p @ p + mode.omega**2 * (q @ q))
    N = number_form(modes, sch, d)
    dist = float(np.max(np.abs(G.lower_block() - N.lower_block())))
    return GOperator(G, N, dist)


def ccr_report(scheme: QuantizationScheme, modes: Sequence[ModeSpec],
               tolerance: float = 1e-12) -> VerificationReport:
    """Canonical commutators for every mode pair.

    Same-mode pairs live on one factor of size ``cutoff``; distinct modes are
    placed on a two-factor product, which is exact because other factors
    enter as identities.
    """
    d, K = scheme.cutoff, scheme.quantum
    target = CCR_SIGN * 1j * K
    same_dev, corner_err, qq_pp, literal_dev = 0.0, 0.0, 0.0, 0.0
    for mode in modes:
        q, p = quadratures_from_ladder(mode, scheme)
        C = commutator(p, q)
        lb = C.lower_block()
        same_dev = max(same_dev, float(np.max(np.abs(lb - target * np.eye(d - 1)))))
        literal_dev = max(literal_dev, float(np.max(np.abs(lb - 1j * K * np.eye(d - 1)))))
        corner_err = max(corner_err, abs(C.matrix[d - 1, d - 1] - target * (-(d - 1))))
        qq_pp = max(qq_pp, float(np.max(np.abs(commutator(q, q).matrix))),
                    float(np.max(np.abs(commutator(p, p).matrix))))
    cross = 0.0
    if len(modes) > 1:
        dims = (d, d)
        a1, a2 = embed(annihilation(d), 0, dims), embed(annihilation(d), 1, dims)
        for m1, m2 in combinations(modes, 2):
            q1, p1 = quadratures_from_ladder(m1, scheme, a1)
            q2, p2 = quadratures_from_ladder(m2, scheme, a2)
            for X, Y in ((p1, q2), (p2, q1), (q1, q2), (p1, p2)):
                cross = max(cross, float(np.max(np.abs(commutator(X, Y).matrix))))
    sign = "-" if CCR_SIGN < 0 else "+"
    return VerificationReport(
        name="ccr" if scheme.kind is SchemeKind.TIME else "ccr-space",
        scheme=scheme.label,
        inputs={"modes": [m.alpha for m in modes], "cutoff": d, "quantum": K},
        residuals={
            "same_mode_lower_block": same_dev,
            "corner_truncation": corner_err,
            "cross_mode": cross,
            "same_mode_qq_pp": qq_pp,
            "deviation_from_plus_i_quantum": literal_dev,
        },
        checked=("same_mode_lower_block", "corner_truncation", "cross_mode", "same_mode_qq_pp"),
        tolerance=tolerance,
        notes=[
            f"sign convention: ladder-built quadratures give [p, q] = {sign}i*{K!r} "
            "on the lower block",
            "deviation_from_plus_i_quantum measures the distance to [p, q] = +i*quantum; "
            "it equals 2*quantum for this realisation and is informational",
            f"corner element target: {sign}i*quantum*(-(cutoff-1))",
        ],
    )
