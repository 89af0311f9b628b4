"""Named verification checks run by ``dualcav verify``.

Each check takes a :class:`~dualcav.config.ScenarioConfig` and returns a
list of :class:`~dualcav.report.VerificationReport`.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import trapezoid

from . import fock
from .cavity import CavityConfig, ModeSpec, mode_bank
from .classical import (FieldFrame, SpatialProfile, TimeAmplitude, combine_complex,
                        duality_rotate, duality_rotate_polarized, energy_density, f_alpha, f_alpha_integrand,
                        fields_sol1, fields_sol2, hamiltonian_sol1, hamiltonian_sol2,
                        maxwell_residual, maxwell_residual_polarized)
from .config import ScenarioConfig
from .local import (GeneralFieldSpec, energy_density_W, general_fields, local_commutator_check,
                    local_ladder)
from .quadrature import gauss_legendre_nodes
from .quantization import (QuantizationScheme, ccr_report, field_ops_sol1, fields_space_scheme,
                           g_of_z_classical, g_operator, hamiltonian_operator)
from .report import VerificationReport

__all__ = ["CHECKS", "run_checks", "refinement_levels", "convergence_orders",
           "random_amplitudes", "field_energy_by_quadrature", "largest_cutoff"]

FrameBuilder = Callable[[np.ndarray, float], FieldFrame]


def refinement_levels(n0: int, levels: int) -> list[int]:
    """Node counts with the spacing halved at each level: 65, 129, 257, ..."""
    return [(n0 - 1) * 2**j + 1 for j in range(levels)]


def _frames(builder: FrameBuilder, cavity: CavityConfig, n_z: int, n_t: int,
            t_span: tuple[float, float]) -> list[FieldFrame]:
    z = np.linspace(0.0, cavity.L, n_z)
    return [builder(z, t) for t in np.linspace(t_span[0], t_span[1], n_t)]


def convergence_orders(builder: FrameBuilder, cavity: CavityConfig, n_z0: int, n_t0: int,
                       levels: int, t_span: tuple[float, float]):
    """Residuals per level and the smallest observed order for each equation."""
    res = []
    for nz, nt in zip(refinement_levels(n_z0, levels), refinement_levels(n_t0, levels)):
        res.append(maxwell_residual(_frames(builder, cavity, nz, nt, t_span), cavity))
    orders = {}
    for key in ("faraday", "ampere"):
        values = [getattr(r, key) for r in res]
        orders[key] = min(math.log2(a / b) if b > 0 else math.inf
                          for a, b in zip(values[:-1], values[1:]))
    return res, orders


def random_amplitudes(rng: np.random.Generator, modes: Sequence[ModeSpec],
                      with_phase: bool = True) -> list[TimeAmplitude]:
    """Real-field amplitudes with random magnitude and (optionally) phase."""
    amps = []
    for mode in modes:
        r = rng.uniform(0.5, 1.5)
        phi = rng.uniform(0.0, 2 * math.pi) if with_phase else 0.0
        amps.append(TimeAmplitude.real(0.5 * r * np.exp(1j * phi), mode.omega))
    return amps


def field_energy_by_quadrature(builder: FrameBuilder, t: float, cavity: CavityConfig,
                               panels: int = 32, order: int = 16) -> float:
    """``V/L * int_0^L (eps0 E^2 + mu0 H^2)/2 dz`` by composite Gauss-Legendre."""
    nodes, weights = gauss_legendre_nodes(0.0, cavity.L, panels, order)
    frame = builder(nodes, t)
    return float(cavity.V / cavity.L * (energy_density(frame, cavity) @ weights))


def largest_cutoff(n_factors: int, wanted: int, limit: int = fock.TENSOR_LIMIT) -> int:
    d = wanted
    while d > 2 and d**n_factors > limit:
        d -= 1
    return d


def _multi_modes(cfg: ScenarioConfig, cavity: CavityConfig) -> list[ModeSpec]:
    return mode_bank(cfg.section("checks")["multi_modes"], cavity)


def check_maxwell(cfg: ScenarioConfig) -> list[VerificationReport]:
    cav, nat = cfg.cavity, cfg.natural_cavity
    grid = cfg.section("grid")
    modes = cfg.modes(cav)
    amps = cfg.amplitudes(modes)
    nat_modes = cfg.modes(nat)
    nat_amps = cfg.amplitudes(nat_modes)
    general = GeneralFieldSpec(nat_modes, nat_amps, cfg.profiles(nat_modes))
    sine = [SpatialProfile.sine(m.k) for m in nat_modes]
    cosine = [SpatialProfile.cosine(m.k) for m in nat_modes]

    def space_fields(profiles):
        return lambda z, t: fields_space_scheme(nat_modes, profiles, z, t, nat)

    builders = {
        "sol1": (lambda z, t: fields_sol1(modes, amps, z, t, cav), cav),
        "sol2": (lambda z, t: fields_sol2(modes, amps, z, t, cav), cav),
        "combined": (lambda z, t: combine_complex(fields_sol1(modes, amps, z, t, cav),
                                                  fields_sol2(modes, amps, z, t, cav)), cav),
        "general": (lambda z, t: general_fields(general, z, t, nat), nat),
        "space_cosine": (space_fields(cosine), nat),
    }
    residuals, checked = {}, []
    for name, (builder, cavity) in builders.items():
        res, orders = convergence_orders(builder, cavity, grid["n_z"], grid["n_t"],
                                         grid["refinements"], cfg.t_span(cavity))
        for key, value in orders.items():
            residuals[f"order_{name}_{key}"] = value
            checked.append(f"order_{name}_{key}")
        residuals[f"finest_{name}"] = max(res[-1].faraday, res[-1].ampere)
    # sine profiles with antiderivatives from z = 0 leave a uniform Faraday defect
    res, _ = convergence_orders(space_fields(sine), nat, grid["n_z"], grid["n_t"],
                                grid["refinements"], cfg.t_span(nat))
    residuals["space_sine_faraday_finest"] = res[-1].faraday
    residuals["space_sine_faraday_coarsest"] = res[0].faraday
    residuals.update(spatial_parities(modes, amps, cav))
    return [VerificationReport(
        name="maxwell", residuals=residuals, tolerance=cfg.tolerance("maxwell"),
        checked=checked, comparison="min", scheme="central differences",
        inputs={"n_z": refinement_levels(grid["n_z"], grid["refinements"]),
                "n_t": refinement_levels(grid["n_t"], grid["refinements"]),
                "modes": len(modes), "units": cav.unit_system.value},
        notes=["orders are min over successive refinements of log2(residual ratio)",
               "general-form and space-scheme fields are evaluated with eps0 = mu0 = c = 1",
               "space_sine_* are informational: sine profiles do not solve the curl "
               "equations once their antiderivative is taken from z = 0",
               "parity_* are informational: +1 even, -1 odd, 0 neither under z -> L - z",
               f"general-form amplitudes A'' = {[m.A_general for m in nat_modes]} "
               "(normalization not fixed by the model; configurable)"],
    )]


def _parity(z: np.ndarray, values: np.ndarray) -> float:
    mirrored = values[::-1]
    scale = max(float(np.max(np.abs(values))), 1e-300)
    if np.max(np.abs(mirrored - values)) <= 1e-12 * scale:
        return 1.0
    if np.max(np.abs(mirrored + values)) <= 1e-12 * scale:
        return -1.0
    return 0.0


def spatial_parities(modes: Sequence[ModeSpec], amps: Sequence[TimeAmplitude],
                     cavity: CavityConfig, t: float = 0.3) -> dict:
    """Parity of each mode's fields under reflection about the cavity centre."""
    z = np.linspace(0.0, cavity.L, 33)
    out = {}
    for mode, amp in zip(modes, amps):
        for tag, build in (("sol1", fields_sol1), ("sol2", fields_sol2)):
            frame = build([mode], [amp], z, t, cavity)
            out[f"parity_{tag}_E_mode{mode.alpha}"] = _parity(z, frame.Ex)
            out[f"parity_{tag}_H_mode{mode.alpha}"] = _parity(z, frame.Hy)
    return out


def check_energy(cfg: ScenarioConfig) -> list[VerificationReport]:
    cav = cfg.cavity
    chk = cfg.section("checks")
    rng = np.random.default_rng(chk["seed"])
    modes = _multi_modes(cfg, cav)
    period = 2 * cav.L / cav.c
    times = np.linspace(0.0, period, chk["samples"], endpoint=False)

    def spread(fn, amps):
        values = np.array([fn(modes, amps, t, cav).by_oscillator_sum for t in times])
        return float((values.max() - values.min()) / values.mean())

    amps_phase = random_amplitudes(rng, modes, with_phase=True)
    amps_real = random_amplitudes(rng, modes, with_phase=False)
    cfg_modes = cfg.modes(cav)
    cfg_amps = cfg.amplitudes(cfg_modes)
    residuals = {
        "sol1_spread": spread(hamiltonian_sol1, amps_phase),
        "sol2_spread": spread(hamiltonian_sol2, amps_real),
        "sol2_spread_random_phase": spread(hamiltonian_sol2, amps_phase),
    }
    if all(a.is_real for a in cfg_amps):
        def cfg_spread(fn):
            values = np.array([fn(cfg_modes, cfg_amps, t, cav).by_oscillator_sum for t in times])
            return float((values.max() - values.min()) / max(values.mean(), 1e-300))
        residuals["scenario_sol1_spread"] = cfg_spread(hamiltonian_sol1)
        residuals["scenario_sol2_spread"] = cfg_spread(hamiltonian_sol2)
    return [VerificationReport(
        name="energy", residuals=residuals, tolerance=cfg.tolerance("energy"),
        checked=("sol1_spread", "sol2_spread"),
        inputs={"modes": len(modes), "samples": chk["samples"], "seed": chk["seed"]},
        notes=["relative spread (max - min) / mean of the total over one fundamental period",
               "sol2 amplitudes have zero phase; with a phase the antiderivative taken from "
               "t = 0 carries a static offset and sol2_spread_random_phase is informational"],
    )]


def check_hamiltonian(cfg: ScenarioConfig) -> list[VerificationReport]:
    cav = cfg.cavity
    chk = cfg.section("checks")
    rng = np.random.default_rng(chk["seed"] + 1)
    modes = _multi_modes(cfg, cav)
    worst = dict.fromkeys(("sol1_field_vs_oscillator", "sol1_quadrature_vs_oscillator",
                           "sol2_field_vs_oscillator", "sol2_quadrature_vs_oscillator",
                           "sol2_canonical_vs_oscillator"), 0.0)
    for _ in range(chk["random_sets"]):
        amps = random_amplitudes(rng, modes)
        t = rng.uniform(0.0, 2 * cav.L / cav.c)
        for tag, ham, build in (("sol1", hamiltonian_sol1, fields_sol1),
                                ("sol2", hamiltonian_sol2, fields_sol2)):
            h = ham(modes, amps, t, cav)
            oracle = field_energy_by_quadrature(lambda z, tt: build(modes, amps, z, tt, cav), t, cav)
            scale = abs(h.by_oscillator_sum)
            worst[f"{tag}_field_vs_oscillator"] = max(worst[f"{tag}_field_vs_oscillator"],
                                                      h.relative_gap)
            worst[f"{tag}_quadrature_vs_oscillator"] = max(
                worst[f"{tag}_quadrature_vs_oscillator"], abs(oracle - h.by_oscillator_sum) / scale)
            if h.canonical_sum is not None:
                worst["sol2_canonical_vs_oscillator"] = max(
                    worst["sol2_canonical_vs_oscillator"],
                    abs(h.canonical_sum - h.by_oscillator_sum) / scale)
    return [VerificationReport(
        name="hamiltonian", residuals=worst, tolerance=cfg.tolerance("hamiltonian"),
        checked=tuple(worst), inputs={"modes": len(modes), "sets": chk["random_sets"]},
        notes=["quadrature oracle: composite Gauss-Legendre over z of the sampled fields"],
    )]


def check_duality(cfg: ScenarioConfig) -> list[VerificationReport]:
    nat = cfg.natural_cavity
    grid = cfg.section("grid")
    modes = cfg.modes(nat)
    amps = cfg.amplitudes(modes)
    thetas = [float(x) for x in cfg.section("checks")["thetas"]]
    residuals = dict.fromkeys(("residual_shift", "energy_density_shift", "total_energy_shift",
                               "group_law", "full_turn"), 0.0)
    scalar_residual = 0.0
    for tag, build in (("sol1", fields_sol1), ("sol2", fields_sol2)):
        frames = _frames(lambda z, t: build(modes, amps, z, t, nat), nat, grid["n_z"],
                         grid["n_t"], cfg.t_span(nat))
        base = maxwell_residual(frames, nat)
        w0 = [energy_density(f, nat) for f in frames]
        for theta in thetas:
            parts = [duality_rotate_polarized(f, theta) for f in frames]
            res = maxwell_residual_polarized([p[0] for p in parts], [p[1] for p in parts], nat)
            rotated = [duality_rotate(f, theta) for f in frames]
            scalar_residual = max(scalar_residual, maxwell_residual(rotated, nat).combined)
            w1 = [energy_density(f, nat) for f in rotated]
            residuals["residual_shift"] = max(residuals["residual_shift"],
                                              abs(res - base.combined))
            residuals["energy_density_shift"] = max(
                residuals["energy_density_shift"],
                max(float(np.max(np.abs(a - b))) for a, b in zip(w0, w1)))
            residuals["total_energy_shift"] = max(
                residuals["total_energy_shift"],
                max(abs(float(trapezoid(a - b, f.z))) for a, b, f in zip(w0, w1, frames)))
        for f in frames:
            for t1, t2 in zip(thetas, thetas[::-1]):
                two = duality_rotate(duality_rotate(f, t1), t2)
                one = duality_rotate(f, t1 + t2)
                residuals["group_law"] = max(residuals["group_law"],
                                             float(np.max(np.abs(two.Ex - one.Ex))),
                                             float(np.max(np.abs(two.Hy - one.Hy))))
            turn = duality_rotate(f, 2 * math.pi)
            residuals["full_turn"] = max(residuals["full_turn"],
                                         float(np.max(np.abs(turn.Ex - f.Ex))),
                                         float(np.max(np.abs(turn.Hy - f.Hy))))
        swap = [(duality_rotate(f, math.pi / 2), duality_rotate(f, -math.pi / 2), f) for f in frames]
        pattern = max(max(float(np.max(np.abs(p.Ex - f.Hy))), float(np.max(np.abs(p.Hy + f.Ex))),
                          float(np.max(np.abs(m.Ex + f.Hy))), float(np.max(np.abs(m.Hy - f.Ex))))
                      for p, m, f in swap)
        residuals[f"swap_sign_pattern_{tag}"] = pattern
    residuals["scalar_rotation_residual"] = scalar_residual
    return [VerificationReport(
        name="duality", residuals=residuals, tolerance=cfg.tolerance("duality"),
        checked=tuple(k for k in residuals if k != "scalar_rotation_residual"),
        inputs={"thetas": thetas, "modes": len(modes)},
        scheme="eps0 = mu0 = c = 1",
        notes=["the rotated field is kept as a two-polarization vector field; residual_shift "
               "compares the largest pointwise norm of all curl-equation residuals with the "
               "unrotated sqrt(faraday^2 + ampere^2)",
               "scalar_rotation_residual is informational: rotating the stored scalars "
               "componentwise does not give a solution of the 1-D curl equations",
               "swap pattern: theta = +pi/2 maps (E, H) to (H, -E), theta = -pi/2 to (-H, E)"],
    )]


def check_ccr(cfg: ScenarioConfig) -> list[VerificationReport]:
    q = cfg.section("quantization")
    modes = _multi_modes(cfg, cfg.cavity)
    time = QuantizationScheme.time(q["hbar"], q["cutoff"])
    space = QuantizationScheme.space(q["lambda0"], q["cutoff"])
    return [ccr_report(time, modes, cfg.tolerance("ccr")),
            ccr_report(space, modes, cfg.tolerance("ccr-space"))]


def check_vacuum(cfg: ScenarioConfig) -> list[VerificationReport]:
    q = cfg.section("quantization")
    modes = _multi_modes(cfg, cfg.cavity)
    d = largest_cutoff(len(modes), q["cutoff"])
    H = hamiltonian_operator(modes, QuantizationScheme.time(q["hbar"], d))
    G = g_operator(modes, QuantizationScheme.space(q["lambda0"], d)).operator
    e_target = sum(q["hbar"] * m.omega / 2 for m in modes)
    g_target = sum(q["lambda0"] * m.omega / 2 for m in modes)
    vac = fock.basis(H.dims, 0)
    residuals = {
        "hamiltonian_vacuum": abs(fock.expectation(H, vac) - e_target) / e_target,
        "g_vacuum": abs(fock.expectation(G, vac) - g_target) / g_target,
    }
    return [VerificationReport(
        name="vacuum", residuals=residuals, tolerance=cfg.tolerance("vacuum"),
        checked=tuple(residuals), inputs={"modes": len(modes), "cutoff": d},
        notes=["relative errors against sum hbar w / 2 and sum lambda0 w / 2"],
    )]


def coherent_classical_amplitude(mode: ModeSpec, alpha_c: complex, hbar: float) -> TimeAmplitude:
    """Classical amplitude with ``q(t) = sqrt(2 hbar / (m w)) Re(alpha exp(-i w t))``."""
    s = math.sqrt(hbar / (2 * mode.m * mode.omega))
    return TimeAmplitude(s * np.conj(alpha_c), s * alpha_c, mode.omega)


def check_classical_limit(cfg: ScenarioConfig) -> list[VerificationReport]:
    cav = cfg.cavity
    q = cfg.section("quantization")
    n = cfg.section("checks")["limit_grid"]
    alpha_c = cfg.coherent_alpha
    d = q["classical_cutoff"]
    modes = cfg.modes(cav)
    scheme = QuantizationScheme.time(q["hbar"], d)
    psi = fock.coherent_state(alpha_c, d)
    z = np.linspace(0.0, cav.L, n)
    amps = [coherent_classical_amplitude(m, alpha_c, q["hbar"]) for m in modes]
    err_E = err_H = scale = 0.0
    for t in np.linspace(0.0, 2 * cav.L / cav.c, n):
        E = np.zeros(n)
        H = np.zeros(n)
        # product coherent state: the expectation of a sum of one-mode terms is the sum
        for mode in modes:
            ops = field_ops_sol1([mode], scheme, z, t, cav)
            E = E + np.array([fock.expectation(op, psi).real for op in ops.E])
            H = H + np.array([fock.expectation(op, psi).real for op in ops.H])
        classical = fields_sol1(modes, amps, z, t, cav)
        err_E = max(err_E, float(np.max(np.abs(E - classical.Ex))))
        err_H = max(err_H, float(np.max(np.abs(H - classical.Hy))))
        scale = max(scale, float(np.max(np.abs(classical.Ex))))
    return [VerificationReport(
        name="classical-limit", residuals={"sup_E": err_E, "sup_H": err_H, "field_scale": scale},
        tolerance=cfg.tolerance("classical-limit"), checked=("sup_E", "sup_H"),
        inputs={"alpha": alpha_c, "cutoff": d, "grid": [n, n], "modes": len(modes)},
        scheme=scheme.label,
        notes=["ladder operators evolve freely as a exp(-i w t)",
               "classical amplitude q(t) = sqrt(2 hbar / (m w)) Re(alpha exp(-i w t))"],
    )]


def check_g_operator(cfg: ScenarioConfig) -> list[VerificationReport]:
    nat = cfg.natural_cavity
    q = cfg.section("quantization")
    modes = cfg.modes(nat)
    d = largest_cutoff(len(modes), q["cutoff"])
    scheme = QuantizationScheme.space(q["lambda0"], d)
    op_dist = max(g_operator(modes, scheme, z).lower_block_distance
                  for z in np.linspace(0.0, nat.L, 5))
    two = mode_bank(2, nat)
    worst_gap = worst_cross = 0.0
    for kind in ("sine", "cosine"):
        profiles = [SpatialProfile.named(kind, m.k) for m in two]
        for z in np.linspace(0.0, nat.L, 9):
            g = g_of_z_classical(two, profiles, z, nat)
            worst_gap = max(worst_gap, abs(g.by_time_quadrature - g.closed_form)
                            / max(abs(g.closed_form), 1.0))
            worst_cross = max(worst_cross, abs(g.cross_terms))
    residuals = {"operator_identity": op_dist, "classical_paths": worst_gap,
                 "classical_cross_terms": worst_cross}
    return [VerificationReport(
        name="g-operator", residuals=residuals, tolerance=cfg.tolerance("g-operator"),
        checked=tuple(residuals), limits={"classical_paths": 1e-9, "classical_cross_terms": 1e-12},
        scheme=scheme.label, inputs={"modes": len(modes), "cutoff": d,
                                     "window": nat.T, "orthogonal_window": nat.orthogonal_window},
        notes=["operator_identity: max entry of G - sum lambda0 w (n + 1/2) on the block "
               "below every cutoff",
               "space-scheme ladder operators at z are a exp(-i k z)",
               "classical paths use T = 2L/c unless overridden; orthogonal_window records "
               "whether every w T is a multiple of 2 pi"],
    )]


def check_f_alpha(cfg: ScenarioConfig) -> list[VerificationReport]:
    chk = cfg.section("checks")
    residuals = {}
    for tag, cav in (("natural", cfg.natural_cavity), ("scenario", cfg.cavity)):
        modes = _multi_modes(cfg, cav)
        rng = np.random.default_rng(chk["seed"] + 2)
        amps = random_amplitudes(rng, modes)
        t = np.linspace(0.0, 2 * cav.L / cav.c, 401)
        z = np.linspace(0.0, cav.L, 17)
        worst = worst_rel = 0.0
        for mode, amp in zip(modes, amps):
            vals = f_alpha_integrand(mode, amp, z[:, None], t[None, :], cav)
            term = mode.A * np.abs(amp.value(t)) * mode.k / cav.mu0
            worst = max(worst, float(np.max(np.abs(vals))))
            worst_rel = max(worst_rel, float(np.max(np.abs(vals))) / float(np.max(term)))
        residuals[f"{tag}_max_abs"] = worst
        residuals[f"{tag}_max_relative"] = worst_rel
        if tag == "natural":
            residuals["natural_quadrature"] = max(
                abs(f_alpha(m, a, zz, 2 * cav.L / cav.c, cav))
                for m, a in zip(modes, amps) for zz in (0.0, 0.3 * cav.L))
    return [VerificationReport(
        name="f-alpha", residuals=residuals, tolerance=cfg.tolerance("f-alpha"),
        checked=("natural_max_abs", "natural_quadrature", "scenario_max_relative"),
        inputs={"modes": chk["multi_modes"], "t_samples": 401},
        notes=["scenario_max_relative is scaled by the size of the individual terms, "
               "which matters in SI units"],
    )]


def check_local_commutator(cfg: ScenarioConfig) -> list[VerificationReport]:
    cav = cfg.natural_cavity
    q = cfg.section("quantization")
    mode = cfg.modes(cav)[0]
    pair = local_ladder(mode, cav.L / 3, cav.L / (5 * cav.c), q["lambda0"], q["hbar"], cav,
                        q["d_z"], q["d_t"])
    rep = local_commutator_check(pair, mode, cfg.tolerance("local-commutator"))
    rep.inputs.update({"z": cav.L / 3, "t": cav.L / (5 * cav.c)})
    return [rep]


def check_density(cfg: ScenarioConfig) -> list[VerificationReport]:
    nat = cfg.natural_cavity
    chk = cfg.section("checks")
    modes = cfg.modes(nat)
    amps = cfg.amplitudes(modes)
    spec = GeneralFieldSpec(modes, amps, cfg.profiles(modes))
    z = np.linspace(0.0, nat.L, cfg.section("grid")["n_z"])
    min_w, single_cross = 0.0, 0.0
    for t in np.linspace(0.0, 2 * nat.L / nat.c, 17):
        rep = energy_density_W(general_fields(spec, z, t, nat), nat)
        min_w = min(min_w, float(rep.W.min()))
    one = mode_bank(1, nat)
    for t in np.linspace(0.0, 1.0, 5):
        spec1 = GeneralFieldSpec(one, [TimeAmplitude.cosine(1.0, one[0].omega)],
                                 [SpatialProfile.sine(one[0].k)])
        single_cross = max(single_cross, float(np.max(np.abs(
            energy_density_W(general_fields(spec1, z, t, nat), nat).cross))))
    # energy bookkeeping: V/L * int W dz against the oscillator sum
    rng = np.random.default_rng(chk["seed"] + 3)
    multi = _multi_modes(cfg, nat)
    gap = 0.0
    nodes, weights = gauss_legendre_nodes(0.0, nat.L, 32, 16)
    for _ in range(chk["random_sets"]):
        ra = random_amplitudes(rng, multi)
        t = rng.uniform(0.0, 2.0)
        rep = energy_density_W(fields_sol1(multi, ra, nodes, t, nat), nat)
        total = nat.V / nat.L * float(rep.W @ weights)
        h = hamiltonian_sol1(multi, ra, t, nat).by_oscillator_sum
        gap = max(gap, abs(total - h) / h)
    density = VerificationReport(
        name="density", residuals={"negative_W": max(0.0, -min_w), "integral_vs_hamiltonian": gap,
                                   "single_mode_cross": single_cross},
        tolerance=cfg.tolerance("density"),
        checked=("negative_W", "integral_vs_hamiltonian", "single_mode_cross"),
        limits={"negative_W": 0.0 + 1e-300, "single_mode_cross": 1e-300},
        inputs={"modes": len(modes), "sets": chk["random_sets"]},
        notes=[f"general-form amplitudes A'' = {[m.A_general for m in modes]} "
               "(normalization not fixed by the model; configurable)"],
    )
    two = mode_bank(2, nat)
    cross = {}
    for kind in ("cosine", "sine"):
        profiles = [SpatialProfile.named(kind, m.k) for m in two]
        amps2 = random_amplitudes(rng, two)
        spec2 = GeneralFieldSpec(two, amps2, profiles)
        e_int = h_int = 0.0
        for t in np.linspace(0.0, 2.0, 7):
            rep = energy_density_W(general_fields(spec2, nodes, t, nat), nat)
            e_int = max(e_int, abs(float(rep.cross_electric @ weights)))
            h_int = max(h_int, abs(float(rep.cross_magnetic @ weights)))
        cross[f"{kind}_electric_cross_integral"] = e_int
        cross[f"{kind}_magnetic_cross_integral"] = h_int
    density_cross = VerificationReport(
        name="density-cross", residuals=cross, tolerance=cfg.tolerance("density-cross"),
        checked=("cosine_electric_cross_integral", "cosine_magnetic_cross_integral",
                 "sine_electric_cross_integral"),
        notes=["sine_magnetic_cross_integral is informational: (1 - cos k z) profiles "
               "share a constant part and are not orthogonal on [0, L]"],
    )
    return [density, density_cross]


CHECKS: dict[str, Callable[[ScenarioConfig], list[VerificationReport]]] = {
    "maxwell": check_maxwell,
    "energy": check_energy,
    "hamiltonian": check_hamiltonian,
    "duality": check_duality,
    "ccr": check_ccr,
    "vacuum": check_vacuum,
    "classical-limit": check_classical_limit,
    "g-operator": check_g_operator,
    "f-alpha": check_f_alpha,
    "local-commutator": check_local_commutator,
    "density": check_density,
}


def run_checks(cfg: ScenarioConfig, names: Sequence[str] | None = None) -> list[VerificationReport]:
    names = cfg.check_names if not names else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    reports: list[VerificationReport] = []
    for name in names:
        reports.extend(CHECKS[name](cfg))
    return reports
