"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Values are recomputed here from the public API with the stated parameters;
where a check report exists its verdict must agree.  The summary lines are
also gathered into the terminal summary by ``conftest.py``.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
from scipy.integrate import quad

from dualcav import fock
from dualcav.cavity import CavityConfig, make_mode, mode_bank
from dualcav.checks import (check_duality, check_local_commutator, check_maxwell,
                            coherent_classical_amplitude, random_amplitudes)
from dualcav.classical import (TimeAmplitude, combine_complex, duality_rotate,
                               duality_rotate_polarized, energy_density, f_alpha_integrand,
                               fields_sol1, fields_sol2, hamiltonian_sol1, hamiltonian_sol2,
                               maxwell_residual, maxwell_residual_polarized)
from dualcav.config import load_config
from dualcav.local import GeneralFieldSpec, general_fields
from dualcav.classical import SpatialProfile
from dualcav.quantization import (CCR_SIGN, QuantizationScheme, ccr_report, field_ops_sol1,
                                  g_operator, hamiltonian_operator, quadratures_from_ladder)

RESULTS: dict = {}
NAT = CavityConfig.natural(L=1.0, V=1.0)


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _frames(build, n):
    z = np.linspace(0.0, NAT.L, n)
    return [build(z, t) for t in np.linspace(0.0, 2.0, n)]


def test_criterion_01_maxwell_convergence():
    mode = make_mode(1, NAT)
    amp = TimeAmplitude.cosine(1.0, mode.omega)
    spec = GeneralFieldSpec([mode], [amp], [SpatialProfile.cosine(mode.k)])
    builders = {
        "sol1": lambda z, t: fields_sol1([mode], [amp], z, t, NAT),
        "sol2": lambda z, t: fields_sol2([mode], [amp], z, t, NAT),
        "combined": lambda z, t: combine_complex(fields_sol1([mode], [amp], z, t, NAT),
                                                 fields_sol2([mode], [amp], z, t, NAT)),
        "general": lambda z, t: general_fields(spec, z, t, NAT),
    }
    start = time.perf_counter()
    orders = {}
    for name, build in builders.items():
        res = [maxwell_residual(_frames(build, n), NAT) for n in (65, 129, 257)]
        for key in ("faraday", "ampere"):
            vals = [getattr(r, key) for r in res]
            orders[f"{name}_{key}"] = min(math.log2(a / b) for a, b in zip(vals, vals[1:]))
    report = check_maxwell(load_config())[0]
    elapsed = time.perf_counter() - start
    worst = min(orders.values())
    record(1, "Maxwell residual order >= 1.9, runtime < 10 s",
           worst >= 1.9 and elapsed < 10 and report.passed,
           f"min order {worst:.4f}, {elapsed:.2f} s, report {report.worst:.4f}")


def test_criterion_02_energy_conservation():
    cav = load_config().cavity
    modes = mode_bank(3, cav)
    rng = np.random.default_rng(20181102)
    times = np.linspace(0.0, 2 * cav.L / cav.c, 100, endpoint=False)
    spreads = {}
    for tag, fn, phase in (("sol1", hamiltonian_sol1, True), ("sol2", hamiltonian_sol2, False)):
        amps = random_amplitudes(rng, modes, with_phase=phase)
        vals = np.array([fn(modes, amps, t, cav).by_field_integral for t in times])
        spreads[tag] = float(np.ptp(vals) / vals.mean())
    worst = max(spreads.values())
    record(2, "energy relative spread < 1e-10", worst < 1e-10,
           ", ".join(f"{k} {v:.2e}" for k, v in spreads.items()))


def test_criterion_03_hamiltonian_equivalence():
    cav = load_config().cavity
    modes = mode_bank(3, cav)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        amps = random_amplitudes(rng, modes)
        t = float(rng.uniform(0.0, 2.0))
        for fn, build in ((hamiltonian_sol1, fields_sol1), (hamiltonian_sol2, fields_sol2)):
            h = fn(modes, amps, t, cav)

            def density(z):
                f = build(modes, amps, np.atleast_1d(z), t, cav)
                return float(0.5 * (cav.eps0 * f.Ex[0] ** 2 + cav.mu0 * f.Hy[0] ** 2))

            # adaptive quadrature is an oracle independent of the package's Gauss rules
            oracle = cav.V / cav.L * quad(density, 0.0, cav.L, epsabs=0, epsrel=1e-13, limit=200)[0]
            scale = abs(h.by_oscillator_sum)
            worst = max(worst, abs(h.by_field_integral - h.by_oscillator_sum) / scale,
                        abs(oracle - h.by_oscillator_sum) / scale)
    record(3, "field integral vs oscillator sum < 1e-10 relative", worst < 1e-10,
           f"worst {worst:.2e} over 5 sets")


def test_criterion_04_duality_invariance():
    mode = make_mode(1, NAT)
    amp = TimeAmplitude.cosine(1.0, mode.omega)
    frames = _frames(lambda z, t: fields_sol1([mode], [amp], z, t, NAT), 65)
    base = maxwell_residual(frames, NAT).combined
    e0 = [energy_density(f, NAT) for f in frames]
    worst = 0.0
    for theta in (0.0, math.pi / 6, math.pi / 4, math.pi / 2, 1.0):
        parts = [duality_rotate_polarized(f, theta) for f in frames]
        res = maxwell_residual_polarized([p[0] for p in parts], [p[1] for p in parts], NAT)
        rotated = [duality_rotate(f, theta) for f in frames]
        density_shift = max(np.max(np.abs(energy_density(f, NAT) - e)) for f, e in zip(rotated, e0))
        total_shift = max(abs(np.sum(energy_density(f, NAT) - e)) * (f.z[1] - f.z[0])
                          for f, e in zip(rotated, e0))
        worst = max(worst, abs(res - base), density_shift, total_shift)
    swap = max(max(np.max(np.abs(r.Ex - f.Hy)), np.max(np.abs(r.Hy + f.Ex)))
               for f, r in ((f, duality_rotate(f, math.pi / 2)) for f in frames))
    report = check_duality(load_config())[0]
    record(4, "duality rotation keeps residuals and energy (< 1e-12), pi/2 swap pattern",
           worst < 1e-12 and swap < 1e-12 and report.passed,
           f"shift {worst:.2e}, swap {swap:.2e}")


def test_criterion_05_ccr():
    d = 24
    modes = mode_bank(3, NAT)
    worst_block = worst_corner = 0.0
    for mode in modes:
        q, p = quadratures_from_ladder(mode, QuantizationScheme.time(1.0, d))
        C = p.matrix @ q.matrix - q.matrix @ p.matrix
        target = CCR_SIGN * 1j
        worst_block = max(worst_block, np.max(np.abs(C[:d - 1, :d - 1] - target * np.eye(d - 1))))
        worst_corner = max(worst_corner, abs(C[d - 1, d - 1] - target * (-(d - 1))))
    rep = ccr_report(QuantizationScheme.time(1.0, d), modes)
    cross = rep.residuals["cross_mode"]
    record(5, "CCR on the lower 23-block, exact cross-mode zero, corner truncation",
           worst_block < 1e-12 and worst_corner < 1e-12 and cross == 0.0 and rep.passed,
           f"block {worst_block:.2e}, corner {worst_corner:.2e}, cross {cross}, "
           f"sign convention {CCR_SIGN:+d}")


def test_criterion_06_vacuum_energy():
    modes = mode_bank(3, NAT)
    d = 16  # 16**3 = 4096 is the largest product space under the tensor limit
    H = hamiltonian_operator(modes, QuantizationScheme.time(1.0, d))
    G = g_operator(modes, QuantizationScheme.space(1.0, d)).operator
    vac = fock.basis(H.dims, 0)
    target = sum(m.omega / 2 for m in modes)
    errs = (abs(fock.expectation(H, vac) - target) / target,
            abs(fock.expectation(G, vac) - target) / target)
    record(6, "vacuum expectations of H and G", max(errs) < 1e-12,
           f"H {errs[0]:.2e}, G {errs[1]:.2e}")


def test_criterion_07_classical_limit():
    d, alpha_c = 64, 2.0
    mode = make_mode(1, NAT)
    psi = fock.coherent_state(alpha_c, d)
    amp = coherent_classical_amplitude(mode, alpha_c, 1.0)
    z = np.linspace(0.0, 1.0, 33)
    worst = 0.0
    for t in np.linspace(0.0, 2.0, 33):
        ops = field_ops_sol1([mode], QuantizationScheme.time(1.0, d), z, t, NAT)
        E = np.array([fock.expectation(op, psi).real for op in ops.E])
        # closed form of the coherent expectation: 2 sqrt(w) Re(alpha e^{-iwt}) sin kz
        oracle = 2 * math.sqrt(mode.omega) * alpha_c * math.cos(mode.omega * t) * np.sin(mode.k * z)
        classical = fields_sol1([mode], [amp], z, t, NAT).Ex
        worst = max(worst, np.max(np.abs(E - classical)), np.max(np.abs(oracle - classical)))
    record(7, "coherent expectation matches classical Sol1 field", worst < 1e-8,
           f"sup-norm {worst:.2e} on 33x33")


def test_criterion_08_g_identity():
    d = 24
    mode = make_mode(1, NAT)
    G = g_operator([mode], QuantizationScheme.space(1.0, d), z=0.37)
    oracle = np.diag(mode.omega * (np.arange(d - 1) + 0.5))
    dist = float(np.max(np.abs(G.operator.lower_block() - oracle)))
    record(8, "G(z) equals sum lambda0 w (n + 1/2) on the lower block",
           dist < 1e-10 and G.lower_block_distance < 1e-10, f"distance {dist:.2e}")


def test_criterion_09_f_alpha():
    modes = mode_bank(3, NAT)
    rng = np.random.default_rng(3)
    t = np.linspace(0.0, 2.0, 2001)
    z = np.linspace(0.0, 1.0, 33)
    worst = 0.0
    for mode, amp in zip(modes, random_amplitudes(rng, modes)):
        worst = max(worst, float(np.max(np.abs(f_alpha_integrand(mode, amp, z[:, None],
                                                                 t[None, :], NAT)))))
    record(9, "f_alpha integrand vanishes on shell", worst < 1e-12, f"max {worst:.2e}")


def test_criterion_10_local_commutator_and_cli(tmp_path):
    cfg = load_config()
    texts = [check_local_commutator(cfg)[0].to_text() for _ in range(2)]
    rep = json.loads(texts[0])
    metrics = [rep["residuals"][k] for k in ("distance_to_constant_form",
                                             "distance_to_density_form")]
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "dualcav.cli", "verify", "all",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    cli_rep = (tmp_path / "reports" / "local-commutator.json").read_text()
    ok = (rep["residuals"]["hermiticity"] < 1e-12 and rep["pass"] == "not-applicable"
          and all(math.isfinite(m) for m in metrics) and texts[0] == texts[1]
          and cli_rep == texts[0] and proc.returncode == 0 and elapsed < 60)
    record(10, "local commutator harness and CLI end-to-end", ok,
           f"hermiticity {rep['residuals']['hermiticity']:.1e}, byte-stable "
           f"{texts[0] == texts[1] == cli_rep}, CLI exit {proc.returncode} in {elapsed:.1f} s")
