import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from dualcav import fock
from dualcav.cavity import CavityConfig, make_mode, mode_bank
from dualcav.classical import SpatialProfile, TimeAmplitude, fields_sol1, fields_sol2, maxwell_residual
from dualcav.fock import annihilation, basis, coherent_state, commutator, expectation
from dualcav.quantization import (CCR_SIGN, QuadraturePair, QuantizationScheme, ccr_report,
                                  field_ops_combined, field_ops_sol1, field_ops_sol2,
                                  field_ops_space, fields_space_scheme, g_of_z_classical,
                                  g_operator, hamiltonian_operator, heisenberg_evolve,
                                  ladder_from_quadratures, mode_ladders, number_form,
                                  quadratures_from_ladder, spatial_evolve)


@pytest.fixture
def mode(nat):
    return make_mode(1, nat, m=1.7)


def test_scheme_validation():
    with pytest.raises(ValueError):
        QuantizationScheme.time(hbar=0.0)
    with pytest.raises(ValueError):
        QuantizationScheme.space(lambda0=-1.0)
    with pytest.raises(ValueError):
        QuantizationScheme.time(cutoff=1)
    assert QuantizationScheme.space(2.5).quantum == 2.5


@pytest.mark.parametrize("scheme", [QuantizationScheme.time(0.7, 16), QuantizationScheme.space(1.3, 16)])
def test_quadrature_basics(mode, scheme):
    q, p = quadratures_from_ladder(mode, scheme)
    K, m, w = scheme.quantum, scheme.mass(mode), mode.omega
    vac = basis(16, 0)
    assert expectation(q @ q, vac).real == pytest.approx(K / (2 * m * w), rel=1e-14)
    assert expectation(p @ p, vac).real == pytest.approx(K * m * w / 2, rel=1e-14)
    assert q.hermiticity_error() < 1e-14 and p.hermiticity_error() < 1e-14
    lb = commutator(p, q).lower_block()
    assert np.max(np.abs(lb - CCR_SIGN * 1j * K * np.eye(15))) < 1e-13


def test_space_scheme_uses_unit_mass(mode):
    assert QuantizationScheme.space().mass(mode) == 1.0
    assert QuantizationScheme.time().mass(mode) == 1.7


@pytest.mark.parametrize("scheme", [QuantizationScheme.time(1.0, 16), QuantizationScheme.space(1.0, 16)])
def test_ladder_round_trip(mode, scheme):
    pair = quadratures_from_ladder(mode, scheme)
    a, ad = ladder_from_quadratures(pair, mode, scheme)
    assert np.max(np.abs(a.matrix - annihilation(16).matrix)) < 1e-13
    assert np.max(np.abs(ad.matrix - annihilation(16).dag().matrix)) < 1e-13
    assert np.max(np.abs(a @ basis(16, 0))) < 1e-13
    assert isinstance(pair, QuadraturePair)


def test_heisenberg_evolution(mode):
    a = annihilation(32)
    assert np.array_equal(heisenberg_evolve(a, mode, 0.0).matrix, a.matrix)
    at = heisenberg_evolve(a, mode, 0.37)
    assert np.allclose(np.abs(at.matrix), np.abs(a.matrix), rtol=0, atol=1e-15)
    psi = coherent_state(1.2 - 0.4j, 48)
    for t in (0.1, 0.9):
        got = expectation(heisenberg_evolve(annihilation(48), mode, t), psi)
        assert abs(got - (1.2 - 0.4j) * np.exp(-1j * mode.omega * t)) < 1e-8


def test_spatial_evolution_phase(mode):
    a = annihilation(8)
    az = spatial_evolve(a, mode, 0.25)
    assert np.allclose(az.matrix, a.matrix * np.exp(-1j * mode.k * 0.25), atol=0)


# ---- field operators ----------------------------------------------------------

def test_sol1_vacuum(nat):
    mode = make_mode(1, nat)
    scheme = QuantizationScheme.time(1.0, 12)
    z = np.array([0.1, 0.5, 0.8])
    ops = field_ops_sol1([mode], scheme, z, 0.3, nat)
    vac = basis(12, 0)
    assert all(abs(expectation(E, vac)) < 1e-15 for E in ops.E)
    E_mid = field_ops_sol1([mode], scheme, np.array([0.5]), 0.3, nat).E[0]
    # <0|(a + a^+)^2|0> = 1
    expected = scheme.hbar * mode.omega / (nat.V * nat.eps0) * math.sin(mode.k * 0.5) ** 2
    assert expectation(E_mid @ E_mid, vac).real == pytest.approx(expected, rel=1e-14)
    assert ops.hermiticity_error() < 1e-13


@pytest.mark.parametrize("units", ["natural", "si"])
def test_sol1_coherent_matches_classical(units):
    cav = CavityConfig.natural() if units == "natural" else CavityConfig.si(0.5, 2e-3)
    hbar = 1.0 if units == "natural" else 1.054571817e-34
    mode = make_mode(1, cav)
    alpha = 1.5 + 0.7j
    d = 48
    scheme = QuantizationScheme.time(hbar, d)
    psi = coherent_state(alpha, d)
    z = np.linspace(0, cav.L, 9)
    s = math.sqrt(hbar / (2 * mode.m * mode.omega))
    amp = TimeAmplitude(s * alpha.conjugate(), s * alpha, mode.omega)
    for t in np.linspace(0, 2 * cav.L / cav.c, 5):
        ops = field_ops_sol1([mode], scheme, z, t, cav)
        classical = fields_sol1([mode], [amp], z, t, cav)
        E = np.array([expectation(op, psi).real for op in ops.E])
        H = np.array([expectation(op, psi).real for op in ops.H])
        scale = max(np.max(np.abs(classical.Ex)), 1e-300)
        assert np.max(np.abs(E - classical.Ex)) <= 1e-8 * max(scale, 1.0)
        hscale = max(np.max(np.abs(classical.Hy)), 1e-300)
        assert np.max(np.abs(H - classical.Hy)) <= 1e-8 * max(hscale, 1.0)


def test_sol2_operators(nat):
    mode = make_mode(2, nat)
    scheme = QuantizationScheme.time(1.0, 12)
    ops = field_ops_sol2([mode], scheme, np.linspace(0, 1, 5), 0.2, nat)
    assert ops.hermiticity_error() < 1e-13
    assert all(abs(expectation(H, basis(12, 0))) < 1e-15 for H in ops.H)


def _sol2_expectations(beta, nat, t):
    mode = make_mode(1, nat)
    d = 48
    psi = coherent_state(beta, d)
    z = np.linspace(0, 1, 9)
    ops = field_ops_sol2([mode], QuantizationScheme.time(1.0, d), z, t, nat)
    s = math.sqrt(1.0 / (2 * mode.m * mode.omega))
    # <E2> = A q(t) sin kz with q = sqrt(hbar/2mw) i (conj(b) e^{iwt} - b e^{-iwt})
    amp = TimeAmplitude(1j * s * np.conj(beta), -1j * s * beta, mode.omega)
    classical = fields_sol2([mode], [amp], z, t, nat)
    E = np.array([expectation(op, psi).real for op in ops.E])
    H = np.array([expectation(op, psi).real for op in ops.H])
    return E, H, classical


def test_sol2_coherent_matches_classical_for_imaginary_amplitude(nat):
    for t in (0.0, 0.3, 1.1):
        E, H, classical = _sol2_expectations(2j, nat, t)
        assert np.max(np.abs(E - classical.Ex)) < 1e-6
        assert np.max(np.abs(H - classical.Hy)) < 1e-6


def test_sol2_coherent_real_part_gives_static_offset(nat):
    # the antiderivative from t = 0 drops a constant 2 Re(beta) term
    E, H, classical = _sol2_expectations(1.0 + 2j, nat, 0.3)
    assert np.max(np.abs(E - classical.Ex)) < 1e-6
    offset = np.max(np.abs(H - classical.Hy))
    mode = make_mode(1, nat)
    assert offset == pytest.approx(math.sqrt(mode.omega / nat.V) * 2 * 1.0, rel=1e-6)


def test_combined_operators_are_normal_not_hermitian(nat):
    mode = make_mode(1, nat)
    scheme = QuantizationScheme.time(1.0, 6)
    z = np.array([0.3, 0.6])
    comb = field_ops_combined([mode], scheme, z, 0.2, nat)
    assert comb.dims == (6, 6)
    assert comb.hermiticity_error() > 0.1
    for op in comb.E + comb.H:
        assert np.max(np.abs(commutator(op, op.dag()).matrix)) < 1e-13
    vac = basis((6, 6), 0)
    assert all(abs(expectation(op, vac)) < 1e-15 for op in comb.E + comb.H)


def test_combined_in_terms_of_single_families(nat):
    mode = make_mode(1, nat)
    d = 6
    scheme = QuantizationScheme.time(1.0, d)
    z = np.array([0.3, 0.6])
    t = 0.2
    comb = field_ops_combined([mode], scheme, z, t, nat)
    s1 = field_ops_sol1([mode], scheme, z, t, nat)
    s2 = field_ops_sol2([mode], scheme, z, t, nat)
    I = fock.identity(d)
    for j in range(len(z)):
        E = fock.tensor(s1.E[j], I) + 1j * fock.tensor(I, s2.E[j])
        H = fock.tensor(I, s2.H[j]) - 1j * fock.tensor(s1.H[j], I)
        assert comb.E[j].allclose(E, atol=1e-13)
        assert comb.H[j].allclose(H, atol=1e-13)


def test_combined_partial_trace_second_moments(nat):
    mode = make_mode(1, nat)
    d = 18
    scheme = QuantizationScheme.time(1.0, d)
    z = np.array([0.4])
    comb = field_ops_combined([mode], scheme, z, 0.3, nat)
    psi_a = coherent_state(0.6 + 0.2j, d)
    Psi = fock.tensor_state(psi_a, basis(d, 0))
    # reduced density matrix of the first family
    M = Psi.vector.reshape(d, d)
    rho_a = M @ M.conj().T
    E1 = field_ops_sol1([mode], scheme, z, 0.3, nat).E[0].matrix
    E2 = field_ops_sol2([mode], scheme, z, 0.3, nat).E[0].matrix
    sol1_moment = np.trace(rho_a @ E1 @ E1).real
    vac2 = (E2 @ E2)[0, 0].real
    Ec = comb.E[0]
    got = expectation(Ec.dag() @ Ec, Psi).real
    assert got == pytest.approx(sol1_moment + vac2, rel=1e-12)


def test_space_field_operators(nat):
    modes = mode_bank(2, nat)
    scheme = QuantizationScheme.space(1.0, 5)
    ops = field_ops_space(modes, scheme, np.array([0.0, 0.5]), 0.1, nat)
    assert ops.hermiticity_error() < 1e-13
    vac = basis((5, 5), 0)
    assert all(abs(expectation(op, vac)) < 1e-15 for op in ops.E + ops.H)
    with pytest.raises(ValueError):
        field_ops_space(modes, QuantizationScheme.time(), np.array([0.5]), 0.1, nat)


def test_mode_ladders_layout():
    dims, ops = mode_ladders(2, 3, families=2)
    assert dims == (3, 3, 3, 3)
    assert ops[1][0].allclose(fock.embed(annihilation(3), 2, dims))


# ---- Hamiltonian and G ----------------------------------------------------------

def test_hamiltonian_number_form(nat):
    modes = mode_bank(2, nat, masses=[1.0, 2.5])
    scheme = QuantizationScheme.time(0.5, 10)
    H = hamiltonian_operator(modes, scheme)
    N = number_form(modes, scheme)
    assert np.max(np.abs(H.lower_block() - N.lower_block())) < 1e-12
    assert expectation(H, basis((10, 10), 0)).real == pytest.approx(
        sum(0.5 * m.omega / 2 for m in modes), rel=1e-14)


def test_g_operator_identity(nat):
    modes = mode_bank(1, nat)
    scheme = QuantizationScheme.space(1.7, 24)
    for z in (0.0, 0.3, 0.9):
        g = g_operator(modes, scheme, z)
        assert g.lower_block_distance < 1e-10
        for n in range(23):
            assert expectation(g.operator, basis(24, n)).real == pytest.approx(
                1.7 * modes[0].omega * (n + 0.5), rel=1e-13)
    with pytest.raises(ValueError):
        g_operator(modes, QuantizationScheme.time())


def _g_by_quad(modes, profiles, z, cav):
    def integrand(tau):
        E = sum(m.A_space * p.value(z) * math.sin(m.omega * tau) for m, p in zip(modes, profiles))
        H = sum(-m.A_space * m.omega * p.antiderivative(z) * math.cos(m.omega * tau)
                for m, p in zip(modes, profiles))
        return 0.5 * (E**2 + H**2)
    return integrate.quad(integrand, 0, cav.T, epsabs=1e-13, epsrel=1e-13, limit=400)[0]


@pytest.mark.parametrize("kind", ["sine", "cosine"])
def test_g_classical_two_paths(nat, kind):
    modes = mode_bank(2, nat)
    profiles = [SpatialProfile.named(kind, m.k) for m in modes]
    for z in (0.0, 0.3, 0.77):
        g = g_of_z_classical(modes, profiles, z, nat)
        oracle = _g_by_quad(modes, profiles, z, nat)
        assert abs(g.by_time_quadrature - g.closed_form) < 1e-9 * max(1.0, g.closed_form)
        assert abs(oracle - g.closed_form) < 1e-9 * max(1.0, g.closed_form)
        assert abs(g.cross_terms) < 1e-12
        assert g.orthogonal_window


def test_g_single_sine_closed_form(nat):
    mode = make_mode(1, nat)
    prof = SpatialProfile.sine(mode.k)
    z = 0.35
    g = g_of_z_classical([mode], [prof], z, nat)
    Q = (1 - math.cos(mode.k * z)) / mode.k
    assert g.closed_form == pytest.approx(0.5 * mode.omega**2 * (math.sin(mode.k * z) ** 2
                                                                 + mode.omega**2 * Q**2), rel=1e-14)
    assert g_of_z_classical([mode], [prof], 0.0, nat).closed_form == 0.0


def test_g_flags_broken_window():
    cav = CavityConfig.natural(T=1.3)
    modes = mode_bank(2, cav)
    g = g_of_z_classical(modes, [SpatialProfile.sine(m.k) for m in modes], 0.4, cav)
    assert not g.orthogonal_window
    assert abs(g.cross_terms) > 1e-6


def test_space_fields_cosine_converge_sine_offset(nat):
    mode = make_mode(1, nat)
    res = {}
    for kind in ("cosine", "sine"):
        prof = [SpatialProfile.named(kind, mode.k)]
        build = lambda z, t: fields_space_scheme([mode], prof, z, t, nat)
        res[kind] = []
        for n in (65, 129):
            z = np.linspace(0, 1, n)
            res[kind].append(maxwell_residual([build(z, t) for t in np.linspace(0, 2, n)], nat))
    assert 3.8 < res["cosine"][0].faraday / res["cosine"][1].faraday < 4.2
    # Faraday defect of the sine profile: A' k sin(w t), independent of the grid
    assert res["sine"][1].faraday == pytest.approx(mode.A_space * mode.k, rel=1e-3)


# ---- commutation report ---------------------------------------------------------

def test_ccr_report_d24(nat):
    modes = mode_bank(3, nat)
    rep = ccr_report(QuantizationScheme.time(1.0, 24), modes)
    assert rep.passed
    assert rep.residuals["cross_mode"] == 0.0
    assert rep.residuals["deviation_from_plus_i_quantum"] == pytest.approx(2.0, rel=1e-12)
    assert any("sign convention" in n for n in rep.notes)
    space = ccr_report(QuantizationScheme.space(2.0, 24), modes)
    assert space.name == "ccr-space" and space.passed
    assert space.residuals["deviation_from_plus_i_quantum"] == pytest.approx(4.0, rel=1e-12)


@given(hbar=st.floats(0.1, 10.0), d=st.integers(3, 20))
def test_ccr_corner_truncation(hbar, d):
    mode = make_mode(1, CavityConfig.natural())
    q, p = quadratures_from_ladder(mode, QuantizationScheme.time(hbar, d))
    C = commutator(p, q).matrix
    assert abs(C[d - 1, d - 1] - CCR_SIGN * 1j * hbar * (-(d - 1))) < 1e-12 * max(1, hbar * d)
