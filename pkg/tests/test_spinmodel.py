import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irdress.dressing import E, dark_state
from irdress.errors import ConfigurationError, ConstraintError
from irdress.linalg import I2, X, Y, Z, site_operator
from irdress.pairgate import GateScenario, d0_operator, four_level_dipoles
from irdress.spinmodel import (
    MAX_SITES,
    CouplingSet,
    SpinChainSpec,
    build_hamiltonian,
    chirped_passage,
    constraint_violations,
    coupling_table,
    couplings_from_phase,
    d_ee_prime,
    dressed_dipole,
    evolve,
    local_fields,
    model_vs_full,
    number,
    pair_couplings,
    permanent_dipole,
    raising,
    zxx_hamiltonian,
    zz_couplings,
)

angle = st.floats(0.0, math.pi / 2)
phase = st.floats(-math.pi, math.pi)


def qubit_frame(alpha, beta):
    """Columns (e, D) as 4-level kets: the spin-model basis order."""
    ket_e = np.zeros(4, complex)
    ket_e[E] = 1.0
    return np.column_stack([ket_e, dark_state(alpha, beta)])


# -- operator identities ----------------------------------------------------------


def test_raising_and_number():
    bdag = raising()
    np.testing.assert_allclose(bdag, [[0, 1], [0, 0]])
    np.testing.assert_allclose(bdag @ bdag.conj().T, number())
    np.testing.assert_allclose(number(), np.diag([1, 0]))


def test_number_product_identity_unordered():
    n = number()
    lhs = np.kron(n, n)
    rhs = (np.eye(4) + np.kron(Z, I2) + np.kron(I2, Z) + np.kron(Z, Z)) / 4
    np.testing.assert_allclose(lhs, rhs, atol=1e-15)


def test_number_product_identity_ordered_sum():
    # (1/2) sum over ordered pairs of (1 + 2 Z_i)/4 + Z_i Z_j/4 gives the same operator
    n = number()
    z = {0: np.kron(Z, I2), 1: np.kron(I2, Z)}
    rhs = sum(0.5 * ((np.eye(4) + 2 * z[i]) / 4 + z[i] @ z[j] / 4) for i, j in ((0, 1), (1, 0)))
    np.testing.assert_allclose(np.kron(n, n), rhs, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(alpha=angle, beta=phase)
def test_projected_dipole_is_AX_minus_BY(alpha, beta):
    d0 = d0_operator(four_level_dipoles(), "truncated-D0")
    w = qubit_frame(alpha, beta)
    proj = w.conj().T @ d0 @ w
    c = couplings_from_phase(alpha, beta, abs(d0[1, E]), 1.0)
    np.testing.assert_allclose(proj, c.A_cal * X - c.B_cal * Y, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(alpha=angle, beta=phase, u=st.floats(-2, 2))
def test_projected_interaction_matches_couplings(alpha, beta, u):
    d0 = d0_operator(four_level_dipoles(), "truncated-D0")
    w = qubit_frame(alpha, beta)
    ww = np.kron(w, w)
    proj = ww.conj().T @ (u * np.kron(d0, d0)) @ ww
    c = couplings_from_phase(alpha, beta, abs(d0[1, E]), u)
    model = c.J * np.kron(X, X) + c.K * np.kron(Y, Y) + c.L * (np.kron(X, Y) + np.kron(Y, X))
    np.testing.assert_allclose(proj, model, atol=1e-14)


def test_B_sign_convention():
    z = dressed_dipole(math.pi / 2, 0.3, 1.0)
    assert z.imag == pytest.approx(math.sin(0.3))
    c = couplings_from_phase(math.pi / 2, 0.3, 1.0, 1.0)
    assert c.B_cal == pytest.approx(+math.sin(0.3))
    assert c.L == pytest.approx(math.cos(0.3) * math.sin(0.3))


@settings(max_examples=200, deadline=None)
@given(alpha=angle, beta=phase, d=st.floats(0.0, 1.0), u=st.floats(-5, 5))
def test_coupling_constraints_hold(alpha, beta, d, u):
    c = couplings_from_phase(alpha, beta, d, u)
    assert c.L**2 == pytest.approx(c.J * c.K, rel=1e-12, abs=1e-300)
    assert abs(c.J + c.K) <= abs(u) * (1 + 1e-12)
    assert constraint_violations({(0, 1): c}) == []


@pytest.mark.parametrize(
    "bad,match",
    [
        (CouplingSet(J=2.0, K=0.0, L=0.0, U_dd=1.0), "J\\+K"),
        (CouplingSet(J=0.2, K=0.2, L=0.0, U_dd=1.0), "L\\^2"),
        (CouplingSet(J=0.0, K=0.0, L=0.0, M=0.5, U_dd=1.0), "M"),
    ],
)
def test_constraint_violations_detected(bad, match):
    spec = SpinChainSpec((0.0, 1.0))
    with pytest.raises(ConstraintError, match=match):
        build_hamiltonian(spec, {(0, 1): bad})
    with pytest.warns(UserWarning, match=match):
        build_hamiltonian(spec, {(0, 1): bad}, on_violation="warn")


# -- permanent dipoles and chirped passage --------------------------------------


def test_permanent_dipole_values():
    assert d_ee_prime() == pytest.approx(2 / math.sqrt(15))
    assert permanent_dipole(0.0) == 0.0
    assert permanent_dipole(math.pi / 4) == pytest.approx(-d_ee_prime())
    assert abs(permanent_dipole(math.pi / 4, 0.1)) < abs(permanent_dipole(math.pi / 4))


def test_linear_chirp():
    omega, rate = 1.0, 0.05
    t = np.linspace(-400, 400, 8001)
    res = chirped_passage(omega, lambda tt: rate * tt, t)
    # endpoints at |Delta| = 20 Omega: theta = atan(1/20)/2 from the far side
    assert res.theta[0] == pytest.approx(0.5 * math.atan(1 / 20), rel=1e-12)
    assert res.theta[-1] == pytest.approx(math.pi / 2 - 0.5 * math.atan(1 / 20), rel=1e-12)
    assert res.theta[t.size // 2] == pytest.approx(math.pi / 4, abs=1e-12)
    assert res.margin == pytest.approx(rate / (2 * omega**2), rel=1e-6)
    assert res.adiabatic


def test_chirp_stopped_at_resonance_gives_maximal_dipole():
    t = np.linspace(-400, 0, 4001)
    res = chirped_passage(1.0, 0.01 * t, t)
    assert abs(permanent_dipole(res.theta[-1])) == pytest.approx(d_ee_prime(), rel=1e-12)


def test_fast_chirp_is_flagged():
    t = np.linspace(-5, 5, 101)
    assert not chirped_passage(1.0, 5.0 * t, t).adiabatic


def test_non_monotone_chirp_rejected():
    t = np.linspace(-1, 1, 21)
    with pytest.raises(ConfigurationError, match="monotone"):
        chirped_passage(1.0, t**2, t)
    with pytest.raises(ConfigurationError):
        chirped_passage(1.0, np.zeros(3), t)


# -- ZZ extension and local fields ----------------------------------------------


def test_zz_couplings_single_pair():
    out = zz_couplings(2.0, 0.5, eps_e=0.3)
    assert out["U"] == pytest.approx(0.5)
    assert out["M"] == pytest.approx(0.125)
    assert out["b"] == pytest.approx(0.15 + 0.125)
    assert zz_couplings(2.0, 0.5, eps_e=out["eps_e_zero_b"])["b"] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("positions", [(0.0, 1.0), (0.0, 1.0, 2.5), (0.0, 1.0, 2.0, 3.0)])
def test_zz_model_equals_number_interaction(positions):
    """At alpha = 0 the exchange terms vanish and H = sum U n n + eps sum n + const."""
    spec = SpinChainSpec(positions, alpha=0.0, theta_mu=math.pi / 4, eps_e=0.37)
    n = spec.n_sites
    h = build_hamiltonian(spec).matrix
    couplings = pair_couplings(spec)
    ref = sum(0.37 * site_operator(number(), k, n) for k in range(n))
    for (i, j), c in couplings.items():
        ref = ref + c.U * site_operator(number(), i, n) @ site_operator(number(), j, n)
    shift = np.trace(ref - h) / 2**n
    np.testing.assert_allclose(h + shift * np.eye(2**n), ref, atol=1e-13)


def test_local_fields_without_zz():
    spec = SpinChainSpec((0.0, 1.0, 2.0), eps_e=0.2)
    np.testing.assert_allclose(local_fields(spec, pair_couplings(spec)), 0.1)


def test_coupling_table_and_geometry():
    spec = SpinChainSpec((0.0, 1.0, 3.0), d2=2.0, theta_mu=0.3)
    table = coupling_table(spec)
    assert [row[:2] for row in table] == [(0, 1), (0, 2), (1, 2)]
    assert table[0][2] == pytest.approx(8 * table[2][2])
    for i, j, J, K, L, M, U in table:
        assert M == pytest.approx(U / 4)


def test_magic_angle_switches_off_couplings():
    spec = SpinChainSpec((0.0, 1.0), Theta=math.acos(1 / math.sqrt(3)))
    c = pair_couplings(spec)[(0, 1)]
    assert abs(c.J) < 1e-15 and abs(c.U_dd) < 1e-15


@pytest.mark.parametrize(
    "positions", [(), tuple(range(MAX_SITES + 1)), (0.0, 0.0)],
)
def test_chain_validation(positions):
    with pytest.raises(ConfigurationError):
        SpinChainSpec(positions)


def test_microwave_strength_warning():
    spec = SpinChainSpec((0.0, 1.0), theta_mu=math.pi / 4, Omega_mu=10.0)
    with pytest.warns(UserWarning, match="Omega_mu"):
        build_hamiltonian(spec)
    quiet = SpinChainSpec((0.0, 1.0), theta_mu=math.pi / 4, Omega_mu=1e-3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_hamiltonian(quiet)


def test_zxx_reference_two_sites():
    spec = SpinChainSpec((0.0, 1.0))
    c = pair_couplings(spec)[(0, 1)]
    h = build_hamiltonian(spec, b=[0.2, 0.2]).matrix
    np.testing.assert_allclose(h, zxx_hamiltonian(c.J, 0.2, 2), atol=1e-15)


def test_evolve_conserves_norm():
    h = zxx_hamiltonian(0.3, 0.1, 4)
    psi0 = np.zeros(16, complex)
    psi0[5] = 1.0
    assert np.linalg.norm(evolve(h, psi0, 7.0)) == pytest.approx(1.0, abs=1e-12)


# -- spin model against the full dynamics ---------------------------------------


@pytest.mark.parametrize("beta", [0.0, 0.4, math.pi / 2])
@pytest.mark.parametrize("initial", ["DD", "De", "ee"])
def test_model_matches_full_in_ideal_limit(beta, initial):
    dev = model_vs_full(GateScenario(sin_alpha0=1.0, beta=beta), initial=initial)
    assert dev.max_distance < 1e-12
    assert dev.max_leakage < 1e-12


def test_model_deviation_grows_with_transfer_residual():
    devs = [model_vs_full(GateScenario(sin_alpha0=math.cos(d))).max_distance for d in (0.02, 0.05, 0.1)]
    assert devs[0] < devs[1] < devs[2] < 1e-4
    assert devs[1] == pytest.approx(2.5e-7, rel=0.1)


def test_model_fails_off_two_photon_resonance():
    dev = model_vs_full(GateScenario(sin_alpha0=1.0, Delta_p=0.005, Delta_s=-0.005))
    assert dev.max_distance > 0.5
