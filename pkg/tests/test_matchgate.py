import math

import numpy as np
import pytest
import scipy.linalg
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from irdress.errors import ConfigurationError
from irdress.linalg import I2, X, Y, Z
from irdress.matchgate import (
    CNOT,
    CZ,
    HADAMARD,
    NAMED_GATES,
    SWAP,
    XX,
    YY,
    compose_matchgate,
    cnot_circuit,
    cz_circuit,
    equal_up_to_global_phase,
    interaction_unitary,
    is_matchgate,
    on_qubit,
    parse_matrix_rows,
    rotation,
    xx_gate,
)

coef = st.floats(-3.0, 3.0)


def random_su2(seed):
    u = scipy.stats.unitary_group.rvs(2, random_state=seed)
    return u / np.sqrt(np.linalg.det(u))


@settings(max_examples=200, deadline=None)
@given(J=coef, K=coef, L=coef, t=st.floats(0.0, 10.0))
def test_interaction_unitaries_are_matchgates(J, K, L, t):
    dec = is_matchgate(interaction_unitary(J, K, L, t))
    assert dec.is_matchgate, dec.reason
    assert dec.residual < 1e-10 and dec.det_mismatch < 1e-10


@settings(max_examples=50, deadline=None)
@given(M=st.floats(0.1, 1.4), t=st.floats(0.1, 1.0))
def test_zz_term_breaks_matchgate_property(M, t):
    # exp(-i M t ZZ) has det A = exp(-2iMt) but det B = exp(+2iMt)
    dec = is_matchgate(interaction_unitary(0.0, 0.0, 0.0, t, M))
    assert dec.residual == 0.0
    assert dec.det_mismatch == pytest.approx(2 * abs(math.sin(2 * M * t)), abs=1e-12)


def test_interaction_unitary_matches_expm():
    h = 0.3 * XX + 0.2 * YY + 0.1 * (np.kron(X, Y) + np.kron(Y, X)) + 0.05 * np.kron(Z, Z)
    np.testing.assert_allclose(interaction_unitary(0.3, 0.2, 0.1, 1.7, 0.05), scipy.linalg.expm(-1.7j * h), atol=1e-13)


@settings(max_examples=50, deadline=None)
@given(J=coef, t=st.floats(0.0, 10.0))
def test_xx_gate_closed_form(J, t):
    np.testing.assert_allclose(xx_gate(J, t), scipy.linalg.expm(-1j * J * t * XX), atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_composed_blocks_round_trip(seed):
    a, b = random_su2(seed), random_su2(seed + 100)
    dec = is_matchgate(compose_matchgate(a, b))
    assert dec.is_matchgate
    np.testing.assert_allclose(dec.A, a, atol=1e-14)
    np.testing.assert_allclose(dec.B, b, atol=1e-14)


def test_unequal_determinants_rejected():
    a = np.eye(2)
    b = np.diag([1, 1j])
    dec = is_matchgate(compose_matchgate(a, b))
    assert not dec.is_matchgate
    assert dec.reason == "det(A) != det(B)"


@pytest.mark.parametrize(
    "name,accepted,reason",
    [
        ("identity", True, None),
        ("cz", False, "det(A) != det(B)"),
        ("cnot", False, "off-block elements"),
        ("swap", False, "det(A) != det(B)"),
        ("xx_pi4", True, None),
        ("hh", False, "off-block elements"),
    ],
)
def test_named_gates(name, accepted, reason):
    dec = is_matchgate(NAMED_GATES[name])
    assert dec.is_matchgate is accepted
    assert dec.reason == reason


def test_decomposition_serialises():
    d = is_matchgate(SWAP).to_dict()
    assert d["is_matchgate"] is False
    assert d["det_A"] == [1.0, 0.0] and d["det_B"] == pytest.approx([-1.0, 0.0])
    assert len(d["A"]) == 2 and len(d["A"][0]) == 2


@pytest.mark.parametrize("bad", [np.ones((4, 4)), np.eye(3), np.eye(2)])
def test_is_matchgate_input_checks(bad):
    with pytest.raises(ConfigurationError):
        is_matchgate(bad)


# -- single-qubit helpers -------------------------------------------------------


@pytest.mark.parametrize("axis,pauli", [("x", X), ("y", Y), ("z", Z)])
def test_rotation_matches_expm(axis, pauli):
    np.testing.assert_allclose(rotation(axis, 0.7), scipy.linalg.expm(-0.35j * pauli), atol=1e-14)


def test_on_qubit():
    np.testing.assert_allclose(on_qubit(X, 1), np.kron(X, I2))
    np.testing.assert_allclose(on_qubit(X, 2), np.kron(I2, X))
    with pytest.raises(ConfigurationError):
        on_qubit(X, 3)


def test_hadamard_is_involution():
    np.testing.assert_allclose(HADAMARD @ HADAMARD, I2, atol=1e-15)


# -- circuits -------------------------------------------------------------------


@pytest.mark.parametrize("J", [0.001, 0.05, 1.0, 3.0])
def test_cz_circuit_exact(J):
    u = cz_circuit(J).matrix
    assert np.abs(u - CZ).max() < 1e-10
    ok, _ = equal_up_to_global_phase(u, CZ)
    assert ok


@pytest.mark.parametrize("J", [0.001, 0.05, 1.0])
def test_cnot_circuit_exact(J):
    c = cnot_circuit(J)
    assert np.abs(c.matrix - CNOT).max() < 1e-10
    assert c.names[0] == "Ry2(pi/2)" and c.names[-1] == "Rz1(pi)"


def test_cz_needs_positive_coupling():
    with pytest.raises(ConfigurationError):
        cz_circuit(0.0)


def test_global_phase_helper():
    ok, phi = equal_up_to_global_phase(np.exp(0.4j) * CNOT, CNOT)
    assert ok and phi == pytest.approx(0.4)
    assert not equal_up_to_global_phase(CZ, CNOT)[0]
    with pytest.raises(ConfigurationError):
        equal_up_to_global_phase(np.eye(2), np.eye(4))


def test_parse_matrix_rows_round_trip():
    rows = [[z.real, z.imag] for z in (np.exp(0.3j) * SWAP).ravel()]
    np.testing.assert_allclose(parse_matrix_rows(rows), np.exp(0.3j) * SWAP)
    with pytest.raises(ConfigurationError):
        parse_matrix_rows(rows[:15])
