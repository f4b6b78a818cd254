"""Two-qubit matchgates, a small gate library, and CZ/CNOT circuits built from the XX gate.

Basis order is |00>, |01>, |10>, |11> with qubit 1 as the leftmost factor.
A matchgate acts as one SU(2)-like block ``A`` on {|00>, |11>} and another
block ``B`` on {|01>, |10>}, with det(A) = det(B).
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import ConfigurationError
from .linalg import I2, X, Y, Z, expm_hermitian

OUTER = (0, 3)
INNER = (1, 2)
ALGEBRAIC_TOL = 1e-10
INTEGRATOR_TOL = 1e-8


def _check_unitary(u, tol=ALGEBRAIC_TOL):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] not in (2, 4):
        raise ConfigurationError("gate must be a 2x2 or 4x4 matrix")
    err = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if err > tol:
        raise ConfigurationError(f"gate is not unitary (|U^dag U - I| = {err:.2e})")
    return u


@dataclass(frozen=True, eq=False)
class MatchgateDecomposition:
    A: np.ndarray
    B: np.ndarray
    det_A: complex
    det_B: complex
    residual: float
    tol: float

    @property
    def det_mismatch(self):
        return abs(self.det_A - self.det_B)

    @property
    def is_matchgate(self):
        return self.residual < self.tol and self.det_mismatch < self.tol

    @property
    def reason(self):
        if self.residual >= self.tol:
            return "off-block elements"
        if self.det_mismatch >= self.tol:
            return "det(A) != det(B)"
        return None

    def to_dict(self):
        def cplx(m):
            return [[[z.real, z.imag] for z in row] for row in np.atleast_2d(m)]

        return {
            "is_matchgate": self.is_matchgate,
            "reason": self.reason,
            "A": cplx(self.A),
            "B": cplx(self.B),
            "det_A": [self.det_A.real, self.det_A.imag],
            "det_B": [self.det_B.real, self.det_B.imag],
            "residual": self.residual,
            "det_mismatch": self.det_mismatch,
        }


def is_matchgate(u, tol=ALGEBRAIC_TOL):
    """Read off the outer and inner blocks of a 4x4 unitary.

    Always returns a :class:`MatchgateDecomposition`; its ``is_matchgate``
    flag and ``reason`` report acceptance.
    """
    u = _check_unitary(u, max(tol, ALGEBRAIC_TOL))
    if u.shape != (4, 4):
        raise ConfigurationError("matchgate test needs a 4x4 gate")
    a = u[np.ix_(OUTER, OUTER)]
    b = u[np.ix_(INNER, INNER)]
    mask = np.zeros((4, 4), bool)
    mask[np.ix_(OUTER, OUTER)] = True
    mask[np.ix_(INNER, INNER)] = True
    residual = float(np.abs(u[~mask]).max())
    return MatchgateDecomposition(a.copy(), b.copy(), complex(np.linalg.det(a)), complex(np.linalg.det(b)), residual, tol)


def compose_matchgate(a, b):
    """4x4 gate with ``a`` on {|00>, |11>} and ``b`` on {|01>, |10>}."""
    u = np.zeros((4, 4), dtype=complex)
    u[np.ix_(OUTER, OUTER)] = a
    u[np.ix_(INNER, INNER)] = b
    return u


XX = np.kron(X, X)
YY = np.kron(Y, Y)
XY_YX = np.kron(X, Y) + np.kron(Y, X)
ZZ = np.kron(Z, Z)


def xx_gate(J, t):
    """exp(-i J t X X) = cos(Jt) I - i sin(Jt) X X."""
    return math.cos(J * t) * np.eye(4) - 1j * math.sin(J * t) * XX


def interaction_unitary(J, K, L, t, M=0.0):
    """exp(-i t (J XX + K YY + L (XY + YX) + M ZZ))."""
    return expm_hermitian(J * XX + K * YY + L * XY_YX + M * ZZ, t)


# -- single-qubit library ---------------------------------------------------------

HADAMARD = (X + Z) / math.sqrt(2.0)
PAULI = {"x": X, "y": Y, "z": Z}


def rotation(axis, theta):
    """R_axis(theta) = exp(-i theta sigma_axis / 2)."""
    s = PAULI[axis.lower()]
    return math.cos(theta / 2) * I2 - 1j * math.sin(theta / 2) * s


def on_qubit(u, qubit):
    """Embed a 2x2 gate on qubit 1 or 2."""
    if qubit == 1:
        return np.kron(u, I2)
    if qubit == 2:
        return np.kron(I2, u)
    raise ConfigurationError("qubit must be 1 or 2")


CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

NAMED_GATES = {
    "identity": np.eye(4, dtype=complex),
    "cz": CZ,
    "cnot": CNOT,
    "swap": SWAP,
    "xx_pi4": xx_gate(1.0, math.pi / 4),
    "hh": np.kron(HADAMARD, HADAMARD),
}


@dataclass(frozen=True, eq=False)
class Circuit:
    """Gates in time order; ``matrix`` is their product (last gate leftmost)."""

    steps: List[Tuple[str, np.ndarray]]
    phase: complex = 1.0

    @property
    def matrix(self):
        u = np.eye(4, dtype=complex)
        for _, g in self.steps:
            u = g @ u
        return self.phase * u

    @property
    def names(self):
        return [n for n, _ in self.steps]


def cz_circuit(J):
    """sqrt(-i) Rz1(-pi/2) Rz2(-pi/2) (H H) U(pi/4J) (H H), equal to CZ."""
    if not J > 0:
        raise ConfigurationError("J must be positive")
    hh = np.kron(HADAMARD, HADAMARD)
    steps = [
        ("H(x)H", hh),
        ("U_XX(pi/4J)", xx_gate(J, math.pi / (4 * J))),
        ("H(x)H", hh),
        ("Rz2(-pi/2)", on_qubit(rotation("z", -math.pi / 2), 2)),
        ("Rz1(-pi/2)", on_qubit(rotation("z", -math.pi / 2), 1)),
    ]
    return Circuit(steps, phase=np.exp(-1j * math.pi / 4))


def cnot_circuit(J):
    """i Rz1(pi) Ry2(-pi/2) CZ Ry2(pi/2), equal to CNOT with qubit 1 as control."""
    cz = cz_circuit(J)
    steps = [("Ry2(pi/2)", on_qubit(rotation("y", math.pi / 2), 2))]
    steps += [(f"CZ:{n}", g) for n, g in cz.steps]
    steps += [
        ("Ry2(-pi/2)", on_qubit(rotation("y", -math.pi / 2), 2)),
        ("Rz1(pi)", on_qubit(rotation("z", math.pi), 1)),
    ]
    return Circuit(steps, phase=1j * cz.phase)


def equal_up_to_global_phase(u, v, tol=ALGEBRAIC_TOL):
    """(equal, phi) with phi taken from the largest-magnitude entry of ``v``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ConfigurationError("matrices must have equal shapes")
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[k]) == 0 or abs(u[k]) == 0:
        return bool(np.abs(u - v).max() < tol), 0.0
    phi = float(np.angle(u[k] / v[k]))
    return bool(np.abs(u - np.exp(1j * phi) * v).max() < tol), phi


def parse_matrix_rows(rows):
    """4x4 complex matrix from 16 (re, im) rows in row-major order."""
    arr = np.asarray(rows, dtype=float)
    if arr.shape != (16, 2):
        raise ConfigurationError("expected 16 rows of (re, im)")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(4, 4)
