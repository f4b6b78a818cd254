"""Single-molecule spectroscopy of a 2-Sigma molecule in a magnetic field.

The one-body Hamiltonian is

    H = B_e N^2 + gamma_sr N.S + g_S mu_B B S_Z - U_LS C_20 (x) I_S

on the product basis |v; N, M_N> |M_S>.  Energies are angular frequencies
(rad/s), fields are in gauss.  The qubit and auxiliary states used by the
dressing scheme are

    g  ~ |v=0; 0, 0>|up>          gp ~ |v=0; 0, 0>|down>
    e  ~ |v=0; 1, 0>|down>        f  ~ |v=1; 1,-1>|up>
    ep ~ |v=0; 2, 0>|down>

each dressed by a small spin-rotation admixture of the partner state with
the same M_N + M_S.
"""

import math
import warnings
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq
from sympy.physics.wigner import wigner_3j

from .errors import ConfigurationError, DegeneracyError, NoCrossingError
from .linalg import HermitianOperator, connected_blocks, fix_phase
from .units import MU_B_RAD_PER_S_PER_G

DEFAULT_N_MAX = 3
# minimum population of the labelling bare state in its dressed eigenvector
DOMINANT_MIN = 0.6


@dataclass(frozen=True)
class MoleculeParams:
    """Molecular constants.

    Energies (``B_e``, ``gamma_sr``) are angular frequencies, one entry per
    vibrational level v = 0, 1.  Polarizabilities are in a0^3, the dipole in
    debye and the mass in amu.
    """

    name: str
    B_e: tuple
    gamma_sr: tuple
    delta_alpha: float
    alpha_avg_real: float
    alpha_imag: float
    d_body: float
    mass: float
    g_S: float = 2.0

    def __post_init__(self):
        if min(self.B_e) <= 0 or self.d_body <= 0 or self.mass <= 0:
            raise ConfigurationError("B_e, d_body and mass must be positive")
        if len(self.B_e) != len(self.gamma_sr):
            raise ConfigurationError("B_e and gamma_sr need one entry per vibrational level")
        ratio = max(abs(g) / b for g, b in zip(self.gamma_sr, self.B_e))
        if ratio > 0.1:
            warnings.warn(
                f"gamma_sr/B_e = {ratio:.3g} > 0.1: perturbative qubit-state expansion is poor",
                stacklevel=2,
            )

    def with_(self, **changes):
        return replace(self, **changes)

    def b_cross_analytic(self, v=0):
        """Crossing field 2 B_e / (g_S mu_B) without spin-rotation or lightshift."""
        return 2.0 * self.B_e[v] / (self.g_S * MU_B_RAD_PER_S_PER_G)

    def eta(self, b_gauss, v=0):
        """Spin-rotation parameter gamma_sr / (g_S mu_B B)."""
        return self.gamma_sr[v] / (self.g_S * MU_B_RAD_PER_S_PER_G * b_gauss)


class BasisState(NamedTuple):
    v: int
    N: int
    M_N: int
    M_S: float


@dataclass(frozen=True)
class SpinRotBasis:
    labels: tuple
    N_max: int
    vib_levels: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: k for k, lab in enumerate(self.labels)})

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index(self, v, N, M_N, M_S):
        return self._index[BasisState(v, N, M_N, M_S)]

    def __contains__(self, label):
        return tuple(label) in self._index


def build_basis(N_max=DEFAULT_N_MAX, vib_levels=(0,)):
    """Product basis ordered lexicographically in (v, N, M_N, M_S)."""
    if N_max < 1:
        raise ConfigurationError(f"N_max must be >= 1, got {N_max}")
    vibs = tuple(sorted(set(vib_levels)))
    if not vibs or min(vibs) < 0:
        raise ConfigurationError(f"bad vibrational levels {vib_levels!r}")
    labels = tuple(
        BasisState(v, n, m, ms)
        for v in vibs
        for n in range(N_max + 1)
        for m in range(-n, n + 1)
        for ms in (-0.5, 0.5)
    )
    return SpinRotBasis(labels, N_max, vibs)


# -- angular momentum matrix elements ---------------------------------------


@lru_cache(maxsize=None)
def _w3j(j1, j2, j3, m1, m2, m3):
    return float(wigner_3j(j1, j2, j3, m1, m2, m3))


@lru_cache(maxsize=None)
def spherical_tensor_element(k, n1, m1, q, n2, m2):
    """<n1 m1 | C_{k,q} | n2 m2> for the unnormalised spherical harmonic C_{k,q}."""
    if m1 != m2 + q:
        return 0.0
    return (
        (-1) ** m1
        * math.sqrt((2 * n1 + 1) * (2 * n2 + 1))
        * _w3j(n1, k, n2, -m1, q, m2)
        * _w3j(n1, k, n2, 0, 0, 0)
    )


def c20_diagonal(n, m):
    """<N M | C_20 | N M> = [N(N+1) - 3M^2] / [(2N-1)(2N+3)]."""
    return (n * (n + 1) - 3 * m * m) / ((2 * n - 1) * (2 * n + 3))


def one_body_hamiltonian(params, B, U_LS, basis, couple_N=False):
    """Build the single-molecule Hamiltonian in rad/s.

    Parameters
    ----------
    params : MoleculeParams
    B : float
        Magnetic field in gauss.
    U_LS : float
        Tensor lightshift amplitude (rad/s).
    basis : SpinRotBasis
    couple_N : bool
        Include the Delta N = +-2 matrix elements of C_20.  Off by default:
        with U_LS << B_e the lightshift is taken diagonal in N.
    """
    for v in basis.vib_levels:
        if v >= len(params.B_e):
            raise ConfigurationError(f"no molecular constants for v={v}")
    if abs(U_LS) > 0.1 * min(params.B_e):
        warnings.warn("U_LS is not small compared with B_e", stacklevel=2)
    dim = len(basis)
    h = np.zeros((dim, dim), dtype=complex)
    zeeman = params.g_S * MU_B_RAD_PER_S_PER_G * B
    for k, (v, n, m, ms) in enumerate(basis):
        gamma = params.gamma_sr[v]
        h[k, k] = params.B_e[v] * n * (n + 1) + gamma * m * ms + zeeman * ms
        if n >= 1:
            h[k, k] -= U_LS * c20_diagonal(n, m)
        # (gamma/2) N_+ S_- : |m, +1/2> -> |m+1, -1/2>
        if ms == 0.5 and m < n:
            j = basis.index(v, n, m + 1, -0.5)
            amp = 0.5 * gamma * math.sqrt(n * (n + 1) - m * (m + 1))
            h[j, k] += amp
            h[k, j] += amp
        if couple_N and U_LS != 0.0:
            n2 = n + 2
            if n2 <= basis.N_max and abs(m) <= n2:
                j = basis.index(v, n2, m, ms)
                amp = -U_LS * spherical_tensor_element(2, n2, m, 0, n, m)
                h[j, k] += amp
                h[k, j] += amp
    return HermitianOperator(h, basis=basis, unit="rad/s")


def dipole_operator(basis, q, vib_factor=1.0):
    """Dimensionless dipole component D_q = C_{1,q} (x) I_S on ``basis``.

    Transitions that change v are scaled by ``vib_factor`` (ratio of the
    vibrational transition moment to the permanent moment).
    """
    dim = len(basis)
    d = np.zeros((dim, dim))
    for i, (v1, n1, m1, s1) in enumerate(basis):
        for j, (v2, n2, m2, s2) in enumerate(basis):
            if s1 != s2 or abs(n1 - n2) != 1 or m1 != m2 + q:
                continue
            d[i, j] = spherical_tensor_element(1, n1, m1, q, n2, m2) * (
                1.0 if v1 == v2 else vib_factor
            )
    return d


# -- eigenstates -------------------------------------------------------------

STATE_LABELS = {
    "g": (BasisState(0, 0, 0, 0.5), None),
    "gp": (BasisState(0, 0, 0, -0.5), None),
    "e": (BasisState(0, 1, 0, -0.5), BasisState(0, 1, -1, 0.5)),
    "f": (BasisState(1, 1, -1, 0.5), BasisState(1, 1, 0, -0.5)),
    "ep": (BasisState(0, 2, 0, -0.5), BasisState(0, 2, -1, 0.5)),
}


@dataclass(frozen=True, eq=False)
class QubitStates:
    """Dressed eigenstates used by the gate, as kets over ``basis``.

    ``a``, ``b``, ``c`` are the squared minority amplitudes of e, f and ep.
    Each ket's dominant bare component is real and positive.
    """

    g: np.ndarray
    e: np.ndarray
    gp: np.ndarray
    f: np.ndarray
    ep: np.ndarray
    a: float
    b: float
    c: float
    eta: float
    eta_prime: float
    eps_g: float
    eps_e: float
    eps_gp: float
    eps_f: float
    eps_ep: float
    B: float
    U_LS: float
    basis: SpinRotBasis

    def ket(self, name):
        return getattr(self, name)

    def energy(self, name):
        return getattr(self, f"eps_{name}")


def _eigenstate(h, blocks, basis, dominant, minority):
    """Eigenpair whose dominant bare component is ``dominant``."""
    idx = basis.index(*dominant)
    block = next(b for b in blocks if idx in b)
    w, vecs = np.linalg.eigh(h[np.ix_(block, block)])
    local = int(np.flatnonzero(block == idx)[0])
    col = int(np.argmax(np.abs(vecs[local])))
    pop = abs(vecs[local, col]) ** 2
    if pop < DOMINANT_MIN:
        raise DegeneracyError(
            f"state {dominant} is not dominant in any eigenvector (max population {pop:.3f})"
        )
    ket = np.zeros(len(basis), dtype=complex)
    ket[block] = vecs[:, col]
    ket = fix_phase(ket, idx)
    ket /= np.linalg.norm(ket)
    admix = 0.0 if minority is None else abs(ket[basis.index(*minority)]) ** 2
    return ket, float(w[col]), float(admix)


def _default_basis(vibs=(0, 1)):
    return build_basis(DEFAULT_N_MAX, vibs)


def qubit_states(params, B, U_LS=0.0, basis=None, couple_N=False, names=None):
    """Identify the named dressed eigenstates at field ``B`` and lightshift ``U_LS``.

    Eigenvectors are obtained block by block (blocks are the connected
    components of the Hamiltonian's sparsity graph), so the engineered
    g/e crossing never mixes the two states numerically.
    """
    if B <= 0:
        raise ConfigurationError("B must be positive")
    basis = basis or _default_basis()
    names = names or tuple(STATE_LABELS)
    h = one_body_hamiltonian(params, B, U_LS, basis, couple_N=couple_N).matrix
    blocks = connected_blocks(h)
    found = {}
    for name in STATE_LABELS:
        dominant, minority = STATE_LABELS[name]
        if name in names and dominant in basis:
            found[name] = _eigenstate(h, blocks, basis, dominant, minority)
        else:
            found[name] = (None, math.nan, math.nan)
    return QubitStates(
        g=found["g"][0],
        e=found["e"][0],
        gp=found["gp"][0],
        f=found["f"][0],
        ep=found["ep"][0],
        a=found["e"][2],
        b=found["f"][2],
        c=found["ep"][2],
        eta=params.eta(B, 0),
        eta_prime=params.eta(B, 1) if len(params.gamma_sr) > 1 else math.nan,
        eps_g=found["g"][1],
        eps_e=found["e"][1],
        eps_gp=found["gp"][1],
        eps_f=found["f"][1],
        eps_ep=found["ep"][1],
        B=B,
        U_LS=U_LS,
        basis=basis,
    )


def qubit_gap(params, B, U_LS=0.0, basis=None):
    """eps_e - eps_g in rad/s."""
    basis = basis or build_basis(1, (0,))
    st = qubit_states(params, B, U_LS, basis, names=("g", "e"))
    return st.eps_e - st.eps_g


def find_crossing(params, U_LS=0.0, bracket=None, basis=None):
    """Field (gauss) at which e and g are degenerate.

    Root-finding on the gap by Brent's method inside ``bracket`` (default
    [0.25, 2] times the analytic crossing 2 B_e / g_S mu_B).
    """
    basis = basis or build_basis(1, (0,))
    b0 = params.b_cross_analytic()
    lo, hi = bracket or (0.25 * b0, 2.0 * b0)
    f_lo = qubit_gap(params, lo, U_LS, basis)
    f_hi = qubit_gap(params, hi, U_LS, basis)
    if f_lo * f_hi > 0:
        raise NoCrossingError(f"gap does not change sign in [{lo:.6g}, {hi:.6g}] G")
    return brentq(
        lambda b: qubit_gap(params, b, U_LS, basis), lo, hi, xtol=1e-10, rtol=1e-15, maxiter=200
    )


def lightshift_for_zero_gap(params, B, basis=None):
    """Lightshift U_0 (rad/s) that closes the e-g gap at field ``B < B_cross``."""
    basis = basis or build_basis(1, (0,))
    tol = 1e-10 * params.B_e[0]
    gap0 = qubit_gap(params, B, 0.0, basis)
    if abs(gap0) < tol:
        return 0.0
    if gap0 < 0:
        raise NoCrossingError(
            f"B = {B:.6g} G is above the crossing; no positive lightshift closes the gap"
        )
    hi = 4.0 * gap0
    while qubit_gap(params, B, hi, basis) > 0:
        hi *= 2.0
        if hi > 0.5 * params.B_e[0]:
            raise NoCrossingError("required lightshift is not small compared with B_e")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return brentq(
            lambda u: qubit_gap(params, B, u, basis), 0.0, hi, xtol=1e-12 * hi, rtol=1e-15
        )


def zeeman_spectrum(params, fields, U_LS=0.0, basis=None):
    """Eigen-energies vs field with the dominant bare label of each eigenvector.

    Returns a list of ``(B, state_index, energy, label)`` rows, energies in rad/s.
    """
    basis = basis or build_basis(1, (0,))
    rows = []
    for B in fields:
        h = one_body_hamiltonian(params, B, U_LS, basis).matrix
        energies = np.empty(len(basis))
        labels = [None] * len(basis)
        for block in connected_blocks(h):
            w, vecs = np.linalg.eigh(h[np.ix_(block, block)])
            for col in range(len(block)):
                dom = block[int(np.argmax(np.abs(vecs[:, col])))]
                energies[dom] = w[col]
                labels[dom] = basis.labels[dom]
        order = np.argsort(energies, kind="stable")
        for k, idx in enumerate(order):
            rows.append((float(B), k, float(energies[idx]), labels[idx]))
    return rows


def format_label(label):
    v, n, m, ms = label
    return f"v{v}|N{n},M{m:+d}>|{'up' if ms > 0 else 'dn'}>"


# -- dipole matrix elements --------------------------------------------------

QUBIT_NAMES = ("g", "gp", "e", "f", "ep")


def dipole_matrix_elements(states, vib_factor=1.0):
    """Table of <x|D_q|y> for x, y in {g, gp, e, f, ep} and q in {-1, 0, +1}.

    Returns ``{(x, y, q): complex}`` for all ordered pairs.  Parity and
    M selection are built into the D_q matrices.
    """
    basis = states.basis
    kets = {n: states.ket(n) for n in QUBIT_NAMES if states.ket(n) is not None}
    table = {}
    for q in (-1, 0, 1):
        dq = dipole_operator(basis, q, vib_factor)
        for x, kx in kets.items():
            dy = dq @ np.array([kets[y] for y in kets]).T
            for col, y in enumerate(kets):
                table[(x, y, q)] = complex(np.vdot(kx, dy[:, col]))
    return table
