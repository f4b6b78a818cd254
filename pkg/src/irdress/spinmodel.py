"""Effective rotating-frame spin models on the dressed qubit {e, D}.

Each site is a spin-1/2 with ``|e>`` as the Z = +1 state (index 0) and the
dark state ``|D>`` as Z = -1 (index 1), so B^dag = |e><D| = (X + iY)/2.
Site 0 is the leftmost tensor factor.  Pair sums run over unordered pairs
i < j throughout.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .errors import ConfigurationError, ConstraintError
from .linalg import HermitianOperator, I2, X, Y, Z, expm_hermitian, site_operator

MAX_SITES = 12
CONSTRAINT_RTOL = 1e-10


@dataclass(frozen=True)
class CouplingSet:
    """Pair couplings J (XX), K (YY), L (XY+YX), M (ZZ) and their sources.

    ``A_cal`` and ``B_cal`` are the real and imaginary parts of the dressed
    e-D dipole element; ``U_dd`` is the bare angular dipole energy and ``U``
    the permanent-dipole ZZ energy.
    """

    J: float
    K: float
    L: float
    M: float = 0.0
    U: float = 0.0
    U_dd: float = 0.0
    A_cal: float = 0.0
    B_cal: float = 0.0


def dressed_dipole(alpha, beta, d_eg_prime):
    """d'_eD = <e|D_0|D> = -sin(alpha) exp(-i beta) d_eg'."""
    return -math.sin(alpha) * np.exp(-1j * beta) * d_eg_prime


def couplings_from_phase(alpha, beta, d_eg_prime, U_dd):
    """J = A^2 U_dd, K = B^2 U_dd, L = -A B U_dd with A + iB = d'_eD.

    These follow from D_0 = A X - B Y on the qubit.
    """
    z = dressed_dipole(alpha, beta, d_eg_prime)
    a, b = float(z.real), float(z.imag)
    return CouplingSet(J=a * a * U_dd, K=b * b * U_dd, L=-a * b * U_dd, U_dd=U_dd, A_cal=a, B_cal=b)


# -- microwave-induced permanent dipole ------------------------------------------


def d_ee_prime(eta=0.0):
    """<e|D_0|e'> for N = 1 -> 2 at leading order in eta."""
    return 2.0 * math.sqrt((1.0 - eta**2) / 15.0)


def permanent_dipole(theta, eta=0.0):
    """<e_-|D_0|e_-> = -2 cos(theta) sin(theta) d_ee'."""
    return -2.0 * math.cos(theta) * math.sin(theta) * d_ee_prime(eta)


@dataclass(frozen=True, eq=False)
class ChirpResult:
    times: np.ndarray
    theta: np.ndarray
    margin: float

    @property
    def adiabatic(self):
        return self.margin < 0.1


def chirped_passage(Omega_mu, Delta_mu_of_t, t_grid):
    """Adiabatic mixing angle of {e, e'} under a monotone detuning chirp.

    Uses 2 theta = atan2(Omega_mu, -Delta_mu), which starts at 0 for a large
    negative detuning and reaches pi/4 at resonance.  The margin is
    max |dDelta/dt| Omega / (2 (Delta^2 + Omega^2)^{3/2}); values well below
    one mean the passage is adiabatic.
    """
    t = np.asarray(t_grid, dtype=float)
    delta = np.asarray(Delta_mu_of_t(t) if callable(Delta_mu_of_t) else Delta_mu_of_t, dtype=float)
    if delta.shape != t.shape:
        raise ConfigurationError("detuning samples must match t_grid")
    steps = np.diff(delta)
    if steps.size and not (np.all(steps >= 0) or np.all(steps <= 0)):
        raise ConfigurationError("Delta_mu(t) must be monotone on the grid (ambiguous branch)")
    theta = 0.5 * np.arctan2(Omega_mu, -delta)
    rate = np.gradient(delta, t) if t.size > 1 else np.zeros_like(t)
    margin = np.abs(rate) * abs(Omega_mu) / (2.0 * (delta**2 + Omega_mu**2) ** 1.5)
    return ChirpResult(t, theta, float(margin.max()))


def zz_couplings(U_dd, d_minus, eps_e=0.0, n_partners=1):
    """ZZ energy U = U_dd d_minus^2, M = U/4 and the per-site field.

    With V = sum_{i<j} U n_i n_j and n = (1 + Z)/2, each pair contributes
    M = U/4 to Z_i Z_j and U/4 to each site's Z field, so a site with
    ``n_partners`` equal neighbours has b = eps_e/2 + n_partners U/4.
    """
    U = U_dd * d_minus**2
    b = 0.5 * eps_e + n_partners * U / 4.0
    return {"U": U, "M": U / 4.0, "b": b, "eps_e_zero_b": -n_partners * U / 2.0}


# -- chains ----------------------------------------------------------------------


@dataclass(frozen=True)
class SpinChainSpec:
    """Sites on a line with dressed-qubit parameters.

    ``d2`` is the dipole energy scale so that U_dd = d2 (1 - 3 cos^2 Theta) / r^3
    in the units of ``positions``.  ``theta_mu = 0`` switches the ZZ extension
    off.
    """

    positions: Tuple[float, ...]
    d2: float = 1.0
    Theta: float = math.pi / 2
    alpha: float = math.pi / 2
    beta: float = 0.0
    d_eg_prime: float = 1.0 / math.sqrt(3.0)
    theta_mu: float = 0.0
    eta: float = 0.0
    eps_e: float = 0.0
    Omega_mu: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(float(x) for x in self.positions))
        if not 1 <= len(self.positions) <= MAX_SITES:
            raise ConfigurationError(f"n_sites must be in 1..{MAX_SITES}")
        if len(set(self.positions)) != len(self.positions):
            raise ConfigurationError("site positions must be distinct")

    @property
    def n_sites(self):
        return len(self.positions)

    def U_dd(self, i, j):
        r = abs(self.positions[i] - self.positions[j])
        return self.d2 * (1.0 - 3.0 * math.cos(self.Theta) ** 2) / r**3


def pair_couplings(spec: SpinChainSpec) -> Dict[Tuple[int, int], CouplingSet]:
    out = {}
    d_minus = permanent_dipole(spec.theta_mu, spec.eta)
    for i in range(spec.n_sites):
        for j in range(i + 1, spec.n_sites):
            udd = spec.U_dd(i, j)
            c = couplings_from_phase(spec.alpha, spec.beta, spec.d_eg_prime, udd)
            U = udd * d_minus**2
            out[(i, j)] = CouplingSet(c.J, c.K, c.L, U / 4.0, U, udd, c.A_cal, c.B_cal)
    return out


def local_fields(spec: SpinChainSpec, couplings):
    """b_i = eps_e/2 plus U_ij/4 from every pair containing i (ZZ extension only)."""
    b = np.full(spec.n_sites, 0.5 * spec.eps_e)
    if spec.theta_mu != 0.0:
        for (i, j), c in couplings.items():
            b[i] += c.U / 4.0
            b[j] += c.U / 4.0
    return b


def constraint_violations(couplings, rtol=CONSTRAINT_RTOL):
    """List of human-readable violations of |J+K| <= |U_dd|, |M| <= |U_dd|/4, L^2 = JK."""
    bad = []
    for pair, c in couplings.items():
        scale = max(abs(c.U_dd), np.finfo(float).tiny)
        if abs(c.J + c.K) > abs(c.U_dd) * (1 + rtol):
            bad.append(f"{pair}: |J+K| = {abs(c.J + c.K):.6g} exceeds |U_dd| = {abs(c.U_dd):.6g}")
        if abs(c.M) > abs(c.U_dd) / 4.0 * (1 + rtol):
            bad.append(f"{pair}: |M| = {abs(c.M):.6g} exceeds |U_dd|/4")
        if abs(c.L**2 - c.J * c.K) > rtol * scale**2:
            bad.append(f"{pair}: L^2 - JK = {c.L**2 - c.J * c.K:.3g}")
    return bad


def build_hamiltonian(spec: SpinChainSpec, couplings=None, b=None, on_violation="raise"):
    """Dense sum_i b_i Z_i + sum_{i<j} J XX + K YY + L (XY + YX) + M ZZ.

    ``couplings`` defaults to :func:`pair_couplings`; user-supplied sets are
    validated against the physical constraints and either raise
    :class:`ConstraintError` or warn, per ``on_violation``.
    """
    n = spec.n_sites
    couplings = pair_couplings(spec) if couplings is None else couplings
    b = local_fields(spec, couplings) if b is None else np.asarray(b, dtype=float)
    bad = constraint_violations(couplings)
    if bad:
        msg = "; ".join(bad)
        if on_violation == "raise":
            raise ConstraintError(msg)
        warnings.warn(msg, stacklevel=2)
    if spec.Omega_mu is not None and spec.theta_mu != 0.0:
        smallest = min((abs(c.J) + abs(c.K) for c in couplings.values()), default=0.0)
        if abs(spec.Omega_mu) >= smallest:
            warnings.warn("Omega_mu is not small compared with the exchange couplings", stacklevel=2)
    ops = {name: [site_operator(p, k, n) for k in range(n)] for name, p in (("X", X), ("Y", Y), ("Z", Z))}
    h = np.zeros((2**n, 2**n), dtype=complex)
    for i in range(n):
        h += b[i] * ops["Z"][i]
    for (i, j), c in couplings.items():
        xi, xj, yi, yj = ops["X"][i], ops["X"][j], ops["Y"][i], ops["Y"][j]
        h += c.J * xi @ xj + c.K * yi @ yj + c.L * (xi @ yj + yi @ xj) + c.M * ops["Z"][i] @ ops["Z"][j]
    return HermitianOperator(h, unit="energy")


def coupling_table(spec: SpinChainSpec, couplings=None):
    couplings = pair_couplings(spec) if couplings is None else couplings
    return [(i, j, c.J, c.K, c.L, c.M, c.U) for (i, j), c in sorted(couplings.items())]


# -- comparison with the full two-molecule dynamics -----------------------------


@dataclass(frozen=True, eq=False)
class ModelDeviation:
    max_distance: float
    max_leakage: float
    times: np.ndarray
    distances: np.ndarray


def model_vs_full(scenario, n_samples=41, initial="DD"):
    """Two-spin model against the full 16-level hold dynamics.

    Both start from the dressed product state ``initial`` (labels in
    {D, e}^2).  The full state is projected on span{D, e}^2 and compared with
    exp(-i H t) of the spin model at ``n_samples`` times across the hold.
    """
    from . import pairgate
    from .dressing import dark_state, rwa_hamiltonian_batch

    alpha = scenario.alpha0
    sch = scenario.schedule()
    p, s = sch.envelopes(np.array([sch.t0]))
    w = float(np.hypot(p[0], s[0]))

    h1 = rwa_hamiltonian_batch(
        np.array([scenario.eps_e]),
        scenario.Delta_p,
        scenario.Delta_s,
        w * math.sin(alpha) * np.exp(1j * scenario.beta),
        w * math.cos(alpha),
    )
    v, _ = pairgate._interaction(scenario, alpha)
    h_full = pairgate.pair_hamiltonian(h1, v.matrix)[0]

    ket_e = np.zeros(4, complex)
    ket_e[3] = 1.0
    ket_d = dark_state(alpha, scenario.beta)
    one = {"e": ket_e, "D": ket_d}
    frame = np.column_stack([np.kron(one[x], one[y]) for x in "eD" for y in "eD"])

    dip = scenario.dipoles()
    d_eg = abs(dip[0][3, 1])
    U_dd = scenario.J / (d_eg**2 * math.sin(alpha) ** 2)
    c = couplings_from_phase(alpha, scenario.beta, d_eg, U_dd)
    spec = SpinChainSpec((0.0, 1.0), alpha=alpha, beta=scenario.beta, d_eg_prime=d_eg, eps_e=scenario.eps_e)
    h_model = build_hamiltonian(spec, {(0, 1): c}).matrix + scenario.eps_e * np.eye(4)

    psi_model0 = np.kron(*(np.eye(2)[0 if x == "e" else 1] for x in initial))
    psi_full0 = frame @ psi_model0
    times = np.linspace(0.0, scenario.hold_time, n_samples)
    wf, vf = np.linalg.eigh(h_full)
    wm, vm = np.linalg.eigh(h_model)
    cf = vf.conj().T @ psi_full0
    cm = vm.conj().T @ psi_model0
    dist = np.empty(n_samples)
    leak = np.empty(n_samples)
    for k, t in enumerate(times):
        full = vf @ (np.exp(-1j * wf * t) * cf)
        model = vm @ (np.exp(-1j * wm * t) * cm)
        proj = frame.conj().T @ full
        dist[k] = np.linalg.norm(proj - model)
        leak[k] = max(0.0, 1.0 - np.vdot(proj, proj).real)
    return ModelDeviation(float(dist.max()), float(leak.max()), times, dist)


def zxx_hamiltonian(J, b, n_sites=2):
    """sum_i b Z_i + sum J X_i X_{i+1} on an open chain (reference model)."""
    ops_x = [site_operator(X, k, n_sites) for k in range(n_sites)]
    h = sum(b * site_operator(Z, k, n_sites) for k in range(n_sites)).astype(complex)
    for i in range(n_sites - 1):
        h = h + J * ops_x[i] @ ops_x[i + 1]
    return h


def evolve(h, psi0, t):
    return expm_hermitian(np.asarray(h), t) @ psi0


def raising():
    """B^dag = |e><D| on the qubit."""
    return 0.5 * (X + 1j * Y)


def number():
    return 0.5 * (I2 + Z)
