"""Rotating-frame single-molecule dynamics: RWA Hamiltonian, STIRAP pulses, dark states.

All quantities in this module are in reduced units (typically the peak
Rabi frequency Omega0 = 1).  Level order is ``(g, gp, f, e)``.

Phase convention: a complex Rabi frequency enters as
``<g|H|f> = Omega_p`` and ``<gp|H|f> = Omega_s``, so with
``beta = arg(Omega_p) - arg(Omega_s)`` the two-photon-resonant dark state is
``cos(alpha)|g> - exp(-i beta) sin(alpha)|gp>``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ConfigurationError, IntegratorError
from .linalg import HermitianOperator, expm_hermitian

LEVELS = ("g", "gp", "f", "e")
G, GP, F, E = range(4)

NORM_TOL = 1e-9

Detuning = Union[float, Callable[[np.ndarray], np.ndarray]]


def _eval(x, t):
    if callable(x):
        return np.broadcast_to(np.asarray(x(t), dtype=float), np.shape(t))
    return np.full(np.shape(t), float(x))


def rwa_hamiltonian_batch(eps_e, Delta_p, Delta_s, Omega_p, Omega_s):
    """Stacked 4x4 RWA Hamiltonians; every argument broadcasts to shape (n,)."""
    eps_e, Delta_p, Delta_s, Omega_p, Omega_s = np.broadcast_arrays(
        np.asarray(eps_e, float),
        np.asarray(Delta_p, float),
        np.asarray(Delta_s, float),
        np.asarray(Omega_p, complex),
        np.asarray(Omega_s, complex),
    )
    h = np.zeros(eps_e.shape + (4, 4), dtype=complex)
    h[..., GP, GP] = Delta_p - Delta_s
    h[..., F, F] = Delta_p
    h[..., E, E] = eps_e
    h[..., G, F] = Omega_p
    h[..., F, G] = np.conj(Omega_p)
    h[..., GP, F] = Omega_s
    h[..., F, GP] = np.conj(Omega_s)
    return h


def rwa_hamiltonian(eps_e, Delta_p, Delta_s, Omega_p, Omega_s):
    """One-body rotating-frame Hamiltonian over (g, gp, f, e).

    Diagonal (0, Delta_p - Delta_s, Delta_p, eps_e); the pump couples g-f,
    the Stokes field couples gp-f, and e is left uncoupled.
    """
    return HermitianOperator(
        rwa_hamiltonian_batch(eps_e, Delta_p, Delta_s, Omega_p, Omega_s), basis=LEVELS, unit="Omega0"
    )


def mixing_angle(Omega_p, Omega_s):
    return np.arctan2(np.abs(Omega_p), np.abs(Omega_s))


def dark_state(alpha, beta=0.0):
    """cos(alpha)|g> - exp(-i beta) sin(alpha)|gp> as a 4-vector."""
    d = np.zeros(4, dtype=complex)
    d[G] = math.cos(alpha)
    d[GP] = -np.exp(-1j * beta) * math.sin(alpha)
    return d


@dataclass(frozen=True)
class PulseSchedule:
    """Gaussian STIRAP ramps with a hold window and a mirrored return.

    Stokes is centred at ``tau_s`` and pump at ``tau_p``.  Both envelopes are
    frozen at their ``t0`` values on ``[t0, t1]``; after ``t1`` the ramp is
    replayed backwards, so Omega(t) = Omega_ramp(t0 - (t - t1)).
    """

    Omega0: float
    T0: float
    tau_p: float
    tau_s: float
    t_i: float
    t0: float
    t1: float
    t_f: float
    beta: float = 0.0
    Delta_p: Detuning = 0.0
    Delta_s: Detuning = 0.0

    @property
    def adiabaticity(self):
        return self.Omega0 * self.T0

    @property
    def hold_duration(self):
        return self.t1 - self.t0

    def ramp_time(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= self.t0, t, np.where(t <= self.t1, self.t0, self.t0 - (t - self.t1)))

    def envelopes(self, t):
        """Real envelopes (|Omega_p|, |Omega_s|) at times ``t``."""
        tt = self.ramp_time(t)
        two_t2 = 2.0 * self.T0**2
        p = self.Omega0 * np.exp(-((tt - self.tau_p) ** 2) / two_t2)
        s = self.Omega0 * np.exp(-((tt - self.tau_s) ** 2) / two_t2)
        return p, s

    def omegas(self, t):
        """Complex Rabi frequencies; the relative phase sits on the pump."""
        p, s = self.envelopes(t)
        return p * np.exp(1j * self.beta), s.astype(complex)

    def detunings(self, t):
        return _eval(self.Delta_p, t), _eval(self.Delta_s, t)

    def mixing_angle(self, t):
        p, s = self.envelopes(t)
        return np.arctan2(p, s)

    def hamiltonian(self, t, eps_e=0.0):
        """Stacked one-body Hamiltonians at the times ``t``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        op, os_ = self.omegas(t)
        dp, ds = self.detunings(t)
        return rwa_hamiltonian_batch(_eval(eps_e, t), dp, ds, op, os_)

    def with_detunings(self, Delta_p, Delta_s):
        from dataclasses import replace

        return replace(self, Delta_p=Delta_p, Delta_s=Delta_s)


def hold_start_for_angle(T0, tau, sin_alpha0):
    """Time at which tan(alpha) = Omega_p/Omega_s reaches the target.

    With tau_p = -tau_s = tau/2 the ratio is exp(t tau / T0^2).
    """
    if tau <= 0:
        raise ConfigurationError("a fixed mixing-angle target needs tau > 0")
    if not 0 < sin_alpha0 < 1:
        raise ConfigurationError("sin_alpha0 must lie in (0, 1)")
    tan_a = sin_alpha0 / math.sqrt(1.0 - sin_alpha0**2)
    return T0**2 * math.log(tan_a) / tau


def stirap_schedule(
    Omega0,
    T0,
    tau,
    hold_duration,
    beta=0.0,
    sin_alpha0=0.995,
    hold_start=None,
    Delta_p=0.0,
    Delta_s=0.0,
    n_sigma=5.0,
):
    """Counter-intuitive (Stokes first) Gaussian pulse pair with a hold window.

    The hold starts when sin(alpha) reaches ``sin_alpha0`` unless an explicit
    ``hold_start`` time is given.  The ramp begins ``n_sigma`` widths before
    the earlier pulse centre.
    """
    if Omega0 <= 0 or T0 <= 0:
        raise ConfigurationError("Omega0 and T0 must be positive")
    if tau < 0:
        raise ConfigurationError("tau must be >= 0 (Stokes precedes pump)")
    if hold_duration < 0:
        raise ConfigurationError("hold_duration must be >= 0")
    if Omega0 * T0 < 10:
        warnings.warn(f"Omega0*T0 = {Omega0 * T0:.3g} < 10: transfer may not be adiabatic", stacklevel=2)
    tau_p, tau_s = 0.5 * tau, -0.5 * tau
    t0 = hold_start if hold_start is not None else hold_start_for_angle(T0, tau, sin_alpha0)
    t_i = min(tau_s, t0) - n_sigma * T0
    t1 = t0 + hold_duration
    t_f = t1 + (t0 - t_i)
    return PulseSchedule(Omega0, T0, tau_p, tau_s, t_i, t0, t1, t_f, beta, Delta_p, Delta_s)


@dataclass(frozen=True, eq=False)
class DressedBasis:
    D: np.ndarray
    Bplus: np.ndarray
    Bminus: np.ndarray
    alpha: float
    eps_D: float
    eps_plus: float
    eps_minus: float


def bright_energies(Delta_p, Omega_p, Omega_s):
    """Quasi-energies of the bright pair at two-photon resonance.

    Solves eps (eps - Delta_p) = |Omega_p|^2 + |Omega_s|^2 for the Hamiltonian
    of :func:`rwa_hamiltonian`.
    """
    w2 = abs(Omega_p) ** 2 + abs(Omega_s) ** 2
    root = math.sqrt(Delta_p**2 + 4.0 * w2)
    return 0.5 * (Delta_p + root), 0.5 * (Delta_p - root)


def dressed_basis(Delta_p, Delta_s, Omega_p, Omega_s):
    """Dark and bright states of the {g, gp, f} block.

    At two-photon resonance the closed forms are used; otherwise the block is
    diagonalised and the eigenvector closest to the resonant dark state is
    returned as ``D``.
    """
    alpha = float(mixing_angle(Omega_p, Omega_s))
    beta = float(np.angle(Omega_p) - np.angle(Omega_s)) if abs(Omega_p) and abs(Omega_s) else 0.0
    d_res = dark_state(alpha, beta)
    if Delta_p == Delta_s:
        w = math.sqrt(abs(Omega_p) ** 2 + abs(Omega_s) ** 2)
        ep, em = bright_energies(Delta_p, Omega_p, Omega_s)
        if w == 0:
            bc = np.zeros(4, complex)
            bc[GP] = 1.0
        else:
            bc = np.zeros(4, complex)
            bc[G] = Omega_p / w
            bc[GP] = Omega_s / w
        fket = np.zeros(4, complex)
        fket[F] = 1.0
        bright = []
        for eps in (ep, em):
            vec = w * bc + eps * fket
            nrm = np.linalg.norm(vec)
            bright.append(vec / nrm if nrm else fket)
        return DressedBasis(d_res, bright[0], bright[1], alpha, 0.0, ep, em)
    h = rwa_hamiltonian_batch(0.0, Delta_p, Delta_s, Omega_p, Omega_s)[:3, :3]
    w, vecs = np.linalg.eigh(h)
    vecs = np.vstack([vecs, np.zeros((1, 3))])
    k = int(np.argmax(np.abs(vecs.conj().T @ d_res)))
    dvec = vecs[:, k] * np.exp(-1j * np.angle(np.vdot(d_res, vecs[:, k])))
    rest = [j for j in range(3) if j != k]
    hi, lo = (rest[1], rest[0]) if w[rest[1]] >= w[rest[0]] else (rest[0], rest[1])
    return DressedBasis(dvec, vecs[:, hi], vecs[:, lo], alpha, float(w[k]), float(w[hi]), float(w[lo]))


# -- propagation ---------------------------------------------------------------

C1 = 0.5 - math.sqrt(3.0) / 6.0
C2 = 0.5 + math.sqrt(3.0) / 6.0


def step_propagators(h_of_t, t_grid, method="magnus4"):
    """Unitaries for each interval of ``t_grid``.

    ``h_of_t`` maps an array of times to stacked Hamiltonians.  ``midpoint``
    exponentiates H at the interval midpoint; ``magnus4`` uses the two-point
    Gauss fourth-order Magnus step.  Both are exactly unitary.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    dt = np.diff(t_grid)
    if dt.size and np.any(dt <= 0):
        raise ConfigurationError("t_grid must be strictly increasing")
    if dt.size == 0:
        return np.zeros((0, 0, 0), dtype=complex)
    t = t_grid[:-1]
    if method == "midpoint":
        h = h_of_t(t + 0.5 * dt)
        heff = h
    elif method == "magnus4":
        a = h_of_t(t + C1 * dt)
        b = h_of_t(t + C2 * dt)
        comm = b @ a - a @ b
        heff = 0.5 * (a + b) - 1j * (math.sqrt(3.0) / 12.0) * dt[:, None, None] * comm
    else:
        raise ConfigurationError(f"unknown integrator {method!r}")
    if not np.all(np.isfinite(heff)):
        raise IntegratorError("Hamiltonian is not finite on the grid", {"method": method})
    w, v = np.linalg.eigh(heff)
    phases = np.exp(-1j * w * dt[:, None])
    return (v * phases[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def _as_batched(h_of_t):
    """Wrap a scalar-time generator so it accepts arrays."""

    def batched(ts):
        ts = np.asarray(ts, dtype=float)
        try:
            out = np.asarray(h_of_t(ts))
            if out.ndim == 3 and out.shape[0] == ts.size:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([np.asarray(h_of_t(float(t))) for t in ts])

    return batched


def propagate(h_of_t, psi0, t_grid, method="magnus4"):
    """Integrate i dpsi/dt = H(t) psi on ``t_grid``.

    Returns the trajectory as an array of shape ``(len(t_grid), dim)``.
    Raises :class:`IntegratorError` if the norm drifts by more than 1e-9.
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    traj = np.empty((len(t_grid), psi.size), dtype=complex)
    traj[0] = psi
    for k, u in enumerate(step_propagators(_as_batched(h_of_t), t_grid, method)):
        psi = u @ psi
        traj[k + 1] = psi
    drift = np.max(np.abs(np.linalg.norm(traj, axis=1) - np.linalg.norm(psi0)))
    if drift > NORM_TOL:
        raise IntegratorError("norm not preserved", {"norm_drift": float(drift)})
    return traj


def propagate_final(h_of_t, psi0, t_grid, method="magnus4"):
    """Like :func:`propagate` but keeps only the final state."""
    psi = np.asarray(psi0, dtype=complex).copy()
    for u in step_propagators(_as_batched(h_of_t), t_grid, method):
        psi = u @ psi
    return psi


def uniform_grid(ta, tb, dt):
    n = max(1, int(math.ceil((tb - ta) / dt - 1e-12)))
    return np.linspace(ta, tb, n + 1)


def protocol_grid(schedule, dt, hold_samples=2):
    """Piecewise-uniform grid with nodes exactly at t_i, t0, t1 and t_f."""
    ramp_in = uniform_grid(schedule.t_i, schedule.t0, dt)
    hold = np.linspace(schedule.t0, schedule.t1, max(2, hold_samples))
    ramp_out = uniform_grid(schedule.t1, schedule.t_f, dt)
    return ramp_in, hold, ramp_out


@dataclass(frozen=True, eq=False)
class StirapTrajectory:
    times: np.ndarray
    states: np.ndarray
    mixing_angle: np.ndarray

    @property
    def populations(self):
        return np.abs(self.states) ** 2

    def at(self, t):
        return self.states[int(np.argmin(np.abs(self.times - t)))]


def stirap_trajectory(schedule, psi0=None, dt=0.05, eps_e=0.0, hold_samples=50, method="magnus4"):
    """Single-molecule evolution through ramp, hold and mirrored ramp."""
    psi = np.zeros(4, complex)
    psi[G] = 1.0
    if psi0 is not None:
        psi = np.asarray(psi0, dtype=complex)

    def h(ts):
        return schedule.hamiltonian(ts, eps_e)

    pieces, times = [], []
    for k, grid in enumerate(protocol_grid(schedule, dt, hold_samples)):
        if k == 1:
            u = expm_hermitian(h(np.array([schedule.t0]))[0], grid[1] - grid[0])
            seg = [psi]
            for _ in grid[1:]:
                seg.append(u @ seg[-1])
            seg = np.array(seg)
        else:
            seg = propagate(h, psi, grid, method)
        psi = seg[-1]
        start = 0 if not pieces else 1
        pieces.append(seg[start:])
        times.append(grid[start:])
    times = np.concatenate(times)
    states = np.concatenate(pieces)
    return StirapTrajectory(times, states, schedule.mixing_angle(times))
