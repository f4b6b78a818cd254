"""Two-molecule gate: dressed dipole-dipole coupling and 16-level protocol propagation.

Everything here is in reduced units with the peak Rabi frequency Omega0 as
the unit of energy (and 1/Omega0 as the unit of time).  The single-molecule
level order is ``(g, gp, f, e)`` as in :mod:`irdress.dressing`, and two-body
kets are ``kron(molecule 1, molecule 2)``.
"""

import hashlib
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Union

import numpy as np

from . import dressing
from .dressing import E, F, G, GP, LEVELS
from .errors import ConfigurationError, IntegratorError
from .linalg import HermitianOperator, expm_hermitian
from .molecule import SpinRotBasis, build_basis, dipole_operator
from .units import DEBYE, EPS0, HBAR

log = logging.getLogger(__name__)

I4 = np.eye(4)
MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))
INTERACTION_FORMS = ("truncated-D0", "bare-4level")
LEAK_TOL = 1e-9


@dataclass(frozen=True)
class PairGeometry:
    r: float
    Theta: float = math.pi / 2

    def __post_init__(self):
        if not self.r > 0:
            raise ConfigurationError("separation r must be positive")

    @property
    def angular_factor(self):
        return 1.0 - 3.0 * math.cos(self.Theta) ** 2


def coupling_J(d, r, Theta, eta=0.0, delta=0.0):
    """(1/3) (d^2 / r^3) (1 - 3 cos^2 Theta) (1 - eta^2) (1 - delta^2).

    Units follow the inputs; pass ``d^2/(4 pi eps0)`` already folded into
    ``d`` for SI, or use :func:`coupling_J_si`.
    """
    if not r > 0:
        raise ConfigurationError("separation r must be positive")
    return (d**2 / r**3) * (1.0 - 3.0 * math.cos(Theta) ** 2) * (1.0 - eta**2) * (1.0 - delta**2) / 3.0


def coupling_J_si(d_debye, r_m, Theta=math.pi / 2, eta=0.0, delta=0.0):
    """Exchange coupling J in rad/s for a dipole in debye and separation in metres."""
    d2 = (d_debye * DEBYE) ** 2 / (4.0 * math.pi * EPS0)
    return coupling_J(math.sqrt(d2), r_m, Theta, eta, delta) / HBAR


# -- four-level dipoles ---------------------------------------------------------


def _analytic_kets(a, b):
    """(g, gp, f, e) as kets over the N <= 1, v in {0, 1} basis."""
    basis = build_basis(1, (0, 1))
    kets = np.zeros((4, len(basis)))
    kets[G, basis.index(0, 0, 0, 0.5)] = 1.0
    kets[GP, basis.index(0, 0, 0, -0.5)] = 1.0
    kets[F, basis.index(1, 1, -1, 0.5)] = math.sqrt(1.0 - b)
    kets[F, basis.index(1, 1, 0, -0.5)] = math.sqrt(b)
    kets[E, basis.index(0, 1, 0, -0.5)] = math.sqrt(1.0 - a)
    kets[E, basis.index(0, 1, -1, 0.5)] = -math.sqrt(a)
    return basis, kets


def four_level_dipoles(eta=0.0, eta_prime=None, states=None, vib_factor=1.0):
    """Dimensionless dipole components over (g, gp, f, e).

    Returns ``{q: 4x4 array}`` for q in (-1, 0, +1), with element [x, y]
    equal to <x|D_q|y>.  With ``states`` the dressed eigenstates of the full
    molecule are used; otherwise the leading-order admixtures
    a = eta^2/2 and b = eta_prime^2/2 define e and f.
    """
    if states is not None:
        basis: SpinRotBasis = states.basis
        kets = np.array([states.ket(n) for n in LEVELS])
    else:
        eta_prime = eta if eta_prime is None else eta_prime
        basis, kets = _analytic_kets(0.5 * eta**2, 0.5 * eta_prime**2)
    return {q: np.real_if_close(kets.conj() @ dipole_operator(basis, q, vib_factor) @ kets.T) for q in (-1, 0, 1)}


@dataclass(frozen=True, eq=False)
class DipoleDiagnostics:
    """Largest |element| of the D_{+-1} components in the dressed frame.

    ``d_De``: D<->e, ``d_pm_e``: B(+/-)<->e, ``d_D_pm``: D<->B(+/-),
    ``d_plus_minus``: B+<->B-.
    """

    d_De: float
    d_pm_e: float
    d_D_pm: float
    d_plus_minus: float


def dressed_frame(alpha, beta=0.0):
    """Columns (D, B+, B-, e) at one- and two-photon resonance."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    ph = np.exp(1j * beta)
    dv = np.array([ca, -sa / ph, 0, 0], dtype=complex)
    bp = np.array([sa * ph, ca, 1, 0], dtype=complex) / math.sqrt(2)
    bm = np.array([sa * ph, ca, -1, 0], dtype=complex) / math.sqrt(2)
    ev = np.array([0, 0, 0, 1], dtype=complex)
    return np.column_stack([dv, bp, bm, ev])


def dipole_diagnostics(dipoles, alpha, beta=0.0):
    w = dressed_frame(alpha, beta)
    d_de = d_pme = d_dpm = d_pm = 0.0
    for q in (-1, 1):
        m = np.abs(w.conj().T @ dipoles[q] @ w)
        d_de = max(d_de, m[0, 3], m[3, 0])
        d_pme = max(d_pme, m[1:3, 3].max(), m[3, 1:3].max())
        d_dpm = max(d_dpm, m[0, 1:3].max(), m[1:3, 0].max())
        d_pm = max(d_pm, m[1, 2], m[2, 1])
    return DipoleDiagnostics(float(d_de), float(d_pme), float(d_dpm), float(d_pm))


def d0_operator(dipoles, form):
    """q = 0 dipole over (g, gp, f, e) for the requested interaction form."""
    if form not in INTERACTION_FORMS:
        raise ConfigurationError(f"interaction_form must be one of {INTERACTION_FORMS}")
    d0 = np.array(dipoles[0], dtype=complex)
    if form == "truncated-D0":
        keep = np.zeros_like(d0)
        keep[GP, E], keep[E, GP] = d0[GP, E], d0[E, GP]
        d0 = keep
    return d0


def dipole_dipole_operator(dipoles, U_dd, form="truncated-D0", alpha=None, beta=0.0):
    """V = U_dd D0 (x) D0 on the 16-level pair space.

    For ``form="bare-4level"`` the :class:`DipoleDiagnostics` at mixing angle
    ``alpha`` are returned alongside the operator.
    """
    d0 = d0_operator(dipoles, form)
    op = HermitianOperator(U_dd * np.kron(d0, d0), basis=tuple(a + b for a in LEVELS for b in LEVELS), unit="Omega0")
    if form == "bare-4level":
        return op, dipole_diagnostics(dipoles, math.pi / 2 if alpha is None else alpha, beta)
    return op


# -- scenario and protocol ------------------------------------------------------

Ket = Union[str, np.ndarray]


@dataclass(frozen=True)
class GateScenario:
    """Reduced-unit description of one gate run.

    ``J_T0`` fixes the hold-time exchange coupling J = <ee|V|DD> as a
    multiple of 1/T0; the hold lasts ``tau_e`` (default pi/(4J)).  The hold
    starts when sin(alpha) reaches ``sin_alpha0`` unless ``hold_start`` is
    set.  ``input_state`` is a label in {g, e}^2 or an explicit 16-vector.
    """

    Omega0: float = 1.0
    T0: float = 20.0
    tau: float = 40.0
    J_T0: float = 0.02
    sin_alpha0: float = 0.995
    beta: float = 0.0
    Delta_p: float = 0.0
    Delta_s: float = 0.0
    eps_e: float = 0.0
    eta: float = 0.0
    eta_prime: Optional[float] = None
    vib_factor: float = 1.0
    tau_e: Optional[float] = None
    hold_start: Optional[float] = None
    input_state: Ket = "gg"
    interaction_form: str = "truncated-D0"
    dt: float = 0.05
    method: str = "magnus4"
    n_sigma: float = 5.0
    states: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.interaction_form not in INTERACTION_FORMS:
            raise ConfigurationError(f"interaction_form must be one of {INTERACTION_FORMS}")
        if self.tau_e is not None and not self.tau_e > 0:
            raise ConfigurationError("tau_e must be positive")
        if not 0 < self.sin_alpha0 <= 1:
            raise ConfigurationError("sin_alpha0 must lie in (0, 1]")
        if self.J_T0 == 0:
            raise ConfigurationError("J_T0 must be nonzero")
        if isinstance(self.input_state, str) and (
            len(self.input_state) != 2 or set(self.input_state) - {"g", "e"}
        ):
            raise ConfigurationError("input_state label must be in {g,e}x{g,e}")

    @property
    def J(self):
        return self.J_T0 / self.T0

    @property
    def hold_time(self):
        return self.tau_e if self.tau_e is not None else math.pi / (4.0 * abs(self.J))

    @property
    def alpha0(self):
        return math.asin(self.sin_alpha0)

    @property
    def delta(self):
        return math.pi / 2 - self.alpha0

    def schedule(self):
        return dressing.stirap_schedule(
            self.Omega0,
            self.T0,
            self.tau,
            self.hold_time,
            beta=self.beta,
            sin_alpha0=min(self.sin_alpha0, 1 - 1e-16),
            hold_start=self.hold_start,
            Delta_p=self.Delta_p,
            Delta_s=self.Delta_s,
            n_sigma=self.n_sigma,
        )

    def dipoles(self):
        return four_level_dipoles(self.eta, self.eta_prime, self.states, self.vib_factor)

    def to_dict(self):
        d = asdict(replace(self, states=None))
        d.pop("states")
        if isinstance(self.input_state, np.ndarray):
            d["input_state"] = [[z.real, z.imag] for z in self.input_state]
        return d

    def digest(self):
        blob = json.dumps(self.to_dict(), sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def pair_hamiltonian(h1, v):
    """H1 (x) I + I (x) H1 + V for stacked one-body Hamiltonians ``h1``."""
    n = h1.shape[0]
    hh = np.einsum("tab,cd->tacbd", h1, I4).reshape(n, 16, 16)
    hh += np.einsum("ab,tcd->tacbd", I4, h1).reshape(n, 16, 16)
    return hh + v


def _interaction(scenario: GateScenario, alpha0):
    dip = scenario.dipoles()
    d_eg = abs(dip[0][E, GP])
    if d_eg == 0:
        raise ConfigurationError("vanishing e-gp dipole; no exchange coupling")
    U_dd = scenario.J / (d_eg**2 * math.sin(alpha0) ** 2)
    out = dipole_dipole_operator(dip, U_dd, scenario.interaction_form, alpha0, scenario.beta)
    return out if isinstance(out, tuple) else (out, None)


def _single(label, alpha, beta):
    if label == "e":
        v = np.zeros(4, complex)
        v[E] = 1.0
        return v
    return dressing.dark_state(alpha, beta)


def _exchange_target(psi, one_e, one_d, theta=math.pi / 4):
    """exp(-i theta X (x) X) on span{D, e}^2, with X = |D><e| + |e><D|."""
    x = np.outer(one_d, one_e.conj()) + np.outer(one_e, one_d.conj())
    xx = np.kron(x, x)
    return math.cos(theta) * psi - 1j * math.sin(theta) * (xx @ psi)


def target_states(scenario: GateScenario, alpha0):
    """Inputs and ideal outputs in the rotating frame (t1) and the computational frame (t_f)."""
    ket_e = _single("e", 0, 0)
    ket_g = _single("g", 0.0, 0.0)
    ket_d = _single("g", alpha0, scenario.beta)
    if isinstance(scenario.input_state, str):
        a, b = scenario.input_state
        psi_comp = np.kron(_single(a, 0.0, 0.0), _single(b, 0.0, 0.0))
        psi_rot = np.kron(_single(a, alpha0, scenario.beta), _single(b, alpha0, scenario.beta))
    else:
        psi_comp = np.asarray(scenario.input_state, dtype=complex)
        if psi_comp.shape != (16,):
            raise ConfigurationError("explicit input_state must be a 16-vector")
        w = np.eye(4, dtype=complex)
        w[:, G] = ket_d
        psi_rot = np.kron(w, w) @ psi_comp
    return {
        "psi0": psi_comp,
        "rot": _exchange_target(psi_rot, ket_e, ket_d),
        "comp": _exchange_target(psi_comp, ket_e, ket_g),
    }


def fidelity(psi, target):
    """|<target|psi>| for normalised copies of both kets."""
    psi = np.asarray(psi, dtype=complex)
    target = np.asarray(target, dtype=complex)
    if psi.shape != target.shape:
        raise ConfigurationError("fidelity needs kets of equal dimension")
    n1, n2 = np.linalg.norm(psi), np.linalg.norm(target)
    if n1 == 0 or n2 == 0:
        raise ConfigurationError("fidelity of a zero-norm ket")
    return float(min(1.0, abs(np.vdot(target, psi)) / (n1 * n2)))


def computational_projector():
    p = np.zeros(4)
    p[G] = p[E] = 1.0
    return np.kron(p, p)


@dataclass(frozen=True, eq=False)
class GateResult:
    F_rot: float
    F_comp: float
    leakage: float
    psi_t1: np.ndarray
    psi_tf: np.ndarray
    schedule: dressing.PulseSchedule
    times: Optional[np.ndarray] = None
    states: Optional[np.ndarray] = None
    diagnostics: Optional[DipoleDiagnostics] = None

    def summary(self):
        out = {"F_rot": self.F_rot, "F_comp": self.F_comp, "leakage": self.leakage}
        if self.diagnostics is not None:
            out["dipole_diagnostics"] = asdict(self.diagnostics)
        return out


def hold_propagator(scenario: GateScenario):
    """Exact 16x16 propagator across the hold window (constant Hamiltonian).

    The frozen Rabi frequencies have the schedule's total amplitude at t0
    and mixing angle ``scenario.alpha0``, so ``sin_alpha0 = 1`` gives the
    ideal fully transferred case.
    """
    sch = scenario.schedule()
    p, s = sch.envelopes(np.array([sch.t0]))
    w = float(np.hypot(p[0], s[0]))
    a = scenario.alpha0
    h1 = dressing.rwa_hamiltonian_batch(
        np.array([scenario.eps_e]),
        scenario.Delta_p,
        scenario.Delta_s,
        w * math.sin(a) * np.exp(1j * scenario.beta),
        w * math.cos(a),
    )
    v, _ = _interaction(scenario, a)
    return expm_hermitian(pair_hamiltonian(h1, v.matrix)[0], scenario.hold_time)


def restricted_hold_propagator(scenario: GateScenario):
    """Hold propagator restricted to (DD, De, eD, ee)."""
    ket_d = _single("g", scenario.alpha0, scenario.beta)
    ket_e = _single("e", 0, 0)
    basis = np.column_stack([np.kron(x, y) for x in (ket_d, ket_e) for y in (ket_d, ket_e)])
    return basis.conj().T @ hold_propagator(scenario) @ basis


def _run_segment(h_of_t, psi, grid, method, record):
    us = dressing.step_propagators(h_of_t, grid, method)
    if record:
        traj = np.empty((len(grid), psi.size), complex)
        traj[0] = psi
        for k, u in enumerate(us):
            psi = u @ psi
            traj[k + 1] = psi
        return psi, traj
    for u in us:
        psi = u @ psi
    return psi, None


def run_protocol(scenario: GateScenario, record=False, hold_samples=50):
    """Ramp in, hold for tau_e, ramp out; return fidelities and leakage.

    ``F_rot`` is measured at t1 against exp(-i pi/4 X X) applied to the
    dark-state image of the input; ``F_comp`` at t_f against the same gate on
    the computational input.  ``leakage`` is the population outside
    span{g, e}^2 at t_f.
    """
    sch = scenario.schedule()
    alpha0 = float(sch.mixing_angle(sch.t0))
    v, diag = _interaction(scenario, scenario.alpha0)
    vm = v.matrix
    targets = target_states(scenario, alpha0)
    psi = targets["psi0"] / np.linalg.norm(targets["psi0"])

    def h(ts):
        return pair_hamiltonian(sch.hamiltonian(ts, scenario.eps_e), vm)

    ramp_in, hold, ramp_out = dressing.protocol_grid(sch, scenario.dt, hold_samples)
    psi, tr_in = _run_segment(h, psi, ramp_in, scenario.method, record)
    h_hold = h(np.array([sch.t0]))[0]
    if record:
        u_step = expm_hermitian(h_hold, hold[1] - hold[0])
        tr_hold = [psi]
        for _ in hold[1:]:
            tr_hold.append(u_step @ tr_hold[-1])
        tr_hold = np.array(tr_hold)
        psi = tr_hold[-1]
    else:
        psi = expm_hermitian(h_hold, sch.hold_duration) @ psi
    psi_t1 = psi
    psi, tr_out = _run_segment(h, psi, ramp_out, scenario.method, record)

    drift = abs(np.linalg.norm(psi) - 1.0)
    if drift > dressing.NORM_TOL or not np.all(np.isfinite(psi)):
        raise IntegratorError("norm not preserved over the gate protocol", {"norm_drift": float(drift)})
    leak = float(max(0.0, 1.0 - np.sum(computational_projector() * np.abs(psi) ** 2)))
    times = states = None
    if record:
        times = np.concatenate([ramp_in, hold[1:], ramp_out[1:]])
        states = np.concatenate([tr_in, tr_hold[1:], tr_out[1:]])
    return GateResult(
        F_rot=fidelity(psi_t1, targets["rot"]),
        F_comp=fidelity(psi, targets["comp"]),
        leakage=leak,
        psi_t1=psi_t1,
        psi_tf=psi,
        schedule=sch,
        times=times,
        states=states,
        diagnostics=diag,
    )


def protocol_unitary(scenario: GateScenario):
    """16x16 propagator U(t_f, t_i) of the full ramp-hold-ramp protocol."""
    sch = scenario.schedule()
    v, _ = _interaction(scenario, scenario.alpha0)
    vm = v.matrix

    def h(ts):
        return pair_hamiltonian(sch.hamiltonian(ts, scenario.eps_e), vm)

    ramp_in, _, ramp_out = dressing.protocol_grid(sch, scenario.dt)
    u = np.eye(16, dtype=complex)
    u, _ = _run_segment(h, u, ramp_in, scenario.method, False)
    u = expm_hermitian(h(np.array([sch.t0]))[0], sch.hold_duration) @ u
    u, _ = _run_segment(h, u, ramp_out, scenario.method, False)
    return u


def convergence_check(scenario: GateScenario, tol=1e-8):
    """State distance at t_f between steps dt and dt/2; raises if above ``tol``."""
    a = run_protocol(scenario).psi_tf
    b = run_protocol(replace(scenario, dt=scenario.dt / 2)).psi_tf
    dist = float(np.linalg.norm(a - b))
    if dist > tol:
        raise IntegratorError("step halving did not converge", {"dt": scenario.dt, "distance": dist})
    return dist


# -- sweeps ------------------------------------------------------------------------

AXES = ("Delta_diff", "Delta_sum", "Delta_p", "Delta_s", "tau", "T0", "J_T0", "sin_alpha0", "eps_e", "beta")


def apply_axis(scenario: GateScenario, name, value):
    """Scenario with one sweep coordinate set (detuning sum/difference aware)."""
    if name == "Delta_diff":
        s = scenario.Delta_p + scenario.Delta_s
        return replace(scenario, Delta_p=0.5 * (s + value), Delta_s=0.5 * (s - value))
    if name == "Delta_sum":
        d = scenario.Delta_p - scenario.Delta_s
        return replace(scenario, Delta_p=0.5 * (value + d), Delta_s=0.5 * (value - d))
    if name not in AXES:
        raise ConfigurationError(f"unknown sweep axis {name!r}; choose from {AXES}")
    return replace(scenario, **{name: float(value)})


def _cell(args):
    scenario, name1, v1, name2, v2, metric = args
    try:
        sc = apply_axis(apply_axis(scenario, name1, v1), name2, v2)
        res = run_protocol(sc)
        return getattr(res, metric), res.leakage, None
    except Exception as exc:  # one bad cell must not abort the scan
        return math.nan, math.nan, f"{type(exc).__name__}: {exc}"


@dataclass(frozen=True, eq=False)
class FidelityMap:
    axis1: str
    grid1: np.ndarray
    axis2: str
    grid2: np.ndarray
    values: np.ndarray
    leakage: np.ndarray
    metric: str
    metadata: dict

    def rows(self):
        for i, a in enumerate(self.grid1):
            for j, b in enumerate(self.grid2):
                yield float(a), float(b), float(self.values[i, j]), float(self.leakage[i, j])

    def to_csv(self, path_or_buf):
        lines = [f"{self.axis1},{self.axis2},fidelity,leakage"]
        lines += [f"{a:.10g},{b:.10g},{f:.12g},{lk:.6g}" for a, b, f, lk in self.rows()]
        text = "\n".join(lines) + "\n"
        if hasattr(path_or_buf, "write"):
            path_or_buf.write(text)
        else:
            with open(path_or_buf, "w") as fh:
                fh.write(text)
        return text


def _sweep_key(scenario, n1, g1, n2, g2, metric):
    blob = json.dumps(
        [scenario.digest(), n1, g1.tolist(), n2, g2.tolist(), metric], sort_keys=True
    ).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _load_checkpoint(path, key):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return []
    if data.get("key") != key:
        log.info("ignoring checkpoint %s from a different sweep", path)
        return []
    return [tuple(c) for c in data["cells"]]


def _save_checkpoint(path, key, cells):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"key": key, "cells": [list(c) for c in cells]}, fh)
    os.replace(tmp, path)


def sweep(scenario: GateScenario, axis1, axis2, workers=1, metric="F_rot", checkpoint=None, checkpoint_every=200):
    """Fidelity on a rectangular grid, row-major over (axis1, axis2).

    ``axis1`` and ``axis2`` are ``(name, values)`` pairs.  Cells that raise
    are stored as NaN and listed in ``metadata["failed"]``.  Results do not
    depend on ``workers``.  With a ``checkpoint`` path, finished cells are
    saved every ``checkpoint_every`` cells and a rerun of the same sweep
    resumes from them.
    """
    (n1, g1), (n2, g2) = axis1, axis2
    g1, g2 = np.asarray(g1, float), np.asarray(g2, float)
    if g1.size == 0 or g2.size == 0:
        raise ConfigurationError("sweep grids must be nonempty")
    if metric not in ("F_rot", "F_comp"):
        raise ConfigurationError("metric must be F_rot or F_comp")
    for name in (n1, n2):
        if name not in AXES:
            raise ConfigurationError(f"unknown sweep axis {name!r}; choose from {AXES}")
    jobs = [(scenario, n1, a, n2, b, metric) for a in g1 for b in g2]
    key = _sweep_key(scenario, n1, g1, n2, g2, metric)
    out = _load_checkpoint(checkpoint, key) if checkpoint else []
    workers = workers or os.cpu_count() or 1
    chunk = max(1, checkpoint_every) if checkpoint else len(jobs)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while len(out) < len(jobs):
            batch = jobs[len(out) : len(out) + chunk]
            if pool is not None:
                out.extend(pool.map(_cell, batch, chunksize=max(1, len(batch) // (4 * workers))))
            else:
                out.extend(_cell(j) for j in batch)
            if checkpoint:
                _save_checkpoint(checkpoint, key, out)
    finally:
        if pool is not None:
            pool.shutdown()
    vals = np.array([o[0] for o in out], dtype=float).reshape(g1.size, g2.size)
    leak = np.array([o[1] for o in out], dtype=float).reshape(g1.size, g2.size)
    failed = [
        {"index": [k // g2.size, k % g2.size], "error": o[2]} for k, o in enumerate(out) if o[2] is not None
    ]
    for f in failed:
        log.warning("sweep cell %s failed: %s", f["index"], f["error"])
    meta = {
        "scenario": scenario.to_dict(),
        "scenario_hash": scenario.digest(),
        "integrator": {"method": scenario.method, "dt": scenario.dt},
        "metric": metric,
        "failed": failed,
    }
    return FidelityMap(n1, g1, n2, g2, vals, leak, metric, meta)


def symmetric_grid(half_width, n):
    return np.linspace(-half_width, half_width, n)
