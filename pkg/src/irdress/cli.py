"""Command-line driver: ``irdress <subcommand> [--config FILE] [--set key=value ...]``.

Configuration is a flat JSON object.  Every key is listed in :data:`SCHEMA`
with its default; unknown keys are rejected.  Keys carrying physical
quantities end in their unit (``_gauss``, ``_MHz``, ``_nm`` ...); keys in
units of the peak Rabi frequency end in ``_Omega0`` (times are quoted as
``T0_Omega0 = T0 * Omega0``).  ``--set`` values override the file.

Every run writes its outputs plus ``<subcommand>.meta.json`` holding the
resolved configuration and a SHA-256 of each output file.
"""

import argparse
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import dressing, feasibility, matchgate, molecule, pairgate, spinmodel
from .errors import ConfigurationError, IRDressError
from .plotdata import atomic_write, csv_text, emit_plotdata, pair_trajectory_csv
from .registry import get_molecule
from .units import mhz_to_rad, rad_to_mhz

log = logging.getLogger("irdress")

SUBCOMMANDS = ("spectrum", "crossing", "stirap", "gate", "sweep", "spinmodel", "matchgate-check", "feasibility")

#: key -> (default, help)
SCHEMA = {
    "species": ("SrF", "registry key"),
    "registry_path": (None, "alternative registry JSON file"),
    "output_dir": (".", "directory for outputs"),
    "workers": (1, "sweep worker processes"),
    "g_S": (2.0, "electron g-factor"),
    # spectrum / crossing
    "B_min_gauss": (4000.0, "spectrum scan start"),
    "B_max_gauss": (6500.0, "spectrum scan end"),
    "n_fields": (126, "spectrum scan points"),
    "U_LS_MHz": (0.0, "tensor lightshift"),
    "N_max": (1, "highest rotational level in the basis"),
    # pulses and gate (reduced units)
    "Omega0": (1.0, "peak Rabi frequency (sets the unit)"),
    "T0_Omega0": (20.0, "Gaussian width"),
    "tau_Omega0": (40.0, "pump-Stokes delay"),
    "hold_Omega0": (None, "hold duration; default pi/(4J)"),
    "hold_start_Omega0": (None, "explicit hold start time; default from sin_alpha0"),
    "sin_alpha0": (0.995, "mixing-angle target at hold start"),
    "beta_rad": (0.0, "relative Raman phase"),
    "Delta_p_Omega0": (0.0, "pump detuning"),
    "Delta_s_Omega0": (0.0, "Stokes detuning"),
    "eps_e_Omega0": (0.0, "qubit gap in the rotating frame"),
    "J_T0": (0.02, "exchange coupling times T0"),
    "eta": (0.0, "spin-rotation parameter for the analytic dipoles"),
    "use_molecule": (False, "take dipoles from the species at its crossing field"),
    "input_state": ("gg", "label in {g,e}^2"),
    "interaction_form": ("truncated-D0", "truncated-D0 or bare-4level"),
    "dt_Omega0": (0.05, "integrator step"),
    "method": ("magnus4", "magnus4 or midpoint"),
    # sweep
    "axis1": ("Delta_diff", "first sweep axis"),
    "axis1_min": (-0.05, ""),
    "axis1_max": (0.05, ""),
    "axis1_n": (41, ""),
    "axis2": ("Delta_sum", "second sweep axis"),
    "axis2_min": (-0.4, ""),
    "axis2_max": (0.4, ""),
    "axis2_n": (41, ""),
    "metric": ("F_rot", "F_rot or F_comp"),
    "checkpoint_every": (200, "cells between sweep checkpoints"),
    # spin model
    "positions_sites": ([0.0, 1.0], "site coordinates in lattice units"),
    "Theta_rad": (math.pi / 2, "angle between quantisation axis and chain"),
    "alpha_rad": (math.pi / 2, "dark-state mixing angle"),
    "theta_mu_rad": (0.0, "microwave mixing angle (0 disables ZZ)"),
    "U_dd_unit": (1.0, "dipole energy at unit separation"),
    "spectrum": (False, "also emit the dense spectrum"),
    # matchgate
    "gate_name": ("cnot", f"one of {sorted(matchgate.NAMED_GATES)}"),
    "matrix_csv": (None, "CSV file with 16 rows of re,im"),
    # feasibility
    "d_debye": (1.0, "permanent dipole"),
    "r_nm": (500.0, "intermolecular separation"),
    "I_LS_W_cm2": (1e5, "near-IR intensity"),
    "re_alpha_a03": (100.0, "Re(alpha)"),
    "rho": (1e-7, "Im(alpha)/Re(alpha)"),
    "T0_ns": (100.0, "physical pulse width"),
    "transition_dipole_debye": (0.1, "vibrational transition dipole"),
    "trap_freq_kHz": (50.0, "trap frequency"),
    "sigma_um": (2.0, "near-IR beam width"),
    "A0_MHz": (1.0, "peak lightshift of the beam"),
    "t_heat_us": (0.3183, "heating evaluation time"),
}


def schema_document():
    return {k: {"default": d, "help": h} for k, (d, h) in SCHEMA.items()}


@dataclass
class RunConfig:
    subcommand: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def to_json(self):
        return json.dumps({"subcommand": self.subcommand, **self.values}, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        sub = data.pop("subcommand")
        return load_config(sub, overrides=data)


def _coerce(key, raw):
    """Parse a ``--set`` string with the type of the schema default."""
    default = SCHEMA[key][0]
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigurationError(f"{key}: expected a boolean, got {raw!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    if isinstance(default, float) and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if default is not None and not isinstance(value, type(default)):
        raise ConfigurationError(f"{key}: expected {type(default).__name__}, got {raw!r}")
    return value


def load_config(subcommand, path=None, overrides=None, sets=()):
    """Resolve defaults, then the JSON file, then ``overrides``/``sets``.

    Raises :class:`ConfigurationError` naming every unknown key.
    """
    if subcommand not in SUBCOMMANDS:
        raise ConfigurationError(f"unknown subcommand {subcommand!r}")
    values = {k: d for k, (d, _) in SCHEMA.items()}
    file_values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {path!r}: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigurationError("config file must hold a JSON object")
        file_values.pop("subcommand", None)
    flag_values = dict(overrides or {})
    for item in sets:
        if "=" not in item:
            raise ConfigurationError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        if k not in SCHEMA:
            raise ConfigurationError(f"unknown config keys: {[k]}")
        flag_values[k] = _coerce(k, v)
    unknown = sorted((set(file_values) | set(flag_values)) - set(SCHEMA))
    if unknown:
        raise ConfigurationError(f"unknown config keys: {unknown}")
    values.update(file_values)
    for k, v in flag_values.items():
        if k in file_values and file_values[k] != v:
            log.warning("flag %s=%r overrides config file value %r", k, v, file_values[k])
        values[k] = v
    return RunConfig(subcommand, values)


# -- subcommand bodies ------------------------------------------------------------


def _molecule(cfg):
    return get_molecule(cfg["species"], cfg["registry_path"], g_S=cfg["g_S"])


def _scenario(cfg):
    states = None
    eta = cfg["eta"]
    if cfg["use_molecule"]:
        params = _molecule(cfg)
        b_cross = molecule.find_crossing(params)
        states = molecule.qubit_states(params, b_cross)
        eta = states.eta
    T0 = cfg["T0_Omega0"] / cfg["Omega0"]
    return pairgate.GateScenario(
        Omega0=cfg["Omega0"],
        T0=T0,
        tau=cfg["tau_Omega0"] / cfg["Omega0"],
        J_T0=cfg["J_T0"],
        sin_alpha0=cfg["sin_alpha0"],
        beta=cfg["beta_rad"],
        Delta_p=cfg["Delta_p_Omega0"] * cfg["Omega0"],
        Delta_s=cfg["Delta_s_Omega0"] * cfg["Omega0"],
        eps_e=cfg["eps_e_Omega0"] * cfg["Omega0"],
        eta=eta,
        tau_e=None if cfg["hold_Omega0"] is None else cfg["hold_Omega0"] / cfg["Omega0"],
        hold_start=None if cfg["hold_start_Omega0"] is None else cfg["hold_start_Omega0"] / cfg["Omega0"],
        input_state=cfg["input_state"],
        interaction_form=cfg["interaction_form"],
        dt=cfg["dt_Omega0"] / cfg["Omega0"],
        method=cfg["method"],
        states=states,
    )


def _out(cfg, name):
    return os.path.join(cfg["output_dir"], name)


def _write_json(path, obj):
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def run_spectrum(cfg):
    params = _molecule(cfg)
    fields = np.linspace(cfg["B_min_gauss"], cfg["B_max_gauss"], cfg["n_fields"])
    basis = molecule.build_basis(cfg["N_max"], (0,))
    rows = molecule.zeeman_spectrum(params, fields, mhz_to_rad(cfg["U_LS_MHz"]), basis)
    rows = [(b, k, rad_to_mhz(e), molecule.format_label(lab)) for b, k, e, lab in rows]
    return emit_plotdata(rows, _out(cfg, "spectrum"), kind="spectrum"), None


def run_crossing(cfg):
    params = _molecule(cfg)
    basis = molecule.build_basis(cfg["N_max"], (0,))
    b = molecule.find_crossing(params, mhz_to_rad(cfg["U_LS_MHz"]), basis=basis)
    summary = {
        "species": params.name,
        "B_cross_gauss": b,
        "B_cross_analytic_gauss": params.b_cross_analytic(),
        "eta": params.eta(b),
    }
    path = _out(cfg, "crossing.json")
    _write_json(path, summary)
    return [path], summary


def run_stirap(cfg):
    sc = _scenario(cfg)
    hold = 0.0 if cfg["hold_Omega0"] is None else sc.hold_time
    sch = dressing.stirap_schedule(
        sc.Omega0, sc.T0, sc.tau, hold, sc.beta, sc.sin_alpha0, sc.hold_start, sc.Delta_p, sc.Delta_s
    )
    traj = dressing.stirap_trajectory(sch, dt=sc.dt, eps_e=sc.eps_e, method=sc.method)
    paths = emit_plotdata(traj, _out(cfg, "stirap"))
    pops = traj.populations
    k0 = int(np.argmin(np.abs(traj.times - sch.t0)))
    summary = {
        "t_i": sch.t_i,
        "t0": sch.t0,
        "t1": sch.t1,
        "t_f": sch.t_f,
        "pop_gp_at_t0": float(pops[k0, dressing.GP]),
        "pop_g_at_tf": float(pops[-1, dressing.G]),
        "adiabaticity": sch.adiabaticity,
    }
    return paths, summary


def run_gate(cfg):
    sc = _scenario(cfg)
    res = pairgate.run_protocol(sc, record=True)
    summary = {**res.summary(), "t0": res.schedule.t0, "t1": res.schedule.t1, "t_f": res.schedule.t_f}
    summary["scenario_hash"] = sc.digest()
    p_json, p_csv = _out(cfg, "gate.json"), _out(cfg, "gate_trajectory.csv")
    _write_json(p_json, summary)
    atomic_write(p_csv, pair_trajectory_csv(res.times, res.states))
    return [p_json, p_csv], summary


def run_sweep(cfg):
    sc = _scenario(cfg)
    g1 = np.linspace(cfg["axis1_min"], cfg["axis1_max"], cfg["axis1_n"])
    g2 = np.linspace(cfg["axis2_min"], cfg["axis2_max"], cfg["axis2_n"])
    ckpt = _out(cfg, "sweep.checkpoint.json")
    os.makedirs(cfg["output_dir"], exist_ok=True)
    fmap = pairgate.sweep(
        sc, (cfg["axis1"], g1), (cfg["axis2"], g2), cfg["workers"], cfg["metric"], ckpt, cfg["checkpoint_every"]
    )
    paths = emit_plotdata(fmap, _out(cfg, "sweep"))
    if os.path.exists(ckpt):
        os.unlink(ckpt)
    summary = {
        "min": float(np.nanmin(fmap.values)),
        "max": float(np.nanmax(fmap.values)),
        "failed_cells": len(fmap.metadata["failed"]),
        "sweep_metadata": fmap.metadata,
    }
    return paths, summary


def run_spinmodel(cfg):
    spec = spinmodel.SpinChainSpec(
        tuple(cfg["positions_sites"]),
        d2=cfg["U_dd_unit"],
        Theta=cfg["Theta_rad"],
        alpha=cfg["alpha_rad"],
        beta=cfg["beta_rad"],
        theta_mu=cfg["theta_mu_rad"],
        eta=cfg["eta"],
        eps_e=cfg["eps_e_Omega0"],
    )
    table = spinmodel.coupling_table(spec)
    path = _out(cfg, "spinmodel_couplings.csv")
    atomic_write(path, csv_text(("i", "j", "J", "K", "L", "M", "U"), table))
    paths = [path]
    summary = {"n_sites": spec.n_sites, "pairs": len(table)}
    if cfg["spectrum"]:
        h = spinmodel.build_hamiltonian(spec)
        w = np.linalg.eigvalsh(h.matrix)
        p2 = _out(cfg, "spinmodel_spectrum.csv")
        atomic_write(p2, csv_text(("k", "energy"), [(k, float(e)) for k, e in enumerate(w)]))
        paths.append(p2)
        summary["ground_energy"] = float(w[0])
    return paths, summary


def run_matchgate_check(cfg):
    if cfg["matrix_csv"]:
        with open(cfg["matrix_csv"], encoding="utf-8") as fh:
            rows = [[float(x) for x in line.split(",")] for line in fh if line.strip() and not line.startswith("#")]
        u = matchgate.parse_matrix_rows(rows)
        source = cfg["matrix_csv"]
    else:
        name = cfg["gate_name"].lower()
        if name not in matchgate.NAMED_GATES:
            raise ConfigurationError(f"unknown gate {name!r}; choose from {sorted(matchgate.NAMED_GATES)}")
        u = matchgate.NAMED_GATES[name]
        source = name
    summary = {"gate": source, **matchgate.is_matchgate(u).to_dict()}
    path = _out(cfg, "matchgate.json")
    _write_json(path, summary)
    return [path], summary


def run_feasibility(cfg):
    trap = feasibility.TrapParams(
        mass_amu=_molecule(cfg).mass,
        omega0=2 * math.pi * cfg["trap_freq_kHz"] * 1e3,
        sigma=cfg["sigma_um"] * 1e-6,
        A0=mhz_to_rad(cfg["A0_MHz"]),
        t=cfg["t_heat_us"] * 1e-6,
    )
    rep = feasibility.budget(
        d_debye=cfg["d_debye"],
        r=cfg["r_nm"] * 1e-9,
        Theta=cfg["Theta_rad"],
        eta=cfg["eta"],
        intensity_ls_w_cm2=cfg["I_LS_W_cm2"],
        re_alpha_a03=cfg["re_alpha_a03"],
        rho=cfg["rho"],
        T0=cfg["T0_ns"] * 1e-9,
        transition_dipole_debye=cfg["transition_dipole_debye"],
        trap=trap,
    )
    path = _out(cfg, "feasibility.json")
    d = rep.to_dict()
    d = {k: (None if isinstance(v, float) and math.isinf(v) else v) for k, v in d.items()}
    _write_json(path, d)
    print(rep.table())
    return [path], None


RUNNERS = {
    "spectrum": run_spectrum,
    "crossing": run_crossing,
    "stirap": run_stirap,
    "gate": run_gate,
    "sweep": run_sweep,
    "spinmodel": run_spinmodel,
    "matchgate-check": run_matchgate_check,
    "feasibility": run_feasibility,
}

#: Exit codes: 0 success, then one per error family.
EXIT_CODES = {
    "ConfigurationError": 2,
    "RegistryError": 3,
    "NoCrossingError": 4,
    "DegeneracyError": 5,
    "IntegratorError": 6,
    "ConstraintError": 7,
}


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def run(cfg: RunConfig):
    """Dispatch ``cfg`` and write the metadata sidecar; returns (paths, summary)."""
    os.makedirs(cfg["output_dir"], exist_ok=True)
    paths, summary = RUNNERS[cfg.subcommand](cfg)
    meta = {
        "subcommand": cfg.subcommand,
        "config": cfg.values,
        "outputs": {os.path.basename(p): _sha256(p) for p in paths},
    }
    meta_path = _out(cfg, f"{cfg.subcommand}.meta.json")
    _write_json(meta_path, meta)
    if summary is not None:
        print(json.dumps(summary, indent=2, sort_keys=True, default=_json_default))
    return paths + [meta_path], summary


def build_parser():
    p = argparse.ArgumentParser(prog="irdress", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--print-schema", action="store_true", help="print the config schema as JSON and exit")
    sub = p.add_subparsers(dest="subcommand")
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override one key")
        sp.add_argument("-o", "--output-dir", help="shortcut for --set output_dir=...")
        sp.add_argument("-j", "--workers", type=int, help="shortcut for --set workers=...")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.print_schema:
        print(json.dumps(schema_document(), indent=2))
        return 0
    if not args.subcommand:
        build_parser().print_help()
        return 2
    overrides = {}
    if args.output_dir:
        overrides["output_dir"] = args.output_dir
    if args.workers:
        overrides["workers"] = args.workers
    try:
        cfg = load_config(args.subcommand, args.config, overrides, args.set)
        run(cfg)
    except IRDressError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
