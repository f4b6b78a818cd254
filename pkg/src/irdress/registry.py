"""Molecular-constants registry.

The registry is a JSON list with one record per species.  Each record has
exactly these fields::

    name               species label
    B_e_cm-1           rotational constant, one entry per vibrational level v=0, 1
    gamma_sr_MHz       spin-rotation constant, one entry per vibrational level
    delta_alpha_a0^3   polarizability anisotropy
    alpha_avg_a0^3     real part of the average polarizability
    rho_im_over_re     Im(alpha) / Re(alpha) at the lightshift wavelength
    dipole_D           body-frame dipole moment
    mass_amu           molecular mass

Shipped values (SrF): B_e = 0.25053 cm^-1 and alpha_e = 0.00155 cm^-1
(Huber & Herzberg; the v=1 entry is B_e - alpha_e), gamma_sr(v=0) from
microwave spectroscopy (Childs et al.), gamma_sr(v=1) an estimate with
the weak vibrational dependence typical of low v.  The polarizability
entries are the representative 100 a0^3 scale and rho = 1e-7 quoted for
far-detuned ~1 um light.
Set ``IRDRESS_REGISTRY`` to a file path to use another registry.
"""

import json
import os
from importlib import resources

from .errors import RegistryError
from .molecule import MoleculeParams
from .units import cm1_to_rad, mhz_to_rad

REGISTRY_ENV = "IRDRESS_REGISTRY"
FIELDS = (
    "name",
    "B_e_cm-1",
    "gamma_sr_MHz",
    "delta_alpha_a0^3",
    "alpha_avg_a0^3",
    "rho_im_over_re",
    "dipole_D",
    "mass_amu",
)


def registry_path():
    override = os.environ.get(REGISTRY_ENV)
    if override:
        return override
    return str(resources.files("irdress") / "data" / "molecules.json")


def load_registry(path=None):
    path = path or registry_path()
    try:
        with open(path, encoding="utf-8") as fh:
            records = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RegistryError(f"cannot read registry {path!r}: {exc}") from exc
    out = {}
    for rec in records:
        keys = set(rec)
        if keys != set(FIELDS):
            extra = sorted(keys - set(FIELDS))
            missing = sorted(set(FIELDS) - keys)
            raise RegistryError(
                f"bad registry record {rec.get('name')!r}: extra={extra} missing={missing}"
            )
        out[rec["name"]] = rec
    return out


def params_from_record(rec, g_S=2.0):
    return MoleculeParams(
        name=rec["name"],
        B_e=tuple(cm1_to_rad(x) for x in rec["B_e_cm-1"]),
        gamma_sr=tuple(mhz_to_rad(x) for x in rec["gamma_sr_MHz"]),
        delta_alpha=rec["delta_alpha_a0^3"],
        alpha_avg_real=rec["alpha_avg_a0^3"],
        alpha_imag=rec["alpha_avg_a0^3"] * rec["rho_im_over_re"],
        d_body=rec["dipole_D"],
        mass=rec["mass_amu"],
        g_S=g_S,
    )


def get_molecule(name, path=None, g_S=2.0):
    """Look up a species and return its :class:`MoleculeParams`."""
    registry = load_registry(path)
    if name not in registry:
        raise RegistryError(f"unknown species {name!r}; known: {sorted(registry)}")
    return params_from_record(registry[name], g_S=g_S)
