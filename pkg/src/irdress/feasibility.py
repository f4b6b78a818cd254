"""Order-of-magnitude experimental budget: scattering, heating, interaction and drive strengths.

All inputs and outputs are SI unless the name carries another unit
(``_w_cm2``, ``_debye``, ``_amu``, ``_a03``).  Rates are in s^-1 and
energies that enter time evolution are angular frequencies (rad/s).
"""

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from .errors import ConfigurationError
from .pairgate import coupling_J_si
from .units import AMU, HBAR, polarizability_hz_per_w_cm2, rabi_intensity_w_cm2, trap_length

SCATTERING_FLAG = 0.01


def scattering_rate(im_alpha_hz_cm2_per_w, intensity_w_cm2):
    """Gamma_sc = Im(alpha) I, with Im(alpha) already in Hz W^-1 cm^2."""
    if intensity_w_cm2 < 0:
        raise ConfigurationError("intensity must be >= 0")
    return im_alpha_hz_cm2_per_w * intensity_w_cm2


def scattering_rate_from_ratio(re_alpha_a03, rho, intensity_w_cm2):
    """Gamma_sc for Im(alpha) = rho Re(alpha), with Re(alpha) given in a0^3."""
    return scattering_rate(rho * polarizability_hz_per_w_cm2(re_alpha_a03), intensity_w_cm2)


def _gamma(mass_amu, omega0, sigma):
    a = mass_amu * AMU * omega0 / HBAR
    b = 1.0 / sigma**2
    return a / (a + b), a, b


def heating_probability(omega0, mass_amu, sigma, A0, t, warn=True):
    """First-order P(2 <- 0) = gamma (gamma - 1)^2 (A0 t)^2.

    ``A0`` is the peak lightshift of the suddenly applied beam
    A0 exp(-x^2/sigma^2) in rad/s, ``omega0`` the trap frequency and
    ``sigma`` the beam width in metres.  Valid for omega0 t << 1.
    """
    if warn and omega0 * t > 0.3:
        warnings.warn("omega0 t is not small; the short-time estimate is unreliable", stacklevel=2)
    g, _, _ = _gamma(mass_amu, omega0, sigma)
    return g * (g - 1.0) ** 2 * (A0 * t) ** 2


def heating_quadrature(omega0, mass_amu, sigma, A0, t):
    """|A0 t <psi_2| exp(-x^2/sigma^2) |psi_0>|^2 from numerical integration."""
    _, a, b = _gamma(mass_amu, omega0, sigma)
    return (A0 * t) ** 2 * oscillator_overlap(a, b) ** 2


def oscillator_overlap(a, b):
    """<psi_2| exp(-b x^2) |psi_0> for oscillator parameter a = m omega / hbar.

    Integrated in the dimensionless coordinate y = sqrt(a) x.
    """
    r = b / a

    def f(y):
        psi0 = math.pi**-0.25 * math.exp(-0.5 * y * y)
        psi2 = math.pi**-0.25 * (2.0 * y * y - 1.0) / math.sqrt(2.0) * math.exp(-0.5 * y * y)
        return psi2 * math.exp(-r * y * y) * psi0

    val, _ = integrate.quad(f, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-12)
    return val


def heating_coefficients(gamma):
    """(closed-form coefficient gamma (gamma-1)^2, quadrature overlap^2) at a given gamma."""
    if not 0 < gamma <= 1:
        raise ConfigurationError("gamma must lie in (0, 1]")
    r = (1.0 - gamma) / gamma
    return gamma * (gamma - 1.0) ** 2, oscillator_overlap(1.0, r) ** 2


@dataclass(frozen=True)
class TrapParams:
    mass_amu: float = 106.904
    omega0: float = 2 * math.pi * 50e3
    sigma: float = 2e-6
    A0: float = 2 * math.pi * 1e6
    t: float = 0.1 / (2 * math.pi * 50e3)


@dataclass(frozen=True)
class FeasibilityReport:
    gamma_sc: float
    one_over_gamma_sc: float
    J: float
    one_over_J: float
    tau_e: float
    tau_e_gamma_sc: float
    scattering_flag: bool
    T0: float
    Omega0_min: float
    Omega0_design: float
    adiabaticity: float
    mid_ir_intensity_w_cm2: float
    weak_transition_factor: float
    weak_transition_intensity_w_cm2: float
    heating_prob: float
    heating_prob_quadrature: float
    heating_ratio: float
    trap_length: float
    l0_over_sigma: float
    chirp_margin: Optional[float] = None
    units: dict = field(
        default_factory=lambda: {
            "gamma_sc": "1/s",
            "one_over_gamma_sc": "s",
            "J": "rad/s",
            "one_over_J": "s",
            "tau_e": "s",
            "T0": "s",
            "Omega0_min": "rad/s",
            "Omega0_design": "rad/s",
            "mid_ir_intensity_w_cm2": "W/cm^2",
            "weak_transition_intensity_w_cm2": "W/cm^2",
            "trap_length": "m",
        }
    )

    def to_dict(self):
        return asdict(self)

    def table(self):
        d = self.to_dict()
        units = d.pop("units")
        width = max(len(k) for k in d)
        lines = []
        for k, v in d.items():
            val = f"{v:.4g}" if isinstance(v, float) else str(v)
            lines.append(f"{k:<{width}}  {val} {units.get(k, '')}".rstrip())
        return "\n".join(lines)


def budget(
    d_debye=1.0,
    r=500e-9,
    Theta=math.pi / 2,
    eta=0.0,
    delta=0.0,
    intensity_ls_w_cm2=1e5,
    re_alpha_a03=100.0,
    rho=1e-7,
    T0=100e-9,
    adiabaticity_target=2 * math.pi,
    transition_dipole_debye=0.1,
    trap: TrapParams = TrapParams(),
    chirp_margin=None,
    scenario=None,
):
    """Collect the timescales and intensities that bound an experiment.

    ``Omega0_min = 1/T0`` is where Omega0 T0 reaches one; the drive is
    designed at ``Omega0 T0 = adiabaticity_target`` (default 2 pi, i.e.
    Omega0 / 2 pi = 1/T0) and the mid-IR intensity is quoted for that value
    with the convention 2 hbar Omega = d E.  If a reduced-unit ``scenario`` is given, its
    mixing-angle residual sets ``delta``.
    """
    if scenario is not None:
        delta = scenario.delta
    gamma_sc = scattering_rate_from_ratio(re_alpha_a03, rho, intensity_ls_w_cm2)
    if abs(1.0 - 3.0 * math.cos(Theta) ** 2) < 1e-12:
        raise ConfigurationError("coupling vanishes at the magic angle")
    J = abs(coupling_J_si(d_debye, r, Theta, eta, delta))
    if J == 0:
        raise ConfigurationError("coupling vanishes")
    tau_e = math.pi / (4.0 * J)
    omega_design = adiabaticity_target / T0
    i0 = rabi_intensity_w_cm2(omega_design, transition_dipole_debye)
    weak = eta**-2 if eta > 0 else math.inf
    p = heating_probability(trap.omega0, trap.mass_amu, trap.sigma, trap.A0, trap.t, warn=False)
    pq = heating_quadrature(trap.omega0, trap.mass_amu, trap.sigma, trap.A0, trap.t)
    l0 = trap_length(trap.mass_amu, trap.omega0)
    return FeasibilityReport(
        gamma_sc=gamma_sc,
        one_over_gamma_sc=math.inf if gamma_sc == 0 else 1.0 / gamma_sc,
        J=J,
        one_over_J=1.0 / J,
        tau_e=tau_e,
        tau_e_gamma_sc=tau_e * gamma_sc,
        scattering_flag=tau_e * gamma_sc > SCATTERING_FLAG,
        T0=T0,
        Omega0_min=1.0 / T0,
        Omega0_design=omega_design,
        adiabaticity=omega_design * T0,
        mid_ir_intensity_w_cm2=i0,
        weak_transition_factor=weak,
        weak_transition_intensity_w_cm2=i0 * weak,
        heating_prob=p,
        heating_prob_quadrature=pq,
        heating_ratio=p / pq if pq else math.inf,
        trap_length=l0,
        l0_over_sigma=l0 / trap.sigma,
        chirp_margin=chirp_margin,
    )
