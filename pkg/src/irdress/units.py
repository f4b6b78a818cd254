"""Physical constants and unit conversions.

Internal energy unit for single-molecule spectroscopy is angular frequency
(rad/s).  Everything that crosses a module boundary in other units goes
through the helpers here.
"""

import math

from scipy import constants as sc

HBAR = sc.hbar
H_PLANCK = sc.h
C_LIGHT = sc.c
EPS0 = sc.epsilon_0
AMU = sc.atomic_mass
A0 = sc.physical_constants["Bohr radius"][0]
DEBYE = 1e-21 / sc.c  # C m

#: Bohr magneton expressed as angular frequency per gauss.
MU_B_RAD_PER_S_PER_G = sc.physical_constants["Bohr magneton"][0] * 1e-4 / HBAR

#: Lightshift per unit intensity for a polarizability of 100 a0^3, in
#: Hz W^-1 cm^2.  Tabulated value used for scattering-rate estimates.
POLARIZABILITY_100_A03_HZ_CM2_PER_W = 4.6


def cm1_to_rad(x):
    """Wavenumber (cm^-1) to angular frequency (rad/s)."""
    return 2.0 * math.pi * C_LIGHT * 100.0 * x


def rad_to_cm1(x):
    return x / (2.0 * math.pi * C_LIGHT * 100.0)


def mhz_to_rad(x):
    return 2.0 * math.pi * 1e6 * x


def rad_to_mhz(x):
    return x / (2.0 * math.pi * 1e6)


def khz_to_rad(x):
    return 2.0 * math.pi * 1e3 * x


def zeeman_rad(g_s, b_gauss):
    """g_S mu_B B as angular frequency."""
    return g_s * MU_B_RAD_PER_S_PER_G * b_gauss


def polarizability_hz_per_w_cm2(alpha_a03):
    """Polarizability in a0^3 to lightshift-per-intensity (Hz W^-1 cm^2), tabulated scale."""
    return alpha_a03 * POLARIZABILITY_100_A03_HZ_CM2_PER_W / 100.0


def lightshift_rad(delta_alpha_a03, intensity_w_cm2):
    """Tensor lightshift U = delta_alpha |E0|^2 / 4 from a cw intensity.

    Uses I = c eps0 |E0|^2 / 2, so U = 2 pi delta_alpha' I / c with the
    polarizability volume delta_alpha' = delta_alpha * a0^3.
    """
    intensity_si = intensity_w_cm2 * 1e4
    energy = 2.0 * math.pi * delta_alpha_a03 * A0**3 * intensity_si / C_LIGHT
    return energy / HBAR


def intensity_for_lightshift(delta_alpha_a03, u_rad):
    """Inverse of :func:`lightshift_rad`; returns W/cm^2."""
    energy = u_rad * HBAR
    intensity_si = energy * C_LIGHT / (2.0 * math.pi * delta_alpha_a03 * A0**3)
    return intensity_si / 1e4


def dipole_energy_rad(d_debye, r_nm):
    """Dipolar energy scale d^2 / (4 pi eps0 r^3) as angular frequency."""
    d = d_debye * DEBYE
    r = r_nm * 1e-9
    return d * d / (4.0 * math.pi * EPS0 * r**3) / HBAR


def rabi_intensity_w_cm2(omega_rad, d_debye):
    """Intensity giving Rabi frequency ``omega`` with 2 hbar Omega = d E."""
    field = 2.0 * HBAR * omega_rad / (d_debye * DEBYE)
    return 0.5 * C_LIGHT * EPS0 * field**2 / 1e4


def trap_length(mass_amu, omega_trap_rad):
    """Harmonic-oscillator length sqrt(hbar / m omega) in metres."""
    return math.sqrt(HBAR / (mass_amu * AMU * omega_trap_rad))
