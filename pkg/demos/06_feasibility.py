"""
Laboratory numbers for SrF in a 500 nm lattice
==============================================

The feasibility budget converts the model into SI units.  It reports the
photon scattering time, the dressed interaction time 1/J, the mid-IR
intensity for the dressing pulses and the motional heating from
inhomogeneous lightshifts.
"""

from irdress.feasibility import budget

# eta is the spin-rotation admixture amplitude; it sets the weak-transition intensity factor 1/eta^2.
report = budget(d_debye=1.0, r=500e-9, eta=0.01)
print(report.table())

# The heating entry carries two evaluations of the same matrix element.
print(f"\nclosed form / quadrature = {report.heating_ratio:.3f}")

# Interaction time against scattering time: how many gates fit in one scattering event.
print(f"gates per scattering time ~ {report.one_over_gamma_sc / report.tau_e:.0f}")
