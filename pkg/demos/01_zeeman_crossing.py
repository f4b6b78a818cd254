"""
Finding the qubit crossing field of SrF
=======================================

The qubit lives in the N = 0 and N = 1 rotational manifolds.  A magnetic field
lowers |N=1, M_N=0, down> until it meets |N=0, up>.  Spin rotation mixes
|N=1, M_N=0, down> with |N=1, M_N=-1, up>, so the dressed e state carries a
small admixture a.  This script locates the field and prints the admixtures.
"""

from irdress.molecule import find_crossing, format_label, lightshift_for_zero_gap, qubit_states, zeeman_spectrum
from irdress.registry import get_molecule
from irdress.units import rad_to_mhz

srf = get_molecule("SrF")

# The crossing field is a root of the e-g gap, bracketed and solved with brentq.
b_cross = find_crossing(srf)
print(f"crossing field            {b_cross:.2f} G")

# Without spin rotation the crossing has a closed form; the solver reproduces it.
bare = srf.with_(gamma_sr=(0.0, 0.0))
print(f"gamma_sr = 0: solver      {find_crossing(bare):.6f} G")
print(f"gamma_sr = 0: closed form {bare.b_cross_analytic():.6f} G")

# At the crossing the dressed e and g' carry small admixtures a, b.
qs = qubit_states(srf, b_cross)
print(f"admixture a = {qs.a:.3e}   (eta = {qs.eta:.4f}, eta^2/2 = {qs.eta**2 / 2:.3e})")
print(f"admixture b = {qs.b:.3e}   (eta' = {qs.eta_prime:.4f})")

# Fifty gauss below the crossing, a lightshift U_0 of the N = 1 level closes the gap instead.
u0 = lightshift_for_zero_gap(srf, b_cross - 50.0)
print(f"lightshift closing the gap 50 G below: {rad_to_mhz(u0):.2f} MHz")

# The eight-level spectrum near the crossing, labelled by the dominant bare state.
for B, k, energy, label in zeeman_spectrum(srf, [b_cross]):
    print(f"  level {k}: {rad_to_mhz(energy):12.2f} MHz  {format_label(label)}")
