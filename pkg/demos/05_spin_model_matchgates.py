"""
From dressed dipoles to an XY spin model, and why it needs help
===============================================================

The dressing angle alpha and phase beta set the couplings J (XX), K (YY)
and L (XY + YX) of the effective spin model.  They always satisfy L^2 = JK.
Nearest-neighbour XY evolutions of this kind are matchgates, which are
classically simulable, so an extra single-qubit resource is needed.  Here a
Z rotation is combined with exp(-i pi/4 XX) to build CZ and CNOT.
"""

import math

import numpy as np

from irdress.matchgate import CNOT, CZ, cnot_circuit, cz_circuit, interaction_unitary, is_matchgate
from irdress.spinmodel import SpinChainSpec, build_hamiltonian, couplings_from_phase, pair_couplings

for alpha, beta in [(math.pi / 2, 0.0), (math.pi / 3, 0.4), (math.pi / 4, 1.2)]:
    c = couplings_from_phase(alpha, beta, 1 / math.sqrt(3), U_dd=1.0)
    print(f"alpha={alpha:.3f} beta={beta:.1f}: J={c.J:+.4f} K={c.K:+.4f} L={c.L:+.4f}  L^2-JK={c.L**2 - c.J * c.K:+.1e}")

# A three-site chain on a line: couplings fall off as 1/r^3.
spec = SpinChainSpec(positions=(0.0, 1.0, 2.0), alpha=math.pi / 3, beta=0.4)
for (i, j), c in pair_couplings(spec).items():
    print(f"sites {i}-{j}: J={c.J:+.4f} K={c.K:+.4f} L={c.L:+.4f}")
print("chain Hamiltonian spectrum:", np.round(np.linalg.eigvalsh(build_hamiltonian(spec)), 4))

# The interaction alone is a matchgate; CNOT is not.
u = interaction_unitary(0.3, 0.2, math.sqrt(0.06), 1.7)
print("XY evolution is a matchgate:", is_matchgate(u).is_matchgate)
print("CNOT is a matchgate:", is_matchgate(CNOT).is_matchgate, f"({is_matchgate(CNOT).reason})")

# Adding single-qubit rotations around U_XX(pi/4J) gives the entangling gates exactly.
J = 0.02
for name, circuit, ref in (("CZ", cz_circuit(J), CZ), ("CNOT", cnot_circuit(J), CNOT)):
    print(f"{name}: {' -> '.join(circuit.names)}")
    print(f"      max |U - {name}| = {np.abs(circuit.matrix - ref).max():.1e}")
