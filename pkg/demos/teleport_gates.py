"""Gate teleportation through bond states.

A single-qubit gate U is applied by measuring the input together with one
half of a bond in a rotated Bell basis. Each of the four outcomes occurs
with probability 1/4 and leaves a known Pauli on the output, which the
byproduct frame tracks.
"""

from __future__ import annotations

import numpy as np

from vbsqc.statevec import (
    H,
    apply_1q,
    apply_unitary,
    fidelity_up_to_phase,
    kron_le,
    random_state,
    random_unitary,
)
from vbsqc.teleport import CZ_MATRIX, teleport_1q, teleport_phase_gate

rng = np.random.default_rng(7)
psi = random_state(1, rng)
u = random_unitary(2, rng)
target = apply_1q(psi, u, 0)

for a in range(4):
    out, _, frame = teleport_1q(psi, 0, u, outcome=a)
    fixed = frame.undo(out)
    print(f"outcome {a}: byproduct X^{frame.x[0]} Z^{frame.z[0]}, fidelity after undo {fidelity_up_to_phase(fixed, target):.12f}")

# chain two gates; the second basis adapts to the first byproduct
v = random_unitary(2, rng)
out, _, frame = teleport_1q(psi, 0, u, rng=rng)
out, _, frame = teleport_1q(out, 0, v, rng=rng, frame=frame)
print("\nU then V:", round(fidelity_up_to_phase(frame.undo(out), apply_1q(target, v, 0)), 12))

# the entangling (H x H) CZ gate uses three bonds and two GHZ-basis measurements
psi2 = random_state(2, rng)
ideal = apply_unitary(psi2, kron_le(H, H) @ CZ_MATRIX, [0, 1])
out, outcomes, frame = teleport_phase_gate(psi2, 0, 1, rng=rng)
print(f"phase gate, outcomes {outcomes}: fidelity {fidelity_up_to_phase(frame.undo(out), ideal):.12f}")
