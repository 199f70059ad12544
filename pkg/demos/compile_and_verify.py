"""Compile a circuit into a measurement pattern and check it branch by branch.

Single-qubit gates become four XY measurements along a wire. CZ becomes a
cross edge between wires. Each angle's sign and shift depend on earlier
outcomes. verify_equivalence runs every branch (or a seeded sample) and
compares the corrected output with the circuit.
"""

from __future__ import annotations

import numpy as np

from vbsqc.mbqc import (
    Circuit,
    Gate1Q,
    GateCZ,
    compile_circuit,
    run_pattern,
    serialize_pattern,
    simulate_circuit,
    verify_equivalence,
)
from vbsqc.statevec import H, fidelity_up_to_phase, random_state, random_unitary

rng = np.random.default_rng(3)
c = Circuit(2, (Gate1Q(0, H), GateCZ(0, 1), Gate1Q(1, random_unitary(2, rng))))
p = compile_circuit(c)
print(serialize_pattern(p))

psi = random_state(2, rng)
run = run_pattern(p, psi, rng=rng)
print("one sampled run, outcomes", run.outcomes)
print(f"  probability {run.probability:.6f}, fidelity {fidelity_up_to_phase(run.logical_state, simulate_circuit(c, psi)):.12f}")

rep = verify_equivalence(c, psi)
print(f"\n{rep.mode}: {rep.n_branches} branches, min fidelity {rep.min_fidelity:.12f}, passed={rep.passed}")
