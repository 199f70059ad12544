"""Build graph states two ways and compare them.

Each vertex of degree d holds d virtual qubits, every edge carries the bond
state CZ|++>, and the projector P_d maps the virtual qubits of a site onto
one physical qubit. The result is the graph state of the same graph.
"""

from __future__ import annotations

from vbsqc import chain, grid, honeycomb, star
from vbsqc.statevec import fidelity_up_to_phase, graph_state
from vbsqc.vbs import materialize, toy_model_check, vbs_spec

for name, g in [
    ("chain(6)", chain(6)),
    ("grid(3,3)", grid(3, 3)),
    ("star(4)", star(4)),
    ("hexagon", honeycomb(1, 1)),
]:
    spec = vbs_spec(g)
    f = fidelity_up_to_phase(materialize(spec), graph_state(g))
    print(f"{name:10s} sites={g.n:2d} bonds={len(g.edges):2d}  fidelity={f:.12f}")

# the bond pairs are ground states of a frustration-free toy Hamiltonian
rep = toy_model_check(honeycomb(1, 1))
print(f"\nhexagon toy model: {rep.n_virtual} virtual qubits, ground energy {rep.ground_energy:.2e}, gap {rep.gap:.4f}")
print("unique ground state:", rep.unique)
