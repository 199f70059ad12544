"""Stabilizer view of graph states: entropy, carving and Bell extraction.

Region entropy is the GF(2) rank of the cut block of the adjacency matrix.
It is never more than the number of cut bonds, and it is equal when the cut
bonds pair up distinct vertices. Measuring the sites next to an induced path
in Z and the interior of the path in X leaves a Bell pair on its endpoints.
"""

from __future__ import annotations

import numpy as np

from vbsqc import chain, grid, star
from vbsqc.mbqc import (
    MeasurementCommand,
    MeasurementPattern,
    run_pattern,
    run_pattern_stabilizer,
)
from vbsqc.stabilizer import (
    entropy_of_region,
    extract_bell_pattern,
    graph_region_entropy,
    run_pauli_measurements,
    tableau_graph_state,
)

for name, g, region in [
    ("chain(6) left half", chain(6), [0, 1, 2]),
    ("chain(5) middle site", chain(5), [2]),
    ("star(3) leaves", star(3), [1, 2, 3]),
    ("grid(4,4) top band", grid(4, 4), list(range(8))),
    ("grid(4,4) centre 2x2", grid(4, 4), [5, 6, 9, 10]),
]:
    print(f"{name:22s} entropy={graph_region_entropy(g, region)}  cut bonds={g.crossing_edges(region)}")

rng = np.random.default_rng(1)
g = grid(3, 4)
path = [0, 1, 2, 6, 10, 11]
pattern = extract_bell_pattern(g, 0, 11, path)
print("\nextraction on grid(3,4) path", path, "->", pattern)
_, post = run_pauli_measurements(tableau_graph_state(g), pattern, rng=rng)
print("entropy({0}) =", entropy_of_region(post, [0]), " entropy({0,11}) =", entropy_of_region(post, [0, 11]))

# a 30x30 cluster is out of reach for the dense backend but cheap as a tableau
big = grid(30, 30)
outputs = tuple(r * 30 + 29 for r in range(30))
p = MeasurementPattern(big, tuple(MeasurementCommand(v, "xy") for v in range(900) if v not in outputs), (), outputs)
res = run_pattern_stabilizer(p, rng=rng)
print(f"\n900-site pattern on the tableau backend: {len(res.outcomes)} outcomes, {res.logical_state.n} output qubits")
try:
    run_pattern(p, rng=rng)
except Exception as e:
    print("dense backend:", type(e).__name__, e)
