"""Graph states as valence-bond solids, and measurement-based computation on them.

Modules
-------
graph       undirected simple graphs and lattice generators
statevec    dense little-endian state vectors (qubit q is bit q of the index)
stabilizer  Aaronson-Gottesman tableaux, Pauli measurements, GF(2) entropy
vbs         bond network plus site projectors, and the spin-7/2 toy model
teleport    gate teleportation through |H> bonds and the GHZ phase gate
mbqc        circuit to measurement-pattern compiler and pattern executors
cli         command-line front end (``vbsqc`` / ``python3 -m vbsqc``)
"""

from .errors import VbsqcError
from .graph import Graph, chain, grid, honeycomb, new_graph, star

__all__ = ["Graph", "VbsqcError", "chain", "grid", "honeycomb", "new_graph", "star"]
__version__ = "0.1.0"
