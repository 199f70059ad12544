"""Simple undirected graphs parameterizing cluster/graph states.

Vertices are dense integer indices ``0..n-1``. Lattice generators lay sites
out row-major: site ``(r, c)`` of a lattice with ``cols`` columns has index
``r * cols + c``.

Edge-list text format::

    # comment
    n 3
    e 0 1
    e 1 2
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidDimension, InvalidEdge, ParseError, VertexOutOfRange

__all__ = [
    "Graph",
    "chain",
    "grid",
    "honeycomb",
    "new_graph",
    "parse_edge_list",
    "serialize",
    "star",
]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with canonical ``(low, high)`` edge tuples."""

    n: int
    edges: tuple[tuple[int, int], ...]
    _neighbors: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidDimension(f"vertex count must be non-negative, got {self.n}")
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "_neighbors", tuple(frozenset(s) for s in nbrs))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """n x n 0/1 matrix (uint8)."""
        gamma = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            gamma[u, v] = gamma[v, u] = 1
        gamma.flags.writeable = False
        return gamma

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighbors[v]

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._neighbors)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbors[u]

    def remove_vertex(self, v: int) -> tuple[Graph, list[int]]:
        """Delete ``v``; return the induced graph and the old index of each new vertex."""
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in [0, {self.n})")
        keep = [u for u in range(self.n) if u != v]
        return self.induced(keep), keep

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled ``0..k-1`` in the order given."""
        order = list(vertices)
        index = {u: i for i, u in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return new_graph(len(order), edges)

    def crossing_edges(self, region: Iterable[int]) -> int:
        """Number of edges with exactly one endpoint in ``region``."""
        inside = set(region)
        return sum((u in inside) != (v in inside) for u, v in self.edges)


def new_graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
    """Build a graph, normalizing and deduplicating edges.

    Raises
    ------
    InvalidEdge
        On a self-loop.
    VertexOutOfRange
        If an endpoint is outside ``[0, n)``.
    """
    if n < 0:
        raise InvalidDimension(f"vertex count must be non-negative, got {n}")
    canon = set()
    for u, v in edges:
        u, v = int(u), int(v)
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(f"vertex {w} not in [0, {n})")
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        canon.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(canon)))


def _check_dims(*dims: int) -> None:
    if any(d < 1 for d in dims):
        raise InvalidDimension(f"lattice dimensions must be >= 1, got {dims}")


def chain(n: int) -> Graph:
    """Path graph 0 - 1 - ... - (n-1)."""
    _check_dims(n)
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def grid(rows: int, cols: int) -> Graph:
    """rows x cols square lattice with nearest-neighbour edges, row-major indexing."""
    _check_dims(rows, cols)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return new_graph(rows * cols, edges)


def honeycomb(rows: int, cols: int) -> Graph:
    """Brick-wall patch of ``rows x cols`` hexagonal cells.

    The vertex array is ``(rows + 1) x (2 * cols + 1)`` row-major, with all
    horizontal bonds and a vertical bond below ``(r, c)`` whenever ``r + c``
    is even. ``honeycomb(1, 1)`` is a single hexagon (6 sites); every vertex
    off the patch boundary has degree 3.
    """
    _check_dims(rows, cols)
    nr, nc = rows + 1, 2 * cols + 1
    edges = []
    for r in range(nr):
        for c in range(nc):
            v = r * nc + c
            if c + 1 < nc:
                edges.append((v, v + 1))
            if r + 1 < nr and (r + c) % 2 == 0:
                edges.append((v, v + nc))
    return new_graph(nr * nc, edges)


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    _check_dims(leaves)
    return new_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    Raises
    ------
    ParseError
        On malformed lines, carrying the 1-based line number.
    VertexOutOfRange, InvalidEdge
        On semantically invalid edges.
    """
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2:
                if n is not None:
                    raise ParseError("duplicate 'n' line", lineno)
                n = int(parts[1])
                if n < 0:
                    raise ParseError("vertex count must be non-negative", lineno)
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise ParseError("'e' line before 'n' line", lineno)
                u, v = int(parts[1]), int(parts[2])
                for w in (u, v):
                    if not 0 <= w < n:
                        raise VertexOutOfRange(f"line {lineno}: vertex {w} not in [0, {n})")
                if u == v:
                    raise InvalidEdge(f"line {lineno}: self-loop at vertex {u}")
                edges.append((u, v))
            else:
                raise ParseError(f"unrecognized line {raw.strip()!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, (ParseError, InvalidEdge)):
                raise
            raise ParseError(f"bad integer in {raw.strip()!r}", lineno) from exc
    if n is None:
        raise ParseError("missing 'n' line")
    return new_graph(n, edges)


def serialize(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
