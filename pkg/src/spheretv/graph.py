"""Graph supports for vertex-valued signals.

Signals live on the vertices of a connected undirected graph; the
denoising penalty sums over its edges.  Chains carry 1D signals and
4-neighbor grids carry images.  Arbitrary connected edge lists are
accepted too, but only chains and grids get the fast prox paths.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph


@dataclass(frozen=True)
class Graph:
    """Connected undirected graph with zero-based vertices.

    Edges are stored as (n, m) pairs with n < m in lexicographic order
    of construction.  `kind` tags the structure ('chain', 'grid' or
    'general'); `grid_shape` is (rows, cols) for grids and None
    otherwise.  Instances are immutable and safe to share.
    """

    num_vertices: int
    edges: tuple
    kind: str = "general"
    grid_shape: tuple = None
    # Derived arrays, filled in __post_init__: edge endpoints as int64
    # arrays and the maximum vertex degree (0 on an edgeless graph).
    edge_from: np.ndarray = field(init=False, repr=False, compare=False)
    edge_to: np.ndarray = field(init=False, repr=False, compare=False)
    max_degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_vertices
        if not isinstance(n, int) or n < 1:
            raise ValueError("num_vertices must be a positive integer")
        if self.kind not in ("chain", "grid", "general"):
            raise ValueError(f"unknown graph kind {self.kind!r}")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for a, b in edges:
            if not (0 <= a < b < n):
                raise ValueError(f"edge ({a}, {b}) violates 0 <= n < m < {n}")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))

        efrom = np.fromiter((a for a, _ in edges), dtype=np.int64, count=len(edges))
        eto = np.fromiter((b for _, b in edges), dtype=np.int64, count=len(edges))
        object.__setattr__(self, "edge_from", efrom)
        object.__setattr__(self, "edge_to", eto)
        deg = np.zeros(n, dtype=np.int64)
        np.add.at(deg, efrom, 1)
        np.add.at(deg, eto, 1)
        object.__setattr__(self, "max_degree", int(deg.max()) if n else 0)

        if n > 1:
            adj = scipy.sparse.coo_matrix(
                (np.ones(len(edges)), (efrom, eto)), shape=(n, n)
            )
            ncomp = scipy.sparse.csgraph.connected_components(
                adj, directed=False, return_labels=False
            )
            if ncomp != 1:
                raise ValueError(f"graph is not connected ({ncomp} components)")

    @property
    def num_edges(self):
        return len(self.edges)


def chain_graph(n):
    """Chain on `n` vertices: edges (i, i+1) for 0 <= i < n-1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("chain_graph needs a positive vertex count")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), kind="chain")


def grid_graph(rows, cols):
    """4-neighbor grid, row-major vertex indexing.

    Vertex (r, c) has index r*cols + c.  Edges list all horizontal
    neighbors then all vertical ones in lexicographic order.
    """
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ValueError("grid_graph needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return Graph(rows * cols, tuple(edges), kind="grid", grid_shape=(rows, cols))
