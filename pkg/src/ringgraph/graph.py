"""Undirected simple graphs with optional self-loops.

Adjacency is a symmetric boolean CSR matrix whose diagonal marks loops.
Besides the constructors used by the structure theorems (K_n with loops,
disjoint union, join, tensor product) this module decides isomorphism for
the family of graphs those theorems produce: a universal loop-clique joined
with a disjoint union of loop-cliques.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union as _U

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .errors import NotInFamilyError, UndecidedError

BRUTE_FORCE_LIMIT = 12


def _as_csr(m) -> sparse.csr_matrix:
    m = sparse.csr_matrix(m, dtype=bool)
    m.eliminate_zeros()
    m.sort_indices()
    return m


class LoopGraph:
    def __init__(self, adjacency, labels: Sequence[str] | None = None):
        adj = _as_csr(adjacency)
        if adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if (adj != adj.T).nnz:
            raise ValueError("adjacency must be symmetric")
        self.adj = adj
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("one label per vertex required")

    @classmethod
    def from_edges(cls, n: int, edges=(), loops=(), labels=None) -> "LoopGraph":
        rows, cols = [], []
        for i, j in edges:
            rows += [i, j]
            cols += [j, i]
        for i in loops:
            rows.append(i)
            cols.append(i)
        m = sparse.coo_matrix((np.ones(len(rows), dtype=bool), (rows, cols)), shape=(n, n))
        return cls(m, labels)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def loops(self) -> np.ndarray:
        return self.adj.diagonal().astype(bool)

    @property
    def loop_count(self) -> int:
        return int(self.loops.sum())

    def degrees(self) -> np.ndarray:
        """Number of neighbours other than the vertex itself."""
        return np.diff(self.adj.indptr) - self.loops

    @property
    def edge_count(self) -> int:
        """Edges between distinct vertices."""
        return int(self.degrees().sum()) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i, j])

    def neighbors(self, i: int) -> np.ndarray:
        return self.adj.indices[self.adj.indptr[i]:self.adj.indptr[i + 1]]

    def edges(self) -> list[tuple[int, int]]:
        upper = sparse.triu(self.adj, k=1).tocoo()
        pairs = sorted(zip(upper.row.tolist(), upper.col.tolist()))
        return pairs

    def dense(self) -> np.ndarray:
        return self.adj.toarray()

    def without_loops(self) -> "LoopGraph":
        m = self.adj.tolil()
        m.setdiag(False)
        return LoopGraph(m, self.labels)

    def with_all_loops(self) -> "LoopGraph":
        m = self.adj.tolil()
        m.setdiag(True)
        return LoopGraph(m, self.labels)

    def induced(self, vertices) -> "LoopGraph":
        vertices = np.asarray(vertices, dtype=np.int64)
        labels = [self.labels[v] for v in vertices] if self.labels is not None else None
        return LoopGraph(self.adj[vertices][:, vertices], labels)

    def permuted(self, perm) -> "LoopGraph":
        """Vertex i of the result is vertex perm[i] of self."""
        return self.induced(perm)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopGraph):
            return NotImplemented
        return self.n == other.n and (self.adj != other.adj).nnz == 0

    __hash__ = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n} edges={self.edge_count} loops={self.loop_count}>"

    # -- exports
    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "loops": np.flatnonzero(self.loops).tolist(),
            "edges": [list(e) for e in self.edges()],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for i in range(self.n):
            attrs = self._dot_label(i)
            lines.append(f"  {i}{attrs};")
        for i in np.flatnonzero(self.loops):
            lines.append(f"  {i} -- {i};")
        for i, j in self.edges():
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _dot_label(self, i: int) -> str:
        if self.labels is None:
            return ""
        return ' [label="{}"]'.format(str(self.labels[i]).replace('"', '\\"'))


class WeightedLoopGraph(LoopGraph):
    def __init__(self, adjacency, weights, labels=None):
        super().__init__(adjacency, labels)
        self.weights = [int(w) for w in weights]
        if len(self.weights) != self.n:
            raise ValueError("one weight per vertex required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    def induced(self, vertices) -> "WeightedLoopGraph":
        g = super().induced(vertices)
        return WeightedLoopGraph(g.adj, [self.weights[v] for v in vertices], g.labels)

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["weights"] = list(self.weights)
        if "labels" in out:  # keep the documented key order
            out["labels"] = out.pop("labels")
        return out


def from_dict(data: dict) -> LoopGraph:
    n = data["n"]
    g = LoopGraph.from_edges(n, data.get("edges", ()), data.get("loops", ()), data.get("labels"))
    if "weights" in data:
        return WeightedLoopGraph(g.adj, data["weights"], g.labels)
    return g


def from_json(text: str) -> LoopGraph:
    return from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# constructors

def empty_graph(n: int = 0) -> LoopGraph:
    return LoopGraph(sparse.csr_matrix((n, n), dtype=bool))


def complete_with_loops(n: int) -> LoopGraph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return LoopGraph(np.ones((n, n), dtype=bool))


def complete_graph(n: int) -> LoopGraph:
    """K_n without loops."""
    return LoopGraph(~np.eye(n, dtype=bool))


def _join_labels(*graphs):
    if all(g.labels is not None for g in graphs):
        return [lab for g in graphs for lab in g.labels]
    return None


def disjoint_union(*graphs: LoopGraph) -> LoopGraph:
    graphs = [g for g in graphs if g.n > 0]
    if not graphs:
        return empty_graph()
    if len(graphs) == 1:
        return graphs[0]
    return LoopGraph(sparse.block_diag([g.adj for g in graphs], format="csr"), _join_labels(*graphs))


def join(g: LoopGraph, h: LoopGraph) -> LoopGraph:
    if g.n == 0:
        return h
    if h.n == 0:
        return g
    cross = sparse.csr_matrix(np.ones((g.n, h.n), dtype=bool))
    m = sparse.bmat([[g.adj, cross], [cross.T, h.adj]], format="csr")
    return LoopGraph(m, _join_labels(g, h))


def tensor_product(g: LoopGraph, h: LoopGraph) -> LoopGraph:
    """(g1,h1) ~ (g2,h2) iff g1 ~ g2 and h1 ~ h2; vertex (i, j) has index i*|H| + j."""
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = [f"({a},{b})" for a in g.labels for b in h.labels]
    return LoopGraph(sparse.kron(g.adj, h.adj, format="csr"), labels)


# ---------------------------------------------------------------------------
# symbolic structure expressions

@dataclass(frozen=True)
class Kcirc:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("clique size must be nonnegative")

    def vertex_count(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"K{self.n}o"


@dataclass(frozen=True)
class Union:
    terms: tuple[tuple["StructuralExpr", int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((e, int(t)) for e, t in self.terms))
        if any(t < 0 for _, t in self.terms):
            raise ValueError("multiplicities must be nonnegative")

    def vertex_count(self) -> int:
        return sum(e.vertex_count() * t for e, t in self.terms)

    def __str__(self) -> str:
        return "(" + " u ".join(f"{t}{e}" for e, t in self.terms if t) + ")"


@dataclass(frozen=True)
class Join:
    left: "StructuralExpr"
    right: "StructuralExpr"

    def vertex_count(self) -> int:
        return self.left.vertex_count() + self.right.vertex_count()

    def __str__(self) -> str:
        return f"{self.left} v {self.right}"


@dataclass(frozen=True)
class Tensor:
    left: "StructuralExpr"
    right: "StructuralExpr"

    def vertex_count(self) -> int:
        return self.left.vertex_count() * self.right.vertex_count()

    def __str__(self) -> str:
        return f"({self.left} x {self.right})"


StructuralExpr = _U[Kcirc, Union, Join, Tensor]


def realize(expr: StructuralExpr) -> LoopGraph:
    """Evaluate left to right, depth first."""
    if isinstance(expr, Kcirc):
        return complete_with_loops(expr.n)
    if isinstance(expr, Union):
        parts = []
        for sub, t in expr.terms:
            if t:
                g = realize(sub)
                parts.extend([g] * t)
        return disjoint_union(*parts)
    if isinstance(expr, Join):
        return join(realize(expr.left), realize(expr.right))
    if isinstance(expr, Tensor):
        return tensor_product(realize(expr.left), realize(expr.right))
    raise TypeError(f"not a structure expression: {expr!r}")


# ---------------------------------------------------------------------------
# clique-join family

class Decomposition(NamedTuple):
    universal: int
    cliques: tuple[int, ...]  # ascending

    def __str__(self) -> str:
        counts = Counter(self.cliques)
        body = " u ".join(f"{t}K{k}o" for k, t in sorted(counts.items()))
        return f"K{self.universal}o v ({body})" if body else f"K{self.universal}o"


def clique_join_decompose(g: LoopGraph) -> Decomposition:
    """Split off the looped vertices adjacent to everything; the rest must be
    disjoint loop-cliques.  K_n with loops decomposes as (n, ())."""
    n = g.n
    loops = g.loops
    deg = g.degrees()
    universal = loops & (deg == n - 1)
    if universal.all():
        return Decomposition(n, ())
    rest = np.flatnonzero(~universal)
    if not loops[rest].all():
        raise NotInFamilyError("a non-universal vertex has no loop")
    sub = g.adj[rest][:, rest]
    _, comp = connected_components(sub, directed=False)
    sizes = np.bincount(comp)
    inner = np.bincount(comp, weights=np.diff(sub.indptr))  # includes loops
    if not np.array_equal(inner.astype(np.int64), sizes * sizes):
        raise NotInFamilyError("a component of the remainder is not a loop-clique")
    return Decomposition(int(universal.sum()), tuple(sorted(sizes.tolist())))


def in_family(g: LoopGraph) -> bool:
    try:
        clique_join_decompose(g)
    except NotInFamilyError:
        return False
    return True


def _brute_force_isomorphic(g: LoopGraph, h: LoopGraph) -> bool:
    n = g.n
    A, B = g.dense(), h.dense()
    key_g = [(bool(A[i, i]), int(A[i].sum())) for i in range(n)]
    key_h = [(bool(B[i, i]), int(B[i].sum())) for i in range(n)]
    if sorted(key_g) != sorted(key_h):
        return False
    order = sorted(range(n), key=lambda i: (-key_g[i][1], key_g[i]))
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        u = order[pos]
        for v in range(n):
            if used[v] or key_h[v] != key_g[u]:
                continue
            if all(A[u, order[q]] == B[v, mapping[order[q]]] for q in range(pos)) and A[u, u] == B[v, v]:
                mapping[u] = v
                used[v] = True
                if extend(pos + 1):
                    return True
                used[v] = False
                mapping[u] = -1
        return False

    return extend(0)


def is_isomorphic(g: LoopGraph, h: LoopGraph, *, allow_brute_force: bool = True) -> bool:
    """Family decomposition first; brute force for tiny graphs; otherwise
    raise UndecidedError."""
    if g.n != h.n or g.loop_count != h.loop_count or g.edge_count != h.edge_count:
        return False
    if not np.array_equal(np.sort(g.degrees()), np.sort(h.degrees())):
        return False
    if g.n == 0:
        return True
    all_looped = g.loop_count == g.n
    loopless = g.loop_count == 0
    if all_looped or loopless:
        g2, h2 = (g, h) if all_looped else (g.with_all_loops(), h.with_all_loops())
        dg = dh = None
        try:
            dg = clique_join_decompose(g2)
        except NotInFamilyError:
            pass
        try:
            dh = clique_join_decompose(h2)
        except NotInFamilyError:
            pass
        if dg is not None and dh is not None:
            return dg == dh
        if (dg is None) != (dh is None):
            return False
    if allow_brute_force and g.n <= BRUTE_FORCE_LIMIT:
        return _brute_force_isomorphic(g, h)
    raise UndecidedError(f"cannot decide isomorphism of graphs with {g.n} vertices outside the clique-join family")
