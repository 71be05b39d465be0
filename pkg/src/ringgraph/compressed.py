"""Commuting graph Gamma(R) and compressed commuting graphs Lambda(R), Lambda^1(R).

Vertices of a compressed graph are compression classes in the canonical
order of :func:`ringgraph.subring.partition`; edges join classes whose
least members commute, and every vertex carries a loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import MorphismError
from .graph import LoopGraph, WeightedLoopGraph
from .rings import FiniteRing, center, unitalization, validate_morphism
from .subring import Partition, partition

_PAIR_CHUNK = 1 << 22


def _commuting_matrix(ring: FiniteRing, xs: np.ndarray) -> np.ndarray:
    """Boolean matrix M[i, j] = (xs[i] xs[j] == xs[j] xs[i])."""
    xs = np.asarray(xs, dtype=np.int64)
    n = len(xs)
    out = np.empty((n, n), dtype=bool)
    rows = max(1, _PAIR_CHUNK // max(n, 1))
    for start in range(0, n, rows):
        block = xs[start:start + rows, None]
        out[start:start + rows] = ring.mul(block, xs[None, :]) == ring.mul(xs[None, :], block)
    return out


def commuting_graph(ring: FiniteRing) -> LoopGraph:
    """Gamma(R): non-central elements, edges between distinct commuting ones.
    Vertex i is the i-th non-central element in code order; labels are codes."""
    central = np.zeros(ring.order, dtype=bool)
    central[center(ring)] = True
    vertices = np.flatnonzero(~central)
    m = _commuting_matrix(ring, vertices)
    np.fill_diagonal(m, False)
    return LoopGraph(m, [str(v) for v in vertices.tolist()])


@dataclass
class CompressedGraph:
    graph: WeightedLoopGraph
    partition: Partition
    unital: bool
    ring: FiniteRing

    @property
    def descriptor(self) -> str:
        return self.ring.descriptor

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def weights(self) -> list[int]:
        return self.graph.weights

    @property
    def subrings(self):
        return [c.subring for c in self.partition.classes]

    def weight_multiset(self) -> list[int]:
        return sorted(self.weights, reverse=True)

    def to_dict(self) -> dict:
        return self.graph.to_dict()

    def summary(self) -> str:
        key = "v1" if self.unital else "v"
        weights = ",".join(str(w) for w in self.weight_multiset())
        return f"{key}={self.n} weights=[{weights}]"


def _vertex_label(cls) -> str:
    return f"|S|={cls.subring.size},w={cls.weight}"


def compressed_graph(ring: FiniteRing, unital: bool = False) -> CompressedGraph:
    part = partition(ring, unital)
    reps = np.array([c.representative for c in part.classes], dtype=np.int64)
    adj = _commuting_matrix(ring, reps)
    np.fill_diagonal(adj, True)
    labels = [_vertex_label(c) for c in part.classes]
    graph = WeightedLoopGraph(adj, part.weights, labels)
    return CompressedGraph(graph, part, unital, ring)


def compressed_graph_check_edges(cg: CompressedGraph, samples: int = 5, seed: int = 0) -> bool:
    """Recompute every class pair from random representatives and compare
    with the stored adjacency."""
    rng = np.random.default_rng(seed)
    ring = cg.ring
    dense = cg.graph.dense()
    classes = cg.partition.classes
    for _ in range(samples):
        picks = np.array([c.members[rng.integers(len(c.members))] for c in classes], dtype=np.int64)
        if not np.array_equal(_commuting_matrix(ring, picks), dense):
            return False
    return True


# ---------------------------------------------------------------------------
# morphisms

@dataclass
class GraphMorphism:
    source: CompressedGraph
    target: CompressedGraph
    vertex_map: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.vertex_map, other.vertex_map))

    def __call__(self, v: int) -> int:
        return int(self.vertex_map[v])

    def compose(self, inner: "GraphMorphism") -> "GraphMorphism":
        """self o inner."""
        return GraphMorphism(inner.source, self.target, self.vertex_map[inner.vertex_map])

    def is_injective(self) -> bool:
        return len(np.unique(self.vertex_map)) == len(self.vertex_map)

    def is_surjective(self) -> bool:
        return len(np.unique(self.vertex_map)) == self.target.n

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_homomorphism(self) -> bool:
        """Every edge (loops included) lands on an edge."""
        coo = self.source.graph.adj.tocoo()
        tgt = self.target.graph.adj
        mapped = tgt[self.vertex_map[coo.row], self.vertex_map[coo.col]]
        return bool(np.asarray(mapped).all())

    def reflects_edges(self) -> bool:
        """Non-edges map to non-edges (with injectivity: an embedding)."""
        src = self.source.graph.dense()
        tgt = self.target.graph.dense()
        return bool(np.array_equal(tgt[np.ix_(self.vertex_map, self.vertex_map)], src))

    def inverse(self) -> "GraphMorphism":
        if not self.is_bijective():
            raise ValueError("only bijective morphisms have inverses")
        inv = np.empty_like(self.vertex_map)
        inv[self.vertex_map] = np.arange(len(self.vertex_map))
        return GraphMorphism(self.target, self.source, inv)


def induced_morphism(f, source: CompressedGraph, target: CompressedGraph, *, validate: bool = True) -> GraphMorphism:
    """Lambda(f)([r]) = [f(r)] for a ring morphism f given as an element map."""
    if source.unital != target.unital:
        raise MorphismError("cannot map between a unital and a non-unital compressed graph")
    f = np.asarray(f, dtype=np.int64)
    if validate:
        validate_morphism(f, source.ring, target.ring, unital=source.unital)
    vmap = np.empty(source.n, dtype=np.int64)
    tindex = target.partition.index
    for i, cls in enumerate(source.partition.classes):
        images = np.unique(tindex[f[list(cls.members)]])
        if len(images) != 1:
            raise MorphismError(f"class {i} is split by the map; the induced vertex map is not defined")
        vmap[i] = images[0]
    return GraphMorphism(source, target, vmap)


def unitalization_iso(ring: FiniteRing) -> GraphMorphism:
    """The isomorphism Lambda(R) -> Lambda^1(R^1), [a] -> [i(a)]_1."""
    r1 = unitalization(ring, max_order=ring.order * ring.characteristic)
    source = compressed_graph(ring, unital=False)
    target = compressed_graph(r1, unital=True)
    tindex = target.partition.index
    reps = np.array([c.representative for c in source.partition.classes], dtype=np.int64)
    vmap = tindex[r1.embed(reps)]
    iso = GraphMorphism(source, target, np.asarray(vmap, dtype=np.int64))
    if not iso.is_bijective():
        raise AssertionError("unitalization map on vertices is not a bijection")
    if not (iso.is_homomorphism() and iso.inverse().is_homomorphism()):
        raise AssertionError("unitalization map does not preserve adjacency both ways")
    return iso


# ---------------------------------------------------------------------------

def universal_vertices(g: LoopGraph) -> np.ndarray:
    return np.flatnonzero(g.loops & (g.degrees() == g.n - 1))


def reconstruct_gamma(cg: CompressedGraph) -> LoopGraph:
    """Drop vertices adjacent to everything, blow every remaining vertex v
    up into w(v) mutually adjacent copies, drop loops.  Copies are labelled
    by the ring elements of the class and ordered by element code."""
    g = cg.graph
    keep = np.setdiff1d(np.arange(g.n), universal_vertices(g))
    members = [cg.partition.classes[v].members for v in keep]
    owner = np.repeat(np.arange(len(keep)), [len(m) for m in members])
    codes = np.array([x for m in members for x in m], dtype=np.int64)
    order = np.argsort(codes, kind="stable")
    owner, codes = owner[order], codes[order]
    expand = sparse.csr_matrix(
        (np.ones(len(owner), dtype=np.int64), (np.arange(len(owner)), owner)),
        shape=(len(owner), len(keep)),
    )
    blown = (expand @ g.adj[keep][:, keep].astype(np.int64) @ expand.T).tolil()
    blown.setdiag(0)
    return LoopGraph(blown, [str(c) for c in codes.tolist()])
