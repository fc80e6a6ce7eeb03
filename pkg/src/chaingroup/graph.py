"""Hybrid graphs: directed and undirected edges on vertices 1..m.

Vertex sets are plain ``frozenset`` objects of 1-based vertex ids. Where a
total order on subsets is needed (imset rendering, deterministic output) the
bit-word ``set_key`` is used.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

from .errors import (
    ConflictingLink,
    DuplicateLink,
    GraphError,
    LoopError,
    ParseError,
    TooManyVertices,
    VertexOutOfRange,
)

MAX_VERTICES = 64

VertexSet = frozenset


def set_key(s: Iterable[int]) -> int:
    """Bit-word of a vertex set: vertex i sets bit i-1."""
    key = 0
    for v in s:
        key |= 1 << (v - 1)
    return key


def format_set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


class GraphClass(enum.Enum):
    UNDIRECTED = "Undirected"
    DAG = "Dag"
    NF_CHAIN_GRAPH = "NfChainGraph"
    CHAIN_GRAPH_WITH_FLAGS = "ChainGraphWithFlags"
    NOT_CHAIN_GRAPH = "NotChainGraph"

    def __str__(self):
        return self.value

    @property
    def is_nf_chain_graph(self) -> bool:
        return self in (GraphClass.UNDIRECTED, GraphClass.DAG, GraphClass.NF_CHAIN_GRAPH)


@dataclass(frozen=True)
class HybridGraph:
    """A graph on ``1..m`` with arrows ``(i, j)`` for i->j and undirected
    edges stored as ``(min, max)`` pairs."""

    m: int
    directed: frozenset = field(default_factory=frozenset)
    undirected: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1:
            raise GraphError(f"vertex count must be positive, got {self.m}")
        if self.m > MAX_VERTICES:
            raise TooManyVertices(f"at most {MAX_VERTICES} vertices supported, got {self.m}")
        directed = frozenset((int(i), int(j)) for i, j in self.directed)
        undirected = frozenset((min(i, j), max(i, j)) for i, j in self.undirected)
        seen = {}
        for kind, edges in (("->", directed), ("--", undirected)):
            for i, j in edges:
                for v in (i, j):
                    if not 1 <= v <= self.m:
                        raise VertexOutOfRange(f"vertex {v} not in 1..{self.m}")
                if i == j:
                    raise LoopError(f"loop at vertex {i}")
                pair = (min(i, j), max(i, j))
                if pair in seen:
                    raise ConflictingLink(
                        f"vertices {pair[0]} and {pair[1]} carry both "
                        f"{seen[pair]} and {i} {kind} {j}"
                    )
                seen[pair] = f"{i} {kind} {j}"
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)

    @classmethod
    def from_edges(cls, m, directed=(), undirected=()):
        return cls(m, frozenset(directed), frozenset(undirected))

    @property
    def vertices(self) -> range:
        return range(1, self.m + 1)

    @cached_property
    def _adjacency(self):
        parents = {v: set() for v in self.vertices}
        children = {v: set() for v in self.vertices}
        neighbors = {v: set() for v in self.vertices}
        for i, j in self.directed:
            children[i].add(j)
            parents[j].add(i)
        for i, j in self.undirected:
            neighbors[i].add(j)
            neighbors[j].add(i)
        freeze = lambda d: {k: frozenset(v) for k, v in d.items()}
        return freeze(parents), freeze(children), freeze(neighbors)

    def parents(self, i: int) -> frozenset:
        return self._adjacency[0][i]

    def children(self, i: int) -> frozenset:
        return self._adjacency[1][i]

    def neighbors(self, i: int) -> frozenset:
        return self._adjacency[2][i]

    def closed_neighborhood(self, i: int) -> frozenset:
        """N(i) = {i} together with neighbours and children."""
        return frozenset({i}) | self.neighbors(i) | self.children(i)

    def parents_of_set(self, a: Iterable[int]) -> frozenset:
        out = set()
        for v in a:
            out |= self.parents(v)
        return frozenset(out)

    def linked(self, i: int, j: int) -> bool:
        return (
            (i, j) in self.directed
            or (j, i) in self.directed
            or (min(i, j), max(i, j)) in self.undirected
        )

    def adjacent(self, i: int) -> frozenset:
        return self.parents(i) | self.children(i) | self.neighbors(i)

    def edge_type(self, i: int, j: int) -> str | None:
        """``'->'``, ``'<-'``, ``'--'`` or None, seen from i towards j."""
        if (i, j) in self.directed:
            return "->"
        if (j, i) in self.directed:
            return "<-"
        if (min(i, j), max(i, j)) in self.undirected:
            return "--"
        return None

    def induced(self, vertices: Iterable[int]) -> dict:
        """Edges of the induced subgraph, keyed by kind (labels unchanged)."""
        vs = frozenset(vertices)
        return {
            "directed": frozenset(e for e in self.directed if e[0] in vs and e[1] in vs),
            "undirected": frozenset(e for e in self.undirected if e[0] in vs and e[1] in vs),
        }

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(vertices)
        return all(self.linked(a, b) for k, a in enumerate(vs) for b in vs[k + 1:])

    def relabel(self, sigma) -> "HybridGraph":
        """Image of the graph under a vertex map ``sigma`` (callable or mapping)."""
        f = sigma if callable(sigma) else sigma.__getitem__
        return HybridGraph(
            self.m,
            frozenset((f(i), f(j)) for i, j in self.directed),
            frozenset((f(i), f(j)) for i, j in self.undirected),
        )

    def __str__(self):
        return serialize_graph(self).strip().replace("\n", "; ")


_HEADER = re.compile(r"^vertices:\s*(\S+)$")
_EDGE = re.compile(r"^(\S+)\s+(->|--)\s+(\S+)$")


def parse_graph(text: str) -> HybridGraph:
    """Parse the ``vertices: m`` / ``i -> j`` / ``i -- j`` text format."""
    m = None
    directed, undirected = [], []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            match = _HEADER.match(line)
            if not match:
                raise ParseError(f"expected 'vertices: <m>', got {raw!r}", lineno)
            try:
                m = int(match.group(1))
            except ValueError:
                raise ParseError(f"vertex count {match.group(1)!r} is not an integer", lineno) from None
            if m < 1:
                raise ParseError(f"vertex count must be positive, got {m}", lineno)
            if m > MAX_VERTICES:
                raise TooManyVertices(f"line {lineno}: at most {MAX_VERTICES} vertices supported, got {m}")
            continue
        match = _EDGE.match(line)
        if not match:
            raise ParseError(f"expected '<i> -> <j>' or '<i> -- <j>', got {raw!r}", lineno)
        try:
            i, j = int(match.group(1)), int(match.group(3))
        except ValueError:
            raise ParseError(f"vertex ids must be integers, got {raw!r}", lineno) from None
        kind = match.group(2)
        for v in (i, j):
            if not 1 <= v <= m:
                raise VertexOutOfRange(f"line {lineno}: vertex {v} not in 1..{m}")
        if i == j:
            raise LoopError(f"line {lineno}: loop at vertex {i}")
        pair = (min(i, j), max(i, j))
        edge = (kind, i, j) if kind == "->" else (kind, *pair)
        if pair in seen:
            prev_line, prev = seen[pair]
            cls = DuplicateLink if prev == edge else ConflictingLink
            raise cls(f"line {lineno}: link {i} {kind} {j} clashes with line {prev_line}")
        seen[pair] = (lineno, edge)
        (directed if kind == "->" else undirected).append((i, j))
    if m is None:
        raise ParseError("missing 'vertices: <m>' header")
    return HybridGraph(m, frozenset(directed), frozenset(undirected))


def serialize_graph(h: HybridGraph) -> str:
    lines = [f"vertices: {h.m}"]
    lines += [f"{i} -> {j}" for i, j in sorted(h.directed)]
    lines += [f"{i} -- {j}" for i, j in sorted(h.undirected)]
    return "\n".join(lines) + "\n"


class ComponentPartition(NamedTuple):
    blocks: tuple  # frozensets, ordered by smallest member
    component_index: dict  # vertex -> block id


def components(h: HybridGraph) -> ComponentPartition:
    """Connected components with respect to undirected edges only."""
    parent = {v: v for v in h.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in h.undirected:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for v in h.vertices:
        groups.setdefault(find(v), set()).add(v)
    blocks = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    index = {v: k for k, b in enumerate(blocks) for v in b}
    return ComponentPartition(blocks, index)


def component_order(h: HybridGraph, partition: ComponentPartition | None = None) -> list | None:
    """Topological order of block ids of the component digraph (Kahn, ties by
    smallest vertex). None if an arrow is internal to a block or the block
    digraph has a cycle."""
    partition = partition or components(h)
    idx = partition.component_index
    n = len(partition.blocks)
    succ = {k: set() for k in range(n)}
    for i, j in h.directed:
        a, b = idx[i], idx[j]
        if a == b:
            return None
        succ[a].add(b)
    indeg = {k: 0 for k in range(n)}
    for a in succ:
        for b in succ[a]:
            indeg[b] += 1
    # block ids are already sorted by smallest vertex
    ready = sorted(k for k in range(n) if indeg[k] == 0)
    order = []
    while ready:
        k = ready.pop(0)
        order.append(k)
        for b in sorted(succ[k]):
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
                ready.sort()
    return order if len(order) == n else None


def is_chain_graph(h: HybridGraph) -> bool:
    return component_order(h) is not None


def has_flag(h: HybridGraph) -> bool:
    for i, j in h.directed:
        for k in h.neighbors(j):
            if k != i and not h.linked(i, k):
                return True
    return False


@lru_cache(maxsize=65536)
def classify(h: HybridGraph) -> GraphClass:
    if not is_chain_graph(h):
        return GraphClass.NOT_CHAIN_GRAPH
    if has_flag(h):
        return GraphClass.CHAIN_GRAPH_WITH_FLAGS
    if not h.directed:
        # an edgeless graph is reported as Undirected
        return GraphClass.UNDIRECTED
    if not h.undirected:
        return GraphClass.DAG
    return GraphClass.NF_CHAIN_GRAPH


def is_nf_chain_graph(h: HybridGraph) -> bool:
    return classify(h).is_nf_chain_graph


def is_dag(h: HybridGraph) -> bool:
    """True for acyclic graphs without undirected edges, edgeless included."""
    return not h.undirected and classify(h) is not GraphClass.NOT_CHAIN_GRAPH


class Neighborhoods(NamedTuple):
    parents: frozenset
    children: frozenset
    neighbors: frozenset
    N: frozenset


def neighborhoods(h: HybridGraph, i: int) -> Neighborhoods:
    if not 1 <= i <= h.m:
        raise VertexOutOfRange(f"vertex {i} not in 1..{h.m}")
    return Neighborhoods(h.parents(i), h.children(i), h.neighbors(i), h.closed_neighborhood(i))


def skeleton(h: HybridGraph) -> HybridGraph:
    edges = {(min(i, j), max(i, j)) for i, j in h.directed} | set(h.undirected)
    return HybridGraph(h.m, frozenset(), frozenset(edges))


def immoralities(h: HybridGraph) -> frozenset:
    """Triples ``(i, j, k)`` with i->j<-k, i<k and i, k not linked."""
    out = set()
    for j in h.vertices:
        pa = sorted(h.parents(j))
        for a, i in enumerate(pa):
            for k in pa[a + 1:]:
                if not h.linked(i, k):
                    out.add((i, j, k))
    return frozenset(out)


def descendants(h: HybridGraph, start: Iterable[int]) -> frozenset:
    """Vertices reachable from ``start`` along arrows, ``start`` included."""
    seen = set(start)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for c in h.children(v):
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return frozenset(seen)
