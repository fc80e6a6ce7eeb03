"""Markov equivalence of NF chain graphs and construction of essential graphs
by repeated legal merging of components."""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, NotDecomposable, NotMetaArrow
from .graph import (
    HybridGraph,
    classify,
    components,
    format_set,
    immoralities,
    skeleton,
)


def require_nf_chain_graph(h: HybridGraph, what="graph"):
    cls = classify(h)
    if not cls.is_nf_chain_graph:
        raise DomainError(f"{what} must be a chain graph without flags, got {cls}")


@dataclass(frozen=True)
class MetaArrow:
    source: frozenset
    target: frozenset
    arrows: frozenset

    def __str__(self):
        return f"{format_set(self.source)}=>{format_set(self.target)}"


@dataclass(frozen=True)
class EssentialGraph:
    graph: HybridGraph
    provenance: tuple = ()


class CoreData(NamedTuple):
    idle: frozenset
    core: frozenset


@dataclass(frozen=True)
class CliqueSeparatorData:
    cliques: tuple  # frozensets in running-intersection order
    separators: dict  # frozenset -> multiplicity

    @property
    def separator_sequence(self):
        """S_2, ..., S_p for the stored clique order."""
        out, seen = [], set()
        for c in self.cliques:
            if seen:
                out.append(frozenset(c & seen))
            seen |= c
        return out


class EquivalenceVerdict(NamedTuple):
    equivalent: bool
    reason: str


def compare(g: HybridGraph, h: HybridGraph) -> EquivalenceVerdict:
    require_nf_chain_graph(g, "first graph")
    require_nf_chain_graph(h, "second graph")
    if g.m != h.m:
        raise DomainError(f"vertex sets differ: {g.m} vs {h.m} vertices")
    if skeleton(g) != skeleton(h):
        return EquivalenceVerdict(False, "skeletons differ")
    ig, ih = immoralities(g), immoralities(h)
    if ig != ih:
        diff = sorted(ig ^ ih)[0]
        return EquivalenceVerdict(False, "immoralities differ at %d->%d<-%d" % diff)
    return EquivalenceVerdict(True, "same skeleton and immoralities")


def equivalent(g: HybridGraph, h: HybridGraph) -> bool:
    return compare(g, h).equivalent


def meta_arrows(h: HybridGraph) -> list:
    part = components(h)
    grouped = {}
    for i, j in h.directed:
        key = (part.component_index[i], part.component_index[j])
        grouped.setdefault(key, set()).add((i, j))
    out = [
        MetaArrow(part.blocks[a], part.blocks[b], frozenset(arrows))
        for (a, b), arrows in grouped.items()
    ]
    out.sort(key=lambda ma: (min(ma.source), min(ma.target)))
    return out


def is_legal(h: HybridGraph, ma: MetaArrow) -> bool:
    pa_target = h.parents_of_set(ma.target)
    inside = pa_target & ma.source
    # the induced graph on a component is undirected, so linked == adjacent
    if not h.is_clique(inside):
        return False
    return pa_target - ma.source == h.parents_of_set(ma.source)


def legal_mergings(h: HybridGraph) -> list:
    require_nf_chain_graph(h)
    return [ma for ma in meta_arrows(h) if is_legal(h, ma)]


def merge(h: HybridGraph, ma: MetaArrow) -> HybridGraph:
    """Turn every arrow of the meta-arrow into an undirected edge.

    Legality is not checked here.
    """
    if not ma.arrows or not ma.arrows <= h.directed:
        raise NotMetaArrow(f"{ma} is not a meta-arrow of the graph")
    expected = {(i, j) for i, j in h.directed if i in ma.source and j in ma.target}
    if expected != set(ma.arrows):
        raise NotMetaArrow(f"{ma} does not contain all arrows between its components")
    return HybridGraph(h.m, h.directed - ma.arrows, h.undirected | ma.arrows)


def essential_graph(h: HybridGraph, rng: random.Random | None = None) -> EssentialGraph:
    """Apply legal mergings until none is left.

    The first candidate in (source min, target min) order is merged each round;
    passing ``rng`` picks a random legal merging instead, which is only used
    to test that the fixpoint does not depend on the order.
    """
    require_nf_chain_graph(h)
    steps = []
    current = h
    while True:
        candidates = [ma for ma in meta_arrows(current) if is_legal(current, ma)]
        if not candidates:
            return EssentialGraph(current, tuple(steps))
        ma = rng.choice(candidates) if rng is not None else candidates[0]
        steps.append(ma)
        current = merge(current, ma)


def idle_core(h: HybridGraph) -> CoreData:
    """Largest idle set: pairwise linked, and every outside vertex points
    into each of its members."""
    everything = frozenset(h.vertices)
    idle = {v for v in h.vertices if h.adjacent(v) == everything - {v}}
    changed = True
    while changed:
        changed = False
        for j in sorted(idle):
            if any((i, j) not in h.directed for i in everything - idle):
                idle.discard(j)
                changed = True
    idle = frozenset(idle)
    return CoreData(idle, everything - idle)


def _undirected_adjacency(u: HybridGraph, vertices=None):
    vs = sorted(vertices) if vertices is not None else list(u.vertices)
    allowed = set(vs)
    adj = {v: set() for v in vs}
    for i, j in u.undirected:
        if i in allowed and j in allowed:
            adj[i].add(j)
            adj[j].add(i)
    return vs, adj


def mcs_order(vs, adj, rng: random.Random | None = None) -> list:
    """Maximum cardinality search; ties broken by smallest vertex unless an
    ``rng`` is supplied."""
    weight = {v: 0 for v in vs}
    unnumbered = set(vs)
    order = []
    while unnumbered:
        best = max(weight[v] for v in unnumbered)
        ties = sorted(v for v in unnumbered if weight[v] == best)
        v = rng.choice(ties) if rng is not None else ties[0]
        order.append(v)
        unnumbered.discard(v)
        for w in adj[v]:
            if w in unnumbered:
                weight[w] += 1
    return order


def _chordless_cycle(adj, v, a, b):
    """Shortest a..b path avoiding v's other neighbours closes a chordless
    cycle through v."""
    blocked = (adj[v] | {v}) - {a, b}
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return [v] + path[::-1]
        for y in sorted(adj[x]):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    return None


def cliques_and_separators(u: HybridGraph, vertices=None, rng: random.Random | None = None) -> CliqueSeparatorData:
    """Maximal cliques in running-intersection order and separator
    multiplicities of a decomposable undirected graph.

    ``vertices`` restricts the computation to an induced subgraph (only the
    undirected edges are used).
    """
    if vertices is None and u.directed:
        raise DomainError("clique decomposition needs an undirected graph")
    vs, adj = _undirected_adjacency(u, vertices)
    order = mcs_order(vs, adj, rng)
    position = {v: k for k, v in enumerate(order)}
    candidates = []
    for v in order:
        earlier = {w for w in adj[v] if position[w] < position[v]}
        for a in sorted(earlier):
            for b in sorted(earlier):
                if a < b and b not in adj[a]:
                    cycle = _chordless_cycle(adj, v, a, b)
                    raise NotDecomposable(
                        "graph is not decomposable: chordless cycle "
                        + ("-".join(map(str, cycle)) if cycle else f"through {a}-{v}-{b}"),
                        cycle,
                    )
        candidates.append(frozenset(earlier | {v}))
    cliques = []
    for k, c in enumerate(candidates):
        if not any(c < d for d in candidates[k + 1:]) and c not in cliques:
            cliques.append(c)
    separators = Counter()
    seen = set()
    for k, c in enumerate(cliques):
        if k:
            s = frozenset(c & seen)
            if not any(s <= cliques[j] for j in range(k)):
                raise AssertionError("clique order violates running intersection")
            separators[s] += 1
        seen |= c
    return CliqueSeparatorData(tuple(cliques), dict(separators))
