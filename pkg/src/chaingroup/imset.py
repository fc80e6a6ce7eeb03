"""Standard imsets of DAGs and the imset route to the N*-containment relation."""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping

from .equivalence import cliques_and_separators, idle_core
from .errors import DomainError
from .graph import HybridGraph, components, format_set, is_dag, set_key


class Imset(Mapping):
    """Integer-valued function on vertex subsets; zero entries are dropped."""

    def __init__(self, entries=None):
        self._entries = {
            frozenset(s): int(v) for s, v in dict(entries or {}).items() if v != 0
        }

    def __getitem__(self, s):
        return self._entries.get(frozenset(s), 0)

    def __iter__(self):
        return iter(sorted(self._entries, key=lambda s: (len(s), set_key(s))))

    def __len__(self):
        return len(self._entries)

    def __contains__(self, s):
        return frozenset(s) in self._entries

    def __eq__(self, other):
        if isinstance(other, Imset):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self == Imset(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        body = ", ".join(f"{format_set(s)}: {self[s]:+d}" for s in self)
        return f"Imset({{{body}}})"

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def relabel(self, sigma) -> "Imset":
        """The imset S -> u(sigma^-1(S)), i.e. every key mapped through sigma."""
        return Imset({frozenset(sigma(v) for v in s): val for s, val in self._entries.items()})

    def render(self) -> str:
        return "".join(f"{format_set(s)}: {self[s]}\n" for s in self)


def _require_dag(h: HybridGraph):
    if not is_dag(h):
        raise DomainError("standard imsets are defined for DAGs only")


def _raw_imset(h: HybridGraph) -> Counter:
    u = Counter()
    u[frozenset(h.vertices)] += 1
    u[frozenset()] -= 1
    for i in h.vertices:
        pa = h.parents(i)
        u[pa] += 1
        u[pa | {i}] -= 1
    return u


def standard_imset(h: HybridGraph) -> Imset:
    _require_dag(h)
    return Imset(_raw_imset(h))


def equivalent_via_imset(g: HybridGraph, h: HybridGraph) -> bool:
    _require_dag(g)
    _require_dag(h)
    if g.m != h.m:
        raise DomainError(f"vertex sets differ: {g.m} vs {h.m} vertices")
    return standard_imset(g) == standard_imset(h)


def nstar_containment_via_imset(h: HybridGraph) -> frozenset:
    """Pairs (i, j) of linked vertices with N*(i) contained in N*(j), read off
    the support of the standard imset without building the essential graph."""
    _require_dag(h)
    support = [s for s, v in _raw_imset(h).items() if v != 0]
    # E_i: the support sets containing i, as a bit-word over support indices
    e = {i: 0 for i in h.vertices}
    for k, s in enumerate(support):
        for i in s:
            e[i] |= 1 << k
    pairs = set()
    linked = list(h.directed) + list(h.undirected)
    for a, b in linked:
        for i, j in ((a, b), (b, a)):
            if e[i] & ~e[j] == 0:
                pairs.add((i, j))
    return frozenset(pairs)


def imset_from_essential(hstar: HybridGraph) -> Imset:
    """Standard imset of the DAGs in the class of an essential graph, from
    its core components, their cliques and separators, and parent sets."""
    core = idle_core(hstar).core
    if not core:
        return Imset()
    u = Counter()
    u[core] += 1
    parent_sets = Counter()
    initial = 0
    for block in components(hstar).blocks:
        if not block <= core:
            continue
        pa = hstar.parents_of_set(block)
        data = cliques_and_separators(hstar, vertices=block)
        for c in data.cliques:
            u[c | pa] -= 1
        for s, nu in data.separators.items():
            u[s | pa] += nu
        if pa:
            parent_sets[pa] += 1
        else:
            initial += 1
    for p, tau in parent_sets.items():
        u[p] += tau
    u[frozenset()] += initial - 1
    return Imset(u)


def permutation_fixes_imset(u: Imset, sigma) -> bool:
    """True iff u(sigma^-1(S)) = u(S) for every S.

    ``sigma`` is a callable on vertex ids, a mapping, or a sequence of images
    in one-line notation (``sigma[0]`` is the image of vertex 1).
    """
    if callable(sigma):
        f = sigma
    elif isinstance(sigma, Mapping):
        f = sigma.__getitem__
    else:
        f = lambda v: sigma[v - 1]
    return u.relabel(f) == u
