"""The stabilizer group of a Gaussian NF chain graph model.

The identity component is described by a zero pattern (entry (i, j) may be
nonzero iff N*(i) is contained in N*(j) in the essential graph); the
component group is given by colour-preserving automorphisms of the quotient
of the essential graph by the relation N*(i) = N*(j), lifted back to
permutations of the vertices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .equivalence import essential_graph, require_nf_chain_graph
from .errors import SampleTooSmall
from .graph import HybridGraph, format_set, is_dag
from .imset import nstar_containment_via_imset

FULL_LIST_MAX_CLASSES = 12


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of 1..m in one-line notation: ``images[k]`` is the image of k+1."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, m, *cycles):
        images = list(range(1, m + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, v):
        return self.images[v - 1]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other):
        """Composition: (self * other)(v) = self(other(v))."""
        return Permutation(tuple(self(other(v)) for v in range(1, len(self) + 1)))

    def inverse(self):
        inv = [0] * len(self)
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    @property
    def is_identity(self):
        return all(v == k for k, v in enumerate(self.images, start=1))

    def cycles(self):
        seen, out = set(), []
        for start in range(1, len(self) + 1):
            if start in seen or self(start) == start:
                continue
            cycle, v = [], start
            while v not in seen:
                seen.add(v)
                cycle.append(v)
                v = self(v)
            out.append(tuple(cycle))
        return out

    def matrix(self):
        """Permutation matrix P with P e_v = e_sigma(v)."""
        m = len(self)
        p = np.zeros((m, m))
        for k, v in enumerate(self.images):
            p[v - 1, k] = 1.0
        return p

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


@dataclass(frozen=True)
class ZeroPattern:
    """Support pattern of the identity component; the diagonal is always free."""

    m: int
    pairs: frozenset  # off-diagonal (i, j) that may be nonzero

    def allowed(self, i, j):
        return i == j or (i, j) in self.pairs

    def matrix(self):
        a = np.eye(self.m, dtype=bool)
        for i, j in self.pairs:
            a[i - 1, j - 1] = True
        return a

    def __str__(self):
        return " ".join(f"({i},{j})" for i, j in sorted(self.pairs))


@dataclass(frozen=True)
class QuotientGraph:
    m: int
    classes: tuple  # sorted tuples of vertices, ordered by smallest member
    directed: frozenset  # (class index, class index)
    undirected: frozenset  # (min index, max index)

    @property
    def colors(self):
        return tuple(len(c) for c in self.classes)

    def class_of(self, v):
        for k, c in enumerate(self.classes):
            if v in c:
                return k
        raise KeyError(v)


@dataclass(frozen=True)
class GroupDescription:
    pattern: ZeroPattern
    quotient: QuotientGraph
    lifted_automorphisms: tuple  # Permutation objects, identity first
    down_sets: dict  # vertex -> frozenset
    automorphisms_complete: bool = True

    @property
    def min_sample_size(self):
        return max(len(d) for d in self.down_sets.values())

    def to_dict(self, n=None):
        out = {
            "pattern": [list(p) for p in sorted(self.pattern.pairs)],
            "classes": [list(c) for c in self.quotient.classes],
            "automorphisms": [list(p.images) for p in self.lifted_automorphisms],
            "min_sample_size": self.min_sample_size,
            "down_sets": {str(v): sorted(d) for v, d in sorted(self.down_sets.items())},
        }
        if n is not None:
            out["breakdown_bound"] = str(_breakdown(self.min_sample_size, n))
        return out

    def to_json(self, n=None):
        return json.dumps(self.to_dict(n))

    def render(self, n=None):
        lines = [
            "allowed: " + (str(self.pattern) or "none"),
            "classes: " + " ".join(format_set(c) for c in self.quotient.classes),
            "automorphisms: " + " ".join(str(p) for p in self.lifted_automorphisms),
            "down_sets: " + " ".join(f"{v}:{format_set(d)}" for v, d in sorted(self.down_sets.items())),
            f"min_sample_size: {self.min_sample_size}",
        ]
        if not self.automorphisms_complete:
            lines[2] = "automorphism generators: " + lines[2].split(": ", 1)[1]
        if n is not None:
            lines.append(f"breakdown_bound: {_breakdown(self.min_sample_size, n)}")
        return "\n".join(lines) + "\n"


def nstar_sets(hstar: HybridGraph) -> dict:
    return {i: hstar.closed_neighborhood(i) for i in hstar.vertices}


def _containment_from_essential(hstar: HybridGraph) -> frozenset:
    n = nstar_sets(hstar)
    return frozenset(
        (i, j) for i in hstar.vertices for j in hstar.vertices if i != j and n[i] <= n[j]
    )


def g0_pattern(h: HybridGraph, route: str = "auto") -> ZeroPattern:
    """Off-diagonal positions free in the identity component.

    ``route`` is ``"imset"`` (DAGs only), ``"essential"`` or ``"auto"``, which
    takes the imset route whenever the graph is a DAG.
    """
    require_nf_chain_graph(h)
    if route == "auto":
        route = "imset" if is_dag(h) else "essential"
    if route == "imset":
        pairs = nstar_containment_via_imset(h)
    elif route == "essential":
        pairs = _containment_from_essential(essential_graph(h).graph)
    else:
        raise ValueError(f"unknown route {route!r}")
    return ZeroPattern(h.m, pairs)


def down_sets(h: HybridGraph) -> dict:
    """The sets {j : N*(i) contained in N*(j)} for every vertex i."""
    require_nf_chain_graph(h)
    n = nstar_sets(essential_graph(h).graph)
    return {i: frozenset(j for j in h.vertices if n[i] <= n[j]) for i in h.vertices}


def equivalence_classes(h: HybridGraph) -> QuotientGraph:
    require_nf_chain_graph(h)
    hstar = essential_graph(h).graph
    n = nstar_sets(hstar)
    groups = {}
    for v in hstar.vertices:
        groups.setdefault(n[v], []).append(v)
    classes = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0]))
    index = {v: k for k, c in enumerate(classes) for v in c}
    directed = frozenset((index[i], index[j]) for i, j in hstar.directed)
    undirected = frozenset(
        (min(index[i], index[j]), max(index[i], index[j]))
        for i, j in hstar.undirected
        if index[i] != index[j]
    )
    return QuotientGraph(hstar.m, classes, directed, undirected)


class _ColoredGraph:
    """Hybrid graph on 0..n-1 with vertex colours, for automorphism search."""

    def __init__(self, n, directed, undirected, colors):
        self.n = n
        self.colors = list(colors)
        self.kind = {}
        for i, j in directed:
            self.kind[(i, j)] = 1
            self.kind[(j, i)] = -1
        for i, j in undirected:
            self.kind[(i, j)] = 2
            self.kind[(j, i)] = 2
        outd, ind, und = [0] * n, [0] * n, [0] * n
        for i, j in directed:
            outd[i] += 1
            ind[j] += 1
        for i, j in undirected:
            und[i] += 1
            und[j] += 1
        self.signature = [(self.colors[v], outd[v], ind[v], und[v]) for v in range(n)]

    def extensions(self, prefix):
        """All automorphisms whose images of 0..len(prefix)-1 agree with prefix."""
        image = list(prefix)
        used = set(image)
        if not self._consistent(image):
            return
        yield from self._extend(image, used)

    def _consistent(self, image):
        for a in range(len(image)):
            if self.signature[a] != self.signature[image[a]]:
                return False
            for b in range(a):
                if self.kind.get((a, b), 0) != self.kind.get((image[a], image[b]), 0):
                    return False
        return True

    def _extend(self, image, used):
        v = len(image)
        if v == self.n:
            yield tuple(image)
            return
        for w in range(self.n):
            if w in used or self.signature[w] != self.signature[v]:
                continue
            if any(self.kind.get((v, u), 0) != self.kind.get((w, image[u]), 0) for u in range(v)):
                continue
            image.append(w)
            used.add(w)
            yield from self._extend(image, used)
            image.pop()
            used.discard(w)

    def all_automorphisms(self):
        return list(self.extensions(()))

    def generators(self):
        """Strong generating set from a pointwise-stabilizer chain."""
        gens = []
        for k in range(self.n):
            level = []
            orbit = {k}
            for b in range(k + 1, self.n):
                if b in orbit or self.signature[b] != self.signature[k]:
                    continue
                found = next(self.extensions(tuple(range(k)) + (b,)), None)
                if found is None:
                    continue
                level.append(found)
                frontier = list(orbit)
                while frontier:
                    x = frontier.pop()
                    for g in level:
                        y = g[x]
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
            gens.extend(level)
        return gens


def _lift(q: QuotientGraph, tau) -> Permutation:
    images = [0] * q.m
    for k, cls in enumerate(q.classes):
        target = q.classes[tau[k]]
        for a, b in zip(cls, target):
            images[a - 1] = b
    return Permutation(tuple(images))


def colored_automorphisms(q: QuotientGraph, full_list: bool | None = None) -> list:
    """Colour-preserving automorphisms of the quotient, lifted to [m] by
    sending the k-th smallest member of a class to the k-th smallest member of
    its image class. Above FULL_LIST_MAX_CLASSES classes only generators are
    returned (identity still first)."""
    cg = _ColoredGraph(len(q.classes), q.directed, q.undirected, q.colors)
    if full_list is None:
        full_list = len(q.classes) <= FULL_LIST_MAX_CLASSES
    taus = cg.all_automorphisms() if full_list else [tuple(range(cg.n))] + cg.generators()
    lifted = [_lift(q, t) for t in taus]
    lifted.sort(key=lambda p: (not p.is_identity, p.images))
    return lifted


def graph_automorphisms(h: HybridGraph) -> list:
    """All automorphisms of a hybrid graph (arrows to arrows, edges to edges)."""
    cg = _ColoredGraph(
        h.m,
        [(i - 1, j - 1) for i, j in h.directed],
        [(i - 1, j - 1) for i, j in h.undirected],
        [1] * h.m,
    )
    return sorted(Permutation(tuple(v + 1 for v in t)) for t in cg.all_automorphisms())


def brute_force_automorphisms(h: HybridGraph) -> list:
    """Reference enumeration over all m! permutations."""
    out = []
    for images in permutations(range(1, h.m + 1)):
        p = Permutation(images)
        if h.relabel(p) == h:
            out.append(p)
    return out


def group_description(h: HybridGraph) -> GroupDescription:
    require_nf_chain_graph(h)
    q = equivalence_classes(h)
    full = len(q.classes) <= FULL_LIST_MAX_CLASSES
    return GroupDescription(
        pattern=g0_pattern(h),
        quotient=q,
        lifted_automorphisms=tuple(colored_automorphisms(q, full)),
        down_sets=down_sets(h),
        automorphisms_complete=full,
    )


def min_sample_size(h: HybridGraph) -> int:
    return max(len(d) for d in down_sets(h).values())


def _breakdown(max_down, n) -> Fraction:
    if n < max_down:
        raise SampleTooSmall(f"sample size {n} is below the minimum {max_down}")
    return Fraction(math.ceil(Fraction(n - max_down + 1, 2)), n)


def breakdown_bound(h: HybridGraph, n: int) -> Fraction:
    """Upper bound on the finite-sample breakdown point of any equivariant
    covariance estimator at a generic sample of size n."""
    return _breakdown(min_sample_size(h), n)
