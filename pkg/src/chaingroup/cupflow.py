"""Vanishing minors of concentration matrices K = (I - L) W (I - L)^T.

A minor det K[A, B] vanishes identically on the model iff no self-avoiding
cup system joins A to B. A cup (i, j, k, l) takes an optional arrow i->j, an
optional undirected edge j-k and an optional reversed arrow k<-l, so cup
systems are paths through four copies of the vertex set and self-avoidance is
vertex-disjointness; the question is then a unit node-capacity max-flow.

For small graphs the minor is also expanded symbolically, and the self-avoiding
cup systems enumerated directly, so the two can be compared term by term.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .errors import SizeMismatch, TooLarge
from .graph import HybridGraph, descendants

SYMBOLIC_MAX_VERTICES = 6
SYMBOLIC_MAX_SIZE = 4


def _check_sizes(a, b):
    a, b = frozenset(a), frozenset(b)
    if len(a) != len(b):
        raise SizeMismatch(f"row set has {len(a)} elements, column set has {len(b)}")
    return a, b


@dataclass(frozen=True)
class CupLayerGraph:
    m: int
    edges12: frozenset
    edges23: frozenset
    edges34: frozenset
    sources: frozenset  # vertices of A, living in layer 1
    sinks: frozenset  # vertices of B, living in layer 4

    def layer_edges(self):
        return (self.edges12, self.edges23, self.edges34)

    def has_path(self, path):
        """Whether ``(u1, u2, u3, u4)`` runs along layer edges."""
        return all((path[k], path[k + 1]) in e for k, e in enumerate(self.layer_edges()))


def build_layer_graph(h: HybridGraph, a, b) -> CupLayerGraph:
    a, b = _check_sizes(a, b)
    ident = {(v, v) for v in h.vertices}
    e12 = ident | set(h.directed)
    e23 = ident | set(h.undirected) | {(j, i) for i, j in h.undirected}
    e34 = ident | {(k, l) for l, k in h.directed}
    return CupLayerGraph(h.m, frozenset(e12), frozenset(e23), frozenset(e34), a, b)


def _max_disjoint_paths(lg: CupLayerGraph) -> int:
    """Unit node-capacity max-flow from layer-1 sources to layer-4 sinks
    (Edmonds-Karp on the split graph)."""
    # node ids: ("in"|"out", layer, v), plus "s" and "t"
    cap = {}
    adj = {}

    def add(u, v, c=1):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    for layer in range(1, 5):
        for v in range(1, lg.m + 1):
            add(("in", layer, v), ("out", layer, v))
    for layer, edges in enumerate(lg.layer_edges(), start=1):
        for u, v in edges:
            add(("out", layer, u), ("in", layer + 1, v))
    for v in lg.sources:
        add("s", ("in", 1, v))
    for v in lg.sinks:
        add(("out", 4, v), "t")

    flow = 0
    while True:
        prev = {"s": None}
        queue = deque(["s"])
        while queue and "t" not in prev:
            u = queue.popleft()
            for v in adj.get(u, ()):
                if v not in prev and cap[(u, v)] > 0:
                    prev[v] = u
                    queue.append(v)
        if "t" not in prev:
            return flow
        v = "t"
        while prev[v] is not None:
            u = prev[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1


def has_self_avoiding_cup_system(h: HybridGraph, a, b) -> bool:
    a, b = _check_sizes(a, b)
    if not a:
        return True
    return _max_disjoint_paths(build_layer_graph(h, a, b)) == len(a)


def vanishing_minor(h: HybridGraph, a, b) -> bool:
    """True iff det K[A, B] is identically zero on the model of ``h``."""
    return not has_self_avoiding_cup_system(h, a, b)


def det00_instances(h: HybridGraph) -> list:
    """Pairs (D+u, D+v) with D the strict descendants of u and v neither in
    D+u nor linked to u; their minors always vanish."""
    out = []
    for u in h.vertices:
        d = descendants(h, h.children(u))
        for v in h.vertices:
            if v == u or v in d or h.linked(u, v):
                continue
            out.append((d | {u}, d | {v}))
    return out


# --- exact polynomials -------------------------------------------------------

def lam(i, j):
    return ("lambda", i, j)


def omega(i, j):
    return ("omega", min(i, j), max(i, j))


class Polynomial:
    """Sparse polynomial with integer coefficients.

    Monomials are sorted tuples of ``(variable, exponent)`` pairs; variables
    are tuples such as ``("lambda", 1, 2)`` or ``("omega", 2, 2)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, c):
        return cls({(): c})

    @classmethod
    def variable(cls, var, coeff=1):
        return cls({((var, 1),): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(out)

    def __neg__(self):
        return Polynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial({k: v * other for k, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree_in(self, kind):
        return {sum(e for (var, e) in mono if var[0] == kind) for mono in self.terms}

    def evaluate(self, values):
        total = 0
        for mono, c in self.terms.items():
            t = c
            for var, e in mono:
                t *= values[var] ** e
            total += t
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            factors = "*".join(
                f"{v[0][0]}{v[1]}{v[2]}" + (f"^{e}" if e > 1 else "") for v, e in mono
            )
            parts.append(f"{c:+d}" + (f"*{factors}" if factors else ""))
        return " ".join(parts)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def _perm_sign(p):
    sign, seen = 1, set()
    for start in range(len(p)):
        if start in seen:
            continue
        length, v = 0, start
        while v not in seen:
            seen.add(v)
            v = p[v]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _i_minus_lambda(h, a, j):
    """Symbolic (a, j) entry of I - Lambda."""
    if a == j:
        return Polynomial.constant(1)
    if (a, j) in h.directed:
        return Polynomial.variable(lam(a, j), -1)
    return Polynomial()


def _omega_entry(h, j, k):
    if j == k or (min(j, k), max(j, k)) in h.undirected:
        return Polynomial.variable(omega(j, k))
    return Polynomial()


@lru_cache(maxsize=256)
def symbolic_concentration(h: HybridGraph) -> dict:
    """Entries K[a, b] of (I - Lambda) Omega (I - Lambda)^T as polynomials.

    Cached per graph; callers must not mutate the returned dict.
    """
    ilam = {(a, j): _i_minus_lambda(h, a, j) for a in h.vertices for j in h.vertices}
    om = {(j, k): _omega_entry(h, j, k) for j in h.vertices for k in h.vertices}
    k_entries = {}
    for a in h.vertices:
        for b in h.vertices:
            total = Polynomial()
            for j in h.vertices:
                if ilam[(a, j)].is_zero():
                    continue
                for k in h.vertices:
                    if om[(j, k)].is_zero() or ilam[(b, k)].is_zero():
                        continue
                    total = total + ilam[(a, j)] * om[(j, k)] * ilam[(b, k)]
            k_entries[(a, b)] = total
    return k_entries


def expand_subdeterminant(h: HybridGraph, a, b) -> Polynomial:
    """Fully expanded det K[A, B] with rows and columns in ascending order."""
    a, b = _check_sizes(a, b)
    if h.m > SYMBOLIC_MAX_VERTICES or len(a) > SYMBOLIC_MAX_SIZE:
        raise TooLarge(
            f"symbolic expansion limited to m <= {SYMBOLIC_MAX_VERTICES} and "
            f"|A| <= {SYMBOLIC_MAX_SIZE}"
        )
    rows, cols = sorted(a), sorted(b)
    k = symbolic_concentration(h)
    det = Polynomial()
    for p in permutations(range(len(rows))):
        term = Polynomial.constant(_perm_sign(p))
        for r, c in enumerate(p):
            term = term * k[(rows[r], cols[c])]
            if term.is_zero():
                break
        det = det + term
    return det


def cups_from(h: HybridGraph, i: int):
    """All cups (i, j, k, l) starting at i."""
    for j in [i] + sorted(h.children(i)):
        for k in [j] + sorted(h.neighbors(j)):
            for l in [k] + sorted(h.parents(k)):
                yield (i, j, k, l)


def cup_weight(h: HybridGraph, cup) -> Polynomial:
    i, j, k, l = cup
    return _i_minus_lambda(h, i, j) * _omega_entry(h, j, k) * _i_minus_lambda(h, l, k)


def self_avoiding_cup_systems(h: HybridGraph, a, b):
    """Yield ``(cups, sign)`` for every self-avoiding cup system from A to B.

    Cups are listed by ascending start; the sign is that of the induced
    bijection between ascending A and ascending B.
    """
    a, b = _check_sizes(a, b)
    rows, cols = sorted(a), sorted(b)
    col_pos = {v: k for k, v in enumerate(cols)}
    options = [[c for c in cups_from(h, r) if c[3] in col_pos] for r in rows]
    for choice in product(*options):
        if any(len({c[pos] for c in choice}) != len(choice) for pos in range(4)):
            continue
        yield choice, _perm_sign([col_pos[c[3]] for c in choice])


def cup_system_expansion(h: HybridGraph, a, b) -> Polynomial:
    """Signed sum of weights over self-avoiding cup systems."""
    total = Polynomial()
    for cups, sign in self_avoiding_cup_systems(h, a, b):
        w = Polynomial.constant(sign)
        for c in cups:
            w = w * cup_weight(h, c)
        total = total + w
    return total


def equal_weight_sign_conflicts(h: HybridGraph, a, b) -> list:
    """Pairs of self-avoiding systems with the same weight but opposite signs."""
    by_weight = {}
    conflicts = []
    for cups, sign in self_avoiding_cup_systems(h, a, b):
        w = Polynomial.constant(1)
        for c in cups:
            w = w * cup_weight(h, c)
        # a cup-system weight is a single signed monomial
        (key,) = w.terms
        if key in by_weight and by_weight[key][1] != sign:
            conflicts.append((by_weight[key][0], cups))
        by_weight.setdefault(key, (cups, sign))
    return conflicts
