"""Graph families for exhaustive and randomized checks."""

from __future__ import annotations

import random
from itertools import combinations, product

from .graph import HybridGraph, is_chain_graph


def all_dags(m: int) -> list:
    """Every labelled DAG on 1..m (1, 3, 25, 543, 29281 for m = 1..5)."""
    pairs = list(combinations(range(1, m + 1), 2))
    out = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        arrows = []
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                arrows.append((i, j))
            elif c == 2:
                arrows.append((j, i))
        h = HybridGraph(m, frozenset(arrows))
        if is_chain_graph(h):
            out.append(h)
    return out


def random_dag(m: int, rng: random.Random, p: float = 0.5) -> HybridGraph:
    order = list(range(1, m + 1))
    rng.shuffle(order)
    arrows = [
        (order[a], order[b])
        for a in range(m)
        for b in range(a + 1, m)
        if rng.random() < p
    ]
    return HybridGraph(m, frozenset(arrows))


def _random_blocks(m, rng):
    order = list(range(1, m + 1))
    rng.shuffle(order)
    blocks, k = [], 0
    while k < m:
        size = rng.randint(1, m - k)
        blocks.append(order[k:k + size])
        k += size
    return blocks


def _connected_edges(block, rng, p_extra):
    edges = set()
    for k in range(1, len(block)):
        a, b = block[k], block[rng.randrange(k)]
        edges.add((min(a, b), max(a, b)))
    for a, b in combinations(block, 2):
        if rng.random() < p_extra:
            edges.add((min(a, b), max(a, b)))
    return edges


def random_nf_chain_graph(m: int, rng: random.Random, p_parent: float = 0.4, p_extra: float = 0.3) -> HybridGraph:
    """Random chain graph without flags: ordered connected blocks, each block
    receiving arrows from one common set of earlier vertices."""
    blocks = _random_blocks(m, rng)
    undirected, directed = set(), set()
    earlier = []
    for block in blocks:
        undirected |= _connected_edges(block, rng, p_extra)
        parents = [v for v in earlier if rng.random() < p_parent]
        directed |= {(p, t) for p in parents for t in block}
        earlier.extend(block)
    return HybridGraph(m, frozenset(directed), frozenset(undirected))


def random_chain_graph(m: int, rng: random.Random, p_arrow: float = 0.4, p_extra: float = 0.3) -> HybridGraph:
    """Random chain graph, flags allowed: arrows between blocks chosen freely."""
    blocks = _random_blocks(m, rng)
    undirected, directed = set(), set()
    earlier = []
    for block in blocks:
        undirected |= _connected_edges(block, rng, p_extra)
        directed |= {(p, t) for p in earlier for t in block if rng.random() < p_arrow}
        earlier.extend(block)
    return HybridGraph(m, frozenset(directed), frozenset(undirected))


def mixed_family(count: int, max_m: int, seed: int) -> list:
    """Seeded mix of DAGs, undirected graphs and NF chain graphs."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        m = rng.randint(1, max_m)
        kind = k % 3
        if kind == 0:
            out.append(random_dag(m, rng))
        elif kind == 1:
            h = random_nf_chain_graph(m, rng)
            out.append(HybridGraph(m, frozenset(), h.undirected | {(min(i, j), max(i, j)) for i, j in h.directed}))
        else:
            out.append(random_nf_chain_graph(m, rng))
    return out
