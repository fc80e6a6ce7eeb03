"""Named graphs shared by the test modules."""

import functools

from chaingroup import HybridGraph
from chaingroup.generate import all_dags

E = HybridGraph.from_edges

CHAIN = E(3, [(1, 2), (2, 3)])
CHAIN_REVERSED = E(3, [(2, 1), (3, 2)])
FORK = E(3, [(2, 1), (2, 3)])
COLLIDER = E(3, [(1, 2), (3, 2)])
CHAIN_ESSENTIAL = E(3, undirected=[(1, 2), (2, 3)])

SPRINKLE = E(5, [(1, 2), (1, 3), (2, 4), (3, 4), (4, 5)])
SPRINKLE_ESSENTIAL = E(5, [(2, 4), (3, 4), (4, 5)], [(1, 2), (1, 3)])

VERMA = E(5, [(1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (4, 5)])

ALL_ESSENTIAL = E(4, [(1, 3), (2, 3), (1, 2), (4, 2)])

FOUR = E(4, [(2, 1), (2, 3), (2, 4), (3, 4)])
FOUR_SKELETON = E(4, undirected=[(1, 2), (2, 3), (2, 4), (3, 4)])

# factor model with p = 2 factors a1, a2 (vertices 1, 2) and q = 3
# observed b1, b2, b3 (vertices 3, 4, 5)
FACTOR = E(5, [(a, b) for a in (1, 2) for b in (3, 4, 5)])
FACTOR_A = (1, 2)
FACTOR_B = (3, 4, 5)

SINGLE = HybridGraph(1)
COMPLETE_DAG = E(3, [(1, 2), (1, 3), (2, 3)])

WORKED_EXAMPLES = {
    "chain": CHAIN,
    "collider": COLLIDER,
    "sprinkle": SPRINKLE,
    "verma": VERMA,
    "factor": FACTOR,
}


@functools.cache
def dags_on(m):
    return tuple(all_dags(m))
