"""Symmetry groups of Gaussian chain graph models without flags."""

from .cupflow import (
    build_layer_graph,
    det00_instances,
    expand_subdeterminant,
    has_self_avoiding_cup_system,
    vanishing_minor,
)
from .equivalence import (
    cliques_and_separators,
    equivalent,
    essential_graph,
    idle_core,
    legal_mergings,
    merge,
)
from .graph import (
    GraphClass,
    HybridGraph,
    classify,
    components,
    immoralities,
    neighborhoods,
    parse_graph,
    serialize_graph,
    skeleton,
)
from .imset import (
    Imset,
    equivalent_via_imset,
    imset_from_essential,
    nstar_containment_via_imset,
    permutation_fixes_imset,
    standard_imset,
)
from .numeric import (
    act,
    concentration,
    maximal_invariant,
    membership,
    numeric_vanishing_check,
    sample_parameters,
)
from .symmetry import (
    Permutation,
    breakdown_bound,
    colored_automorphisms,
    equivalence_classes,
    g0_pattern,
    group_description,
    min_sample_size,
)

__version__ = "0.1.0"
