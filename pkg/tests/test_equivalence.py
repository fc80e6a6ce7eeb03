import random
from collections import defaultdict

import pytest
from hypothesis import given, settings

from chaingroup import (
    cliques_and_separators,
    components,
    equivalent,
    essential_graph,
    idle_core,
    legal_mergings,
    merge,
)
from chaingroup.equivalence import MetaArrow, compare, meta_arrows
from chaingroup.errors import DomainError, NotDecomposable, NotMetaArrow
from chaingroup.generate import all_dags
from chaingroup.graph import is_nf_chain_graph

from graphs import (
    ALL_ESSENTIAL,
    CHAIN,
    CHAIN_ESSENTIAL,
    CHAIN_REVERSED,
    COLLIDER,
    COMPLETE_DAG,
    FORK,
    FOUR,
    FOUR_SKELETON,
    SPRINKLE,
    SPRINKLE_ESSENTIAL,
    E,
)
from strategies import dags, nf_chain_graphs

FLAGGED = E(3, [(1, 2)], [(2, 3)])


class TestEquivalent:
    def test_chain_and_fork(self):
        assert equivalent(CHAIN, FORK)
        assert equivalent(CHAIN, CHAIN_REVERSED)

    def test_chain_and_collider(self):
        verdict = compare(CHAIN, COLLIDER)
        assert not verdict.equivalent
        assert verdict.reason == "immoralities differ at 1->2<-3"

    def test_skeleton_mismatch_reason(self):
        verdict = compare(CHAIN, E(3, [(1, 2)]))
        assert not verdict.equivalent
        assert verdict.reason == "skeletons differ"

    def test_reflexive(self):
        assert equivalent(SPRINKLE, SPRINKLE)

    def test_rejects_flags(self):
        with pytest.raises(DomainError):
            equivalent(FLAGGED, FLAGGED)


class TestLegalMergings:
    def test_chain(self):
        assert [str(ma) for ma in legal_mergings(CHAIN)] == ["{1}=>{2}"]

    def test_chain_second_arrow_fails_parent_condition(self):
        # p({3}) minus {2} is empty while p({2}) = {1}; merging would create a flag
        ma = meta_arrows(CHAIN)[1]
        assert str(ma) == "{2}=>{3}"
        assert ma not in legal_mergings(CHAIN)
        assert not is_nf_chain_graph(merge(CHAIN, ma))

    def test_collider(self):
        assert legal_mergings(COLLIDER) == []

    def test_undirected(self):
        assert legal_mergings(CHAIN_ESSENTIAL) == []

    def test_meta_arrows_sorted(self):
        assert [str(ma) for ma in meta_arrows(SPRINKLE)] == [
            "{1}=>{2}", "{1}=>{3}", "{2}=>{4}", "{3}=>{4}", "{4}=>{5}",
        ]

    def test_rejects_flags(self):
        with pytest.raises(DomainError):
            legal_mergings(FLAGGED)


class TestMerge:
    def test_first_arrow(self):
        ma = meta_arrows(CHAIN)[0]
        assert merge(CHAIN, ma) == E(3, [(2, 3)], [(1, 2)])

    def test_second_arrow(self):
        ma = meta_arrows(CHAIN)[1]
        assert merge(CHAIN, ma) == E(3, [(1, 2)], [(2, 3)])

    def test_does_not_check_legality(self):
        ma = next(a for a in meta_arrows(SPRINKLE) if str(a) == "{4}=>{5}")
        assert ma not in legal_mergings(SPRINKLE)
        assert (4, 5) in merge(SPRINKLE, ma).undirected

    def test_rejects_partial_meta_arrow(self):
        bad = MetaArrow(frozenset({1}), frozenset({2}), frozenset({(1, 3)}))
        with pytest.raises(NotMetaArrow):
            merge(SPRINKLE, bad)


class TestEssentialGraph:
    @pytest.mark.parametrize(
        "h, expected",
        [
            (CHAIN, CHAIN_ESSENTIAL),
            (COLLIDER, COLLIDER),
            (SPRINKLE, SPRINKLE_ESSENTIAL),
            (ALL_ESSENTIAL, ALL_ESSENTIAL),
            (FOUR, FOUR_SKELETON),
            (COMPLETE_DAG, E(3, undirected=[(1, 2), (1, 3), (2, 3)])),
        ],
    )
    def test_examples(self, h, expected):
        assert essential_graph(h).graph == expected

    def test_provenance_records_mergings(self):
        eg = essential_graph(CHAIN)
        assert len(eg.provenance) == 2

    def test_rejects_flags(self):
        with pytest.raises(DomainError):
            essential_graph(FLAGGED)

    @given(nf_chain_graphs())
    def test_idempotent_and_equivalent(self, h):
        hstar = essential_graph(h).graph
        assert is_nf_chain_graph(hstar)
        assert essential_graph(hstar).graph == hstar
        assert legal_mergings(hstar) == []
        assert equivalent(h, hstar)

    @settings(max_examples=50)
    @given(nf_chain_graphs())
    def test_merging_order_confluence(self, h):
        reference = essential_graph(h).graph
        for k in range(20):
            assert essential_graph(h, rng=random.Random(k)).graph == reference

    @given(dags())
    def test_dag_class_components_decomposable(self, h):
        hstar = essential_graph(h).graph
        for block in components(hstar).blocks:
            cliques_and_separators(hstar, vertices=block)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_equivalence_matches_essential_graph_equality(m):
    classes = defaultdict(list)
    for g in all_dags(m):
        classes[essential_graph(g).graph].append(g)
    reps = [members[0] for members in classes.values()]
    for members in classes.values():
        for g in members:
            assert equivalent(g, members[0])
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not equivalent(reps[a], reps[b])


class TestIdleCore:
    def test_collider(self):
        assert idle_core(COLLIDER) == ({2}, {1, 3})

    def test_path(self):
        assert idle_core(CHAIN_ESSENTIAL) == (set(), {1, 2, 3})

    def test_complete_dag(self):
        assert idle_core(COMPLETE_DAG) == ({1, 2, 3}, set())

    @given(nf_chain_graphs())
    def test_partition_and_clique_in_essential(self, h):
        hstar = essential_graph(h).graph
        idle, core = idle_core(hstar)
        assert idle | core == set(hstar.vertices)
        assert not idle & core
        assert hstar.is_clique(idle)
        part = components(hstar)
        for v in idle:
            assert part.blocks[part.component_index[v]] <= idle


class TestCliquesAndSeparators:
    def test_path(self):
        data = cliques_and_separators(E(3, undirected=[(1, 2), (2, 3)]))
        assert set(data.cliques) == {frozenset({1, 2}), frozenset({2, 3})}
        assert data.separators == {frozenset({2}): 1}

    def test_triangle(self):
        data = cliques_and_separators(E(3, undirected=[(1, 2), (2, 3), (1, 3)]))
        assert data.cliques == (frozenset({1, 2, 3}),)
        assert data.separators == {}

    def test_four_cycle(self):
        with pytest.raises(NotDecomposable) as exc:
            cliques_and_separators(E(4, undirected=[(1, 2), (2, 3), (3, 4), (1, 4)]))
        assert sorted(exc.value.cycle) == [1, 2, 3, 4]

    def test_rejects_arrows(self):
        with pytest.raises(DomainError):
            cliques_and_separators(CHAIN)

    @given(dags(min_m=2, max_m=7))
    def test_running_intersection_and_tie_breaks(self, h):
        u = essential_graph(h).graph
        for block in components(u).blocks:
            ref = cliques_and_separators(u, vertices=block)
            assert sum(ref.separators.values()) == len(ref.cliques) - 1
            seen = set()
            for c in ref.cliques:
                if seen:
                    s = c & seen
                    assert any(s <= prev for prev in ref.cliques[: ref.cliques.index(c)])
                seen |= c
            for k in range(5):
                other = cliques_and_separators(u, vertices=block, rng=random.Random(k))
                assert set(other.cliques) == set(ref.cliques)
                assert other.separators == ref.separators
