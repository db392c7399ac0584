import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pddkit import (
    PDDError,
    PhyloTree,
    UnknownTaxonError,
    contract_all,
    contract_some,
    offspring,
    path_edges,
    pd,
    star,
    suppress_degree2,
)
from pddkit.tree import tree_violations

from .conftest import small_tree, subsets


def pd_by_offspring(tree, S):
    """Definition-level oracle: sum w(e) over edges whose offspring meets S."""
    S = set(S)
    return sum(w for e, w in tree.edges.items() if offspring(tree, e) & S)


class TestPD:
    def test_star(self, star3):
        assert pd(star3, {"a", "b"}) == 5

    def test_shared_edge_counted_once(self, rooted_pair):
        assert pd(rooted_pair, {"a", "b"}) == 7

    def test_empty(self, rooted_pair, star3):
        assert pd(rooted_pair, set()) == 0
        assert pd(star3, ()) == 0

    def test_unknown_taxon(self, star3):
        with pytest.raises(UnknownTaxonError):
            pd(star3, {"zz"})

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_path_edges_and_offspring(self, seed):
        tree = small_tree(7, seed)
        for S in subsets(tree.taxa):
            via_paths = sum(tree.weight(e) for e in path_edges(tree, S))
            assert pd(tree, S) == via_paths == pd_by_offspring(tree, S)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10_000), st.data())
    def test_monotone(self, seed, data):
        tree = small_tree(8, seed)
        taxa = sorted(tree.taxa)
        S = data.draw(st.sets(st.sampled_from(taxa)))
        T = S | data.draw(st.sets(st.sampled_from(taxa)))
        assert pd(tree, S) <= pd(tree, T)


class TestPathEdgesAndOffspring:
    def test_single_leaf_on_star(self, star3):
        assert path_edges(star3, {"c"}) == {("rho", "c")}

    def test_path_to_one_leaf(self, rooted_pair):
        assert path_edges(rooted_pair, {"a"}) == {("rho", "u"), ("u", "a")}

    def test_all_taxa_cover_every_edge(self, rooted_pair):
        assert path_edges(rooted_pair, rooted_pair.taxa) == set(rooted_pair.edges)

    def test_offspring(self, star3, rooted_pair):
        assert offspring(star3, ("rho", "a")) == {"a"}
        assert offspring(rooted_pair, ("rho", "u")) == {"a", "b"}
        assert offspring(rooted_pair, ("rho", "u")) == rooted_pair.taxa

    def test_offspring_unknown_edge(self, star3):
        with pytest.raises(PDDError):
            offspring(star3, ("a", "b"))


class TestSuppress:
    def test_chain(self):
        t = PhyloTree({("rho", "v"): 2, ("v", "a"): 3})
        assert dict(suppress_degree2(t).edges) == {("rho", "a"): 5}

    def test_identity(self, rooted_pair):
        assert suppress_degree2(rooted_pair) == rooted_pair

    def test_repeated(self):
        t = PhyloTree({("rho", "v1"): 1, ("v1", "v2"): 1, ("v2", "v3"): 1, ("v3", "a"): 1})
        assert dict(suppress_degree2(t).edges) == {("rho", "a"): 4}

    @pytest.mark.parametrize("seed", range(15))
    def test_preserves_pd_after_random_subdivision(self, seed):
        rng = random.Random(seed)
        tree = small_tree(6, seed)
        edges = dict(tree.edges)
        for i, ((p, c), w) in enumerate(sorted(tree.edges.items())):
            if rng.random() < 0.5:
                continue
            cut = f"_s{i}"
            left = rng.randint(1, 5)
            del edges[(p, c)]
            edges[(p, cut)] = left
            edges[(cut, c)] = w
        raw = PhyloTree(edges, root=tree.root)
        fixed = suppress_degree2(raw)
        assert not tree_violations(fixed)
        for S in subsets(tree.taxa):
            assert pd(fixed, S) == pd(raw, S)


class TestContraction:
    def test_some_on_star(self, star3):
        assert contract_some(star3, {"a"}) == star({"b": 2, "c": 1})

    def test_some_drops_shared_edge(self, rooted_pair):
        out = contract_some(rooted_pair, {"a"})
        assert out.taxa == {"b"}
        assert list(out.edges.values()) == [4]
        assert not tree_violations(out)

    def test_some_whole_subtree(self):
        t = PhyloTree({("rho", "u"): 2, ("u", "a"): 1, ("u", "b"): 4, ("rho", "c"): 5})
        out = contract_some(t, {"a", "b"})
        assert dict(out.edges) == {("rho", "c"): 5}

    def test_all_on_star(self, star3):
        assert contract_all(star3, {"a"}) == star({"b": 2, "c": 1})

    def test_all_keeps_shared_edge(self, rooted_pair):
        assert dict(contract_all(rooted_pair, {"a"}).edges) == {("rho", "b"): 6}

    def test_all_whole_subtree(self):
        t = PhyloTree({("rho", "u"): 2, ("u", "a"): 1, ("u", "b"): 4, ("rho", "c"): 5, ("rho", "d"): 1})
        out = contract_all(t, {"a", "b"})
        assert dict(out.edges) == {("rho", "c"): 5, ("rho", "d"): 1}

    def test_several_roots_are_identified(self):
        t = PhyloTree({("rho", "u"): 2, ("u", "a"): 1, ("u", "b"): 4, ("rho", "c"): 5})
        out = contract_some(t, {"a"})
        assert out.taxa == {"b", "c"}
        assert out.root not in out.taxa
        assert sorted(out.edges.values()) == [4, 5]

    @pytest.mark.parametrize("fn", [contract_some, contract_all])
    def test_rejects_bad_sets(self, star3, fn):
        with pytest.raises(PDDError):
            fn(star3, set())
        with pytest.raises(PDDError):
            fn(star3, {"a", "b", "c"})
        with pytest.raises(UnknownTaxonError):
            fn(star3, {"q"})

    @pytest.mark.parametrize("seed", range(40))
    def test_pd_identities_exhaustive(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 8)
        tree = small_tree(n, seed)
        taxa = sorted(tree.taxa)
        A = set(rng.sample(taxa, rng.randint(1, n - 1)))
        rest = set(taxa) - A
        some, every = contract_some(tree, A), contract_all(tree, A)
        for T in (some, every):
            assert T.taxa == rest
            assert not tree_violations(T)
        base = pd(tree, A)
        for S in subsets(rest):
            assert pd(some, S) == pd(tree, set(S) | A) - base
            if S:
                assert pd(every, S) == pd(tree, S)


def test_violations(rooted_pair):
    assert tree_violations(rooted_pair) == []
    bad = PhyloTree({("rho", "u"): 1, ("u", "v"): 1, ("v", "a"): 1, ("v", "b"): 1})
    out = tree_violations(bad)
    assert len(out) == 1 and "'u'" in out[0]
    assert tree_violations(PhyloTree({("rho", "a"): 0, ("rho", "b"): 1}))
    assert tree_violations(PhyloTree({("r1", "a"): 1, ("r2", "b"): 1}))
