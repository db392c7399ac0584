import random
from fractions import Fraction
from itertools import combinations

import pytest

from pddkit import (
    EPSILON,
    GAMMA,
    ONE,
    FoodWeb,
    Instance,
    InvalidInstanceError,
    OracleTooLargeError,
    PDDError,
    PhyloTree,
    ViabilityMode,
    brute_force_oracle,
    greedy_max_pd,
    is_viable,
    pd,
    pd_upper_bound,
    solve_exact,
    star,
)
from pddkit.generate import random_instance
from pddkit.oracle import twin_classes
from pddkit.solver import check_solution

from .conftest import small_tree, subsets

STAR3 = star({"a": 3, "b": 2, "c": 1})
CHAIN = FoodWeb("abc", [("a", "b"), ("b", "c")])
CHAIN_TREE = star({"a": 1, "b": 1, "c": 3})

MODES = [EPSILON, GAMMA, ONE] + [ViabilityMode.of_alpha(Fraction(p, q)) for p, q in [(1, 3), (1, 2), (2, 3)]]


def mixed_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    mode = rng.choice(MODES)
    m = rng.randint(0, n * (n - 1) // 2)
    return random_instance(n, m, seed, star_tree=rng.random() < 0.5, gamma=mode.kind == "gamma", mode=mode)


def best_pd_of_size(tree, k):
    return max(pd(tree, S) for S in combinations(sorted(tree.taxa), k))


class TestSolveExact:
    def test_unconstrained_star(self):
        out = solve_exact(Instance(STAR3, FoodWeb("abc"), 2, 5, ONE))
        assert out.verdict
        assert out.witness.saved == {"a", "b"}
        assert out.witness.pd_value == 5

    def test_closure_exceeds_budget(self):
        assert not solve_exact(Instance(CHAIN_TREE, CHAIN, 1, 3, ONE)).verdict

    def test_closure_fits(self):
        out = solve_exact(Instance(CHAIN_TREE, CHAIN, 3, 3, ONE))
        assert out.witness.saved == {"a", "b", "c"}
        assert out.witness.pd_value == 5

    def test_witness_is_lexicographically_least(self):
        out = solve_exact(Instance(star({"a": 1, "b": 1, "c": 1}), FoodWeb("abc"), 2, 2, EPSILON))
        assert out.witness.saved == {"a", "b"}

    def test_k_above_taxa_count(self):
        out = solve_exact(Instance(STAR3, FoodWeb("abc"), 10, 6, ONE))
        assert out.witness.saved == {"a", "b", "c"}

    def test_invalid_instance(self):
        web = FoodWeb("ab", [("a", "b"), ("b", "a")])
        with pytest.raises(InvalidInstanceError):
            solve_exact(Instance(star({"a": 1, "b": 1}), web, 1, 0, EPSILON))

    @pytest.mark.parametrize("seed", range(150))
    def test_agrees_with_oracle(self, seed):
        inst = mixed_instance(seed)
        fast, ref = solve_exact(inst), brute_force_oracle(inst)
        assert fast.verdict == ref.verdict
        for out in (fast, ref):
            if out.verdict:
                assert check_solution(inst, out.witness.saved)

    @pytest.mark.parametrize("seed", range(40))
    def test_pruning_does_not_change_answer(self, seed):
        inst = mixed_instance(seed)
        a, b = solve_exact(inst, prune=True), solve_exact(inst, prune=False)
        assert a.verdict == b.verdict
        assert (a.witness and a.witness.saved) == (b.witness and b.witness.saved)

    @pytest.mark.parametrize("seed", range(40))
    def test_bound_below_threshold_means_no(self, seed):
        inst = mixed_instance(seed)
        k = min(inst.k, len(inst.taxa))
        if pd_upper_bound(inst.tree, k) < inst.D:
            assert not solve_exact(inst).verdict

    def test_jobs_do_not_change_answer(self):
        for seed in range(6):
            inst = random_instance(8, 10, seed, mode=ONE, D=0)
            inst = inst.replace(k=4, D=pd(inst.tree, inst.taxa) // 2)
            a, b = solve_exact(inst, jobs=1), solve_exact(inst, jobs=2)
            assert a.verdict == b.verdict
            assert (a.witness and a.witness.saved) == (b.witness and b.witness.saved)


@pytest.mark.parametrize("seed", range(40))
def test_exactly_k_matches_at_most_k(seed):
    """Some viable set of size <= k reaching D exists iff one of size exactly min(k, |live|) does."""
    inst = mixed_instance(seed)
    names = sorted(inst.taxa)
    at_most = any(
        len(S) <= inst.k and pd(inst.tree, S) >= inst.D and is_viable(inst.web, inst.mode, S).viable
        for S in subsets(names)
    )
    assert solve_exact(inst).verdict == at_most


class TestOracle:
    def test_k0_D0(self):
        out = brute_force_oracle(Instance(STAR3, FoodWeb("abc"), 0, 0, ONE))
        assert out.verdict and out.witness.saved == frozenset()

    def test_k0_D_positive(self):
        assert not brute_force_oracle(Instance(STAR3, FoodWeb("abc"), 0, 1, ONE)).verdict

    def test_bitmask_size_guard(self):
        names = [f"x{i:02d}" for i in range(26)]
        inst = Instance(star({x: 1 for x in names}), FoodWeb(names), 2, 1, EPSILON)
        with pytest.raises(OracleTooLargeError):
            brute_force_oracle(inst, engine="bitmask")

    def test_configuration_guard(self):
        names = [f"x{i:02d}" for i in range(40)]
        chain = FoodWeb(names, list(zip(names, names[1:])))
        inst = Instance(star({x: i + 1 for i, x in enumerate(names)}), chain, 20, 1, EPSILON)
        with pytest.raises(OracleTooLargeError):
            brute_force_oracle(inst)

    def test_twins_are_grouped(self):
        web = FoodWeb("abcx", [("a", "x"), ("b", "x")])
        inst = Instance(star({"a": 1, "b": 1, "c": 2, "x": 1}), web, 2, 0, ONE)
        assert sorted(twin_classes(inst)) == [["a", "b"], ["c"], ["x"]]
        heavier = inst.replace(tree=star({"a": 1, "b": 2, "c": 2, "x": 1}))
        assert sorted(twin_classes(heavier)) == [["a"], ["b"], ["c"], ["x"]]

    @pytest.mark.parametrize("seed", range(100))
    def test_engines_agree(self, seed):
        inst = mixed_instance(seed)
        a = brute_force_oracle(inst, engine="bitmask")
        b = brute_force_oracle(inst, engine="classes")
        assert a.verdict == b.verdict
        if b.verdict:
            assert check_solution(inst, b.witness.saved)

    @pytest.mark.parametrize("seed", range(10))
    def test_large_padded_instances(self, seed):
        """Many interchangeable padding taxa push the instance past the bitmask limit."""
        rng = random.Random(seed)
        base = random_instance(5, rng.randint(0, 10), seed, mode=ONE)
        leaves = {x: base.tree.weight((base.tree.root, x)) for x in base.taxa}
        edges = set(base.web.edges)
        for x in sorted(base.taxa):
            for j in range(rng.randint(0, 6)):
                leaves[f"{x}_p{j}"] = 1
                edges.add((f"{x}_p{j}", x))
        mode = ViabilityMode.of_alpha(Fraction(1, 2))
        inst = Instance(star(leaves), FoodWeb(leaves, edges), rng.randint(0, 8), 0, mode)
        inst = inst.replace(D=rng.randint(0, pd_upper_bound(inst.tree, min(inst.k, len(inst.taxa)))))
        ref = brute_force_oracle(inst)
        assert ref.verdict == solve_exact(inst).verdict
        if ref.verdict:
            assert check_solution(inst, ref.witness.saved)


class TestGreedy:
    def test_star(self):
        assert greedy_max_pd(STAR3, 2) == {"a", "b"}
        assert pd(STAR3, greedy_max_pd(STAR3, 2)) == 5

    def test_tie_rule(self):
        tree = PhyloTree({("rho", "u"): 10, ("u", "a"): 1, ("u", "b"): 1, ("rho", "c"): 5})
        singles = {x: pd(tree, {x}) for x in tree.taxa}
        assert singles == {"a": 11, "b": 11, "c": 5}
        assert greedy_max_pd(tree, 1) == {"a"}

    def test_everything(self):
        assert greedy_max_pd(STAR3, 3) == STAR3.taxa

    def test_range(self):
        with pytest.raises(PDDError):
            greedy_max_pd(STAR3, 4)
        with pytest.raises(PDDError):
            greedy_max_pd(STAR3, -1)

    def test_upper_bound(self):
        assert pd_upper_bound(STAR3, 2) == 5
        assert pd_upper_bound(STAR3, 0) == 0
        assert pd_upper_bound(STAR3, 3) == 6

    @pytest.mark.parametrize("seed", range(30))
    def test_optimal(self, seed):
        tree = small_tree(random.Random(seed).randint(1, 9), seed)
        for k in range(len(tree.taxa) + 1):
            assert pd(tree, greedy_max_pd(tree, k)) == best_pd_of_size(tree, k)
