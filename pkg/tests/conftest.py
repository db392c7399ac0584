import random
from itertools import chain, combinations

import pytest

from pddkit import ONE, FoodWeb, Instance, PhyloTree, pd, star
from pddkit.generate import random_tree, taxon_names

ACCEPTANCE_LINES = []


def subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def small_tree(n, seed):
    rng = random.Random(seed)
    return random_tree(rng, taxon_names(n))


@pytest.fixture
def rooted_pair():
    """rho -> u (2), u -> a (1), u -> b (4)"""
    return PhyloTree({("rho", "u"): 2, ("u", "a"): 1, ("u", "b"): 4})


@pytest.fixture
def star3():
    return star({"a": 3, "b": 2, "c": 1})


@pytest.fixture
def record_acceptance():
    def record(number, name, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name}" + (f" ({detail})" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def clique_web(rng, n_clique, n_mod, p=0.4):
    """Acyclic tournament on ``c*`` plus modulator taxa ``z*`` wired randomly along one global order."""
    clique = [f"c{i:02d}" for i in range(n_clique)]
    Z = [f"z{i}" for i in range(n_mod)]
    order = clique + Z
    rng.shuffle(order)
    edges = []
    for i, u in enumerate(order):
        for v in order[i + 1 :]:
            both = u in Z or v in Z
            if not both or rng.random() < p:
                edges.append((u, v))
    return FoodWeb(order, edges), frozenset(Z)


def clique_instance(seed, max_taxa=14, max_mod=4):
    """Random 1-viability instance with a known modulator, random tree, random k and D."""
    rng = random.Random(seed)
    n_mod = rng.randint(0, max_mod)
    n_clique = rng.randint(max(1 - n_mod, 0), max_taxa - n_mod)
    web, Z = clique_web(rng, n_clique, n_mod)
    tree = random_tree(rng, sorted(web.taxa)) if rng.random() < 0.5 else star({x: rng.randint(1, 10) for x in web.taxa})
    k = rng.randint(0, len(web.taxa))
    D = rng.randint(0, pd(tree, tree.taxa))
    return Instance(tree, web, k, D, ONE), Z
