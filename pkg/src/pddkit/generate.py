"""Seeded random instances and graphs for testing and the ``gen`` command."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .errors import PDDError
from .foodweb import FoodWeb
from .instance import EPSILON, GAMMA, Instance, ViabilityMode
from .reductions import CliqueInput
from .tree import PhyloTree, pd, star

ROOT = "rho"


def taxon_names(n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"t{i:0{width}d}" for i in range(n)]


def random_dag(rng: random.Random, names: list[str], m: int, bipartite: bool = False) -> list[tuple[str, str]]:
    """``m`` distinct forward edges over a random permutation of ``names``.

    With ``bipartite`` the shuffled taxa are split into a prey half of
    ``len(names) // 2`` and a predator half, and edges only run from the first
    to the second.
    """
    order = names[:]
    rng.shuffle(order)
    if bipartite:
        cut = len(order) // 2
        pairs = [(u, v) for u in order[:cut] for v in order[cut:]]
    else:
        pairs = list(combinations(order, 2))
    if m > len(pairs):
        raise PDDError(f"cannot place {m} edges, only {len(pairs)} pairs available")
    return rng.sample(pairs, m)


def random_tree(rng: random.Random, names: list[str], weights=(1, 10)) -> PhyloTree:
    """A random rooted tree on ``names``: random binary merges, some edges then collapsed."""
    lo, hi = weights
    if len(names) == 1:
        return PhyloTree({(ROOT, names[0]): rng.randint(lo, hi)}, root=ROOT)
    children: dict[str, list[str]] = {}
    pool = names[:]
    fresh = 0
    while len(pool) > 2:
        a, b = rng.sample(pool, 2)
        pool.remove(a)
        pool.remove(b)
        v = f"_u{fresh}"
        fresh += 1
        children[v] = [a, b]
        pool.append(v)
    children[ROOT] = pool
    # collapse some internal vertices into their parent to get multifurcations
    for v in sorted(children):
        if v == ROOT or rng.random() >= 0.3:
            continue
        parent = next(p for p, cs in children.items() if v in cs)
        cs = children.pop(v)
        children[parent].remove(v)
        children[parent].extend(cs)
    edges = {(p, c): rng.randint(lo, hi) for p, cs in children.items() for c in cs}
    return PhyloTree(edges, root=ROOT)


def random_gamma(rng: random.Random, edges) -> dict:
    out = {}
    for e in edges:
        q = rng.randint(1, 4)
        out[e] = Fraction(rng.randint(1, q), q)
    return out


def max_edges(n: int, bipartite: bool = False) -> int:
    return (n // 2) * (n - n // 2) if bipartite else n * (n - 1) // 2


def random_instance(
    n: int,
    m: int,
    seed: int,
    star_tree: bool = True,
    gamma: bool = False,
    k: int | None = None,
    D: int | None = None,
    mode: ViabilityMode | None = None,
    bipartite: bool = False,
) -> Instance:
    if n < 1:
        raise PDDError("need at least one taxon")
    if not 0 <= m <= max_edges(n, bipartite):
        raise PDDError(f"edge count {m} outside [0, {max_edges(n, bipartite)}]")
    rng = random.Random(seed)
    names = taxon_names(n)
    edges = random_dag(rng, names, m, bipartite)
    if star_tree:
        tree = star({x: rng.randint(1, 10) for x in names}, root=ROOT)
    else:
        tree = random_tree(rng, names)
    g = random_gamma(rng, sorted(edges)) if gamma else None
    web = FoodWeb(names, edges, g)
    if mode is None:
        mode = GAMMA if gamma else EPSILON
    if k is None:
        k = rng.randint(0, n)
    if D is None:
        D = rng.randint(0, pd(tree, names))
    return Instance(tree, web, k, D, mode)


def random_graph(rng: random.Random, n: int, p: float, k: int) -> CliqueInput:
    vs = [f"x{i}" for i in range(n)]
    es = [(u, v) for u, v in combinations(vs, 2) if rng.random() < p]
    return CliqueInput(vs, es, k)
