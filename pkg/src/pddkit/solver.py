"""Exact solving by enumeration of size-k taxon sets, plus greedy Max-PD.

``solve_exact`` walks the size-``k`` subsets of the taxa in lexicographic
order of their sorted names and stops at the first viable set reaching the
diversity threshold, so its witness is the lexicographically least one.
Prefixes are pruned when even an unconstrained greedy completion cannot
reach the threshold.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInstanceError, PDDError
from .instance import Instance, Solution, validate_instance
from .tree import PhyloTree, pd
from .viability import certificate, is_viable


@dataclass(frozen=True)
class SolveOutcome:
    verdict: bool
    witness: Solution | None
    explored: int
    elapsed: float

    def __bool__(self):
        return self.verdict


def _require_valid(inst: Instance):
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstanceError(problems)


def make_solution(inst: Instance, S) -> Solution:
    S = frozenset(S)
    return Solution(S, pd(inst.tree, S), certificate(inst.web, inst.mode, S))


def check_solution(inst: Instance, S) -> bool:
    """Does ``S`` answer ``inst`` with yes?"""
    S = frozenset(S)
    return len(S) <= inst.k and pd(inst.tree, S) >= inst.D and is_viable(inst.web, inst.mode, S).viable


def live_taxa(inst: Instance) -> frozenset[str]:
    """Taxa that belong to at least one viable set.

    Only gamma webs can contain dead taxa: a non-source whose surviving prey
    carry total gamma below 1 can never be saved. Removing them restores the
    padding property that every viable set extends by one taxon at a time,
    which the exactly-k enumeration depends on.
    """
    alive = set(inst.taxa)
    if inst.mode.kind != "gamma":
        return frozenset(alive)
    web = inst.web
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            prey = web.prey(x)
            if prey and sum((web.gamma[(u, x)] for u in prey & alive), Fraction(0)) < 1:
                alive.discard(x)
                changed = True
    return frozenset(alive)


def _marginal(tree: PhyloTree, x: str, covered: set[str]) -> int:
    gain, v = 0, x
    while v != tree.root and v not in covered:
        p = tree.parent(v)
        gain += tree.weight((p, v))
        v = p
    return gain


def _cover(tree: PhyloTree, x: str, covered: set[str]):
    v = x
    while v != tree.root and v not in covered:
        covered.add(v)
        v = tree.parent(v)


def _greedy_extend(tree: PhyloTree, pool, r: int, covered: set[str]) -> tuple[list[str], int]:
    pool = sorted(pool)
    chosen, total = [], 0
    for _ in range(r):
        best, best_gain = None, -1
        for x in pool:
            g = _marginal(tree, x, covered)
            if g > best_gain:
                best, best_gain = x, g
        if best is None:
            break
        chosen.append(best)
        total += best_gain
        _cover(tree, best, covered)
        pool.remove(best)
    return chosen, total


def greedy_max_pd(tree: PhyloTree, k: int) -> frozenset[str]:
    """Size-k taxon set of maximum PD, built by repeatedly taking the largest marginal gain.

    Ties go to the smaller taxon name.
    """
    if not 0 <= k <= len(tree.taxa):
        raise PDDError(f"k={k} out of range [0, {len(tree.taxa)}]")
    chosen, _ = _greedy_extend(tree, tree.taxa, k, set())
    return frozenset(chosen)


def pd_upper_bound(tree: PhyloTree, k: int) -> int:
    return pd(tree, greedy_max_pd(tree, k))


class _Search:
    def __init__(self, inst: Instance, prune: bool):
        self.inst = inst
        self.names = sorted(live_taxa(inst))
        self.size = min(inst.k, len(self.names))
        self.prune = prune
        self.explored = 0

    def accept(self, S) -> bool:
        inst = self.inst
        return pd(inst.tree, S) >= inst.D and is_viable(inst.web, inst.mode, S).viable

    def bound(self, prefix, start, r) -> int:
        tree = self.inst.tree
        covered: set[str] = set()
        for x in prefix:
            _cover(tree, x, covered)
        base = sum(tree.weight((tree.parent(v), v)) for v in covered)
        _, gain = _greedy_extend(tree, self.names[start:], r, covered)
        return base + gain

    def extend(self, prefix: list[str], start: int):
        r = self.size - len(prefix)
        if r == 0:
            self.explored += 1
            return tuple(prefix) if self.accept(prefix) else None
        if self.prune and self.bound(prefix, start, r) < self.inst.D:
            return None
        for j in range(start, len(self.names) - r + 1):
            prefix.append(self.names[j])
            found = self.extend(prefix, j + 1)
            prefix.pop()
            if found is not None:
                return found
        return None

    def first_indices(self) -> range:
        return range(len(self.names) - self.size + 1)

    def run_from(self, i: int):
        if self.size == 0:
            return self.extend([], 0)
        return self.extend([self.names[i]], i + 1)

    def run(self):
        if self.size == 0:
            return self.extend([], 0)
        if self.prune and self.bound([], 0, self.size) < self.inst.D:
            return None
        for i in self.first_indices():
            found = self.run_from(i)
            if found is not None:
                return found
        return None


def _run_partition(args):
    inst, prune, i = args
    search = _Search(inst, prune)
    return search.run_from(i), search.explored


def solve_exact(inst: Instance, prune: bool = True, jobs: int = 1) -> SolveOutcome:
    """Decide the instance by enumerating sets of size exactly ``min(k, |X|)``.

    With ``jobs > 1`` the enumeration is split by the first chosen taxon;
    the verdict and witness do not depend on ``jobs``.
    """
    _require_valid(inst)
    start = time.perf_counter()
    search = _Search(inst, prune)
    if jobs <= 1 or search.size == 0:
        found = search.run()
        explored = search.explored
    else:
        tasks = [(inst, prune, i) for i in search.first_indices()]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_partition, tasks))
        explored = sum(n for _, n in results)
        found = next((w for w, _ in results if w is not None), None)
    elapsed = time.perf_counter() - start
    witness = make_solution(inst, found) if found is not None else None
    return SolveOutcome(found is not None, witness, explored, elapsed)
