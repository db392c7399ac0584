"""Linear kernel for 1-viability instances parameterised by distance to clique.

Given a modulator ``Z`` whose removal leaves an acyclic tournament, the
remaining taxa have a unique topological order tau. Two rules are applied
once each:

* rule 1: the taxon at rank ``k + 1`` and everything it feeds can never be
  saved, so they are deleted (tree: all-contraction).
* rule 2: the first ``k - |Z|`` ranks are in every solution of size ``k``;
  the taxon at rank ``k - |Z|`` and everything feeding it are committed,
  deleted, and charged to ``k`` and ``D`` (tree: some-contraction).

What remains has at most ``2 |Z|`` taxa when both rules fire.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidInstanceError, NotACliqueModulatorError, PDDError
from .foodweb import FoodWeb, reach_down, reach_up, topological_order_clique
from .instance import Instance, validate_instance
from .tree import RESERVED_ROOT, PhyloTree, contract_all, contract_some, pd


@dataclass(frozen=True)
class KernelTrace:
    removed_by_rr1: frozenset[str] = frozenset()
    removed_by_rr2: frozenset[str] = frozenset()
    k_delta: int = 0
    D_delta: int = 0
    tau: tuple[str, ...] = ()
    tau_after_rr1: tuple[str, ...] = ()
    rr1_pivot: str | None = None
    rr2_pivot: str | None = None
    modulator: frozenset[str] = frozenset()
    taxa_before: int = 0
    taxa_after: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def both_fired(self) -> bool:
        return self.rr1_pivot is not None and self.rr2_pivot is not None

    def report(self) -> str:
        def names(s):
            return " ".join(sorted(s)) or "-"

        lines = [
            f"modulator ({len(self.modulator)}): {names(self.modulator)}",
            f"tau: {' '.join(self.tau) or '-'}",
            f"rule 1 pivot: {self.rr1_pivot or 'none'}",
            f"rule 1 removed ({len(self.removed_by_rr1)}): {names(self.removed_by_rr1)}",
            f"tau after rule 1: {' '.join(self.tau_after_rr1) or '-'}",
            f"rule 2 pivot: {self.rr2_pivot or 'none'}",
            f"rule 2 removed ({len(self.removed_by_rr2)}): {names(self.removed_by_rr2)}",
            f"k reduced by {self.k_delta}",
            f"D reduced by {self.D_delta}",
            f"taxa: {self.taxa_before} -> {self.taxa_after} (bound 2|Z| = {2 * len(self.modulator)})",
        ]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _empty_like(inst: Instance, k: int, D: int) -> Instance:
    root = inst.tree.root or RESERVED_ROOT
    return Instance(PhyloTree({}, root=root), FoodWeb(()), k, D, inst.mode)


def _require_one_pdd(inst: Instance):
    if not inst.mode.is_one:
        raise PDDError(f"kernelization needs mode alpha 1/1, got {inst.mode}")
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstanceError(problems)


def _remove(inst: Instance, gone: frozenset[str], contract, k: int, D: int) -> Instance:
    keep = inst.taxa - gone
    if not keep:
        return _empty_like(inst, k, D)
    return Instance(contract(inst.tree, gone), inst.web.restrict(keep), k, D, inst.mode)


def apply_rr1(inst: Instance, Z, tau) -> tuple[Instance, frozenset[str]]:
    """Delete the rank-(k+1) taxon and everything reachable from it."""
    if len(tau) < inst.k + 1:
        raise PDDError("rule 1 has no pivot")
    z = tau[inst.k]
    gone = reach_down(inst.web, z)
    return _remove(inst, gone, contract_all, inst.k, inst.D), gone


def apply_rr2(inst: Instance, Z, tau) -> tuple[Instance, frozenset[str], int, int]:
    """Commit the rank-(k-|Z|) taxon with all its ancestors."""
    rank = inst.k - len(Z)
    if rank < 1 or len(tau) < rank:
        raise PDDError("rule 2 has no pivot")
    x = tau[rank - 1]
    gone = reach_up(inst.web, x)
    k_delta = len(gone)
    assert k_delta <= inst.k, "forced set larger than k"
    D_delta = pd(inst.tree, gone)
    reduced = _remove(inst, gone, contract_some, inst.k - k_delta, max(0, inst.D - D_delta))
    return reduced, gone, k_delta, D_delta


def kernelize(inst: Instance, Z) -> tuple[Instance, KernelTrace]:
    _require_one_pdd(inst)
    Z = Z0 = frozenset(Z)
    n0 = len(inst.taxa)
    tau = topological_order_clique(inst.web, Z)
    notes = []

    rr1_pivot, gone1 = None, frozenset()
    if len(tau) >= inst.k + 1:
        rr1_pivot = tau[inst.k]
        inst, gone1 = apply_rr1(inst, Z, tau)

    Z = Z & inst.taxa
    tau2 = topological_order_clique(inst.web, Z) if inst.taxa else ()
    rr2_pivot, gone2, k_delta, D_delta = None, frozenset(), 0, 0
    rank = inst.k - len(Z)
    if rank >= 1 and len(tau2) >= rank:
        rr2_pivot = tau2[rank - 1]
        inst, gone2, k_delta, D_delta = apply_rr2(inst, Z, tau2)
    if rr1_pivot is None or rr2_pivot is None:
        notes.append("a rule had no pivot; the 2|Z| bound is not asserted")

    trace = KernelTrace(
        removed_by_rr1=gone1,
        removed_by_rr2=gone2,
        k_delta=k_delta,
        D_delta=D_delta,
        tau=tau,
        tau_after_rr1=tau2,
        rr1_pivot=rr1_pivot,
        rr2_pivot=rr2_pivot,
        modulator=Z0,
        taxa_before=n0,
        taxa_after=len(inst.taxa),
        notes=notes,
    )
    return inst, trace


def _non_adjacent(web: FoodWeb, names) -> dict[str, set[str]]:
    adj = {x: set() for x in names}
    for u, v in web.edges:
        adj[u].add(v)
        adj[v].add(u)
    comp = {x: set() for x in names}
    for u, v in combinations(names, 2):
        if v not in adj[u]:
            comp[u].add(v)
            comp[v].add(u)
    return comp


def _min_vertex_cover(graph: dict[str, set[str]]) -> set[str]:
    best = [set(graph)]

    def go(g, chosen):
        if len(chosen) >= len(best[0]):
            return
        live = {v: nb for v, nb in g.items() if nb}
        if not live:
            best[0] = set(chosen)
            return
        v = max(sorted(live), key=lambda u: len(live[u]))
        # v in the cover
        go(_drop(live, {v}), chosen | {v})
        # v out: all its neighbours in the cover
        nb = set(live[v])
        go(_drop(live, nb), chosen | nb)

    go(graph, set())
    return best[0]


def _drop(g, gone):
    return {v: nb - gone for v, nb in g.items() if v not in gone}


def find_clique_modulator(web: FoodWeb, exact_limit: int = 20) -> frozenset[str]:
    """Some Z for which ``web - Z`` is a tournament.

    This is a vertex cover of the non-adjacency graph: exact by branching up
    to ``exact_limit`` taxa, a maximal-matching 2-approximation beyond.
    """
    names = sorted(web.taxa)
    comp = _non_adjacent(web, names)
    if len(names) <= exact_limit:
        Z = _min_vertex_cover(comp)
    else:
        Z = set()
        for u in names:
            if u in Z:
                continue
            for v in sorted(comp[u]):
                if v not in Z:
                    Z |= {u, v}
                    break
    Z = frozenset(Z)
    try:
        topological_order_clique(web, Z)
    except NotACliqueModulatorError as err:
        raise PDDError(f"modulator search produced an invalid set: {err}") from err
    return Z
