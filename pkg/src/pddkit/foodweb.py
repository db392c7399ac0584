"""Food webs: acyclic prey -> predator digraphs on the taxon set."""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable, Mapping
from fractions import Fraction
from math import comb
from types import MappingProxyType

from .errors import NotACliqueModulatorError, PDDError, UnknownTaxonError

Edge = tuple[str, str]


class FoodWeb:
    """Immutable food web. An edge ``(u, v)`` means ``u`` is a prey of ``v``.

    ``gamma`` optionally maps every edge to a rational weight in (0, 1].
    """

    __slots__ = ("_taxa", "_edges", "_gamma", "_prey", "_pred")

    def __init__(self, taxa: Iterable[str], edges: Iterable[Edge] = (), gamma: Mapping[Edge, Fraction] | None = None):
        self._taxa = frozenset(taxa)
        edge_list = [tuple(e) for e in edges]
        self._edges = frozenset(edge_list)
        if len(self._edges) != len(edge_list):
            raise PDDError("duplicate food-web edge")
        unknown = {x for e in self._edges for x in e} - self._taxa
        if unknown:
            raise UnknownTaxonError(unknown)
        prey: dict[str, set[str]] = {x: set() for x in self._taxa}
        pred: dict[str, set[str]] = {x: set() for x in self._taxa}
        for u, v in self._edges:
            prey[v].add(u)
            pred[u].add(v)
        self._prey = {x: frozenset(s) for x, s in prey.items()}
        self._pred = {x: frozenset(s) for x, s in pred.items()}
        self._gamma = None if gamma is None else MappingProxyType({tuple(e): Fraction(g) for e, g in gamma.items()})

    def __reduce__(self):
        gamma = None if self._gamma is None else dict(self._gamma)
        return (FoodWeb, (self._taxa, self._edges, gamma))

    @property
    def taxa(self) -> frozenset[str]:
        return self._taxa

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def gamma(self) -> Mapping[Edge, Fraction] | None:
        return self._gamma

    def prey(self, x: str) -> frozenset[str]:
        try:
            return self._prey[x]
        except KeyError:
            raise UnknownTaxonError(x) from None

    def predators(self, x: str) -> frozenset[str]:
        try:
            return self._pred[x]
        except KeyError:
            raise UnknownTaxonError(x) from None

    def sources(self) -> frozenset[str]:
        return frozenset(x for x, p in self._prey.items() if not p)

    def max_in_degree(self) -> int:
        return max((len(p) for p in self._prey.values()), default=0)

    def restrict(self, keep) -> FoodWeb:
        """Induced sub-web on ``keep`` (gamma restricted alongside)."""
        keep = frozenset(keep)
        edges = [e for e in self._edges if e[0] in keep and e[1] in keep]
        gamma = None if self._gamma is None else {e: self._gamma[e] for e in edges if e in self._gamma}
        return FoodWeb(keep, edges, gamma)

    def __eq__(self, other):
        if not isinstance(other, FoodWeb):
            return NotImplemented
        mine = None if self._gamma is None else dict(self._gamma)
        theirs = None if other._gamma is None else dict(other._gamma)
        return self._taxa == other._taxa and self._edges == other._edges and mine == theirs

    def __hash__(self):
        return hash((self._taxa, self._edges))

    def __repr__(self):
        return f"FoodWeb(taxa={len(self._taxa)}, edges={len(self._edges)}, gamma={self._gamma is not None})"


def _closure(start: str, step) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in step(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reach_up(web: FoodWeb, x: str) -> frozenset[str]:
    """All taxa with a directed path to ``x``, including ``x``."""
    web.prey(x)
    return frozenset(_closure(x, web.prey))


def reach_down(web: FoodWeb, x: str) -> frozenset[str]:
    """All taxa reachable from ``x``, including ``x``."""
    web.predators(x)
    return frozenset(_closure(x, web.predators))


def reach_up_set(web: FoodWeb, S) -> frozenset[str]:
    seen: set[str] = set()
    for x in S:
        if x not in seen:
            seen |= _closure(x, web.prey)
    return frozenset(seen)


def reach_down_set(web: FoodWeb, S) -> frozenset[str]:
    seen: set[str] = set()
    for x in S:
        if x not in seen:
            seen |= _closure(x, web.predators)
    return frozenset(seen)


def topological_order(web: FoodWeb) -> list[str] | None:
    """Kahn order with name tie-breaking, or ``None`` if the web has a cycle."""
    indeg = {x: len(web.prey(x)) for x in web.taxa}
    heap = [x for x, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in web.predators(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == len(web.taxa) else None


def is_acyclic(web: FoodWeb) -> bool:
    return topological_order(web) is not None


def is_directed_bipartite(web: FoodWeb) -> bool:
    """True iff no taxon is both a prey and a predator."""
    return not any(web.prey(x) and web.predators(x) for x in web.taxa)


def is_bipartite(web: FoodWeb) -> bool:
    """Bipartiteness of the underlying undirected graph."""
    return undirected_bipartition(web) is not None


def undirected_bipartition(web: FoodWeb) -> tuple[frozenset[str], frozenset[str]] | None:
    side: dict[str, int] = {}
    for s in sorted(web.taxa):
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in web.prey(v) | web.predators(v):
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return (frozenset(x for x, s in side.items() if s == 0), frozenset(x for x, s in side.items() if s == 1))


def topological_order_clique(web: FoodWeb, Z) -> tuple[str, ...]:
    """The unique topological order of ``web - Z``, which must be an acyclic tournament.

    Position ``i`` (0-based) in the result has rank ``i + 1``. Runs in O(n + m).
    """
    Z = frozenset(Z)
    unknown = Z - web.taxa
    if unknown:
        raise UnknownTaxonError(unknown)
    rest = web.taxa - Z
    pairs = set()
    indeg = dict.fromkeys(rest, 0)
    for u, v in web.edges:
        if u in indeg and v in indeg:
            pairs.add((u, v) if u < v else (v, u))
            indeg[v] += 1
    if len(pairs) != comb(len(rest), 2):
        raise NotACliqueModulatorError("not a clique after removing Z")
    order: list[str | None] = [None] * len(rest)
    for x, d in indeg.items():
        if d >= len(order) or order[d] is not None:
            raise NotACliqueModulatorError("web minus Z is unexpectedly cyclic")
        order[d] = x
    return tuple(order)
