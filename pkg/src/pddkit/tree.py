"""Rooted, edge-weighted phylogenetic trees and the surgery on them.

Vertices are plain strings. A leaf's vertex name *is* its taxon name, so the
leaf labelling is the identity and trivially bijective.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from types import MappingProxyType

from .errors import PDDError, UnknownTaxonError

Edge = tuple[str, str]

RESERVED_ROOT = "_root"


class PhyloTree:
    """An immutable rooted tree with positive integer edge weights.

    The constructor is lenient: it accepts any parent/child edge list so that
    malformed input can be represented and reported by :func:`tree_violations`.
    Every other function assumes a valid tree.
    """

    __slots__ = ("_root", "_weights", "_children", "_parents", "_vertices", "_leaves")

    def __init__(self, edges: Mapping[Edge, int] | Iterable[tuple[str, str, int]], root: str | None = None):
        if isinstance(edges, Mapping):
            items = [(p, c, w) for (p, c), w in edges.items()]
        else:
            items = [tuple(e) for e in edges]
        weights: dict[Edge, int] = {}
        children: dict[str, list[str]] = {}
        parents: dict[str, list[str]] = {}
        vertices: set[str] = set()
        if root is not None:
            vertices.add(root)
        for p, c, w in items:
            if (p, c) in weights:
                raise PDDError(f"duplicate tree edge {p}->{c}")
            weights[(p, c)] = w
            children.setdefault(p, []).append(c)
            parents.setdefault(c, []).append(p)
            vertices.update((p, c))
        if root is None:
            tops = [v for v in vertices if v not in parents]
            root = tops[0] if len(tops) == 1 else None
        self._root = root
        self._weights = MappingProxyType(weights)
        self._children = {v: tuple(cs) for v, cs in children.items()}
        self._parents = {v: tuple(ps) for v, ps in parents.items()}
        self._vertices = frozenset(vertices)
        self._leaves = frozenset(v for v in vertices if v != root and v not in children)

    def __reduce__(self):
        return (PhyloTree, (dict(self._weights), self._root))

    @property
    def root(self) -> str | None:
        return self._root

    @property
    def edges(self) -> Mapping[Edge, int]:
        """Read-only map ``(parent, child) -> weight``."""
        return self._weights

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def taxa(self) -> frozenset[str]:
        return self._leaves

    leaves = taxa

    def weight(self, e: Edge) -> int:
        return self._weights[e]

    def children(self, v: str) -> tuple[str, ...]:
        return self._children.get(v, ())

    def parents(self, v: str) -> tuple[str, ...]:
        return self._parents.get(v, ())

    def parent(self, v: str) -> str | None:
        ps = self._parents.get(v)
        return ps[0] if ps else None

    def is_star(self) -> bool:
        return all(p == self._root for p, _ in self._weights)

    def total_weight(self) -> int:
        return sum(self._weights.values())

    def __eq__(self, other):
        if not isinstance(other, PhyloTree):
            return NotImplemented
        return self._root == other._root and dict(self._weights) == dict(other._weights)

    def __hash__(self):
        return hash((self._root, frozenset(self._weights.items())))

    def __repr__(self):
        return f"PhyloTree(root={self._root!r}, taxa={len(self._leaves)}, edges={len(self._weights)})"

    def preorder(self) -> list[str]:
        if self._root is None:
            return []
        order, stack = [], [self._root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children(v)))
        return order


def star(weights: Mapping[str, int], root: str = "rho") -> PhyloTree:
    """A star tree: every taxon hangs directly off ``root``."""
    return PhyloTree({(root, x): w for x, w in weights.items()}, root=root)


def tree_violations(tree: PhyloTree) -> list[str]:
    out = []
    tops = sorted(v for v in tree.vertices if not tree.parents(v))
    if len(tops) != 1:
        out.append(f"tree must have exactly one vertex of in-degree 0, found {len(tops)}: {tops}")
    elif tree.root != tops[0]:
        out.append(f"declared root {tree.root!r} has a parent")
    for v in sorted(tree.vertices):
        ps = tree.parents(v)
        if len(ps) > 1:
            out.append(f"vertex {v!r} has in-degree {len(ps)}")
        if v != tree.root and len(tree.children(v)) == 1:
            out.append(f"internal vertex {v!r} has out-degree 1")
    for (p, c), w in sorted(tree.edges.items()):
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            out.append(f"edge {p}->{c} has weight {w!r}; weights are positive integers")
    if tree.root is not None and not out:
        seen = set(tree.preorder())
        if seen != tree.vertices:
            out.append(f"vertices unreachable from the root: {sorted(tree.vertices - seen)}")
    return out


def _check_taxa(tree: PhyloTree, S) -> frozenset[str]:
    S = frozenset(S)
    unknown = S - tree.taxa
    if unknown:
        raise UnknownTaxonError(unknown)
    return S


def path_edges(tree: PhyloTree, S) -> set[Edge]:
    """Edges lying on a root-to-leaf path of some leaf in ``S``."""
    S = _check_taxa(tree, S)
    covered: set[Edge] = set()
    for x in S:
        v = x
        while v != tree.root:
            p = tree.parent(v)
            e = (p, v)
            if e in covered:
                break
            covered.add(e)
            v = p
    return covered


def pd(tree: PhyloTree, S) -> int:
    """Phylogenetic diversity: total weight of the edges serving ``S``.

    Each edge is counted once however many saved leaves lie below it.
    """
    S = _check_taxa(tree, S)
    total = 0
    seen: set[str] = set()
    for x in S:
        v = x
        while v != tree.root and v not in seen:
            seen.add(v)
            p = tree.parent(v)
            total += tree.weight((p, v))
            v = p
    return total


def offspring(tree: PhyloTree, e: Edge) -> frozenset[str]:
    if e not in tree.edges:
        raise PDDError(f"unknown edge {e[0]}->{e[1]}")
    below, stack = set(), [e[1]]
    while stack:
        v = stack.pop()
        cs = tree.children(v)
        if not cs:
            below.add(v)
        stack.extend(cs)
    return frozenset(below)


def suppress_degree2(tree: PhyloTree) -> PhyloTree:
    """Replace every in-1/out-1 vertex and its two edges by one summed edge."""
    if tree.root is None:
        raise PDDError("tree has no unique root")
    new: dict[Edge, int] = {}
    stack = [tree.root]
    while stack:
        v = stack.pop()
        for c in tree.children(v):
            w = tree.weight((v, c))
            while len(tree.children(c)) == 1:
                (nxt,) = tree.children(c)
                w += tree.weight((c, nxt))
                c = nxt
            new[(v, c)] = w
            stack.append(c)
    return PhyloTree(new, root=tree.root)


def _postorder(tree: PhyloTree) -> list[str]:
    return tree.preorder()[::-1]


def _check_contraction_set(tree: PhyloTree, A) -> frozenset[str]:
    A = _check_taxa(tree, A)
    if not A:
        raise PDDError("contraction set must be non-empty")
    if A == tree.taxa:
        raise PDDError("contraction set must not contain every taxon")
    return A


def _fresh_name(taken, base=RESERVED_ROOT) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def _cleanup(tree: PhyloTree, A: frozenset[str], flagged: set[Edge]) -> PhyloTree:
    # keep vertices that still reach a leaf outside A via unflagged edges
    kept: set[str] = set()
    for x in tree.taxa - A:
        v = x
        while v not in kept:
            kept.add(v)
            if v == tree.root:
                break
            p = tree.parent(v)
            if (p, v) in flagged:
                break
            v = p
    edges = {e: w for e, w in tree.edges.items() if e not in flagged and e[1] in kept}
    has_parent = {c for _, c in edges}
    tops = sorted(v for v in kept if v not in has_parent)
    if len(tops) == 1:
        root = tops[0]
    else:
        root = _fresh_name(tree.vertices)
        merged = set(tops)
        edges = {((root if p in merged else p), c): w for (p, c), w in edges.items()}
    return suppress_degree2(PhyloTree(edges, root=root))


def contract_some(tree: PhyloTree, A) -> PhyloTree:
    """Some-A-contraction: drop every edge whose offspring meets ``A``.

    For every S disjoint from A, ``pd(result, S) == pd(tree, S | A) - pd(tree, A)``.
    """
    A = _check_contraction_set(tree, A)
    return _cleanup(tree, A, path_edges(tree, A))


def contract_all(tree: PhyloTree, A) -> PhyloTree:
    """All-A-contraction: drop only edges whose offspring lies inside ``A``.

    For every non-empty S disjoint from A, ``pd(result, S) == pd(tree, S)``.
    """
    A = _check_contraction_set(tree, A)
    outside: dict[str, int] = {}
    for v in _postorder(tree):
        cs = tree.children(v)
        if cs:
            outside[v] = sum(outside[c] for c in cs)
        else:
            outside[v] = 0 if v in A else 1
    flagged = {e for e in tree.edges if outside[e[1]] == 0}
    return _cleanup(tree, A, flagged)
