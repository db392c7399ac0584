"""Instance transformations between problem variants and hardness gadgets.

Every construction returns an ordinary :class:`Instance` so the solver and
oracle can check it directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import ceil, comb, floor

from .errors import PDDError
from .foodweb import FoodWeb, undirected_bipartition
from .instance import ONE, Instance, ViabilityMode
from .tree import PhyloTree, pd, star

ROOT = "rho"


@dataclass(frozen=True)
class CliqueInput:
    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]
    k: int

    def __init__(self, vertices, edges, k):
        vs = frozenset(vertices)
        for x in vs:
            if not x or ":" in x or any(ch.isspace() for ch in x):
                raise PDDError(f"vertex name {x!r} must be a token without ':' or whitespace")
        es = []
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise PDDError(f"self-loop at {u}")
            es.append(frozenset((u, v)))
        if len(set(es)) != len(es):
            raise PDDError("duplicate edge in clique input")
        unknown = {x for e in es for x in e} - vs
        if unknown:
            raise PDDError(f"edge endpoints not among the vertices: {sorted(unknown)}")
        if k < 0:
            raise PDDError("clique size must be nonnegative")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "k", k)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True)
class ReductionReceipt:
    construction: str
    added_taxa: frozenset[str] = frozenset()
    # name -> (old, new); old is None for gadgets built from graphs
    parameter_map: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def report(self) -> str:
        lines = [f"construction: {self.construction}", f"added taxa: {len(self.added_taxa)}"]
        for name, (old, new) in self.parameter_map.items():
            lines.append(f"{name}: {'-' if old is None else old} -> {new}")
        for name, value in self.extra.items():
            lines.append(f"{name}: {value}")
        return "\n".join(lines) + "\n"


def _params(inst: Instance) -> dict[str, int]:
    return {"k": inst.k, "D": inst.D, "k_bar": inst.k_bar, "D_bar": inst.D_bar}


def _param_map(old: Instance | None, new: Instance) -> dict:
    before = _params(old) if old is not None else {}
    return {name: (before.get(name), value) for name, value in _params(new).items()}


class _Names:
    """Fresh, collision-free taxon names from reserved prefixes."""

    def __init__(self, taken):
        self.taken = set(taken)
        self.counters: dict[str, count] = {}

    def __call__(self, prefix: str) -> str:
        ctr = self.counters.setdefault(prefix, count(1))
        while True:
            name = f"_{prefix}{next(ctr)}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _require_star(inst: Instance):
    if not inst.tree.is_star():
        raise PDDError("construction is defined for star trees only")


def _alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise PDDError(f"alpha must lie in (0, 1], got {alpha}")
    return alpha


def _extend(inst: Instance, new_leaves: dict[str, int], new_edges, k: int, D: int, mode: ViabilityMode) -> Instance:
    tree = inst.tree
    edges = dict(tree.edges)
    for x, w in new_leaves.items():
        edges[(tree.root, x)] = w
    web = FoodWeb(inst.taxa | new_leaves.keys(), set(inst.web.edges) | set(new_edges))
    return Instance(PhyloTree(edges, root=tree.root), web, k, D, mode)


def _one_to_alpha_counts(inst: Instance, alpha: Fraction) -> dict[str, int]:
    # a_x = floor((1/alpha - 1) * |prey(x)|)
    return {x: floor((1 / alpha - 1) * len(inst.web.prey(x))) for x in sorted(inst.taxa)}


def _check_one_pdd_input(inst: Instance, alpha):
    _require_star(inst)
    if len(inst.taxa) < inst.k:
        raise PDDError("construction needs |X| >= k")
    return _alpha(alpha)


def one_to_alpha_variant_a(inst: Instance, alpha) -> tuple[Instance, ReductionReceipt]:
    """Give every taxon private weight-1 source prey so 1-viability becomes alpha-viability.

    Equivalence is guaranteed when the input web is directed bipartite.
    """
    alpha = _check_one_pdd_input(inst, alpha)
    fresh = _Names(inst.tree.vertices)
    leaves, edges = {}, []
    for x, a in _one_to_alpha_counts(inst, alpha).items():
        for _ in range(a):
            y = fresh("a")
            leaves[y] = 1
            edges.append((y, x))
    out = _extend(inst, leaves, edges, inst.k, inst.D, ViabilityMode.of_alpha(alpha))
    return out, ReductionReceipt("one-to-alpha/a", frozenset(leaves), _param_map(inst, out))


def one_to_alpha_variant_b(inst: Instance, alpha) -> tuple[Instance, ReductionReceipt]:
    """Shared padding prey pools guarded by blockers that make them unaffordable."""
    alpha = _check_one_pdd_input(inst, alpha)
    fresh = _Names(inst.tree.vertices)
    maxprey = inst.web.max_in_degree()
    a_size = floor(maxprey / alpha)
    b_size = ceil(inst.k / alpha)
    parts = undirected_bipartition(inst.web)
    if parts is None:
        parts = (inst.taxa, frozenset())
    leaves, edges = {}, []
    pools = []
    for i in (1, 2):
        A = [fresh(f"A{i}_") for _ in range(a_size)]
        B = [fresh(f"B{i}_") for _ in range(b_size)]
        for y in A + B:
            leaves[y] = 1
        edges += [(b, a) for b in B for a in A]
        pools.append(A)
    counts = _one_to_alpha_counts(inst, alpha)
    for pool, side in zip(pools, parts):
        for x in sorted(side):
            edges += [(a, x) for a in pool[: counts[x]]]
    out = _extend(inst, leaves, edges, inst.k, inst.D, ViabilityMode.of_alpha(alpha))
    receipt = ReductionReceipt(
        "one-to-alpha/b",
        frozenset(leaves),
        _param_map(inst, out),
        {"pool_size": a_size, "blocker_size": b_size},
    )
    return out, receipt


def eps_to_alpha(inst: Instance, alpha) -> tuple[Instance, ReductionReceipt]:
    """Pad each non-source with heavy source prey so that one real prey tips it over alpha.

    The threshold is ``D + 2mA``, which keeps the acceptable diversity loss unchanged.
    """
    alpha = _alpha(alpha)
    if alpha == 1:
        raise PDDError("eps-to-alpha needs alpha < 1")
    _require_star(inst)
    fresh = _Names(inst.tree.vertices)
    m = max((pd(inst.tree, {x}) for x in inst.taxa), default=0)
    leaves, edges = {}, []
    for x in sorted(inst.taxa):
        p = len(inst.web.prey(x))
        if p == 0:
            continue
        a = ceil(p * alpha / (1 - alpha)) - 1
        for _ in range(a):
            y = fresh("e")
            leaves[y] = 2 * m
            edges.append((y, x))
    A = len(leaves)
    out = _extend(inst, leaves, edges, inst.k + A, inst.D + 2 * m * A, ViabilityMode.of_alpha(alpha))
    receipt = ReductionReceipt("eps-to-alpha", frozenset(leaves), _param_map(inst, out), {"A": A, "m": m})
    return out, receipt


def _v(x: str) -> str:
    return f"v:{x}"


def _e(u: str, v: str, tag: str = "") -> str:
    return f"e{tag}:{u}:{v}"


def clique_gadget_d(g: CliqueInput) -> Instance:
    """Subdivide each edge; edge taxa eat both endpoints. Threshold k^2."""
    weights = {_v(x): 1 for x in g.vertices}
    edges = []
    for u, v in g.sorted_edges():
        e = _e(u, v)
        weights[e] = 2
        edges += [(_v(u), e), (_v(v), e)]
    tree = star(weights, root=ROOT)
    k = g.k
    return Instance(tree, FoodWeb(weights, edges), comb(k, 2) + k, k * k, ONE)


def clique_gadget_dbar(g: CliqueInput) -> Instance:
    """Subdivide each edge; endpoints eat their edge taxa. Complement parameters O(k^2)."""
    weights = {_v(x): 2 for x in g.vertices}
    edges = []
    for u, v in g.sorted_edges():
        e = _e(u, v)
        weights[e] = 1
        edges += [(e, _v(u)), (e, _v(v))]
    nv, ne, k = len(g.vertices), len(g.edges), g.k
    k_new = nv + ne - comb(k, 2) - k
    if k_new < 0:
        raise PDDError(f"clique size {k} too large for a graph with {nv} vertices and {ne} edges")
    D_new = 2 * nv + ne - comb(k, 2) - 2 * k
    tree = star(weights, root=ROOT)
    return Instance(tree, FoodWeb(weights, edges), k_new, D_new, ONE)


def clique_gadget_dbar_receipt(g: CliqueInput, inst: Instance) -> ReductionReceipt:
    k = g.k
    return ReductionReceipt(
        "clique-dbar",
        frozenset(inst.taxa),
        _param_map(None, inst),
        {"expected_k_bar": comb(k, 2) + k, "expected_D_bar": comb(k, 2) + 2 * k},
    )


def bit_length_for(t: int) -> int:
    """ceil(log2 t) for t >= 1."""
    return (t - 1).bit_length()


def _bit(bit: int, i: int) -> str:
    return f"b:{bit}_{i}"


def cross_compose(instances: list[CliqueInput]) -> tuple[Instance, ReductionReceipt]:
    """OR-composition of equal-shape clique instances into one instance.

    Instance ``b``'s edge taxa are wired to the bit taxa spelling ``b`` in
    binary; each bit taxon carries ``k^2 - 1`` private prey.
    """
    if not instances:
        raise PDDError("need at least one clique instance")
    V, k = instances[0].vertices, instances[0].k
    for g in instances[1:]:
        if g.vertices != V:
            raise PDDError("all composed instances must share one vertex set")
        if g.k != k:
            raise PDDError("all composed instances must share one clique size")
    t = len(instances)
    ell = bit_length_for(t)
    weights = {_v(x): 1 for x in V}
    edges = []
    B = []
    for i in range(ell):
        for bit in (0, 1):
            b = _bit(bit, i)
            B.append(b)
            weights[b] = 1
            for j in range(k * k - 1):
                p = f"p:{bit}_{i}:{j}"
                weights[p] = 1
                edges.append((p, b))
    for idx, g in enumerate(instances):
        code = [_bit((idx >> i) & 1, i) for i in range(ell)]
        for u, v in g.sorted_edges():
            e = _e(u, v, str(idx))
            weights[e] = 2
            edges += [(_v(u), e), (_v(v), e)] + [(b, e) for b in code]
    tree = star(weights, root=ROOT)
    k_new = k * k * (ell + 1) - comb(k, 2)
    D_new = k * k * (ell + 1)
    inst = Instance(tree, FoodWeb(weights, edges), k_new, D_new, ONE)
    cover = frozenset(_v(x) for x in V) | frozenset(B)
    receipt = ReductionReceipt(
        "cross-composition",
        frozenset(weights),
        _param_map(None, inst),
        {"t": t, "ell": ell, "vertex_cover": cover},
    )
    return inst, receipt


def verify_equivalent(a: Instance, b: Instance) -> bool:
    """Do both instances get the same oracle verdict?"""
    from .oracle import brute_force_oracle

    return brute_force_oracle(a).verdict == brute_force_oracle(b).verdict

