"""Unpruned brute-force reference solver.

Every subset of at most ``k`` taxa is evaluated, vectorised over bitmasks
with numpy. Diversity and viability are recomputed here from the raw tree and
web structure so the oracle shares no evaluation code with the solver.

Instances above ``MAX_TAXA`` taxa are handled by quotienting out
interchangeable taxa: sibling leaves with equal edge weight and identical
prey, predators and gamma values. Swapping two such taxa maps the instance
onto itself, so a subset is determined up to symmetry by how many taxa it
takes from each class, and the oracle enumerates every such count vector of
total at most ``k``.
"""

from __future__ import annotations

import time
from math import comb, lcm

import numpy as np

from .errors import InvalidInstanceError, OracleTooLargeError
from .instance import Instance, validate_instance
from .solver import SolveOutcome, make_solution

MAX_TAXA = 25
MAX_CONFIGS = 1 << 30
CHUNK = 1 << 20
BLOCK = 1 << 17
_INT64_SAFE = 1 << 62


def _edge_masks(inst: Instance, bit: dict[str, int]) -> list[tuple[int, int]]:
    tree = inst.tree
    masks: dict[tuple[str, str], int] = {}
    for x, b in bit.items():
        v = x
        while v != tree.root:
            p = tree.parent(v)
            masks[(p, v)] = masks.get((p, v), 0) | (1 << b)
            v = p
    return [(tree.edges[e], m) for e, m in masks.items()]


def _constraints(inst: Instance, bit: dict[str, int]):
    """Per non-source taxon: (taxon bit, [(prey bit, integer weight)], integer threshold)."""
    web, mode = inst.web, inst.mode
    rows = []
    if mode.kind == "gamma":
        scale = lcm(*(g.denominator for g in web.gamma.values())) if web.gamma else 1
    for x, b in bit.items():
        prey = [u for (u, v) in web.edges if v == x]
        if not prey:
            continue
        if mode.kind == "epsilon":
            rows.append((b, [(bit[u], 1) for u in prey], 1))
        elif mode.kind == "alpha":
            # saved * q >= p * |prey|
            p, q = mode.alpha.numerator, mode.alpha.denominator
            rows.append((b, [(bit[u], q) for u in prey], p * len(prey)))
        else:
            rows.append((b, [(bit[u], int(web.gamma[(u, x)] * scale)) for u in prey], scale))
    return rows


def brute_force_oracle(inst: Instance, engine: str = "auto") -> SolveOutcome:
    """Reference verdict by exhaustive search over all sets of at most ``k`` taxa.

    ``engine`` is ``"bitmask"`` (plain subsets, up to ``MAX_TAXA`` taxa),
    ``"classes"`` (count vectors over interchangeable taxa) or ``"auto"``,
    which picks whichever of the two enumerates fewer configurations.
    """
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstanceError(problems)
    if inst.tree.total_weight() >= _INT64_SAFE:
        raise OracleTooLargeError("edge weights too large for 64-bit evaluation")
    if engine not in ("auto", "bitmask", "classes"):
        raise ValueError(f"unknown oracle engine {engine!r}")
    if engine == "auto":
        n = len(inst.taxa)
        engine = "classes" if n > MAX_TAXA or _class_total(inst) < (1 << n) else "bitmask"
    if engine == "classes":
        return _class_oracle(inst)
    return _bitmask_oracle(inst)


def _bitmask_oracle(inst: Instance) -> SolveOutcome:
    names = sorted(inst.taxa)
    n = len(names)
    if n > MAX_TAXA:
        raise OracleTooLargeError(f"bitmask oracle is limited to {MAX_TAXA} taxa, instance has {n}")
    start = time.perf_counter()
    bit = {x: i for i, x in enumerate(names)}
    edges = _edge_masks(inst, bit)
    rows = _constraints(inst, bit)
    k = min(inst.k, n)
    explored = sum(comb(n, i) for i in range(k + 1))

    found = None
    for lo in range(0, 1 << n, CHUNK):
        masks = np.arange(lo, min(lo + CHUNK, 1 << n), dtype=np.int64)
        ok = np.bitwise_count(masks) <= k
        div = np.zeros(masks.shape, dtype=np.int64)
        for w, m in edges:
            div += w * ((masks & m) != 0)
        ok &= div >= inst.D
        for b, prey, need in rows:
            has = ((masks >> b) & 1).astype(bool)
            got = np.zeros(masks.shape, dtype=np.int64)
            for u, w in prey:
                got += w * ((masks >> u) & 1)
            ok &= ~has | (got >= need)
        hits = np.flatnonzero(ok)
        if hits.size:
            found = int(masks[hits[0]])
            break
    elapsed = time.perf_counter() - start
    if found is None:
        return SolveOutcome(False, None, explored, elapsed)
    S = [x for x, b in bit.items() if found >> b & 1]
    return SolveOutcome(True, make_solution(inst, S), explored, elapsed)


def twin_classes(inst: Instance) -> list[list[str]]:
    """Groups of interchangeable taxa, each sorted, in order of their first member."""
    tree, web = inst.tree, inst.web
    gamma = web.gamma or {}
    groups: dict[tuple, list[str]] = {}
    for x in sorted(inst.taxa):
        p = tree.parent(x)
        prey = tuple(sorted((u, gamma.get((u, x))) for u in web.prey(x)))
        pred = tuple(sorted((v, gamma.get((x, v))) for v in web.predators(x)))
        groups.setdefault((p, tree.weight((p, x)), prey, pred), []).append(x)
    return list(groups.values())


def _count_table(sizes: list[int], k: int) -> list[list[int]]:
    """table[i][b]: number of count vectors for classes i.. with total at most b."""
    r = len(sizes)
    table = [[0] * (k + 1) for _ in range(r + 1)]
    table[r] = [1] * (k + 1)
    for i in range(r - 1, -1, -1):
        for b in range(k + 1):
            table[i][b] = sum(table[i + 1][b - c] for c in range(min(sizes[i], b) + 1))
    return table


def _suffix_vectors(sizes: list[int], i: int, budget: int) -> np.ndarray:
    """Every count vector for classes i.. with total at most ``budget``."""
    rows = np.zeros((1, 0), dtype=np.int16)
    used = np.zeros(1, dtype=np.int64)
    for s in sizes[i:]:
        parts, totals = [], []
        for c in range(s + 1):
            keep = used + c <= budget
            if not keep.any():
                break
            block = rows[keep]
            parts.append(np.hstack([block, np.full((block.shape[0], 1), c, dtype=np.int16)]))
            totals.append(used[keep] + c)
        rows, used = np.vstack(parts), np.concatenate(totals)
    return rows


class _ClassSearch:
    """Exhaustive search over count vectors, prefix classes in Python, suffix blocks in numpy.

    Suffix blocks depend only on (first class, remaining budget), so each one
    is built once with its diversity and prey contributions precomputed; a
    prefix then costs a handful of vector comparisons per block.
    """

    def __init__(self, inst: Instance, classes: list[list[str]]):
        tree, web, mode = inst.tree, inst.web, inst.mode
        self.D = inst.D
        self.sizes = [len(c) for c in classes]
        self.k = min(inst.k, len(inst.taxa))
        index = {x: i for i, cls in enumerate(classes) for x in cls}
        self.leaf_w = [tree.weight((tree.parent(c[0]), c[0])) for c in classes]
        # inner edges with the classes below them
        below: dict[tuple[str, str], set[int]] = {}
        for i, cls in enumerate(classes):
            v = tree.parent(cls[0])
            while v != tree.root:
                p = tree.parent(v)
                below.setdefault((p, v), set()).add(i)
                v = p
        self.inner = [(tree.edges[e], frozenset(ids)) for e, ids in sorted(below.items())]
        self.edges_of = [[e for e, (_, ids) in enumerate(self.inner) if i in ids] for i in range(len(classes))]
        # viability rows: (class, [(prey class, per-member weight)], need); prey sets are unions of classes
        if mode.kind == "gamma":
            scale = lcm(*(g.denominator for g in web.gamma.values())) if web.gamma else 1
        self.rows = []
        for i, cls in enumerate(classes):
            x = cls[0]
            prey = sorted(web.prey(x))
            if not prey:
                continue
            weight: dict[int, int] = {}
            for u in prey:
                if mode.kind == "epsilon":
                    w = 1
                elif mode.kind == "alpha":
                    w = mode.alpha.denominator
                else:
                    w = int(web.gamma[(u, x)] * scale)
                weight[index[u]] = w
            if mode.kind == "epsilon":
                need = 1
            elif mode.kind == "alpha":
                need = mode.alpha.numerator * len(prey)
            else:
                need = scale
            self.rows.append((i, sorted(weight.items()), need))
        self.table = _count_table(self.sizes, self.k)
        self.total = self.table[0][self.k]
        self._cache: dict[tuple[int, int], tuple] = {}

    def _block(self, i: int, budget: int):
        key = (i, budget)
        if key not in self._cache:
            if len(self._cache) >= 32:
                self._cache.pop(next(iter(self._cache)))
            C = _suffix_vectors(self.sizes, i, budget)
            c = C.astype(np.int64)
            leaf = c @ np.array(self.leaf_w[i:], dtype=np.int64)
            use = {e: c[:, [j - i for j in ids if j >= i]].sum(axis=1) > 0 for e, (_, ids) in enumerate(self.inner) if max(ids) >= i}
            got = []
            for _, prey, _ in self.rows:
                g = np.zeros(c.shape[0], dtype=np.int64)
                for j, w in prey:
                    if j >= i:
                        g += w * c[:, j - i]
                got.append(g)
            self._cache[key] = (C, leaf, use, got)
        return self._cache[key]

    def _check(self, i, budget, prefix, div, covered, got):
        C, leaf, use, sgot = self._block(i, budget)
        total = leaf + div
        for e, (w, _) in enumerate(self.inner):
            if e not in covered and e in use:
                total = total + w * use[e]
        ok = total >= self.D
        for r, (x, _, need) in enumerate(self.rows):
            if x < i:
                if prefix[x]:
                    ok &= sgot[r] >= need - got[r]
            else:
                ok &= (C[:, x - i] == 0) | (sgot[r] >= need - got[r])
        hits = np.flatnonzero(ok)
        if hits.size:
            return list(prefix) + [int(v) for v in C[hits[0]]]
        return None

    def run(self):
        return self._go(0, [], self.k, 0, frozenset(), [0] * len(self.rows))

    def _go(self, i, prefix, budget, div, covered, got):
        if i == len(self.sizes) or self.table[i][budget] <= BLOCK:
            return self._check(i, budget, prefix, div, covered, got)
        for c in range(min(self.sizes[i], budget) + 1):
            d, cov, g = div, covered, got
            if c:
                d += c * self.leaf_w[i] + sum(self.inner[e][0] for e in self.edges_of[i] if e not in covered)
                cov = covered | set(self.edges_of[i])
                g = [gv + c * dict(prey).get(i, 0) for gv, (_, prey, _) in zip(got, self.rows)]
            found = self._go(i + 1, prefix + [c], budget - c, d, cov, g)
            if found is not None:
                return found
        return None


def _class_total(inst: Instance) -> int:
    k = min(inst.k, len(inst.taxa))
    return _count_table([len(c) for c in twin_classes(inst)], k)[0][k]


def _class_oracle(inst: Instance) -> SolveOutcome:
    start = time.perf_counter()
    web = inst.web
    # non-sources first so the cached suffix blocks are made of sources and get reused
    classes = sorted(twin_classes(inst), key=lambda c: (not web.prey(c[0]), c[0]))
    search = _ClassSearch(inst, classes)
    if search.total > MAX_CONFIGS:
        raise OracleTooLargeError(f"oracle would enumerate {search.total} configurations, limit is {MAX_CONFIGS}")
    found = search.run()
    elapsed = time.perf_counter() - start
    if found is None:
        return SolveOutcome(False, None, search.total, elapsed)
    S = [x for cls, n in zip(classes, found) for x in cls[:n]]
    return SolveOutcome(True, make_solution(inst, S), search.total, elapsed)
