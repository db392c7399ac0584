"""Problem instances, viability modes and solutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .foodweb import FoodWeb, is_acyclic
from .tree import PhyloTree, pd, tree_violations


@dataclass(frozen=True)
class ViabilityMode:
    kind: str
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("epsilon", "alpha", "gamma"):
            raise ValueError(f"unknown viability mode {self.kind!r}")
        if self.kind == "alpha":
            a = Fraction(self.alpha)
            if not 0 < a <= 1:
                raise ValueError(f"alpha must lie in (0, 1], got {a}")
            object.__setattr__(self, "alpha", a)
        elif self.alpha is not None:
            raise ValueError(f"mode {self.kind} takes no alpha")

    @classmethod
    def epsilon(cls):
        return cls("epsilon")

    @classmethod
    def of_alpha(cls, alpha):
        return cls("alpha", Fraction(alpha))

    @classmethod
    def gamma(cls):
        return cls("gamma")

    @property
    def is_one(self) -> bool:
        return self.kind == "alpha" and self.alpha == 1

    def __str__(self):
        if self.kind == "alpha":
            return f"alpha {self.alpha.numerator}/{self.alpha.denominator}"
        return self.kind


EPSILON = ViabilityMode.epsilon()
ONE = ViabilityMode.of_alpha(1)
GAMMA = ViabilityMode.gamma()


@dataclass(frozen=True)
class Instance:
    tree: PhyloTree
    web: FoodWeb
    k: int
    D: int
    mode: ViabilityMode = ONE

    @property
    def taxa(self) -> frozenset[str]:
        return self.tree.taxa

    @property
    def k_bar(self) -> int:
        return len(self.taxa) - self.k

    @property
    def D_bar(self) -> int:
        return pd(self.tree, self.taxa) - self.D

    def replace(self, **changes) -> Instance:
        from dataclasses import replace

        return replace(self, **changes)


@dataclass(frozen=True)
class Solution:
    saved: frozenset[str]
    pd_value: int
    # taxon -> (required, achieved); counts for epsilon/alpha, gamma sums for gamma
    certificate: dict = field(default_factory=dict, compare=False)

    def sorted_taxa(self) -> list[str]:
        return sorted(self.saved)


def validate_instance(inst: Instance) -> list[str]:
    """Human-readable list of broken invariants; empty when the instance is well formed."""
    out = list(tree_violations(inst.tree))
    tree_taxa, web_taxa = inst.tree.taxa, inst.web.taxa
    for x in sorted(web_taxa - tree_taxa):
        out.append(f"food-web taxon {x!r} is not a leaf of the tree")
    for x in sorted(tree_taxa - web_taxa):
        out.append(f"tree leaf {x!r} is missing from the food web")
    for x in sorted(tree_taxa | web_taxa):
        if not x or any(ch.isspace() for ch in x):
            out.append(f"taxon name {x!r} is not a whitespace-free token")
    if not is_acyclic(inst.web):
        out.append("food web contains a directed cycle")
    gamma = inst.web.gamma
    if gamma is not None:
        for e in sorted(inst.web.edges):
            g = gamma.get(e)
            if g is None:
                out.append(f"food-web edge {e[0]}->{e[1]} has no gamma value")
            elif not 0 < g <= 1:
                out.append(f"gamma of {e[0]}->{e[1]} is {g}, outside (0, 1]")
        for e in sorted(set(gamma) - inst.web.edges):
            out.append(f"gamma given for non-edge {e[0]}->{e[1]}")
    if inst.mode.kind == "gamma" and gamma is None:
        out.append("mode gamma requires food-web gamma weights")
    for name in ("k", "D"):
        v = getattr(inst, name)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            out.append(f"{name} must be a nonnegative integer, got {v!r}")
    return out
