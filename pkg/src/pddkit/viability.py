"""Viability predicates over saved taxon sets.

All threshold comparisons are exact: counts are cross-multiplied against the
numerator and denominator of alpha, and gamma sums are ``Fraction`` sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PDDError, UnknownTaxonError
from .foodweb import FoodWeb, reach_up, reach_up_set
from .instance import ViabilityMode


@dataclass(frozen=True)
class ViabilityReport:
    viable: bool
    # (taxon, required, achieved)
    violators: list[tuple[str, Fraction, Fraction]] = field(default_factory=list)

    def __bool__(self):
        return self.viable


def _check(web: FoodWeb, S) -> frozenset[str]:
    S = frozenset(S)
    unknown = S - web.taxa
    if unknown:
        raise UnknownTaxonError(unknown)
    return S


def _report(violators) -> ViabilityReport:
    violators = sorted(violators)
    return ViabilityReport(not violators, violators)


def is_eps_viable(web: FoodWeb, S) -> ViabilityReport:
    S = _check(web, S)
    bad = []
    for x in S:
        prey = web.prey(x)
        if prey and not (prey & S):
            bad.append((x, Fraction(1), Fraction(0)))
    return _report(bad)


def is_alpha_viable(web: FoodWeb, alpha, S) -> ViabilityReport:
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise PDDError(f"alpha must lie in (0, 1], got {alpha}")
    S = _check(web, S)
    p, q = alpha.numerator, alpha.denominator
    bad = []
    for x in S:
        prey = web.prey(x)
        saved = len(prey & S)
        if saved * q < p * len(prey):
            bad.append((x, alpha * len(prey), Fraction(saved)))
    return _report(bad)


def is_gamma_viable(web: FoodWeb, S) -> ViabilityReport:
    if web.gamma is None:
        raise PDDError("food web carries no gamma weights")
    S = _check(web, S)
    bad = []
    for x in S:
        prey = web.prey(x)
        if not prey:
            continue
        total = sum((web.gamma[(u, x)] for u in prey & S), Fraction(0))
        if total < 1:
            bad.append((x, Fraction(1), total))
    return _report(bad)


def is_one_viable_closure(web: FoodWeb, S) -> ViabilityReport:
    """1-viability through the closure characterisation: every ancestor of a saved taxon is saved."""
    S = _check(web, S)
    bad = []
    for x in S:
        up = reach_up(web, x)
        if not up <= S:
            bad.append((x, Fraction(len(up)), Fraction(len(up & S))))
    return _report(bad)


def one_viable_closure(web: FoodWeb, S) -> frozenset[str]:
    """The smallest 1-viable superset of ``S``."""
    S = _check(web, S)
    return reach_up_set(web, S)


def is_viable(web: FoodWeb, mode: ViabilityMode, S) -> ViabilityReport:
    if mode.kind == "epsilon":
        return is_eps_viable(web, S)
    if mode.kind == "alpha":
        return is_alpha_viable(web, mode.alpha, S)
    return is_gamma_viable(web, S)


def certificate(web: FoodWeb, mode: ViabilityMode, S) -> dict[str, tuple[Fraction, Fraction]]:
    """Per-taxon (required, achieved) witness values for every non-source in ``S``."""
    S = frozenset(S)
    cert = {}
    for x in sorted(S):
        prey = web.prey(x)
        if not prey:
            continue
        if mode.kind == "gamma":
            cert[x] = (Fraction(1), sum((web.gamma[(u, x)] for u in prey & S), Fraction(0)))
        elif mode.kind == "epsilon":
            cert[x] = (Fraction(1), Fraction(len(prey & S)))
        else:
            cert[x] = (mode.alpha * len(prey), Fraction(len(prey & S)))
    return cert
