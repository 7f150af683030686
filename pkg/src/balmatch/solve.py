"""End-to-end stable-matching computation.

Two strategies. ``direct`` is a complete backtracking search: every firm
takes one of its acceptable sets or nothing, sets pairwise disjoint, and
the first selection whose induced matching is stable wins (a stable
matching always has this shape, so exhausting the space proves
nonexistence). ``pipeline`` rounds a user-supplied stable fractional
matching into a stable integral one and lifts it back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .fractional import (
    FractionalError,
    FractionalMatching,
    apply_stable_transformations,
    build_constraint_system,
    extract_integral_solution,
    integral_to_matching,
    reduced_balance_check,
    verify_fractional_stability,
)
from .market import Market, Matching, acceptable_sets, is_stable
from .matrices import matrix_of_sets, is_balanced
from .prefs import (
    decompose_by_sets,
    is_additive,
    is_complementary,
    lift_matching,
    primitive_acceptable_sets,
)


@dataclass
class SolveResult:
    matching: Optional[Matching]
    certificates: dict[str, str] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.matching is not None


def market_certificates(m: Market, cap: int = 12) -> dict[str, str]:
    """Which of the sufficient conditions the market satisfies."""
    all_sets, primitive = [], []
    seen_a, seen_p = set(), set()
    for f in m.firms:
        for s in acceptable_sets(f, m):
            if s not in seen_a:
                seen_a.add(s)
                all_sets.append(s)
        for s in primitive_acceptable_sets(f, m):
            if s not in seen_p:
                seen_p.add(s)
                primitive.append(s)
    return {
        "complementary": str(all(is_complementary(f, m) for f in m.firms)),
        "additive": str(all(is_additive(f, m) for f in m.firms)),
        "acceptable_sets_balanced": is_balanced(
            matrix_of_sets(all_sets, m.workers), cap
        ).verdict,
        "primitive_sets_balanced": is_balanced(
            matrix_of_sets(primitive, m.workers), cap
        ).verdict,
    }


def _direct_search(m: Market) -> Optional[Matching]:
    options = []
    for f in m.firms:
        acc = [
            s
            for s in acceptable_sets(f, m)
            # a stable matching is individually rational, so skip sets
            # containing a worker that finds the firm unacceptable
            if all(f in m._worker_rank[w] for w in s)
        ]
        options.append((f, acc))
    assignment: dict[str, Optional[str]] = {w: None for w in m.workers}
    taken: set[str] = set()

    def rec(i: int) -> Optional[Matching]:
        if i == len(options):
            mu = Matching(dict(assignment))
            return mu if is_stable(mu, m) else None
        f, acc = options[i]
        for s in acc:
            if s & taken:
                continue
            for w in s:
                assignment[w] = f
            taken.update(s)
            hit = rec(i + 1)
            if hit is not None:
                return hit
            taken.difference_update(s)
            for w in s:
                assignment[w] = None
        return rec(i + 1)  # firm stays empty

    return rec(0)


def solve(
    m: Market,
    strategy: str = "direct",
    fractional: Optional[FractionalMatching] = None,
    with_certificates: bool = True,
) -> SolveResult:
    """Find a stable matching, or prove there is none (direct strategy)."""
    certs = market_certificates(m) if with_certificates else {}
    if strategy == "direct":
        return SolveResult(matching=_direct_search(m), certificates=certs)
    if strategy == "pipeline":
        if fractional is None:
            raise FractionalError("pipeline strategy needs a fractional matching")
        d = decompose_by_sets(m)
        report = verify_fractional_stability(fractional, d)
        if not report.ok:
            raise FractionalError(
                f"fractional input is not stable: {report.detail}"
            )
        cs = build_constraint_system(fractional, d)
        if not cs.empty:
            certs["constraint_system_balanced"] = reduced_balance_check(cs).verdict
            z = extract_integral_solution(cs)
            integral = apply_stable_transformations(fractional, z, cs)
        else:
            integral = fractional
        mu_bar = integral_to_matching(integral, d)
        return SolveResult(matching=lift_matching(mu_bar, d), certificates=certs)
    raise ValueError(f"unknown strategy: {strategy}")
