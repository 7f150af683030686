"""Brute-force ground truth: enumerate matchings and sweep preference space."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .market import FirmPreference, Market, Matching, acceptable_sets, is_stable
from .solve import solve

MAX_WORKERS = 10
MAX_FIRMS = 8
SWEEP_BUDGET = 10_000_000


class BudgetError(RuntimeError):
    """Enumeration would exceed the desk-scale budget; failing loudly."""


def all_matchings(m: Market, restrict: bool = True) -> Iterable[Matching]:
    """Every assignment of workers to firms-or-null, in canonical order.

    With ``restrict`` each worker only ranges over her listed firms plus
    the null firm; assignments outside that range are never individually
    rational, so no stable matching is lost.
    """
    if restrict:
        options = [list(m.worker_prefs[w]) + [None] for w in m.workers]
    else:
        options = [list(m.firms) + [None] for w in m.workers]
    for combo in itertools.product(*options):
        yield Matching(dict(zip(m.workers, combo)))


def all_stable_matchings(m: Market, restrict: bool = True) -> list[Matching]:
    """All stable matchings by exhaustive enumeration."""
    if len(m.workers) > MAX_WORKERS or len(m.firms) > MAX_FIRMS:
        raise BudgetError(
            f"market of {len(m.workers)} workers / {len(m.firms)} firms "
            f"exceeds the {MAX_WORKERS}/{MAX_FIRMS} enumeration budget"
        )
    return [mu for mu in all_matchings(m, restrict) if is_stable(mu, m)]


def _relevant_firms(firm_prefs: dict[str, FirmPreference], workers, w: str) -> list[str]:
    base = Market(
        workers=tuple(workers),
        firms=tuple(firm_prefs),
        worker_prefs={x: tuple(firm_prefs) for x in workers},
        firm_prefs=firm_prefs,
    )
    return [f for f in firm_prefs if any(w in s for s in acceptable_sets(f, base))]


def worker_pref_options(firms: list[str]) -> list[tuple[str, ...]]:
    """All strict rankings of every subset of the given firms (truncations
    included), the empty ranking first."""
    out: list[tuple[str, ...]] = []
    for r in range(len(firms) + 1):
        for combo in itertools.combinations(firms, r):
            out.extend(itertools.permutations(combo))
    return out


@dataclass
class SweepResult:
    ok: bool
    total: int
    checked: int
    sampled: bool
    counterexample: Optional[dict[str, tuple[str, ...]]] = None


def exists_for_all_worker_prefs(
    firm_prefs: dict[str, FirmPreference],
    workers: Iterable[str],
    budget: int = SWEEP_BUDGET,
    sample: Optional[int] = None,
    seed: int = 0,
) -> SweepResult:
    """Does a stable matching exist for every worker preference profile?

    Each worker's ranking only matters on the firms that could ever hire
    her (firms with her in some acceptable set): an acceptable set whose
    firm is unranked by a member can never match or block. The sweep
    therefore enumerates rankings over those firms only, truncations
    included, which covers all profiles up to irrelevant reshuffling.
    """
    workers = list(workers)
    options = [
        worker_pref_options(_relevant_firms(firm_prefs, workers, w)) for w in workers
    ]
    total = 1
    for opts in options:
        total *= len(opts)
    if total > budget and sample is None:
        raise BudgetError(
            f"{total} worker preference profiles exceed the budget of {budget}; "
            "pass a sample size to proceed"
        )

    def run(profile) -> Optional[SweepResult]:
        prefs = dict(zip(workers, profile))
        market = Market(
            workers=tuple(workers),
            firms=tuple(firm_prefs),
            worker_prefs=prefs,
            firm_prefs=firm_prefs,
        )
        result = solve(market, with_certificates=False)
        if result.matching is None or not is_stable(result.matching, market):
            return SweepResult(
                ok=False, total=total, checked=checked, sampled=sample is not None,
                counterexample=prefs,
            )
        return None

    checked = 0
    if sample is None:
        for profile in itertools.product(*options):
            checked += 1
            bad = run(profile)
            if bad is not None:
                return bad
    else:
        rng = random.Random(seed)
        for _ in range(sample):
            checked += 1
            bad = run(tuple(rng.choice(opts) for opts in options))
            if bad is not None:
                return bad
    return SweepResult(ok=True, total=total, checked=checked, sampled=sample is not None)


def cyclic_market(n: int) -> Market:
    """n firms each wanting a consecutive worker pair around a cycle, with
    the matching worker preferences."""
    if n < 3:
        raise ValueError("cyclic market needs n >= 3")
    workers = [f"w{i}" for i in range(1, n + 1)]
    firms = [f"f{i}" for i in range(1, n + 1)]
    chains = {
        firms[i]: [{workers[i], workers[(i + 1) % n]}] for i in range(n)
    }
    worker_prefs = {
        workers[i]: (firms[i], firms[(i - 1) % n]) for i in range(n)
    }
    return Market.build(workers, chains, worker_prefs)
