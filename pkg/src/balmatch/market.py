"""Matching markets, choice functions, and discrete stability checking.

Firms rank whole worker sets through a finite chain of candidate sets
(best first); every set not on the chain is worse than the empty set.
Workers rank firms through a partial list; unlisted firms are worse
than staying unmatched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional


class MarketError(ValueError):
    """Malformed market, matching, or identifier."""


@dataclass(frozen=True)
class FirmPreference:
    """A firm's preference as a strict chain of candidate worker sets."""

    chain: tuple[frozenset[str], ...]

    def __post_init__(self):
        seen = set()
        for s in self.chain:
            if not s:
                raise MarketError("empty set in preference chain")
            if s in seen:
                raise MarketError(f"duplicate set in preference chain: {sorted(s)}")
            seen.add(s)

    @staticmethod
    def of(*sets: Iterable[str]) -> "FirmPreference":
        return FirmPreference(tuple(frozenset(s) for s in sets))

    def rank(self, s: frozenset[str]) -> int:
        """Chain position of s (0 = best). Raises if s is not on the chain."""
        return self.chain.index(s)


@dataclass(frozen=True)
class Market:
    """A two-sided many-to-one matching market.

    ``worker_prefs[w]`` lists acceptable firms best-first; ``firm_prefs[f]``
    is the firm's chain. Immutable after construction.
    """

    workers: tuple[str, ...]
    firms: tuple[str, ...]
    worker_prefs: dict[str, tuple[str, ...]]
    firm_prefs: dict[str, FirmPreference]
    _worker_rank: dict[str, dict[str, int]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        if len(set(self.workers)) != len(self.workers):
            raise MarketError("duplicate worker identifiers")
        if len(set(self.firms)) != len(self.firms):
            raise MarketError("duplicate firm identifiers")
        if set(self.workers) & set(self.firms):
            raise MarketError("identifier used as both worker and firm")
        wset, fset = set(self.workers), set(self.firms)
        if set(self.worker_prefs) != wset:
            raise MarketError("worker_prefs keys must match workers")
        if set(self.firm_prefs) != fset:
            raise MarketError("firm_prefs keys must match firms")
        for w, lst in self.worker_prefs.items():
            if len(set(lst)) != len(lst):
                raise MarketError(f"duplicate firm in preference list of {w}")
            for f in lst:
                if f not in fset:
                    raise MarketError(f"unknown firm {f} in preference list of {w}")
        for f, pref in self.firm_prefs.items():
            for s in pref.chain:
                for w in s:
                    if w not in wset:
                        raise MarketError(f"unknown worker {w} in chain of firm {f}")
        ranks = {
            w: {f: i for i, f in enumerate(lst)} for w, lst in self.worker_prefs.items()
        }
        object.__setattr__(self, "_worker_rank", ranks)

    @staticmethod
    def build(
        workers: Iterable[str],
        firm_chains: dict[str, Iterable[Iterable[str]]],
        worker_prefs: dict[str, Iterable[str]],
    ) -> "Market":
        return Market(
            workers=tuple(workers),
            firms=tuple(firm_chains),
            worker_prefs={w: tuple(p) for w, p in worker_prefs.items()},
            firm_prefs={f: FirmPreference.of(*c) for f, c in firm_chains.items()},
        )

    def require_firm(self, f: str):
        if f not in self.firm_prefs:
            raise MarketError(f"unknown firm: {f}")

    def require_workers(self, s: Iterable[str]):
        for w in s:
            if w not in self._worker_rank:
                raise MarketError(f"unknown worker: {w}")

    def worker_weakly_prefers(self, w: str, f: Optional[str], g: Optional[str]) -> bool:
        """True iff worker w weakly prefers f to g (None is the null firm)."""
        if f == g:
            return True
        ranks = self._worker_rank[w]
        null = len(ranks)
        rf = ranks.get(f, null + 1) if f is not None else null
        rg = ranks.get(g, null + 1) if g is not None else null
        return rf < rg


@dataclass(frozen=True)
class Matching:
    """A total assignment of workers to firms; None is the null firm."""

    assignment: dict[str, Optional[str]]

    def firm_of(self, w: str) -> Optional[str]:
        return self.assignment[w]

    def workers_of(self, f: Optional[str]) -> frozenset[str]:
        """Inverse image: the worker set currently matched to f."""
        return frozenset(w for w, g in self.assignment.items() if g == f)

    def inverse(self) -> dict[Optional[str], frozenset[str]]:
        out: dict[Optional[str], set[str]] = {}
        for w, f in self.assignment.items():
            out.setdefault(f, set()).add(w)
        return {f: frozenset(s) for f, s in out.items()}


@dataclass(frozen=True)
class BlockReport:
    """Outcome of a stability check: at most one block, plus IR violations."""

    blocking: Optional[tuple[str, frozenset[str]]] = None
    ir_violations: tuple[tuple[str, str], ...] = ()

    @property
    def empty(self) -> bool:
        return self.blocking is None and not self.ir_violations


def choose(f: Optional[str], available: Iterable[str], m: Market) -> frozenset[str]:
    """The firm's choice from an available set.

    The null firm (None) takes everything; a real firm takes its
    best-ranked chain set contained in the available set, or nothing.
    """
    s = frozenset(available)
    m.require_workers(s)
    if f is None:
        return s
    m.require_firm(f)
    for cand in m.firm_prefs[f].chain:
        if cand <= s:
            return cand
    return frozenset()


def is_acceptable_set(f: str, s: Iterable[str], m: Market) -> bool:
    """True iff s is its own choice for f."""
    fs = frozenset(s)
    if not fs:
        raise MarketError("acceptability is defined for nonempty sets")
    return choose(f, fs, m) == fs


def acceptable_sets(f: str, m: Market) -> list[frozenset[str]]:
    """All sets s on f's chain with choose(f, s) == s, in chain order."""
    m.require_firm(f)
    return [s for s in m.firm_prefs[f].chain if choose(f, s, m) == s]


def _check_matching(mu: Matching, m: Market):
    if set(mu.assignment) != set(m.workers):
        raise MarketError("matching must assign every worker exactly once")
    for w, f in mu.assignment.items():
        if f is not None:
            m.require_firm(f)


def _firm_strictly_prefers(
    f: str, s: frozenset[str], current: frozenset[str], m: Market
) -> bool:
    """s > current for firm f, where both are chain sets or empty."""
    if s == current:
        return False
    chain = m.firm_prefs[f].chain
    if not s:
        return current not in chain  # empty beats off-chain sets only
    if s not in chain:
        return False
    if not current or current not in chain:
        return True
    return chain.index(s) < chain.index(current)


def is_individually_rational(mu: Matching, m: Market) -> bool:
    _check_matching(mu, m)
    return not _ir_violations(mu, m)


def _ir_violations(mu: Matching, m: Market) -> list[tuple[str, str]]:
    out = []
    for w in m.workers:
        f = mu.firm_of(w)
        if f is not None and f not in m._worker_rank[w]:
            out.append((w, f"matched to unacceptable firm {f}"))
    inv = mu.inverse()
    for f in m.firms:
        matched = inv.get(f, frozenset())
        if matched and choose(f, matched, m) != matched:
            out.append((f, f"assignment {sorted(matched)} is not its own choice"))
    return out


def find_block(mu: Matching, m: Market) -> BlockReport:
    """First IR violation, else first blocking pair in canonical order.

    Canonical order: firms in market order, each firm's acceptable sets
    best-first. A coalition (f, S) blocks iff S is acceptable to f,
    S > mu(f) for f, and every worker in S weakly prefers f to her match.
    """
    _check_matching(mu, m)
    ir = _ir_violations(mu, m)
    if ir:
        return BlockReport(ir_violations=tuple(ir))
    inv = mu.inverse()
    for f in m.firms:
        current = inv.get(f, frozenset())
        for s in acceptable_sets(f, m):
            if not _firm_strictly_prefers(f, s, current, m):
                continue
            if all(m.worker_weakly_prefers(w, f, mu.firm_of(w)) for w in s):
                return BlockReport(blocking=(f, s))
    return BlockReport()


def is_stable(mu: Matching, m: Market) -> bool:
    return find_block(mu, m).empty
