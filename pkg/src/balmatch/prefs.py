"""Preference classification, complementarity graphs, and firm decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .market import (
    FirmPreference,
    Market,
    MarketError,
    Matching,
    acceptable_sets,
    choose,
)


@dataclass(frozen=True)
class ComplementarityGraph:
    """Undirected graph joining workers that are complements for one firm."""

    firm: str
    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]

    def components(self) -> list[frozenset[str]]:
        """Connected components as vertex sets (order unspecified)."""
        seen: set[str] = set()
        comps = []
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = {v}, [v]
            while stack:
                u = stack.pop()
                for x in adj[u] - comp:
                    comp.add(x)
                    stack.append(x)
            seen |= comp
            comps.append(frozenset(comp))
        return comps


@dataclass(frozen=True)
class DecomposedMarket:
    """A market whose firms were split from an original market's firms."""

    market: Market
    origin: dict[str, tuple[str, int]]  # new firm -> (original firm, 1-based index)
    kind: str  # "decomposition-I" | "decomposition-II"

    def siblings(self, original: str) -> list[str]:
        return [f for f in self.market.firms if self.origin[f][0] == original]


def potential_employees(f: str, m: Market) -> frozenset[str]:
    """Workers appearing in some acceptable set of f."""
    out: set[str] = set()
    for s in acceptable_sets(f, m):
        out |= s
    return frozenset(out)


def _chain_workers(f: str, m: Market) -> frozenset[str]:
    out: set[str] = set()
    for s in m.firm_prefs[f].chain:
        out |= s
    return frozenset(out)


def is_complementary(f: str, m: Market) -> bool:
    """Choice membership never shrinks as the available set expands.

    Enumeration is restricted to workers on f's chain: workers outside
    every chain set are never chosen, so they cannot break monotonicity.
    Single-element expansions suffice (any expansion is a chain of them).
    """
    m.require_firm(f)
    ws = sorted(_chain_workers(f, m))
    for r in range(len(ws) + 1):
        for sub in itertools.combinations(ws, r):
            s = frozenset(sub)
            chosen = choose(f, s, m)
            for x in ws:
                if x in s:
                    continue
                if not chosen <= choose(f, s | {x}, m):
                    return False
    return True


def is_additive(f: str, m: Market) -> bool:
    """Every disjoint pair of acceptable sets has an acceptable union."""
    acc = acceptable_sets(f, m)
    accset = set(acc)
    for a, b in itertools.combinations(acc, 2):
        if not (a & b) and (a | b) not in accset:
            return False
    return True


def demand_type(f: str, m: Market) -> set[tuple[int, ...]]:
    """All nonzero choice-difference vectors over the market's worker order."""
    m.require_firm(f)
    ws = sorted(_chain_workers(f, m), key=m.workers.index)
    index = {w: i for i, w in enumerate(m.workers)}
    out: set[tuple[int, ...]] = set()
    for r in range(len(ws) + 1):
        for sub in itertools.combinations(ws, r):
            s = frozenset(sub)
            cs = choose(f, s, m)
            rest = [w for w in ws if w not in s]
            for r2 in range(1, len(rest) + 1):
                for add in itertools.combinations(rest, r2):
                    cs2 = choose(f, s | set(add), m)
                    vec = [0] * len(m.workers)
                    for w in cs2:
                        vec[index[w]] += 1
                    for w in cs:
                        vec[index[w]] -= 1
                    if any(vec):
                        out.add(tuple(vec))
    return out


def complementarity_graph(f: str, m: Market) -> ComplementarityGraph:
    """Edges join pairs where one worker's availability makes the other chosen."""
    m.require_firm(f)
    vertices = potential_employees(f, m)
    ws = sorted(vertices)
    choices = {}
    for r in range(len(ws) + 1):
        for sub in itertools.combinations(ws, r):
            s = frozenset(sub)
            choices[s] = choose(f, s, m)
    edges: set[frozenset[str]] = set()
    for a, b in itertools.combinations(ws, 2):
        if _complements(a, b, choices) or _complements(b, a, choices):
            edges.add(frozenset({a, b}))
    return ComplementarityGraph(firm=f, vertices=vertices, edges=frozenset(edges))


def _complements(w: str, helper: str, choices) -> bool:
    for s, chosen in choices.items():
        if helper in s or w in chosen:
            continue
        if w in choices[s | {helper}]:
            return True
    return False


def primitive_acceptable_sets(f: str, m: Market) -> list[frozenset[str]]:
    """Acceptable sets whose workers all lie in one component of the graph."""
    comps = complementarity_graph(f, m).components()
    out = []
    for s in acceptable_sets(f, m):
        if any(s <= c for c in comps):
            out.append(s)
    return out


def _sibling_names(f: str, count: int) -> list[str]:
    if count == 1:
        return [f]
    return [f"{f}#{k}" for k in range(1, count + 1)]


def _splice_worker_prefs(
    m: Market, replacement: dict[str, list[str]]
) -> dict[str, tuple[str, ...]]:
    out = {}
    for w, lst in m.worker_prefs.items():
        new: list[str] = []
        for f in lst:
            new.extend(replacement[f])
        out[w] = tuple(new)
    return out


def decompose_by_sets(m: Market) -> DecomposedMarket:
    """Split every firm into one single-acceptable-set firm per acceptable set.

    Siblings keep the firm's old slot in each worker list, ordered like
    their sets on the firm's chain. A firm with a single acceptable set
    keeps its name.
    """
    replacement: dict[str, list[str]] = {}
    chains: dict[str, FirmPreference] = {}
    origin: dict[str, tuple[str, int]] = {}
    for f in m.firms:
        acc = acceptable_sets(f, m)
        if not acc:
            raise MarketError(f"firm {f} has no acceptable set")
        names = _sibling_names(f, len(acc))
        replacement[f] = names
        for k, (name, s) in enumerate(zip(names, acc), start=1):
            if name in chains or (name != f and name in m.firm_prefs):
                raise MarketError(f"decomposed firm name collides: {name}")
            chains[name] = FirmPreference((s,))
            origin[name] = (f, k)
    new = Market(
        workers=m.workers,
        firms=tuple(chains),
        worker_prefs=_splice_worker_prefs(m, replacement),
        firm_prefs=chains,
    )
    return DecomposedMarket(market=new, origin=origin, kind="decomposition-I")


def decompose_by_components(m: Market) -> DecomposedMarket:
    """Split every firm into one firm per component of its complementarity graph.

    Each new firm's chain holds the original firm's acceptable sets inside
    that component, in the original chain order; components are ordered by
    their smallest worker (market order) so sibling order is deterministic.
    """
    replacement: dict[str, list[str]] = {}
    chains: dict[str, FirmPreference] = {}
    origin: dict[str, tuple[str, int]] = {}
    windex = {w: i for i, w in enumerate(m.workers)}
    for f in m.firms:
        if not is_complementary(f, m):
            raise MarketError(f"firm {f} does not have a complementary preference")
        comps = sorted(
            complementarity_graph(f, m).components(),
            key=lambda c: min(windex[w] for w in c),
        )
        acc = acceptable_sets(f, m)
        names = _sibling_names(f, len(comps)) if comps else []
        if not comps:
            raise MarketError(f"firm {f} has no acceptable set")
        replacement[f] = names
        for k, (name, comp) in enumerate(zip(names, comps), start=1):
            if name in chains or (name != f and name in m.firm_prefs):
                raise MarketError(f"decomposed firm name collides: {name}")
            sub = tuple(s for s in acc if s <= comp)
            chains[name] = FirmPreference(sub)
            origin[name] = (f, k)
    new = Market(
        workers=m.workers,
        firms=tuple(chains),
        worker_prefs=_splice_worker_prefs(m, replacement),
        firm_prefs=chains,
    )
    return DecomposedMarket(market=new, origin=origin, kind="decomposition-II")


def lift_matching(mu: Matching, d: DecomposedMarket) -> Matching:
    """Map a matching on the decomposed market back to the original firms."""
    out: dict[str, Optional[str]] = {}
    for w, f in mu.assignment.items():
        out[w] = None if f is None else d.origin[f][0]
    return Matching(out)
